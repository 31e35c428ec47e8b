#pragma once

#include <string>
#include <vector>

#include "ordercone/json_io.hpp"

namespace ordercone {

/// One reproduced claim: the inputs, what was computed and what was expected.
struct ReportCheck {
  std::string group;
  std::string name;
  std::string claim;
  io::Json inputs;
  std::string computed;
  std::string expected;
  bool pass = false;
};

/// A markdown table attached to a group (sample points and the like).
struct ReportTable {
  std::string group;
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct WorkedExampleReport {
  std::vector<ReportCheck> checks;
  std::vector<ReportTable> tables;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] std::string markdown() const;
  [[nodiscard]] io::Json json() const;
};

/// Runs every worked example and theorem instance in a fixed order. Deterministic.
[[nodiscard]] WorkedExampleReport build_report();

}  // namespace ordercone
