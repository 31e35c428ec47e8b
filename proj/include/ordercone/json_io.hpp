#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ordercone/decomp.hpp"
#include "ordercone/hahn_banach.hpp"
#include "ordercone/lab.hpp"
#include "ordercone/rk.hpp"

namespace ordercone::io {

using Json = nlohmann::ordered_json;

// Rationals are always strings ("p" or "p/q"). Parse errors name the JSON location, e.g. "$.cone.generators[1][0]".

[[nodiscard]] Json to_json(const Rational& r);
[[nodiscard]] Json to_json(const RatVector& v);
[[nodiscard]] Json to_json(const std::vector<RatVector>& vs);
[[nodiscard]] Rational rational_from(const Json& j, const std::string& where);
[[nodiscard]] RatVector vector_from(const Json& j, const std::string& where);
[[nodiscard]] std::vector<RatVector> vectors_from(const Json& j, const std::string& where);

/// "1,-2,3/4" -> (1, -2, 3/4).
[[nodiscard]] RatVector parse_csv(std::string_view text);
[[nodiscard]] std::string to_csv(const RatVector& v);

/// {dimension, cone: {kind, inequalities | generators | cells | name}}.
struct SpaceFile {
  std::size_t dimension = 0;
  std::string kind;  ///< "closed_h", "closed_v", "semi_open", "lexicographic" or "named"
  std::string name;
  std::vector<RatVector> vectors;  ///< inequalities or generators
  std::vector<std::vector<LinearConstraint>> cells;

  friend bool operator==(const SpaceFile&, const SpaceFile&) = default;
};

[[nodiscard]] SpaceFile space_file_from_json(const Json& j, const std::string& where = "$");
[[nodiscard]] Json to_json(const SpaceFile& f);
[[nodiscard]] SpaceFile describe(const OrderedSpace& space);
[[nodiscard]] OrderedSpace build(const SpaceFile& f);

/// {matrix: rows of rational strings, codomain_dim}.
[[nodiscard]] LinearOperator operator_from_json(const Json& j, const std::string& where = "$");
[[nodiscard]] Json to_json(const LinearOperator& t);
/// An operator object, an array of them, or {operators: [...]}.
[[nodiscard]] std::vector<LinearOperator> operators_from_json(const Json& j, const std::string& where = "$");

/// {space, p: {kind: "min" | "rk", pieces: [...]}, basis: [[...]], t0: operator}.
[[nodiscard]] ExtensionProblem problem_from_json(const Json& j, const std::string& where = "$");
[[nodiscard]] Json to_json(const ExtensionProblem& prob);

/// Reads and parses a JSON file; InputError with the path on failure.
[[nodiscard]] Json load_file(const std::string& path);

[[nodiscard]] Json to_json(const RkValue& v);
[[nodiscard]] Json to_json(const NonlinearWitness& w);
[[nodiscard]] Json to_json(const LinearityResult& r);
[[nodiscard]] Json to_json(const SupResult& r);
[[nodiscard]] Json to_json(const SeparationResult& s);
[[nodiscard]] Json to_json(const RdpReport& r);
[[nodiscard]] Json to_json(const ExtensionStep& s);
[[nodiscard]] Json to_json(const GrkfReport& r);

}  // namespace ordercone::io
