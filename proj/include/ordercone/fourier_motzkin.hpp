#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ordercone/lp.hpp"

namespace ordercone {

/// Projects out variable `var_index`. The result lives in dimension - 1
/// (coordinates after `var_index` shift down by one). Strict combined with
/// anything stays strict. An infeasible input yields the single row 0 >= 1.
[[nodiscard]] std::vector<LinearConstraint> fm_eliminate(std::span<const LinearConstraint> constraints,
                                                         std::size_t var_index);

/// Projects onto the first `keep` coordinates of a system in dimension `dim`.
[[nodiscard]] std::vector<LinearConstraint> fm_project(std::vector<LinearConstraint> constraints,
                                                       std::size_t dim, std::size_t keep);

/// Drops rows implied by the others (row r is dropped when rest + not(r) is
/// infeasible). Also removes tautologies and duplicates.
[[nodiscard]] std::vector<LinearConstraint> remove_redundant(std::span<const LinearConstraint> constraints,
                                                             std::size_t dim);

/// The canonical contradiction row 0 >= 1 in the given dimension.
[[nodiscard]] LinearConstraint contradiction(std::size_t dim);

[[nodiscard]] bool is_contradiction_marker(std::span<const LinearConstraint> constraints);

}  // namespace ordercone
