#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ordercone/decomp.hpp"
#include "ordercone/rk.hpp"

namespace ordercone {

struct TrialConfig {
  std::uint64_t seed = 1;
  std::size_t dimension = 3;
  std::size_t generator_count = 4;
  long coefficient_bound = 3;
  std::size_t trials = 20;
  std::size_t threads = 1;  ///< 0 = hardware concurrency; never changes results
};

/// RNG for one trial, derived from (seed, index) only.
[[nodiscard]] std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Runs fn(0..count-1) on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Pointed generating ClosedV cone from cfg.generator_count random integer vectors.
[[nodiscard]] OrderedSpace random_cone(const TrialConfig& cfg, std::uint64_t index);

/// S1, S2 <= T1, T2 with no R between them.
struct InterpolationFailure {
  RatVector s1, s2, t1, t2;
};

struct GrkfTrial {
  std::size_t index = 0;
  bool lattice = true;          ///< (1) every sampled pair has a supremum
  bool rdp = true;              ///< (2) every sampled interpolation instance has an interpolant
  bool linear_all = true;       ///< (3) rk linear for the sampled collections with a positive member
  bool linear_single = true;    ///< (4) rk{0, T} linear for the sampled single operators
  bool lrdp = true;             ///< (5) check_lrdp(All) holds on the sampled pairs
  std::size_t operator_samples = 0;
  std::size_t pair_samples = 0;
  std::optional<NonlinearWitness> nonlinear;
  std::optional<InterpolationFailure> interpolation;
  std::optional<RdpReport> lrdp_failure;
  [[nodiscard]] bool agree() const {
    return lattice == rdp && rdp == linear_all && linear_all == linear_single && linear_single == lrdp;
  }
};

struct GrkfReport {
  std::string space;
  std::string regime;  ///< "closed" (X_r = X+) or "interior" (X_r = {0} ∪ int X+)
  std::vector<GrkfTrial> trials;
  /// Conjunction of each condition over all trials.
  bool lattice = true, rdp = true, linear_all = true, linear_single = true, lrdp = true;
  [[nodiscard]] bool consistent() const {
    return lattice == rdp && rdp == linear_all && linear_all == linear_single && linear_single == lrdp;
  }
};

/// Samples the five conditions of the lattice/linearity chain and compares them.
[[nodiscard]] GrkfReport verify_grkf(const OrderedSpace& space, const TrialConfig& cfg);

/// Re-checks every certificate in a report with the owning module's oracle.
[[nodiscard]] bool certificates_verify(const OrderedSpace& space, const GrkfReport& report);

struct IsameorderTrial {
  LinearOperator op;
  bool positive_on_cone = false;      ///< T >= 0 on X+
  bool positive_on_interior = false;  ///< T >= 0 on {0} ∪ int X+
};

struct IsameorderReport {
  std::vector<IsameorderTrial> trials;
  std::size_t violations = 0;
  std::size_t positive = 0;
};

/// Positivity w.r.t. X+ and w.r.t. {0} ∪ int X+ agree for random operators into Q^2.
[[nodiscard]] IsameorderReport verify_isameorder(const OrderedSpace& space, const TrialConfig& cfg);

struct BruteForceRk {
  RatVector value;  ///< per codomain coordinate, a lower bound for rk
  std::vector<std::vector<RatVector>> decomposition;  ///< best grid decomposition per coordinate
  std::size_t grid_points = 0;
};

/// Best decomposition over grid points of step 2^-depth inside [0, x].
[[nodiscard]] BruteForceRk brute_force_rk(const RkInstance& inst, const RatVector& x, unsigned depth,
                                          std::size_t budget = 2'000'000);

}  // namespace ordercone
