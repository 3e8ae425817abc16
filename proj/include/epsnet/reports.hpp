#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "epsnet/rangespace.hpp"
#include "epsnet/solver.hpp"

namespace epsnet {

struct GrowthModes {
  bool exact = true;
  bool greedy = true;
  bool sample = false;
};

/// One row of the lower-bound growth table for the instance Sigma*(4, 3r-4).
struct GrowthRow {
  Rational eps;
  int r = 0, c = 0, d = 0;
  std::size_t n_rects = 0;
  std::size_t lower_bound = 0;     // certified minimum-net lower bound
  std::string certificate;         // "exact-independence" or "independence-bound"
  bool certified = false;
  std::size_t greedy_size = 0;
  std::optional<std::size_t> exact_size;
  std::optional<std::size_t> sample_size;
  double build_seconds = 0;
  double solve_seconds = 0;

  /// eps * lower_bound, the quantity the bound says is at least r/2.
  Rational normalized_bound() const;
};

std::vector<GrowthRow> growth_table(int r_min, int r_max, GrowthModes modes,
                                    std::uint64_t budget, std::uint64_t seed);

void write_growth_csv(std::ostream& out, const std::vector<GrowthRow>& rows);

struct FalsifyReport {
  std::size_t size = 0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<IndexSet> candidates;
  std::vector<IndexSet> witnesses;
};

/// Draws `samples` uniform candidate sets of the given size and checks that
/// none is an eps-net. Throws std::runtime_error if one is.
FalsifyReport falsify_small_nets(const RangeSpace& rs, const Rational& eps, std::size_t size,
                                 std::size_t samples, std::uint64_t seed);

/// Uniform k-subset of {0..n-1}, sorted.
IndexSet random_subset(std::size_t n, std::size_t k, std::uint64_t seed);

/// Machine-readable verification reports. Each carries "passed": bool and a
/// list of named checks.
using Report = nlohmann::ordered_json;

Report verify_independence_bound(int c, int d, int r, std::uint64_t budget);
Report verify_staged_intervals(std::size_t n, std::size_t r, std::size_t i_size, std::size_t trials,
                      std::uint64_t seed);
Report verify_vc(const RangeSpace& rs, int max_d, std::optional<int> expect);
Report verify_duality(int c, int d, std::size_t pairs, std::uint64_t seed);
Report verify_box_halfspace_emulation(std::size_t sets, std::size_t boxes_per_set, std::uint64_t seed);

}  // namespace epsnet
