#pragma once

#include <chrono>
#include <cstdint>

#include "epsnet/construction.hpp"
#include "epsnet/rangespace.hpp"

namespace epsnet {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Result of an exact or budgeted optimization.
///
/// For minimization `lower_bound <= size` and `upper_bound == size`; for a
/// maximization (max_r_independent) `lower_bound == size <= upper_bound`.
/// `optimal` means the bound meets the solution.
struct OptResult {
  IndexSet solution;
  std::size_t size = 0;
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{0};
};

/// Repeatedly takes the element hitting the most unhit ranges, lowest index
/// first on ties. Throws std::invalid_argument if any range is empty.
IndexSet greedy_hitting_set(const RangeSpace& rs);

/// Branch and bound: branch on each element of the smallest unhit range
/// (elements tried earlier are excluded in later siblings), bound by a greedy
/// packing of pairwise-disjoint unhit ranges, incumbent from greedy.
OptResult exact_min_hitting_set(const RangeSpace& rs,
                                std::uint64_t node_budget = kDefaultNodeBudget);

/// Minimum eps-net: exact hitting set of the minimal heavy ranges.
OptResult min_epsilon_net(const RangeSpace& rs, const Rational& eps,
                          std::uint64_t node_budget = kDefaultNodeBudget);

/// Largest r-independent subfamily, as n minus a minimum hitting set of the
/// minimal dual ranges of size >= r.
OptResult max_r_independent(const Family& f, int r,
                            std::uint64_t node_budget = kDefaultNodeBudget,
                            IndependenceReading reading = IndependenceReading::kAtLeast);
OptResult max_r_independent(const DualSpace& dual, int r,
                            std::uint64_t node_budget = kDefaultNodeBudget,
                            IndependenceReading reading = IndependenceReading::kAtLeast);

struct SampledNet {
  IndexSet net;
  std::size_t attempts = 0;
  std::size_t sample_size = 0;
  int vc_dim = 0;
};

/// Random-sampling net: draws m elements with replacement and resamples until
/// the draw is an eps-net, where
/// m = ceil(max((8d/eps) log2(8d/eps), (4/eps) log2(2/confidence))) and d is
/// the VC-dimension (cap 4, at least 1).
SampledNet hw_sample_net(const RangeSpace& rs, const Rational& eps, const Rational& confidence,
                         std::uint64_t seed);

std::size_t hw_sample_size(int vc_dim, const Rational& eps, const Rational& confidence);

}  // namespace epsnet
