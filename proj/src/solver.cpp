#include "epsnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "epsnet/rng.hpp"

namespace epsnet {

namespace {

using Clock = std::chrono::steady_clock;

void require_nonempty(const RangeSpace& rs) {
  for (const auto& r : rs.ranges()) {
    if (r.empty()) throw std::invalid_argument("hitting set requested for a space with an empty range");
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const RangeSpace& rs, std::uint64_t budget)
      : n_(rs.ground_size()), budget_(budget) {
    for (std::size_t k = 0; k < rs.num_ranges(); ++k) masks_.push_back(rs.mask(k));
  }

  OptResult run(IndexSet incumbent) {
    best_ = std::move(incumbent);
    excluded_ = Bitset(n_);
    std::vector<std::size_t> unhit(masks_.size());
    for (std::size_t k = 0; k < unhit.size(); ++k) unhit[k] = k;
    root_bound_ = packing_bound(unhit);
    search(unhit);

    OptResult out;
    out.solution = best_;
    std::sort(out.solution.begin(), out.solution.end());
    out.size = best_.size();
    out.upper_bound = out.size;
    out.optimal = !aborted_ || root_bound_ >= out.size;
    out.lower_bound = out.optimal ? out.size : root_bound_;
    out.nodes_explored = nodes_;
    return out;
  }

 private:
  std::size_t effective_size(std::size_t k) const {
    return (masks_[k] - excluded_).count();
  }

  // Greedy packing of pairwise-disjoint unhit ranges (restricted to
  // non-excluded elements), smallest first.
  std::size_t packing_bound(const std::vector<std::size_t>& unhit) const {
    std::vector<std::pair<std::size_t, std::size_t>> order;
    order.reserve(unhit.size());
    for (std::size_t k : unhit) order.emplace_back(effective_size(k), k);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Bitset used(n_);
    std::size_t count = 0;
    for (const auto& [size, k] : order) {
      Bitset live = masks_[k] - excluded_;
      if (!live.intersects(used)) {
        used |= live;
        ++count;
      }
    }
    return count;
  }

  void search(const std::vector<std::size_t>& unhit) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (unhit.empty()) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    if (chosen_.size() + 1 >= best_.size()) return;
    if (chosen_.size() + packing_bound(unhit) >= best_.size()) return;

    std::size_t pick = unhit.front();
    std::size_t pick_size = effective_size(pick);
    for (std::size_t k : unhit) {
      const std::size_t s = effective_size(k);
      if (s < pick_size) {
        pick = k;
        pick_size = s;
      }
    }
    if (pick_size == 0) return;

    const Bitset branch = masks_[pick] - excluded_;
    IndexSet newly_excluded;
    for (auto e = branch.find_first(); e != Bitset::npos; e = branch.find_next(e)) {
      std::vector<std::size_t> rest;
      rest.reserve(unhit.size());
      for (std::size_t k : unhit) {
        if (!masks_[k].test(e)) rest.push_back(k);
      }
      chosen_.push_back(static_cast<Index>(e));
      search(rest);
      chosen_.pop_back();
      if (aborted_) break;
      excluded_.set(e);
      newly_excluded.push_back(static_cast<Index>(e));
    }
    for (Index e : newly_excluded) excluded_.reset(e);
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::vector<Bitset> masks_;
  Bitset excluded_;
  IndexSet chosen_;
  IndexSet best_;
  std::size_t root_bound_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

IndexSet greedy_hitting_set(const RangeSpace& rs) {
  require_nonempty(rs);
  const std::size_t n = rs.ground_size();
  std::vector<IndexSet> containing(n);
  for (std::size_t k = 0; k < rs.num_ranges(); ++k) {
    for (Index e : rs.range(k)) containing[e].push_back(static_cast<Index>(k));
  }
  std::vector<std::size_t> gain(n);
  for (std::size_t e = 0; e < n; ++e) gain[e] = containing[e].size();
  std::vector<char> hit(rs.num_ranges(), 0);
  std::size_t remaining = rs.num_ranges();
  IndexSet out;
  while (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t e = 1; e < n; ++e) {
      if (gain[e] > gain[best]) best = e;
    }
    out.push_back(static_cast<Index>(best));
    for (Index k : containing[best]) {
      if (hit[k]) continue;
      hit[k] = 1;
      --remaining;
      for (Index e : rs.range(k)) --gain[e];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

OptResult exact_min_hitting_set(const RangeSpace& rs, std::uint64_t node_budget) {
  const auto start = Clock::now();
  require_nonempty(rs);
  const RangeSpace minimal = minimalize(rs);
  OptResult out;
  if (minimal.num_ranges() == 0) {
    out.optimal = true;
  } else {
    BranchAndBound bb(minimal, node_budget);
    out = bb.run(greedy_hitting_set(minimal));
  }
  out.wall_time = Clock::now() - start;
  return out;
}

OptResult min_epsilon_net(const RangeSpace& rs, const Rational& eps, std::uint64_t node_budget) {
  if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  return exact_min_hitting_set(heavy_ranges(rs, eps), node_budget);
}

OptResult max_r_independent(const Family& f, int r, std::uint64_t node_budget,
                            IndependenceReading reading) {
  return max_r_independent(dual_space_with_witnesses(f), r, node_budget, reading);
}

OptResult max_r_independent(const DualSpace& dual, int r, std::uint64_t node_budget,
                            IndependenceReading reading) {
  if (r < 2) throw std::invalid_argument("r-independence needs r >= 2");
  const auto start = Clock::now();
  const RangeSpace targets = ranges_of_size(dual.space, static_cast<std::size_t>(r),
                                            reading == IndependenceReading::kExactly);
  const OptResult hs = exact_min_hitting_set(targets, node_budget);
  const std::size_t n = dual.space.ground_size();
  OptResult out;
  Bitset removed = to_bitset(n, hs.solution);
  removed.flip();
  out.solution = to_index_set(removed);
  out.size = out.solution.size();
  out.lower_bound = out.size;
  out.upper_bound = n - hs.lower_bound;
  out.optimal = hs.optimal;
  out.nodes_explored = hs.nodes_explored;
  out.wall_time = Clock::now() - start;
  return out;
}

std::size_t hw_sample_size(int vc_dim, const Rational& eps, const Rational& confidence) {
  if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  if (confidence <= 0 || confidence >= 1) throw std::invalid_argument("confidence must lie in (0, 1)");
  const double d = std::max(vc_dim, 1);
  const double e = eps.get_d();
  const double a = (8 * d / e) * std::log2(8 * d / e);
  const double b = (4 / e) * std::log2(2 / confidence.get_d());
  return static_cast<std::size_t>(std::ceil(std::max(a, b)));
}

SampledNet hw_sample_net(const RangeSpace& rs, const Rational& eps, const Rational& confidence,
                         std::uint64_t seed) {
  SampledNet out;
  const RangeSpace heavy = heavy_ranges(rs, eps);
  out.vc_dim = vc_dimension(rs, 4);
  out.sample_size = hw_sample_size(out.vc_dim, eps, confidence);
  if (heavy.num_ranges() == 0) {
    out.attempts = 1;
    return out;
  }
  Rng rng(seed);
  const std::size_t n = rs.ground_size();
  for (;;) {
    ++out.attempts;
    Bitset drawn(n);
    for (std::size_t s = 0; s < out.sample_size; ++s) drawn.set(rng.uniform(n));
    bool hits_all = true;
    for (std::size_t k = 0; k < heavy.num_ranges() && hits_all; ++k) {
      hits_all = heavy.mask(k).intersects(drawn);
    }
    if (hits_all) {
      out.net = to_index_set(drawn);
      return out;
    }
  }
}

}  // namespace epsnet
