#include "epsnet/random_construction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "epsnet/rng.hpp"

namespace epsnet {

StagedPointSet::StagedPointSet(std::size_t n, int stages, std::vector<std::uint8_t> digits)
    : n_(n), stages_(stages), digits_(std::move(digits)) {
  if (stages_ < 1 || stages_ > 62) throw std::invalid_argument("stage count must lie in [1, 62]");
  if (digits_.size() != n_ * static_cast<std::size_t>(stages_)) {
    throw std::invalid_argument("digit matrix has wrong size");
  }
  for (auto d : digits_) {
    if (d > 1) throw std::invalid_argument("digits must be binary");
  }
}

std::uint64_t StagedPointSet::prefix(std::size_t i, int t) const {
  std::uint64_t key = 0;
  for (int s = 1; s < t; ++s) key = (key << 1) | static_cast<std::uint64_t>(digit(i, s));
  return key;
}

Rational StagedPointSet::y(std::size_t i) const {
  return make_rational(static_cast<std::int64_t>(2 * i + 1), static_cast<std::int64_t>(2 * n_));
}

Rational StagedPointSet::x(std::size_t i) const { return truncation(*this, i, stages_ + 1); }

StagedPointSet sample_points(std::size_t n, int stages, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two points");
  if (stages < 1 || stages > 62) throw std::invalid_argument("stage count must lie in [1, 62]");
  Rng rng(seed);
  std::vector<std::uint8_t> digits(n * static_cast<std::size_t>(stages));
  for (auto& d : digits) d = rng.bit() ? 1 : 0;
  return StagedPointSet(n, stages, std::move(digits));
}

Rational truncation(const StagedPointSet& p, std::size_t i, int t) {
  if (t < 1 || t > p.stages() + 1) throw std::out_of_range("truncation level outside [1, T+1]");
  if (i >= p.size()) throw std::out_of_range("point index out of range");
  Rational q(mpz_class(p.prefix(i, t)), mpz_class(1) << (t - 1));
  q.canonicalize();
  return q;
}

std::vector<Part> h_partition(const StagedPointSet& p, int t) {
  if (t < 1 || t > p.stages()) throw std::out_of_range("stage outside [1, T]");
  std::map<std::uint64_t, IndexSet> parts;
  for (std::size_t i = 0; i < p.size(); ++i) parts[p.prefix(i, t)].push_back(static_cast<Index>(i));
  std::vector<Part> out;
  out.reserve(parts.size());
  for (auto& [key, members] : parts) {
    Rational x(mpz_class(key), mpz_class(1) << (t - 1));
    x.canonicalize();
    out.push_back(Part{std::move(x), key, std::move(members)});
  }
  return out;
}

std::vector<Interval> carve_intervals(const IndexSet& part, const Bitset& in_i, std::size_t r) {
  if (r < 1) throw std::invalid_argument("interval carving needs r >= 1");
  std::vector<Interval> out;
  Interval open;
  for (Index i : part) {
    open.members.push_back(i);
    if (!in_i.test(i)) open.outside.push_back(i);
    if (open.outside.size() == r) {
      open.lo = open.members.front();
      open.hi = open.members.back();
      out.push_back(std::move(open));
      open = Interval{};
    }
  }
  return out;
}

CarvedStage carve_stage(const StagedPointSet& p, int t, const Bitset& in_i, std::size_t r) {
  CarvedStage stage;
  stage.t = t;
  stage.parts = h_partition(p, t);
  for (const auto& part : stage.parts) {
    for (auto& g : carve_intervals(part.members, in_i, r)) {
      const bool good = g.members.size() < 4 * r;
      stage.intervals.push_back(CarvedInterval{std::move(g), part.x, good});
    }
  }
  return stage;
}

StageCounts classify_and_count(const CarvedStage& stage, std::size_t i_size, std::size_t r,
                               std::size_t n) {
  StageCounts c;
  c.parts = stage.parts.size();
  c.total = stage.intervals.size();
  for (const auto& g : stage.intervals) (g.good ? c.good : c.bad) += 1;
  const int t = stage.t;
  c.parts_ok = c.parts <= (std::size_t{1} << (t - 1));
  c.preconditions = 2 * i_size <= n && (std::size_t{1} << (t + 1)) * r <= n;
  if (c.preconditions) {
    c.total_ok = 4 * r * c.total > n;
    c.bad_ok = 3 * r * c.bad <= i_size;
    c.good_ok = 12 * r * c.good > n;
  }
  return c;
}

bool interval_fails(const StagedPointSet& p, const Interval& g, const Bitset& in_i, int t) {
  for (Index i : g.members) {
    const int want = in_i.test(i) ? 1 : 0;
    if (p.digit(i, t) != want) return false;
  }
  return true;
}

Rect witness_rectangle(const StagedPointSet& p, const Interval& g, const Rational& x, int t) {
  Rect r;
  r.x_lo = x;
  r.x_hi = x + pow2_inverse(static_cast<unsigned>(t));
  r.y_lo = p.y(g.lo);
  r.y_hi = p.y(g.hi);
  r.open = Openness{false, true, false, false};
  return r;
}

int stage_count(std::size_t n, std::size_t r) {
  int t = 0;
  while ((std::size_t{1} << (t + 2)) * r <= n) ++t;
  return t;
}

SurvivalReport survival_estimate(std::size_t n, std::size_t r, const IndexSet& chosen,
                                 std::size_t trials, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("survival estimate needs r >= 1");
  SurvivalReport rep;
  rep.trials = trials;
  rep.stages = stage_count(n, r);
  const Bitset in_i = to_bitset(n, chosen);
  for (std::size_t k = 0; k < trials; ++k) {
    bool survives = true;
    if (rep.stages > 0) {
      Rng rng = Rng::substream(seed, k);
      std::vector<std::uint8_t> digits(n * static_cast<std::size_t>(rep.stages));
      for (auto& d : digits) d = rng.bit() ? 1 : 0;
      const StagedPointSet p(n, rep.stages, std::move(digits));
      for (int t = 1; t <= rep.stages && survives; ++t) {
        for (const auto& g : carve_stage(p, t, in_i, r).intervals) {
          if (interval_fails(p, g.interval, in_i, t)) {
            survives = false;
            break;
          }
        }
      }
    }
    rep.survived += survives;
  }
  if (trials > 0) {
    rep.frequency = static_cast<double>(rep.survived) / static_cast<double>(trials);
    rep.std_error = std::sqrt(rep.frequency * (1 - rep.frequency) / static_cast<double>(trials));
  }
  const double rd = static_cast<double>(r);
  rep.per_stage_bound = std::pow(1 - std::pow(2.0, -4 * rd), static_cast<double>(n) / (12 * rd));
  rep.all_stage_bound = std::pow(rep.per_stage_bound, rep.stages);
  return rep;
}

RangeSpace dyadic_canonical_ranges(const StagedPointSet& p, std::size_t m) {
  if (m < 1) throw std::invalid_argument("window size must be >= 1");
  const int levels = p.stages();
  {
    std::map<std::uint64_t, Index> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!seen.emplace(p.prefix(i, levels + 1), static_cast<Index>(i)).second) {
        throw std::invalid_argument("points share all " + std::to_string(levels) +
                                    " digits; increase the stage count");
      }
    }
  }
  std::vector<IndexSet> ranges;
  for (int t = 0; t <= levels; ++t) {
    std::map<std::uint64_t, IndexSet> columns;
    for (std::size_t i = 0; i < p.size(); ++i) columns[p.prefix(i, t + 1)].push_back(static_cast<Index>(i));
    for (const auto& [key, col] : columns) {
      for (std::size_t s = 0; s + m <= col.size(); ++s) {
        ranges.emplace_back(col.begin() + static_cast<std::ptrdiff_t>(s),
                            col.begin() + static_cast<std::ptrdiff_t>(s + m));
      }
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < p.size(); ++i) labels.push_back("p" + std::to_string(i));
  return RangeSpace::from_incidences(p.size(), std::move(ranges), std::move(labels));
}

int default_stages(std::size_t n) {
  int lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  return std::max(1, 2 * lg);
}

std::size_t schedule_r(std::size_t n) {
  if (n < 4) return 1;
  const double r = std::ceil(std::log2(std::log2(static_cast<double>(n))) / 5.0);
  return std::max<std::size_t>(1, static_cast<std::size_t>(r));
}

StagedRandomInstance staged_random_instance(std::size_t n, std::size_t r, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("staged random instance needs n >= 4");
  if (r < 1) throw std::invalid_argument("staged random instance needs r >= 1");
  const int stages = default_stages(n);
  StagedRandomInstance inst;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t sub = attempt == 0 ? seed : mix64(seed ^ mix64(attempt));
    inst.points = sample_points(n, stages, sub);
    try {
      inst.space = dyadic_canonical_ranges(inst.points, r);
      inst.redraws = attempt;
      break;
    } catch (const std::invalid_argument&) {
      if (attempt > 1000) throw;
    }
  }
  inst.eps = make_rational(static_cast<std::int64_t>(r), static_cast<std::int64_t>(n));
  return inst;
}

}  // namespace epsnet
