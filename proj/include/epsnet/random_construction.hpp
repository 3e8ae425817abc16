#pragma once

#include <cstdint>
#include <vector>

#include "epsnet/construction.hpp"
#include "epsnet/rangespace.hpp"
#include "epsnet/rational.hpp"

namespace epsnet {

/// n points with T explicit binary digits each. Point i (0-based) has
/// y = (i + 1/2) / n, so index order is y order; x = 0.d1 d2 ... dT.
class StagedPointSet {
 public:
  StagedPointSet() = default;
  StagedPointSet(std::size_t n, int stages, std::vector<std::uint8_t> digits);

  std::size_t size() const { return n_; }
  int stages() const { return stages_; }

  /// d_i^(t), t in 1..T.
  int digit(std::size_t i, int t) const { return digits_[i * stages_ + (t - 1)]; }
  void set_digit(std::size_t i, int t, int value) {
    digits_[i * stages_ + (t - 1)] = static_cast<std::uint8_t>(value);
  }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  /// First t-1 digits read as an integer in [0, 2^(t-1)).
  std::uint64_t prefix(std::size_t i, int t) const;

  Rational y(std::size_t i) const;
  /// Full x-coordinate: truncation at T+1.
  Rational x(std::size_t i) const;
  Point2 point(std::size_t i) const { return {x(i), y(i)}; }

 private:
  std::size_t n_ = 0;
  int stages_ = 0;
  std::vector<std::uint8_t> digits_;  // row-major n x T
};

/// i.i.d. fair digits from a seeded generator. Requires n >= 2, 1 <= T <= 62.
StagedPointSet sample_points(std::size_t n, int stages, std::uint64_t seed);

/// sum_{s<t} d_i^(s) 2^-s, for 1 <= t <= T+1.
Rational truncation(const StagedPointSet& p, std::size_t i, int t);

struct Part {
  Rational x;           // shared truncation value
  std::uint64_t key;    // same value as an integer prefix
  IndexSet members;     // ascending
};

/// Groups point indices by their stage-t truncation.
std::vector<Part> h_partition(const StagedPointSet& p, int t);

struct Interval {
  Index lo = 0;         // first and last member index
  Index hi = 0;
  IndexSet members;
  IndexSet outside;     // members not in I; exactly r of them
};

/// Greedy left-to-right carving of `part` into intervals holding exactly r
/// members outside I each; the trailing remainder stays unassigned.
std::vector<Interval> carve_intervals(const IndexSet& part, const Bitset& in_i, std::size_t r);

struct CarvedInterval {
  Interval interval;
  Rational x;
  bool good = false;    // size < 4r
};

struct CarvedStage {
  int t = 0;
  std::vector<Part> parts;
  std::vector<CarvedInterval> intervals;
};

CarvedStage carve_stage(const StagedPointSet& p, int t, const Bitset& in_i, std::size_t r);

struct StageCounts {
  std::size_t parts = 0;
  std::size_t total = 0;
  std::size_t good = 0;
  std::size_t bad = 0;
  bool preconditions = false;  // |I| <= n/2 and 2^(t+1) r <= n
  bool parts_ok = true;        // parts <= 2^(t-1)
  bool total_ok = true;        // total > n/(4r)
  bool bad_ok = true;          // bad <= |I|/(3r)
  bool good_ok = true;         // good > n/(12r)
  bool all_ok() const { return parts_ok && total_ok && bad_ok && good_ok; }
};

/// Counts and checks; the count inequalities are only asserted when the
/// preconditions hold (otherwise they are reported as true).
StageCounts classify_and_count(const CarvedStage& stage, std::size_t i_size, std::size_t r,
                               std::size_t n);

/// Non-I members all draw digit 0 at stage t and I members all draw 1.
bool interval_fails(const StagedPointSet& p, const Interval& g, const Bitset& in_i, int t);

/// [x, x + 2^-t) x [y_lo, y_hi] spanning the interval's first and last members.
Rect witness_rectangle(const StagedPointSet& p, const Interval& g, const Rational& x, int t);

/// Number of stages t with 2^(t+1) r <= n, i.e. t <= log2(n/r) - 1.
int stage_count(std::size_t n, std::size_t r);

struct SurvivalReport {
  std::size_t trials = 0;
  std::size_t survived = 0;
  int stages = 0;
  double frequency = 0;
  double std_error = 0;
  double per_stage_bound = 0;   // (1 - 2^-4r)^(n/(12r))
  double all_stage_bound = 0;   // per_stage_bound^stages
};

/// Fraction of fresh point sets in which no carved interval fails at any
/// stage t <= log2(n/r) - 1, for the fixed index set I. Trial k draws from
/// substream (seed, k).
SurvivalReport survival_estimate(std::size_t n, std::size_t r, const IndexSet& chosen,
                                 std::size_t trials, std::uint64_t seed);

/// Windows of m y-consecutive points within each dyadic column, over levels
/// t = 0..T. Throws std::invalid_argument if two points share all T digits.
RangeSpace dyadic_canonical_ranges(const StagedPointSet& p, std::size_t m);

/// Default stage count 2 ceil(log2 n).
int default_stages(std::size_t n);

/// r = ceil(log2(log2 n) / 5), at least 1.
std::size_t schedule_r(std::size_t n);

struct StagedRandomInstance {
  StagedPointSet points;
  RangeSpace space;
  Rational eps;          // r / n
  std::size_t redraws = 0;
};

/// Samples with T = 2 ceil(log2 n), redrawing on a level-T collision, and
/// builds the window ranges with m = r.
StagedRandomInstance staged_random_instance(std::size_t n, std::size_t r, std::uint64_t seed);

}  // namespace epsnet
