#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsnet/rangespace.hpp"
#include "epsnet/rational.hpp"

namespace epsnet {

/// A string over the alphabet {0, ..., base-1}; the empty string is allowed.
struct DigitString {
  int base = 2;
  std::vector<int> digits;

  DigitString() = default;
  DigitString(int base, std::vector<int> digits);

  std::size_t length() const { return digits.size(); }
  /// 1-based digit access; digit(0) is 0 by convention.
  int digit(std::size_t j) const { return j == 0 ? 0 : digits[j - 1]; }
  int last() const { return digit(digits.size()); }
  std::string str() const;

  friend bool operator==(const DigitString&, const DigitString&) = default;
};

/// Sum of x_j / c^j.
Rational eval_fraction(const DigitString& x);

struct Point2 {
  Rational x;
  Rational y;
};

/// Provenance of a member of R(c, d): level k, strings u and v, and the
/// position inside a blow-up chain (1 when not blown up).
struct RectTag {
  int k = 0;
  DigitString u;
  DigitString v;
  int chain = 1;
  std::string str() const;
};

struct Openness {
  bool x_lo = true;
  bool x_hi = true;
  bool y_lo = true;
  bool y_hi = true;
};

/// Axis-parallel rectangle with exact endpoints and per-side openness.
struct Rect {
  Rational x_lo, x_hi, y_lo, y_hi;
  Openness open;
  std::optional<RectTag> tag;

  bool contains(const Point2& p) const;
  Rational area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
};

/// Closed-interval containment of projections: x-projection of a inside the
/// x-projection of b, and y-projection of a containing that of b.
bool precedes(const Rect& a, const Rect& b);

/// R^k_{u,v} = (u, u + c^-k) x (v, v + c^(k-d)), open.
Rect build_rect(int k, const DigitString& u, const DigitString& v, int c, int d);

struct Family {
  int c = 0;
  int d = 0;
  int blowup = 1;                 // chain length t
  std::vector<Rect> rects;
  std::vector<std::size_t> base;  // index of the unblown member each rect came from

  std::size_t size() const { return rects.size(); }
};

/// All R^k_{u,v} with u_k = v_{d-k}; ordered by k, then u, then v.
Family build_family(int c, int d);

/// Groups of c siblings among levels 1..d-1, each sorted by shared last digit.
std::vector<IndexSet> sibling_groups(const Family& f);

/// Cell centers ((2i+1)/(2c^d), (2j+1)/(2c^d)) in row-major order (j outer).
std::vector<Point2> witness_points(const Family& f);

/// Dual range space over the witness grid, with one representative witness
/// cell per distinct range.
struct DualSpace {
  RangeSpace space;
  std::vector<std::pair<std::int64_t, std::int64_t>> witness_cell;  // (i, j) per range

  Point2 witness(std::size_t range_index, const Family& f) const;
};

/// Builds the dual by bucketing each rectangle's covered grid cells; also
/// checks that no witness lies on a rectangle boundary.
DualSpace dual_space_with_witnesses(const Family& f);
RangeSpace dual_space(const Family& f);

/// Primal space: ground = witness points, one range per rectangle.
RangeSpace primal_space(const Family& f);

/// (r-1) (c-1)/(c-2) c^(d-1). Throws for c <= 2.
Rational max_independent_bound(int c, int d, int r);

/// Which dual ranges I may not swallow: all of size >= r (the reading the
/// lower-bound argument needs) or only those of size exactly r.
enum class IndependenceReading { kAtLeast, kExactly };

struct IndependenceVerdict {
  bool independent = true;
  std::optional<Point2> witness;
  std::optional<IndexSet> range;
};

IndependenceVerdict is_r_independent(const Family& f, const IndexSet& chosen, int r,
                                     IndependenceReading reading = IndependenceReading::kAtLeast);
IndependenceVerdict is_r_independent(const Family& f, const DualSpace& dual,
                                     const IndexSet& chosen, int r,
                                     IndependenceReading reading = IndependenceReading::kAtLeast);

/// Rectangles outside `chosen` all of whose siblings are in `chosen`.
IndexSet bad_rectangles(const Family& f, const IndexSet& chosen);

/// |I| <= (r-1)|B| + (r-1)c^(d-1). Throws std::invalid_argument when I is not
/// r-independent.
bool verify_inequality_x(const Family& f, const IndexSet& chosen, int r);
bool verify_inequality_x(const Family& f, const DualSpace& dual, const IndexSet& chosen, int r);

struct LowerBoundParameters {
  int r = 0;
  int c = 0;
  int d = 0;
};

/// r = ceil(log2(1/eps) / 6), c = 4, d = 3r - 4, for 0 < eps < 2^-6.
LowerBoundParameters lower_bound_parameters(const Rational& eps);

/// Largest eps of the form 2^-k mapped to r by lower_bound_parameters: 2^-(6r-5).
Rational lower_bound_epsilon(int r);

/// Replaces each rectangle (a,b)x(e,f) by the chain
/// R_i = (a+(t-i)s, b-(t-i)s) x (e+(i-1)s, f-(i-1)s), i = 1..t, s = c^-d/(4t).
Family chain_blowup(const Family& f, int t);

}  // namespace epsnet
