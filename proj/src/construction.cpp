#include "epsnet/construction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace epsnet {

DigitString::DigitString(int base_, std::vector<int> digits_)
    : base(base_), digits(std::move(digits_)) {
  if (base < 2) throw std::invalid_argument("digit string base must be >= 2");
  for (int x : digits) {
    if (x < 0 || x >= base) {
      throw std::invalid_argument("digit " + std::to_string(x) + " outside base " +
                                  std::to_string(base));
    }
  }
}

std::string DigitString::str() const {
  if (digits.empty()) return "-";
  std::string s;
  for (int x : digits) s += std::to_string(x);
  return s;
}

Rational eval_fraction(const DigitString& x) {
  Rational sum = 0;
  Rational scale = 1;
  for (int digit : x.digits) {
    scale /= x.base;
    sum += scale * digit;
  }
  return sum;
}

std::string RectTag::str() const {
  std::string s = std::to_string(k) + ":" + u.str() + ":" + v.str();
  if (chain != 1) s += "#" + std::to_string(chain);
  return s;
}

bool Rect::contains(const Point2& p) const {
  const bool in_x = (open.x_lo ? p.x > x_lo : p.x >= x_lo) && (open.x_hi ? p.x < x_hi : p.x <= x_hi);
  if (!in_x) return false;
  return (open.y_lo ? p.y > y_lo : p.y >= y_lo) && (open.y_hi ? p.y < y_hi : p.y <= y_hi);
}

bool precedes(const Rect& a, const Rect& b) {
  return b.x_lo <= a.x_lo && a.x_hi <= b.x_hi && a.y_lo <= b.y_lo && b.y_hi <= a.y_hi;
}

Rect build_rect(int k, const DigitString& u, const DigitString& v, int c, int d) {
  if (k < 0 || k > d) throw std::invalid_argument("level k outside [0, d]");
  if (u.length() != static_cast<std::size_t>(k) || v.length() != static_cast<std::size_t>(d - k)) {
    throw std::invalid_argument("digit string lengths do not match level " + std::to_string(k));
  }
  if (u.base != c || v.base != c) throw std::invalid_argument("digit string base differs from c");
  Rect r;
  r.x_lo = eval_fraction(u);
  r.x_hi = r.x_lo + inverse_power(c, static_cast<unsigned>(k));
  r.y_lo = eval_fraction(v);
  r.y_hi = r.y_lo + inverse_power(c, static_cast<unsigned>(d - k));
  r.tag = RectTag{k, u, v, 1};
  return r;
}

namespace {

// All strings of the given length in lexicographic order.
std::vector<DigitString> all_strings(int c, int length) {
  std::vector<DigitString> out;
  std::vector<int> digits(length, 0);
  for (;;) {
    out.emplace_back(c, digits);
    int pos = length - 1;
    while (pos >= 0 && digits[pos] == c - 1) digits[pos--] = 0;
    if (pos < 0) break;
    ++digits[pos];
  }
  return out;
}

}  // namespace

Family build_family(int c, int d) {
  if (c < 2) throw std::invalid_argument("family needs c >= 2");
  if (d < 1) throw std::invalid_argument("family needs d >= 1");
  Family f;
  f.c = c;
  f.d = d;
  for (int k = 0; k <= d; ++k) {
    const auto us = all_strings(c, k);
    const auto vs = all_strings(c, d - k);
    for (const auto& u : us) {
      for (const auto& v : vs) {
        if (u.digit(k) != v.digit(d - k)) continue;
        f.base.push_back(f.rects.size());
        f.rects.push_back(build_rect(k, u, v, c, d));
      }
    }
  }
  return f;
}

std::vector<IndexSet> sibling_groups(const Family& f) {
  using Key = std::tuple<int, std::vector<int>, std::vector<int>, int>;
  std::map<Key, IndexSet> groups;
  for (std::size_t i = 0; i < f.rects.size(); ++i) {
    const auto& tag = f.rects[i].tag;
    if (!tag) throw std::invalid_argument("sibling groups need tagged rectangles");
    if (tag->k == 0 || tag->k == f.d) continue;
    Key key{tag->k,
            std::vector<int>(tag->u.digits.begin(), tag->u.digits.end() - 1),
            std::vector<int>(tag->v.digits.begin(), tag->v.digits.end() - 1), tag->chain};
    groups[key].push_back(static_cast<Index>(i));
  }
  std::vector<IndexSet> out;
  out.reserve(groups.size());
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(), [&](Index a, Index b) {
      return f.rects[a].tag->u.last() < f.rects[b].tag->u.last();
    });
    out.push_back(std::move(members));
  }
  return out;
}

namespace {

std::int64_t grid_side(const Family& f) { return ipow(f.c, static_cast<unsigned>(f.d)); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Witness cell index range [first, last] along one axis. Coordinates are
// scaled by 4t c^d so that witness i sits at 4t i + 2t.
std::pair<std::int64_t, std::int64_t> covered_cells(std::int64_t lo, std::int64_t hi,
                                                    std::int64_t t, std::int64_t side) {
  const std::int64_t step = 4 * t;
  for (std::int64_t e : {lo, hi}) {
    const std::int64_t rem = ((e - 2 * t) % step + step) % step;
    if (rem == 0) {
      const std::int64_t i = (e - 2 * t) / step;
      if (i >= 0 && i < side) {
        throw std::logic_error("witness cell center lies on a rectangle boundary");
      }
    }
  }
  std::int64_t first = floor_div(lo - 2 * t, step) + 1;
  std::int64_t last = -floor_div(-(hi - 2 * t), step) - 1;  // ceil(..) - 1
  first = std::max<std::int64_t>(first, 0);
  last = std::min<std::int64_t>(last, side - 1);
  return {first, last};
}

struct VectorHash {
  std::size_t operator()(const IndexSet& v) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Index x : v) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

struct CellBox {
  std::int64_t i0, i1, j0, j1;
};

std::vector<CellBox> cell_boxes(const Family& f) {
  const std::int64_t side = grid_side(f);
  const std::int64_t t = f.blowup;
  const Rational scale = Rational(4 * t) * Rational(side);
  std::vector<CellBox> out;
  out.reserve(f.rects.size());
  for (const auto& r : f.rects) {
    auto [i0, i1] = covered_cells(to_int64_exact(r.x_lo * scale), to_int64_exact(r.x_hi * scale), t, side);
    auto [j0, j1] = covered_cells(to_int64_exact(r.y_lo * scale), to_int64_exact(r.y_hi * scale), t, side);
    out.push_back({i0, i1, j0, j1});
  }
  return out;
}

Point2 cell_center(std::int64_t i, std::int64_t j, std::int64_t side) {
  return Point2{make_rational(2 * i + 1, 2 * side), make_rational(2 * j + 1, 2 * side)};
}

std::vector<std::string> rect_labels(const Family& f) {
  std::vector<std::string> labels;
  labels.reserve(f.rects.size());
  for (const auto& r : f.rects) labels.push_back(r.tag ? r.tag->str() : std::string());
  return labels;
}

}  // namespace

std::vector<Point2> witness_points(const Family& f) {
  if (f.rects.empty()) return {};
  const std::int64_t side = grid_side(f);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(side * side));
  for (std::int64_t j = 0; j < side; ++j) {
    for (std::int64_t i = 0; i < side; ++i) pts.push_back(cell_center(i, j, side));
  }
  for (auto& p : pts) {
    p.x.canonicalize();
    p.y.canonicalize();
  }
  return pts;
}

Point2 DualSpace::witness(std::size_t range_index, const Family& f) const {
  auto [i, j] = witness_cell.at(range_index);
  Point2 p = cell_center(i, j, grid_side(f));
  p.x.canonicalize();
  p.y.canonicalize();
  return p;
}

DualSpace dual_space_with_witnesses(const Family& f) {
  DualSpace out;
  if (f.rects.empty()) {
    out.space = RangeSpace::from_incidences(0, {});
    return out;
  }
  const std::int64_t side = grid_side(f);
  const std::size_t cells = static_cast<std::size_t>(side * side);
  const auto boxes = cell_boxes(f);

  // Two-pass CSR fill; rectangles are visited in index order so each cell's
  // list comes out sorted.
  std::vector<std::uint32_t> offset(cells + 1, 0);
  for (const auto& b : boxes) {
    for (std::int64_t j = b.j0; j <= b.j1; ++j) {
      for (std::int64_t i = b.i0; i <= b.i1; ++i) ++offset[static_cast<std::size_t>(j * side + i) + 1];
    }
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<Index> members(offset.back());
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (std::size_t r = 0; r < boxes.size(); ++r) {
    const auto& b = boxes[r];
    for (std::int64_t j = b.j0; j <= b.j1; ++j) {
      for (std::int64_t i = b.i0; i <= b.i1; ++i) {
        members[cursor[static_cast<std::size_t>(j * side + i)]++] = static_cast<Index>(r);
      }
    }
  }

  std::unordered_map<IndexSet, std::size_t, VectorHash> first_cell;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    IndexSet r(members.begin() + offset[cell], members.begin() + offset[cell + 1]);
    first_cell.emplace(std::move(r), cell);
  }
  std::vector<std::pair<IndexSet, std::size_t>> distinct(first_cell.begin(), first_cell.end());
  std::sort(distinct.begin(), distinct.end());
  std::vector<IndexSet> ranges;
  ranges.reserve(distinct.size());
  for (auto& [r, cell] : distinct) {
    const auto cs = static_cast<std::int64_t>(cell);
    out.witness_cell.emplace_back(cs % side, cs / side);
    ranges.push_back(std::move(r));
  }
  out.space = RangeSpace::from_incidences(f.rects.size(), std::move(ranges), rect_labels(f));
  return out;
}

RangeSpace dual_space(const Family& f) { return dual_space_with_witnesses(f).space; }

RangeSpace primal_space(const Family& f) {
  if (f.rects.empty()) return RangeSpace::from_incidences(0, {});
  const std::int64_t side = grid_side(f);
  std::vector<IndexSet> ranges;
  for (const auto& b : cell_boxes(f)) {
    IndexSet r;
    for (std::int64_t j = b.j0; j <= b.j1; ++j) {
      for (std::int64_t i = b.i0; i <= b.i1; ++i) r.push_back(static_cast<Index>(j * side + i));
    }
    ranges.push_back(std::move(r));
  }
  return RangeSpace::from_incidences(static_cast<std::size_t>(side * side), std::move(ranges));
}

Rational max_independent_bound(int c, int d, int r) {
  if (c <= 2) throw std::invalid_argument("independence bound needs c >= 3");
  if (d < 1 || r < 2) throw std::invalid_argument("independence bound needs d >= 1 and r >= 2");
  return Rational(r - 1) * make_rational(c - 1, c - 2) * Rational(ipow(c, static_cast<unsigned>(d - 1)));
}

IndependenceVerdict is_r_independent(const Family& f, const IndexSet& chosen, int r,
                                     IndependenceReading reading) {
  return is_r_independent(f, dual_space_with_witnesses(f), chosen, r, reading);
}

IndependenceVerdict is_r_independent(const Family& f, const DualSpace& dual,
                                     const IndexSet& chosen, int r, IndependenceReading reading) {
  const auto& rs = dual.space;
  const Bitset in = to_bitset(rs.ground_size(), chosen);
  for (std::size_t k = 0; k < rs.num_ranges(); ++k) {
    const std::size_t size = rs.range(k).size();
    const bool counts = reading == IndependenceReading::kAtLeast
                            ? size >= static_cast<std::size_t>(r)
                            : size == static_cast<std::size_t>(r);
    if (counts && rs.mask(k).is_subset_of(in)) {
      return IndependenceVerdict{false, dual.witness(k, f), rs.range(k)};
    }
  }
  return IndependenceVerdict{};
}

IndexSet bad_rectangles(const Family& f, const IndexSet& chosen) {
  const Bitset in = to_bitset(f.size(), chosen);
  IndexSet bad;
  for (const auto& group : sibling_groups(f)) {
    std::size_t inside = 0;
    for (Index m : group) inside += in.test(m);
    if (inside + 1 != group.size()) continue;
    for (Index m : group) {
      if (!in.test(m)) bad.push_back(m);
    }
  }
  std::sort(bad.begin(), bad.end());
  return bad;
}

bool verify_inequality_x(const Family& f, const IndexSet& chosen, int r) {
  return verify_inequality_x(f, dual_space_with_witnesses(f), chosen, r);
}

bool verify_inequality_x(const Family& f, const DualSpace& dual, const IndexSet& chosen, int r) {
  if (!is_r_independent(f, dual, chosen, r).independent) {
    throw std::invalid_argument("inequality check needs an r-independent set");
  }
  const std::size_t bad = bad_rectangles(f, chosen).size();
  const std::int64_t rhs = static_cast<std::int64_t>(r - 1) * static_cast<std::int64_t>(bad) +
                           (r - 1) * ipow(f.c, static_cast<unsigned>(f.d - 1));
  return static_cast<std::int64_t>(chosen.size()) <= rhs;
}

LowerBoundParameters lower_bound_parameters(const Rational& eps) {
  if (eps <= 0 || eps >= pow2_inverse(6)) {
    throw std::invalid_argument("lower-bound parameters need 0 < eps < 2^-6, got " + eps.get_str());
  }
  // r = ceil(log2(1/eps) / 6): the least r with 1/eps <= 2^(6r).
  const Rational inv = 1 / eps;
  int r = 1;
  while (Rational(mpz_class(1) << (6 * r)) < inv) ++r;
  LowerBoundParameters p{r, 4, 3 * r - 4};
  const Rational load = eps * Rational((p.d + 1) * ipow(p.c, static_cast<unsigned>(p.d - 1)));
  if (!(load < r)) throw std::logic_error("lower-bound parameters violate eps |R| < r");
  return p;
}

Rational lower_bound_epsilon(int r) {
  if (r < 2) throw std::invalid_argument("lower-bound schedule needs r >= 2");
  return pow2_inverse(static_cast<unsigned>(6 * r - 5));
}

Family chain_blowup(const Family& f, int t) {
  if (t <= 0) throw std::invalid_argument("blow-up multiplier must be positive");
  if (f.blowup != 1) throw std::invalid_argument("family is already blown up");
  Family out;
  out.c = f.c;
  out.d = f.d;
  out.blowup = t;
  const Rational step = inverse_power(f.c, static_cast<unsigned>(f.d)) / (4 * t);
  for (std::size_t b = 0; b < f.rects.size(); ++b) {
    const Rect& r = f.rects[b];
    for (int i = 1; i <= t; ++i) {
      Rect ri = r;
      const Rational shrink_x = step * (t - i);
      const Rational shrink_y = step * (i - 1);
      ri.x_lo = r.x_lo + shrink_x;
      ri.x_hi = r.x_hi - shrink_x;
      ri.y_lo = r.y_lo + shrink_y;
      ri.y_hi = r.y_hi - shrink_y;
      if (ri.tag) ri.tag->chain = i;
      out.rects.push_back(std::move(ri));
      out.base.push_back(b);
    }
  }
  return out;
}

}  // namespace epsnet
