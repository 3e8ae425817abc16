#include "epsnet/duality.hpp"

#include <algorithm>
#include <stdexcept>

namespace epsnet {

bool CornerBox::contains(const PointD& p) const {
  if (p.dim() != dim()) throw std::invalid_argument("box and point dimensions differ");
  for (std::size_t i = 0; i < uppers.size(); ++i) {
    if (p.coords[i] < 0 || p.coords[i] > uppers[i]) return false;
  }
  return true;
}

bool HalfSpace::contains(const PointD& p) const {
  if (p.dim() != coefficients.size()) throw std::invalid_argument("half-space and point dimensions differ");
  Rational sum = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) sum += coefficients[i] * p.coords[i];
  return sum <= rhs;
}

PointD rect_to_point4(const Rect& r) {
  if (r.x_lo <= 0 || r.y_lo <= 0) {
    throw std::invalid_argument("rectangle must lie in the open first quadrant (shift it first)");
  }
  if (r.open.x_lo || r.open.x_hi || r.open.y_lo || r.open.y_hi) {
    throw std::invalid_argument("corner-box duality needs a closed rectangle");
  }
  return PointD{{r.x_lo, 1 / r.x_hi, r.y_lo, 1 / r.y_hi}};
}

CornerBox query_box(const Point2& q) {
  if (q.x <= 0 || q.y <= 0) throw std::invalid_argument("query point must have positive coordinates");
  return CornerBox{{q.x, 1 / q.x, q.y, 1 / q.y}};
}

std::vector<Rect> shift_family(const Family& f, const Rational& offset) {
  if (offset <= 0) throw std::invalid_argument("shift offset must be positive");
  std::vector<Rect> out;
  out.reserve(f.rects.size());
  for (const auto& r : f.rects) {
    Rect s = r;
    s.x_lo += offset;
    s.x_hi += offset;
    s.y_lo += offset;
    s.y_hi += offset;
    s.open = Openness{false, false, false, false};
    out.push_back(std::move(s));
  }
  return out;
}

RangeSpace box_incidence_space(const std::vector<PointD>& points, const std::vector<CornerBox>& boxes) {
  std::vector<IndexSet> ranges;
  ranges.reserve(boxes.size());
  for (const auto& b : boxes) {
    IndexSet r;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (b.contains(points[i])) r.push_back(static_cast<Index>(i));
    }
    ranges.push_back(std::move(r));
  }
  return RangeSpace::from_incidences(points.size(), std::move(ranges));
}

RangeSpace halfspace_incidence_space(const std::vector<PointD>& points,
                                     const std::vector<HalfSpace>& halfspaces) {
  std::vector<IndexSet> ranges;
  ranges.reserve(halfspaces.size());
  for (const auto& h : halfspaces) {
    IndexSet r;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (h.contains(points[i])) r.push_back(static_cast<Index>(i));
    }
    ranges.push_back(std::move(r));
  }
  return RangeSpace::from_incidences(points.size(), std::move(ranges));
}

AxisGrid axis_grid(const std::vector<PointD>& points, std::size_t m) {
  AxisGrid grid(m);
  for (const auto& p : points) {
    if (p.dim() != m) throw std::invalid_argument("point dimension differs from m");
    for (std::size_t i = 0; i < m; ++i) grid[i].push_back(p.coords[i]);
  }
  for (auto& axis : grid) {
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }
  return grid;
}

RescaledPoints rescale_for_halfspaces(const std::vector<PointD>& points, std::size_t m) {
  for (const auto& p : points) {
    for (const auto& x : p.coords) {
      if (x <= 0) throw std::invalid_argument("rescaling needs strictly positive coordinates");
    }
  }
  RescaledPoints out;
  out.original = axis_grid(points, m);
  out.rescaled.resize(m);
  const Rational ratio(static_cast<long>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    Rational value = 1;
    for (std::size_t j = 0; j < out.original[i].size(); ++j) {
      value *= ratio;
      out.rescaled[i].push_back(value);
    }
  }
  out.points.reserve(points.size());
  for (const auto& p : points) {
    PointD q;
    q.coords.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& axis = out.original[i];
      const auto j = std::lower_bound(axis.begin(), axis.end(), p.coords[i]) - axis.begin();
      q.coords.push_back(out.rescaled[i][static_cast<std::size_t>(j)]);
    }
    out.points.push_back(std::move(q));
  }
  return out;
}

CornerBox snap_box(const CornerBox& box, const RescaledPoints& rp) {
  const std::size_t m = rp.original.size();
  if (box.dim() != m) throw std::invalid_argument("box dimension differs from the grid");
  CornerBox out;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& axis = rp.original[i];
    const auto it = std::upper_bound(axis.begin(), axis.end(), box.uppers[i]);
    if (it == axis.begin()) {
      out.uppers.push_back(rp.rescaled[i].front() / Rational(static_cast<long>(m + 1)));
    } else {
      out.uppers.push_back(rp.rescaled[i][static_cast<std::size_t>(it - axis.begin() - 1)]);
    }
  }
  return out;
}

HalfSpace halfspace_from_box(const CornerBox& box, const AxisGrid& grid, std::size_t m) {
  if (box.dim() != m || grid.size() != m) throw std::invalid_argument("box/grid dimension differs from m");
  const Rational factor(static_cast<long>(m));
  for (const auto& axis : grid) {
    if (axis.empty()) throw std::invalid_argument("empty grid axis");
    if (axis.front() <= 0) throw std::invalid_argument("grid values must be positive");
    for (std::size_t j = 1; j < axis.size(); ++j) {
      if (!(axis[j] > factor * axis[j - 1])) {
        throw std::invalid_argument("grid ratio condition violated: consecutive values " +
                                    axis[j - 1].get_str() + ", " + axis[j].get_str());
      }
    }
  }
  HalfSpace h;
  h.rhs = factor;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& axis = grid[i];
    const auto it = std::upper_bound(axis.begin(), axis.end(), box.uppers[i]);
    const Rational snapped =
        it == axis.begin() ? axis.front() / Rational(static_cast<long>(m + 1)) : *(it - 1);
    h.coefficients.push_back(1 / snapped);
  }
  return h;
}

BoxLiftInstance box_lift_instance(const Family& f, WitnessSet witnesses) {
  const Rational offset = 1;
  BoxLiftInstance out;
  out.shifted = shift_family(f, offset);
  for (const auto& r : out.shifted) out.points.push_back(rect_to_point4(r));
  std::vector<Point2> queries;
  if (witnesses == WitnessSet::kAll) {
    queries = witness_points(f);
  } else {
    const DualSpace dual = dual_space_with_witnesses(f);
    for (std::size_t k = 0; k < dual.space.num_ranges(); ++k) queries.push_back(dual.witness(k, f));
  }
  out.boxes.reserve(queries.size());
  for (auto& q : queries) {
    q.x += offset;
    q.y += offset;
    out.boxes.push_back(query_box(q));
  }
  return out;
}

HalfspaceInstance halfspace_instance(const Family& f, WitnessSet witnesses) {
  constexpr std::size_t m = 4;
  const BoxLiftInstance boxes = box_lift_instance(f, witnesses);
  const RescaledPoints rp = rescale_for_halfspaces(boxes.points, m);
  HalfspaceInstance out;
  out.points = rp.points;
  out.halfspaces.reserve(boxes.boxes.size());
  for (const auto& b : boxes.boxes) {
    out.halfspaces.push_back(halfspace_from_box(snap_box(b, rp), rp.rescaled, m));
  }
  return out;
}

}  // namespace epsnet
