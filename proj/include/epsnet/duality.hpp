#pragma once

#include <vector>

#include "epsnet/construction.hpp"
#include "epsnet/rangespace.hpp"
#include "epsnet/rational.hpp"

namespace epsnet {

struct PointD {
  std::vector<Rational> coords;
  std::size_t dim() const { return coords.size(); }
};

/// The box prod [0, b_i].
struct CornerBox {
  std::vector<Rational> uppers;
  std::size_t dim() const { return uppers.size(); }
  bool contains(const PointD& p) const;
};

/// sum coefficients_i x_i <= rhs.
struct HalfSpace {
  std::vector<Rational> coefficients;
  Rational rhs;
  bool contains(const PointD& p) const;
};

/// (x_lo, 1/x_hi, y_lo, 1/y_hi) for a rectangle in the open first quadrant.
PointD rect_to_point4(const Rect& r);

/// [0,a] x [0,1/a] x [0,b] x [0,1/b].
CornerBox query_box(const Point2& q);

/// Translates every rectangle by (offset, offset) and closes it.
std::vector<Rect> shift_family(const Family& f, const Rational& offset);

RangeSpace box_incidence_space(const std::vector<PointD>& points, const std::vector<CornerBox>& boxes);
RangeSpace halfspace_incidence_space(const std::vector<PointD>& points,
                                     const std::vector<HalfSpace>& halfspaces);

/// Per-axis sorted distinct coordinate values.
using AxisGrid = std::vector<std::vector<Rational>>;

AxisGrid axis_grid(const std::vector<PointD>& points, std::size_t m);

struct RescaledPoints {
  std::vector<PointD> points;
  AxisGrid original;  // distinct values before rescaling, ascending
  AxisGrid rescaled;  // value j (1-based) became (m+1)^j
};

/// Replaces the j-th smallest distinct value on each axis by (m+1)^j.
RescaledPoints rescale_for_halfspaces(const std::vector<PointD>& points, std::size_t m);

/// Maps a box given in original coordinates onto the rescaled grid: each
/// upper becomes the rescaled image of the largest original value <= it, or
/// rescaled_1 / (m+1) when no such value exists.
CornerBox snap_box(const CornerBox& box, const RescaledPoints& rp);

/// Half-space sum x_i / b_i <= m after snapping each b_i down onto the grid.
/// Throws std::invalid_argument when consecutive grid values are not more
/// than a factor m apart.
HalfSpace halfspace_from_box(const CornerBox& box, const AxisGrid& grid, std::size_t m);

struct BoxLiftInstance {
  std::vector<Rect> shifted;
  std::vector<PointD> points;   // one per rectangle
  std::vector<CornerBox> boxes;  // one per witness
};

enum class WitnessSet { kAll, kRepresentatives };

/// Rectangle family -> points and corner boxes in R^4 (unit shift). Boxes
/// come from every witness cell center, or from one representative witness
/// per distinct dual range.
BoxLiftInstance box_lift_instance(const Family& f, WitnessSet witnesses = WitnessSet::kAll);

struct HalfspaceInstance {
  std::vector<PointD> points;
  std::vector<HalfSpace> halfspaces;
};

/// box_lift_instance followed by rescaling and box -> half-space emulation.
HalfspaceInstance halfspace_instance(const Family& f, WitnessSet witnesses = WitnessSet::kAll);

}  // namespace epsnet
