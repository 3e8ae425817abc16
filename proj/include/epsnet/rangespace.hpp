#pragma once

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsnet/rational.hpp"

namespace epsnet {

using Index = std::uint32_t;
using IndexSet = std::vector<Index>;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// A finite range space (hypergraph) over the ground set {0, ..., n-1}.
///
/// Ranges are kept sorted and deduplicated, in lexicographic order. Each
/// range also carries a dense bitset for fast intersection and subset tests.
/// Values are immutable once built.
class RangeSpace {
 public:
  RangeSpace() = default;

  /// Normalizes (sorts, dedups) the given ranges. Throws
  /// std::out_of_range if an index is >= n, or std::invalid_argument if
  /// labels are given with a length other than n.
  static RangeSpace from_incidences(std::size_t n, std::vector<IndexSet> ranges,
                                    std::vector<std::string> labels = {});

  std::size_t ground_size() const { return n_; }
  std::size_t num_ranges() const { return ranges_.size(); }
  const std::vector<IndexSet>& ranges() const { return ranges_; }
  const IndexSet& range(std::size_t i) const { return ranges_[i]; }
  const Bitset& mask(std::size_t i) const { return masks_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t max_range_size() const;

  friend bool operator==(const RangeSpace& a, const RangeSpace& b) {
    return a.n_ == b.n_ && a.ranges_ == b.ranges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<IndexSet> ranges_;
  std::vector<Bitset> masks_;
  std::vector<std::string> labels_;
};

Bitset to_bitset(std::size_t n, std::span<const Index> set);
IndexSet to_index_set(const Bitset& bits);

/// True iff |range| >= eps * n, compared exactly.
bool is_heavy(std::size_t range_size, std::size_t n, const Rational& eps);

/// Keeps only the inclusion-minimal ranges.
RangeSpace minimalize(const RangeSpace& rs);

/// Ranges of size >= eps * n, reduced to the inclusion-minimal ones. A set
/// hits every heavy range iff it hits every returned range.
RangeSpace heavy_ranges(const RangeSpace& rs, const Rational& eps);

/// Ranges of size >= min_size (or == min_size when exact is set), reduced to
/// the inclusion-minimal ones.
RangeSpace ranges_of_size(const RangeSpace& rs, std::size_t min_size, bool exact = false);

struct NetVerdict {
  bool is_net = true;
  std::optional<IndexSet> witness;  // a heavy range missed by the candidate
};

NetVerdict is_epsilon_net(const RangeSpace& rs, const Rational& eps,
                          std::span<const Index> candidate);

/// Largest k <= cap such that some k-subset of the ground set is shattered.
int vc_dimension(const RangeSpace& rs, int cap);

/// Every element i becomes copies i*t .. i*t+t-1; each range becomes the
/// union of its elements' copies.
RangeSpace replicate_elements(const RangeSpace& rs, std::size_t t);

/// Dual range space of geometric shapes: ground set = shapes, one range per
/// point holding the shapes that contain it.
template <class Point, class Shape, class Contains>
RangeSpace dualize(std::span<const Point> points, std::span<const Shape> shapes,
                   Contains&& contains) {
  std::vector<IndexSet> ranges;
  ranges.reserve(points.size());
  for (const auto& p : points) {
    IndexSet r;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
      if (contains(shapes[s], p)) r.push_back(static_cast<Index>(s));
    }
    ranges.push_back(std::move(r));
  }
  return RangeSpace::from_incidences(shapes.size(), std::move(ranges));
}

void to_json(nlohmann::ordered_json& j, const RangeSpace& rs);
void from_json(const nlohmann::ordered_json& j, RangeSpace& rs);

}  // namespace epsnet
