#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "epsnet/construction.hpp"
#include "epsnet/duality.hpp"
#include "epsnet/random_construction.hpp"
#include "epsnet/rangespace.hpp"
#include "epsnet/solver.hpp"

namespace epsnet {

using Json = nlohmann::ordered_json;

inline constexpr int kInstanceVersion = 1;

/// On-disk instance: kind is one of pat, pat-blowup, dual4, halfspace, random.
/// Exact rationals are stored as {"num": "...", "den": "..."}.
struct InstanceFile {
  std::string kind;
  Json params = Json::object();
  std::optional<Family> family;             // pat, pat-blowup
  std::vector<PointD> points;               // dual4, halfspace
  std::vector<CornerBox> boxes;             // dual4
  std::vector<HalfSpace> halfspaces;        // halfspace
  std::optional<StagedPointSet> staged;     // random
  std::optional<RangeSpace> range_space;    // optional precomputed ranges
};

Json rational_to_json(const Rational& q);
/// `field` names the offending entry in error messages.
Rational rational_from_json(const Json& j, const std::string& field);

Json instance_to_json(const InstanceFile& inst);
/// Throws std::invalid_argument naming the offending field.
InstanceFile instance_from_json(const Json& j);

InstanceFile load_instance(const std::string& path);
void save_json(const std::string& path, const Json& j);

/// The stored range space, or one rebuilt from the geometry payload.
RangeSpace resolve_range_space(const InstanceFile& inst);

InstanceFile make_pat_instance(int c, int d, int blowup, bool embed_ranges = true);
InstanceFile make_dual4_instance(const InstanceFile& pat);
InstanceFile make_halfspace_instance(const InstanceFile& pat);
InstanceFile make_random_instance(std::size_t n, std::size_t r, std::uint64_t seed);

Json opt_result_to_json(const OptResult& res);

}  // namespace epsnet
