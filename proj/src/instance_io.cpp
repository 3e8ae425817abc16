#include "epsnet/instance_io.hpp"

#include <fstream>
#include <stdexcept>

namespace epsnet {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("instance field '" + field + "': " + why);
}

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad_field(path + key, "missing");
  return j.at(key);
}

int require_int(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_number_integer()) bad_field(path + key, "expected an integer");
  return v.get<int>();
}

Json digits_to_json(const DigitString& s) { return s.digits; }

DigitString digits_from_json(const Json& j, int base, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected a digit array");
  std::vector<int> digits;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad_field(field, "expected integer digits");
    digits.push_back(x.get<int>());
  }
  try {
    return DigitString(base, std::move(digits));
  } catch (const std::invalid_argument& e) {
    bad_field(field, e.what());
  }
}

Json rect_to_json(const Rect& r, std::size_t base) {
  Json j = Json::object();
  j["x_lo"] = rational_to_json(r.x_lo);
  j["x_hi"] = rational_to_json(r.x_hi);
  j["y_lo"] = rational_to_json(r.y_lo);
  j["y_hi"] = rational_to_json(r.y_hi);
  j["open"] = {r.open.x_lo, r.open.x_hi, r.open.y_lo, r.open.y_hi};
  if (r.tag) {
    j["tag"] = {{"k", r.tag->k}, {"u", digits_to_json(r.tag->u)}, {"v", digits_to_json(r.tag->v)},
                {"chain", r.tag->chain}};
  }
  j["base"] = base;
  return j;
}

Rect rect_from_json(const Json& j, int c, const std::string& path) {
  Rect r;
  r.x_lo = rational_from_json(require(j, "x_lo", path), path + "x_lo");
  r.x_hi = rational_from_json(require(j, "x_hi", path), path + "x_hi");
  r.y_lo = rational_from_json(require(j, "y_lo", path), path + "y_lo");
  r.y_hi = rational_from_json(require(j, "y_hi", path), path + "y_hi");
  if (!(r.x_lo < r.x_hi) || !(r.y_lo < r.y_hi)) bad_field(path, "empty rectangle");
  const Json& open = require(j, "open", path);
  if (!open.is_array() || open.size() != 4) bad_field(path + "open", "expected four booleans");
  for (const auto& b : open) {
    if (!b.is_boolean()) bad_field(path + "open", "expected four booleans");
  }
  r.open = Openness{open[0].get<bool>(), open[1].get<bool>(), open[2].get<bool>(), open[3].get<bool>()};
  if (j.contains("tag")) {
    const Json& t = j.at("tag");
    const std::string tp = path + "tag.";
    RectTag tag;
    tag.k = require_int(t, "k", tp);
    tag.u = digits_from_json(require(t, "u", tp), c, tp + "u");
    tag.v = digits_from_json(require(t, "v", tp), c, tp + "v");
    tag.chain = require_int(t, "chain", tp);
    r.tag = std::move(tag);
  }
  return r;
}

Json vector_to_json(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(rational_to_json(q));
  return j;
}

std::vector<Rational> vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Json rational_to_json(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j.at("num").is_string() ||
      !j.at("den").is_string()) {
    bad_field(field, "expected {\"num\": string, \"den\": string}");
  }
  try {
    return parse_rational(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
  } catch (const std::invalid_argument& e) {
    bad_field(field, e.what());
  }
}

Json instance_to_json(const InstanceFile& inst) {
  Json j = Json::object();
  j["version"] = kInstanceVersion;
  j["kind"] = inst.kind;
  j["params"] = inst.params;
  if (inst.family) {
    Json rects = Json::array();
    for (std::size_t i = 0; i < inst.family->rects.size(); ++i) {
      rects.push_back(rect_to_json(inst.family->rects[i], inst.family->base[i]));
    }
    j["rects"] = std::move(rects);
  }
  if (!inst.points.empty()) {
    Json pts = Json::array();
    for (const auto& p : inst.points) pts.push_back(vector_to_json(p.coords));
    j["points"] = std::move(pts);
  }
  if (!inst.boxes.empty()) {
    Json boxes = Json::array();
    for (const auto& b : inst.boxes) boxes.push_back(vector_to_json(b.uppers));
    j["boxes"] = std::move(boxes);
  }
  if (!inst.halfspaces.empty()) {
    Json hs = Json::array();
    for (const auto& h : inst.halfspaces) {
      hs.push_back({{"coefficients", vector_to_json(h.coefficients)}, {"rhs", rational_to_json(h.rhs)}});
    }
    j["halfspaces"] = std::move(hs);
  }
  if (inst.staged) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < inst.staged->size(); ++i) {
      Json row = Json::array();
      for (int t = 1; t <= inst.staged->stages(); ++t) row.push_back(inst.staged->digit(i, t));
      rows.push_back(std::move(row));
    }
    j["digits"] = std::move(rows);
  }
  if (inst.range_space) j["range_space"] = *inst.range_space;
  return j;
}

InstanceFile instance_from_json(const Json& j) {
  if (!j.is_object()) bad_field("<root>", "expected a JSON object");
  const Json& version = require(j, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kInstanceVersion) {
    bad_field("version", "unsupported version");
  }
  InstanceFile inst;
  const Json& kind = require(j, "kind", "");
  if (!kind.is_string()) bad_field("kind", "expected a string");
  inst.kind = kind.get<std::string>();
  if (inst.kind != "pat" && inst.kind != "pat-blowup" && inst.kind != "dual4" &&
      inst.kind != "halfspace" && inst.kind != "random") {
    bad_field("kind", "unknown kind '" + inst.kind + "'");
  }
  inst.params = require(j, "params", "");
  if (!inst.params.is_object()) bad_field("params", "expected an object");

  if (inst.kind == "pat" || inst.kind == "pat-blowup") {
    Family f;
    f.c = require_int(inst.params, "c", "params.");
    f.d = require_int(inst.params, "d", "params.");
    f.blowup = require_int(inst.params, "blowup", "params.");
    if (f.c < 2 || f.d < 1 || f.blowup < 1) bad_field("params", "c >= 2, d >= 1, blowup >= 1 required");
    const Json& rects = require(j, "rects", "");
    if (!rects.is_array()) bad_field("rects", "expected an array");
    for (std::size_t i = 0; i < rects.size(); ++i) {
      const std::string path = "rects[" + std::to_string(i) + "].";
      f.rects.push_back(rect_from_json(rects[i], f.c, path));
      const Json& base = require(rects[i], "base", path);
      if (!base.is_number_integer() || base.get<std::int64_t>() < 0) bad_field(path + "base", "expected an index");
      f.base.push_back(base.get<std::size_t>());
    }
    inst.family = std::move(f);
  }
  if (inst.kind == "dual4" || inst.kind == "halfspace") {
    const Json& pts = require(j, "points", "");
    if (!pts.is_array()) bad_field("points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      inst.points.push_back(PointD{vector_from_json(pts[i], "points[" + std::to_string(i) + "]")});
    }
  }
  if (inst.kind == "dual4") {
    const Json& boxes = require(j, "boxes", "");
    if (!boxes.is_array()) bad_field("boxes", "expected an array");
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      inst.boxes.push_back(CornerBox{vector_from_json(boxes[i], "boxes[" + std::to_string(i) + "]")});
    }
  }
  if (inst.kind == "halfspace") {
    const Json& hs = require(j, "halfspaces", "");
    if (!hs.is_array()) bad_field("halfspaces", "expected an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string path = "halfspaces[" + std::to_string(i) + "].";
      HalfSpace h;
      h.coefficients = vector_from_json(require(hs[i], "coefficients", path), path + "coefficients");
      h.rhs = rational_from_json(require(hs[i], "rhs", path), path + "rhs");
      inst.halfspaces.push_back(std::move(h));
    }
  }
  if (inst.kind == "random") {
    const Json& rows = require(j, "digits", "");
    if (!rows.is_array() || rows.empty()) bad_field("digits", "expected a nonempty array of digit rows");
    const std::size_t stages = rows[0].is_array() ? rows[0].size() : 0;
    std::vector<std::uint8_t> digits;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string field = "digits[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || rows[i].size() != stages) bad_field(field, "rows must share one length");
      for (const auto& x : rows[i]) {
        if (!x.is_number_integer() || (x.get<int>() != 0 && x.get<int>() != 1)) {
          bad_field(field, "digits must be 0 or 1");
        }
        digits.push_back(static_cast<std::uint8_t>(x.get<int>()));
      }
    }
    try {
      inst.staged = StagedPointSet(rows.size(), static_cast<int>(stages), std::move(digits));
    } catch (const std::invalid_argument& e) {
      bad_field("digits", e.what());
    }
  }
  if (j.contains("range_space")) {
    try {
      RangeSpace rs;
      from_json(j.at("range_space"), rs);
      inst.range_space = std::move(rs);
    } catch (const std::exception& e) {
      bad_field("range_space", e.what());
    }
  }
  return inst;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("instance file '" + path + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(j);
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

RangeSpace resolve_range_space(const InstanceFile& inst) {
  if (inst.range_space) return *inst.range_space;
  if (inst.family) return dual_space(*inst.family);
  if (inst.kind == "dual4") return box_incidence_space(inst.points, inst.boxes);
  if (inst.kind == "halfspace") return halfspace_incidence_space(inst.points, inst.halfspaces);
  if (inst.kind == "random" && inst.staged) {
    const Json& r = inst.params.contains("r") ? inst.params.at("r") : Json();
    if (!r.is_number_integer() || r.get<std::int64_t>() < 1) {
      bad_field("params.r", "missing or not a positive integer");
    }
    return dyadic_canonical_ranges(*inst.staged, r.get<std::size_t>());
  }
  throw std::invalid_argument("instance carries no geometry to rebuild ranges from");
}

InstanceFile make_pat_instance(int c, int d, int blowup, bool embed_ranges) {
  InstanceFile inst;
  Family f = build_family(c, d);
  if (blowup > 1) f = chain_blowup(f, blowup);
  inst.kind = blowup > 1 ? "pat-blowup" : "pat";
  inst.params = {{"c", c}, {"d", d}, {"blowup", blowup}};
  if (embed_ranges) inst.range_space = dual_space(f);
  inst.family = std::move(f);
  return inst;
}

namespace {

const Family& require_family(const InstanceFile& pat) {
  if (!pat.family) throw std::invalid_argument("instance field 'kind': expected pat or pat-blowup");
  if (pat.family->blowup != 1) {
    throw std::invalid_argument("instance field 'kind': duality needs an unblown pat instance");
  }
  return *pat.family;
}

}  // namespace

InstanceFile make_dual4_instance(const InstanceFile& pat) {
  const Family& f = require_family(pat);
  const BoxLiftInstance d4 = box_lift_instance(f, WitnessSet::kRepresentatives);
  InstanceFile inst;
  inst.kind = "dual4";
  inst.params = pat.params;
  inst.params["shift"] = rational_to_json(Rational(1));
  inst.points = d4.points;
  inst.boxes = d4.boxes;
  inst.range_space = box_incidence_space(inst.points, inst.boxes);
  return inst;
}

InstanceFile make_halfspace_instance(const InstanceFile& pat) {
  const Family& f = require_family(pat);
  const HalfspaceInstance t3 = halfspace_instance(f, WitnessSet::kRepresentatives);
  InstanceFile inst;
  inst.kind = "halfspace";
  inst.params = pat.params;
  inst.params["dimension"] = 4;
  inst.points = t3.points;
  inst.halfspaces = t3.halfspaces;
  inst.range_space = halfspace_incidence_space(inst.points, inst.halfspaces);
  return inst;
}

InstanceFile make_random_instance(std::size_t n, std::size_t r, std::uint64_t seed) {
  StagedRandomInstance t4 = staged_random_instance(n, r, seed);
  InstanceFile inst;
  inst.kind = "random";
  inst.params = {{"n", n}, {"r", r}, {"seed", seed}, {"stages", t4.points.stages()},
                 {"redraws", t4.redraws}, {"eps", rational_to_json(t4.eps)}};
  inst.staged = std::move(t4.points);
  inst.range_space = std::move(t4.space);
  return inst;
}

Json opt_result_to_json(const OptResult& res) {
  return Json{{"solution", res.solution},
              {"size", res.size},
              {"lower_bound", res.lower_bound},
              {"upper_bound", res.upper_bound},
              {"optimal", res.optimal},
              {"nodes_explored", res.nodes_explored},
              {"wall_time_seconds", res.wall_time.count()}};
}

}  // namespace epsnet
