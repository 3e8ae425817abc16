#include "epsnet/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "epsnet/construction.hpp"
#include "epsnet/duality.hpp"
#include "epsnet/random_construction.hpp"
#include "epsnet/rng.hpp"

namespace epsnet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void add_check(Report& report, const std::string& name, bool ok, Report detail = Report::object()) {
  Report entry = Report::object();
  entry["name"] = name;
  entry["passed"] = ok;
  if (!detail.empty()) entry["detail"] = std::move(detail);
  report["checks"].push_back(std::move(entry));
  if (!ok) report["passed"] = false;
}

Report new_report(const std::string& kind) {
  Report r = Report::object();
  r["report"] = kind;
  r["passed"] = true;
  r["checks"] = Report::array();
  return r;
}

// Bitmask enumeration oracle for small families: largest set containing no
// target range.
std::size_t brute_force_max_independent(std::size_t n, const RangeSpace& targets) {
  std::vector<std::uint32_t> masks;
  for (const auto& r : targets.ranges()) {
    std::uint32_t m = 0;
    for (Index e : r) m |= 1u << e;
    masks.push_back(m);
  }
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (auto m : masks) {
      if ((s & m) == m) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(s)));
  }
  return best;
}

Rational random_positive_rational(Rng& rng, std::uint64_t max_num, std::uint64_t max_den) {
  return make_rational(static_cast<std::int64_t>(1 + rng.uniform(max_num)),
                       static_cast<std::int64_t>(1 + rng.uniform(max_den)));
}

}  // namespace

Rational GrowthRow::normalized_bound() const {
  return eps * Rational(static_cast<unsigned long>(lower_bound));
}

std::vector<GrowthRow> growth_table(int r_min, int r_max, GrowthModes modes,
                                    std::uint64_t budget, std::uint64_t seed) {
  if (r_min < 2 || r_max < r_min) throw std::invalid_argument("growth table needs 2 <= r-min <= r-max");
  std::vector<GrowthRow> rows;
  for (int r = r_min; r <= r_max; ++r) {
    GrowthRow row;
    row.eps = lower_bound_epsilon(r);
    const auto params = lower_bound_parameters(row.eps);
    row.r = params.r;
    row.c = params.c;
    row.d = params.d;
    auto start = Clock::now();
    const Family f = build_family(params.c, params.d);
    const DualSpace dual = dual_space_with_witnesses(f);
    const RangeSpace heavy = heavy_ranges(dual.space, row.eps);
    row.n_rects = f.size();
    row.build_seconds = seconds_since(start);

    start = Clock::now();
    // Any eps-net's complement is r-independent because eps |R| < r.
    if (r == 2) {
      const OptResult mi = max_r_independent(dual, r, budget);
      row.lower_bound = f.size() - mi.upper_bound;
      row.certified = mi.optimal;
      row.certificate = "exact-independence";
    } else {
      const Rational bound = max_independent_bound(params.c, params.d, r);
      const mpz_class floor_bound = bound.get_num() / bound.get_den();
      row.lower_bound = f.size() - floor_bound.get_ui();
      row.certified = true;
      row.certificate = "independence-bound";
    }
    if (modes.greedy) row.greedy_size = greedy_hitting_set(heavy).size();
    if (modes.exact && r == 2) {
      const OptResult net = exact_min_hitting_set(heavy, budget);
      if (net.optimal) row.exact_size = net.size;
      else row.certified = false;
    }
    if (modes.sample) {
      row.sample_size = hw_sample_net(dual.space, row.eps, make_rational(1, 10), seed).net.size();
    }
    row.solve_seconds = seconds_since(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_growth_csv(std::ostream& out, const std::vector<GrowthRow>& rows) {
  out << "eps,r,c,d,n_rects,lower_bound,certificate,certified,greedy_size,exact_size,"
         "sample_size,eps_times_lower_bound,half_r,build_seconds,solve_seconds\n";
  for (const auto& row : rows) {
    out << row.eps.get_str() << ',' << row.r << ',' << row.c << ',' << row.d << ',' << row.n_rects
        << ',' << row.lower_bound << ',' << row.certificate << ',' << (row.certified ? 1 : 0) << ','
        << row.greedy_size << ',' << (row.exact_size ? std::to_string(*row.exact_size) : "") << ','
        << (row.sample_size ? std::to_string(*row.sample_size) : "") << ','
        << row.normalized_bound().get_str() << ',' << make_rational(row.r, 2).get_str() << ','
        << row.build_seconds << ',' << row.solve_seconds << '\n';
  }
}

IndexSet random_subset(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw std::invalid_argument("subset larger than ground set");
  Rng rng(seed);
  IndexSet all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Index>(i);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform(n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

FalsifyReport falsify_small_nets(const RangeSpace& rs, const Rational& eps, std::size_t size,
                                 std::size_t samples, std::uint64_t seed) {
  FalsifyReport rep;
  rep.size = size;
  rep.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const IndexSet candidate = random_subset(rs.ground_size(), size, mix64(seed) ^ mix64(s + 1));
    const NetVerdict v = is_epsilon_net(rs, eps, candidate);
    if (v.is_net) {
      throw std::runtime_error("a candidate of size " + std::to_string(size) +
                               " is an eps-net, contradicting the certified minimum");
    }
    ++rep.failures;
    rep.candidates.push_back(candidate);
    rep.witnesses.push_back(*v.witness);
  }
  return rep;
}

Report verify_independence_bound(int c, int d, int r, std::uint64_t budget) {
  Report rep = new_report("lemma21");
  rep["c"] = c;
  rep["d"] = d;
  rep["r"] = r;
  const Family f = build_family(c, d);
  const DualSpace dual = dual_space_with_witnesses(f);
  const Rational bound = max_independent_bound(c, d, r);
  const OptResult mi = max_r_independent(dual, r, budget);
  rep["n"] = f.size();
  rep["bound"] = bound.get_str();
  rep["max_independent"] = mi.size;
  rep["max_independent_upper_bound"] = mi.upper_bound;
  rep["optimal"] = mi.optimal;
  rep["nodes"] = mi.nodes_explored;
  rep["independent_set"] = mi.solution;
  add_check(rep, "solver_set_is_independent", is_r_independent(f, dual, mi.solution, r).independent);
  add_check(rep, "max_independent_within_bound", Rational(static_cast<unsigned long>(mi.upper_bound)) <= bound);

  const RangeSpace targets = ranges_of_size(dual.space, static_cast<std::size_t>(r));
  if (f.size() <= 20) {
    const std::size_t brute = brute_force_max_independent(f.size(), targets);
    rep["exhaustive_max_independent"] = brute;
    add_check(rep, "solver_matches_exhaustive", mi.optimal && brute == mi.size);

    // Inequality (r-1)|B| + (r-1)c^(d-1) over every independent set.
    std::vector<std::uint32_t> masks;
    for (const auto& t : targets.ranges()) {
      std::uint32_t m = 0;
      for (Index e : t) m |= 1u << e;
      masks.push_back(m);
    }
    std::size_t checked = 0, violations = 0;
    for (std::uint32_t s = 0; s < (1u << f.size()); ++s) {
      if (std::any_of(masks.begin(), masks.end(), [&](std::uint32_t m) { return (s & m) == m; })) continue;
      IndexSet chosen;
      for (std::size_t e = 0; e < f.size(); ++e) {
        if (s >> e & 1u) chosen.push_back(static_cast<Index>(e));
      }
      ++checked;
      if (!verify_inequality_x(f, dual, chosen, r)) ++violations;
    }
    add_check(rep, "inequality_on_all_independent_sets", violations == 0,
              Report{{"independent_sets", checked}, {"violations", violations}});
  } else {
    add_check(rep, "inequality_on_solver_set", verify_inequality_x(f, dual, mi.solution, r));
  }
  return rep;
}

Report verify_staged_intervals(std::size_t n, std::size_t r, std::size_t i_size, std::size_t trials,
                      std::uint64_t seed) {
  Report rep = new_report("lemma31");
  rep["n"] = n;
  rep["r"] = r;
  rep["i_size"] = i_size;
  rep["trials"] = trials;
  rep["seed"] = seed;
  const IndexSet chosen = random_subset(n, i_size, mix64(seed ^ 0x1111));
  const Bitset in_i = to_bitset(n, chosen);
  const int stages = stage_count(n, r);
  rep["stages"] = stages;

  // Count inequalities on one sampled point set, every stage.
  const StagedPointSet p = sample_points(n, std::max(stages, 1), seed);
  Report per_stage = Report::array();
  bool counts_ok = true;
  std::optional<std::pair<int, CarvedInterval>> probe;
  for (int t = 1; t <= stages; ++t) {
    const CarvedStage stage = carve_stage(p, t, in_i, r);
    const StageCounts sc = classify_and_count(stage, i_size, r, n);
    counts_ok = counts_ok && sc.all_ok();
    per_stage.push_back({{"t", t}, {"parts", sc.parts}, {"intervals", sc.total}, {"good", sc.good},
                         {"bad", sc.bad}, {"preconditions", sc.preconditions}, {"ok", sc.all_ok()}});
    for (const auto& g : stage.intervals) {
      if (g.good && !probe) probe = std::make_pair(t, g);
    }
  }
  rep["stage_counts"] = per_stage;
  add_check(rep, "stage_count_inequalities", counts_ok);

  if (probe) {
    const auto& [t, g] = *probe;
    const std::size_t s = g.interval.members.size();
    // Redraw the stage-t digits of the interval's members.
    StagedPointSet q = p;
    Rng rng(mix64(seed ^ 0x2222));
    std::size_t fails = 0;
    for (std::size_t k = 0; k < trials; ++k) {
      for (Index i : g.interval.members) q.set_digit(i, t, rng.bit() ? 1 : 0);
      fails += interval_fails(q, g.interval, in_i, t);
    }
    const double prob = std::ldexp(1.0, -static_cast<int>(s));
    const double freq = trials ? static_cast<double>(fails) / static_cast<double>(trials) : 0.0;
    const double sigma = trials ? std::sqrt(prob * (1 - prob) / static_cast<double>(trials)) : 0.0;
    add_check(rep, "interval_failure_frequency_within_3_sigma",
              trials > 0 && std::abs(freq - prob) <= 3 * sigma,
              Report{{"stage", t}, {"interval_size", s}, {"expected", prob}, {"observed", freq},
                     {"sigma", sigma}});

    // Forced failure: the witness rectangle isolates exactly the r non-I members.
    StagedPointSet forced = p;
    for (Index i : g.interval.members) forced.set_digit(i, t, in_i.test(i) ? 1 : 0);
    const Rect w = witness_rectangle(forced, g.interval, g.x, t);
    IndexSet inside;
    for (std::size_t i = 0; i < n; ++i) {
      if (w.contains(forced.point(i))) inside.push_back(static_cast<Index>(i));
    }
    const bool misses_i = std::none_of(inside.begin(), inside.end(), [&](Index i) { return in_i.test(i); });
    add_check(rep, "forced_failure_witness",
              interval_fails(forced, g.interval, in_i, t) && inside == g.interval.outside &&
                  inside.size() == r && misses_i,
              Report{{"points_inside", inside.size()}});
  }

  const SurvivalReport sr = survival_estimate(n, r, chosen, std::min<std::size_t>(trials, 10000), seed);
  rep["survival"] = {{"trials", sr.trials},
                     {"survived", sr.survived},
                     {"frequency", sr.frequency},
                     {"std_error", sr.std_error},
                     {"per_stage_bound", sr.per_stage_bound},
                     {"all_stage_bound", sr.all_stage_bound}};
  if (2 * i_size <= n) {
    add_check(rep, "survival_below_analytic_bound",
              sr.frequency <= sr.all_stage_bound + 3 * sr.std_error + 1e-12);
  }
  return rep;
}

Report verify_vc(const RangeSpace& rs, int max_d, std::optional<int> expect) {
  Report rep = new_report("vc");
  const int vc = vc_dimension(rs, max_d);
  rep["max_d"] = max_d;
  rep["vc_dimension"] = vc;
  rep["at_cap"] = vc == max_d;
  if (expect) add_check(rep, "vc_dimension_matches", vc == *expect, Report{{"expected", *expect}});
  return rep;
}

Report verify_duality(int c, int d, std::size_t pairs, std::uint64_t seed) {
  Report rep = new_report("duality");
  Rng rng(seed);
  std::size_t mismatches = 0, inside = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    Rational a = random_positive_rational(rng, 40, 8), b = random_positive_rational(rng, 40, 8);
    Rational e = random_positive_rational(rng, 40, 8), g = random_positive_rational(rng, 40, 8);
    if (a == b) b += 1;
    if (e == g) g += 1;
    Rect r;
    r.x_lo = std::min(a, b);
    r.x_hi = std::max(a, b);
    r.y_lo = std::min(e, g);
    r.y_hi = std::max(e, g);
    r.open = Openness{false, false, false, false};
    // Some queries land exactly on the rectangle boundary.
    Point2 q{random_positive_rational(rng, 40, 8), random_positive_rational(rng, 40, 8)};
    if (rng.uniform(8) == 0) q.x = r.x_hi;
    if (rng.uniform(8) == 0) q.y = r.y_lo;
    const bool direct = r.contains(q);
    const bool lifted = query_box(q).contains(rect_to_point4(r));
    inside += direct;
    mismatches += direct != lifted;
  }
  add_check(rep, "incidence_equivalence", mismatches == 0,
            Report{{"pairs", pairs}, {"inside", inside}, {"mismatches", mismatches}});

  const Family f = build_family(c, d);
  const BoxLiftInstance inst = box_lift_instance(f);
  const RangeSpace boxes = box_incidence_space(inst.points, inst.boxes);
  const RangeSpace dual = dual_space(f);
  add_check(rep, "box_space_isomorphic_to_dual", boxes == dual,
            Report{{"c", c}, {"d", d}, {"ranges", dual.num_ranges()}});
  return rep;
}

Report verify_box_halfspace_emulation(std::size_t sets, std::size_t boxes_per_set, std::uint64_t seed) {
  Report rep = new_report("lemma23");
  Rng rng(seed);
  std::size_t mismatches = 0, comparisons = 0;
  bool origin_ok = true;
  for (std::size_t s = 0; s < sets; ++s) {
    const std::size_t m = 1 + rng.uniform(4);
    const std::size_t n = 1 + rng.uniform(50);
    std::vector<PointD> pts(n);
    for (auto& p : pts) {
      for (std::size_t i = 0; i < m; ++i) p.coords.push_back(random_positive_rational(rng, 12, 4));
    }
    const RescaledPoints rp = rescale_for_halfspaces(pts, m);
    for (std::size_t b = 0; b < boxes_per_set; ++b) {
      CornerBox box;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& axis = rp.original[i];
        const std::size_t pick = rng.uniform(axis.size() + 2);
        if (pick < axis.size()) box.uppers.push_back(axis[pick]);
        else box.uppers.push_back(random_positive_rational(rng, 12, 4));
      }
      const HalfSpace h = halfspace_from_box(snap_box(box, rp), rp.rescaled, m);
      origin_ok = origin_ok && h.rhs >= 0;
      for (std::size_t i = 0; i < n; ++i) {
        ++comparisons;
        mismatches += box.contains(pts[i]) != h.contains(rp.points[i]);
      }
    }
  }
  add_check(rep, "box_equals_halfspace_after_rescaling", mismatches == 0,
            Report{{"sets", sets}, {"boxes_per_set", boxes_per_set}, {"comparisons", comparisons},
                   {"mismatches", mismatches}});
  add_check(rep, "halfspaces_contain_origin", origin_ok);
  return rep;
}

}  // namespace epsnet
