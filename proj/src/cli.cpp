#include "epsnet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>

#include "epsnet/instance_io.hpp"
#include "epsnet/reports.hpp"

namespace epsnet {

namespace {

struct Options {
  int c = 0, d = 0, blowup = 1, r = 2, r_min = 2, r_max = 3, max_d = 4;
  std::optional<int> expect;
  std::size_t n = 0, r_size = 0, i_size = 0, trials = 0, size = 0, samples = 0;
  std::size_t pairs = 10000, sets = 100, boxes = 100;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string eps, inst, out, mode = "exact", confidence = "1/10", space = "instance";
  bool sample = false, no_exact = false;
};

using Action = std::function<int()>;

std::uint64_t need_seed(const Options& o, const std::string& cmd) {
  if (!o.seed) throw std::invalid_argument(cmd + " is randomized and requires an explicit --seed");
  return *o.seed;
}

// Prints the report, writes it to --out when given, and maps "passed" to the
// exit status.
int emit(const Report& rep, const Options& o, std::ostream& out) {
  if (!o.out.empty()) save_json(o.out, rep);
  out << rep.dump(1) << '\n';
  return rep.value("passed", false) ? 0 : 1;
}

Rational eps_from(const Options& o, const InstanceFile& inst) {
  if (!o.eps.empty()) return parse_rational(o.eps);
  if (inst.params.contains("eps")) {
    const Json& e = inst.params.at("eps");
    if (e.is_string()) return parse_rational(e.get<std::string>());
    return rational_from_json(e, "params.eps");
  }
  throw std::invalid_argument("no --eps given and instance field 'params.eps' is missing");
}

int gen_pat(const Options& o, std::ostream& out) {
  InstanceFile inst = make_pat_instance(o.c, o.d, o.blowup);
  if (!o.eps.empty()) inst.params["eps"] = rational_to_json(parse_rational(o.eps));
  save_json(o.out, instance_to_json(inst));
  out << "wrote " << inst.kind << " instance: " << inst.family->rects.size() << " rectangles, "
      << inst.range_space->num_ranges() << " dual ranges -> " << o.out << '\n';
  return 0;
}

int gen_random(const Options& o, std::ostream& out) {
  const std::uint64_t seed = need_seed(o, "gen random");
  InstanceFile inst = make_random_instance(o.n, o.r_size, seed);
  save_json(o.out, instance_to_json(inst));
  out << "wrote random instance: n=" << o.n << " r=" << o.r_size << ", "
      << inst.range_space->num_ranges() << " ranges -> " << o.out << '\n';
  return 0;
}

int gen_derived(const Options& o, std::ostream& out, bool halfspace) {
  const InstanceFile pat = load_instance(o.inst);
  InstanceFile inst = halfspace ? make_halfspace_instance(pat) : make_dual4_instance(pat);
  save_json(o.out, instance_to_json(inst));
  out << "wrote " << inst.kind << " instance: " << inst.points.size() << " points, "
      << inst.range_space->num_ranges() << " ranges -> " << o.out << '\n';
  return 0;
}

int solve_net(const Options& o, std::ostream& out) {
  const InstanceFile inst = load_instance(o.inst);
  const RangeSpace rs = resolve_range_space(inst);
  const Rational eps = eps_from(o, inst);
  Json result = Json::object();
  result["instance"] = o.inst;
  result["kind"] = inst.kind;
  result["params"] = inst.params;
  result["eps"] = rational_to_json(eps);
  result["mode"] = o.mode;
  IndexSet net;
  if (o.mode == "exact") {
    const OptResult res = min_epsilon_net(rs, eps, o.budget);
    net = res.solution;
    result["budget"] = o.budget;
    result.update(opt_result_to_json(res));
  } else if (o.mode == "greedy") {
    net = greedy_hitting_set(heavy_ranges(rs, eps));
    result["solution"] = net;
    result["size"] = net.size();
  } else if (o.mode == "sample") {
    const std::uint64_t seed = need_seed(o, "solve net --mode sample");
    const SampledNet s = hw_sample_net(rs, eps, parse_rational(o.confidence), seed);
    net = s.net;
    result["seed"] = seed;
    result["confidence"] = rational_to_json(parse_rational(o.confidence));
    result["solution"] = net;
    result["size"] = net.size();
    result["attempts"] = s.attempts;
    result["sample_size"] = s.sample_size;
    result["vc_dim"] = s.vc_dim;
  } else {
    throw std::invalid_argument("--mode must be exact, greedy or sample");
  }
  const bool ok = is_epsilon_net(rs, eps, net).is_net;
  result["is_net"] = ok;
  result["passed"] = ok;
  const std::string path = o.out.empty() ? "result.json" : o.out;
  save_json(path, result);
  out << o.mode << " net size " << net.size() << (ok ? "" : " (NOT a net)") << " -> " << path << '\n';
  return ok ? 0 : 1;
}

int report_falsify(const Options& o, std::ostream& out) {
  const std::uint64_t seed = need_seed(o, "report falsify");
  const InstanceFile inst = load_instance(o.inst);
  const RangeSpace rs = resolve_range_space(inst);
  const Rational eps = eps_from(o, inst);
  Report rep = Report::object();
  rep["report"] = "falsify";
  rep["instance"] = o.inst;
  rep["eps"] = rational_to_json(eps);
  rep["size"] = o.size;
  rep["samples"] = o.samples;
  rep["seed"] = seed;
  try {
    const FalsifyReport f = falsify_small_nets(rs, eps, o.size, o.samples, seed);
    rep["failures"] = f.failures;
    rep["failure_rate"] = o.samples ? static_cast<double>(f.failures) / static_cast<double>(o.samples) : 1.0;
    Json log = Json::array();
    for (std::size_t i = 0; i < f.candidates.size(); ++i) {
      log.push_back({{"candidate", f.candidates[i]}, {"missed_range", f.witnesses[i]}});
    }
    rep["log"] = std::move(log);
    rep["passed"] = f.failures == o.samples;
  } catch (const std::runtime_error& e) {
    rep["passed"] = false;
    rep["error"] = e.what();
  }
  return emit(rep, o, out);
}

int report_growth(const Options& o, std::ostream& out) {
  GrowthModes modes;
  modes.exact = !o.no_exact;
  modes.sample = o.sample;
  const std::uint64_t seed = o.sample ? need_seed(o, "report growth --sample") : 0;
  const auto rows = growth_table(o.r_min, o.r_max, modes, o.budget, seed);
  std::ofstream csv(o.out);
  if (!csv) throw std::runtime_error("cannot write '" + o.out + "'");
  write_growth_csv(csv, rows);
  write_growth_csv(out, rows);
  bool ok = true;
  for (const auto& row : rows) ok = ok && row.certified && row.greedy_size >= row.lower_bound;
  return ok ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower-bound instances for eps-nets: generate, solve, verify, report."};
  app.name("epsnet");
  app.require_subcommand(1);
  Options o;
  Action action;

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->require_subcommand(1);
  auto* gen_pat_cmd = gen->add_subcommand("pat", "rectangle family R(c,d), optionally blown up");
  gen_pat_cmd->add_option("--c", o.c, "base")->required();
  gen_pat_cmd->add_option("--d", o.d, "depth")->required();
  gen_pat_cmd->add_option("--blowup", o.blowup, "chain length t");
  gen_pat_cmd->add_option("--eps", o.eps, "eps stored in the instance, P/Q");
  gen_pat_cmd->add_option("--out", o.out)->required();
  gen_pat_cmd->callback([&] { action = [&] { return gen_pat(o, out); }; });

  auto* gen_random_cmd = gen->add_subcommand("random", "staged random planar point set");
  gen_random_cmd->add_option("--n", o.n)->required();
  gen_random_cmd->add_option("--r", o.r_size)->required();
  gen_random_cmd->add_option("--seed", o.seed);
  gen_random_cmd->add_option("--out", o.out)->required();
  gen_random_cmd->callback([&] { action = [&] { return gen_random(o, out); }; });

  auto* gen_dual4 = gen->add_subcommand("dual4", "points and corner boxes in R^4");
  gen_dual4->add_option("--inst", o.inst)->required();
  gen_dual4->add_option("--out", o.out)->required();
  gen_dual4->callback([&] { action = [&] { return gen_derived(o, out, false); }; });

  auto* gen_half = gen->add_subcommand("halfspace", "points and half-spaces in R^4");
  gen_half->add_option("--inst", o.inst)->required();
  gen_half->add_option("--out", o.out)->required();
  gen_half->callback([&] { action = [&] { return gen_derived(o, out, true); }; });

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->require_subcommand(1);
  auto* net = solve->add_subcommand("net", "eps-net of an instance");
  net->add_option("--inst", o.inst)->required();
  net->add_option("--eps", o.eps, "P/Q; defaults to params.eps");
  net->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "greedy", "sample"}));
  net->add_option("--seed", o.seed);
  net->add_option("--budget", o.budget, "node budget for exact mode");
  net->add_option("--confidence", o.confidence, "failure probability for sample mode");
  net->add_option("--out", o.out, "defaults to result.json");
  net->callback([&] { action = [&] { return solve_net(o, out); }; });

  auto* verify = app.add_subcommand("verify", "check a claimed property and emit a JSON report");
  verify->require_subcommand(1);
  auto* l21 = verify->add_subcommand("lemma21", "max r-independent set against its bound");
  l21->add_option("--c", o.c)->required();
  l21->add_option("--d", o.d)->required();
  l21->add_option("--r", o.r)->required();
  l21->add_option("--budget", o.budget);
  l21->add_option("--out", o.out);
  l21->callback([&] { action = [&] { return emit(verify_independence_bound(o.c, o.d, o.r, o.budget), o, out); }; });

  auto* l31 = verify->add_subcommand("lemma31", "staged interval counts and failure frequencies");
  l31->add_option("--n", o.n)->required();
  l31->add_option("--r", o.r_size)->required();
  l31->add_option("--i-size", o.i_size)->required();
  l31->add_option("--trials", o.trials)->required();
  l31->add_option("--seed", o.seed);
  l31->add_option("--out", o.out);
  l31->callback([&] {
    action = [&] {
      return emit(verify_staged_intervals(o.n, o.r_size, o.i_size, o.trials, need_seed(o, "verify lemma31")), o,
                  out);
    };
  });

  auto* vc = verify->add_subcommand("vc", "VC-dimension of an instance's range space");
  vc->add_option("--inst", o.inst)->required();
  vc->add_option("--max-d", o.max_d);
  vc->add_option("--expect", o.expect);
  vc->add_option("--space", o.space, "instance (stored ranges) or primal (pat only)")
      ->check(CLI::IsMember({"instance", "primal"}));
  vc->add_option("--out", o.out);
  vc->callback([&] {
    action = [&] {
      const InstanceFile inst = load_instance(o.inst);
      RangeSpace rs;
      if (o.space == "primal") {
        if (!inst.family) throw std::invalid_argument("instance field 'kind': primal space needs a pat instance");
        rs = primal_space(*inst.family);
      } else {
        rs = resolve_range_space(inst);
      }
      Report rep = verify_vc(rs, o.max_d, o.expect);
      rep["instance"] = o.inst;
      rep["space"] = o.space;
      return emit(rep, o, out);
    };
  });

  auto* dual = verify->add_subcommand("duality", "rectangle / box duality on random pairs");
  dual->add_option("--c", o.c)->default_val(4);
  dual->add_option("--d", o.d)->default_val(2);
  dual->add_option("--pairs", o.pairs);
  dual->add_option("--seed", o.seed);
  dual->add_option("--out", o.out);
  dual->callback([&] {
    action = [&] { return emit(verify_duality(o.c, o.d, o.pairs, need_seed(o, "verify duality")), o, out); };
  });

  auto* l23 = verify->add_subcommand("lemma23", "box versus half-space traces after rescaling");
  l23->add_option("--sets", o.sets);
  l23->add_option("--boxes", o.boxes);
  l23->add_option("--seed", o.seed);
  l23->add_option("--out", o.out);
  l23->callback([&] {
    action = [&] { return emit(verify_box_halfspace_emulation(o.sets, o.boxes, need_seed(o, "verify lemma23")), o, out); };
  });

  auto* report = app.add_subcommand("report", "tables and falsification runs");
  report->require_subcommand(1);
  auto* growth = report->add_subcommand("growth", "lower-bound growth table as CSV");
  growth->add_option("--r-min", o.r_min);
  growth->add_option("--r-max", o.r_max);
  growth->add_option("--budget", o.budget);
  growth->add_flag("--no-exact", o.no_exact, "skip exact net sizes");
  growth->add_flag("--sample", o.sample, "add a random-sampling net column");
  growth->add_option("--seed", o.seed);
  growth->add_option("--out", o.out)->required();
  growth->callback([&] { action = [&] { return report_growth(o, out); }; });

  auto* falsify = report->add_subcommand("falsify", "random small candidates must all fail");
  falsify->add_option("--inst", o.inst)->required();
  falsify->add_option("--size", o.size)->required();
  falsify->add_option("--samples", o.samples)->required();
  falsify->add_option("--seed", o.seed);
  falsify->add_option("--eps", o.eps);
  falsify->add_option("--out", o.out);
  falsify->callback([&] { action = [&] { return report_falsify(o, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace epsnet
