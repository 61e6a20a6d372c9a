// ddchaos: scenario runner and small utilities around the library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ddchaos/errors.hpp"
#include "ddchaos/examples.hpp"
#include "ddchaos/report.hpp"
#include "ddchaos/scenarios.hpp"

namespace fs = std::filesystem;
using namespace ddc;

namespace {

constexpr int kOk = 0, kMismatch = 1, kUsage = 2;

// Inline JSON, or a path to a JSON file.
Json load_json_arg(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw invalid_input("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw invalid_input(std::string("bad JSON: ") + e.what());
  }
}

struct Overrides {
  std::optional<std::int64_t> horizon;
  std::optional<double> delta, sigma, eps;
  std::optional<std::uint64_t> seed;
  std::string config;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--horizon", o.horizon, "trace length K");
  cmd->add_option("--delta", o.delta, "density slack δ");
  cmd->add_option("--sigma", o.sigma, "σ threshold");
  cmd->add_option("--eps", o.eps, "single ε instead of the scenario's list");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--config", o.config, "JSON file with the same keys; flags win");
}

RunOptions resolve(const Overrides& o) {
  RunOptions r;
  if (!o.config.empty()) {
    Json c = load_json_arg(o.config);
    if (!c.is_object()) throw invalid_input("config must be a JSON object");
    try {
      if (c.contains("horizon")) r.horizon = c["horizon"].get<std::int64_t>();
      if (c.contains("delta")) r.delta = c["delta"].get<double>();
      if (c.contains("sigma")) r.sigma = c["sigma"].get<double>();
      if (c.contains("eps")) r.eps = c["eps"].get<double>();
      if (c.contains("seed")) r.seed = c["seed"].get<std::uint64_t>();
    } catch (const Json::exception& e) {
      throw invalid_input(std::string("bad config value: ") + e.what());
    }
  }
  if (o.horizon) r.horizon = o.horizon;
  if (o.delta) r.delta = o.delta;
  if (o.sigma) r.sigma = o.sigma;
  if (o.eps) r.eps = o.eps;
  if (o.seed) r.seed = *o.seed;
  if (r.delta && (*r.delta < 0 || *r.delta >= 1)) throw invalid_input("δ must be in [0, 1)");
  if (r.sigma && !(*r.sigma > 0)) throw invalid_input("σ must be positive");
  if (r.eps && !(*r.eps > 0)) throw invalid_input("ε must be positive");
  return r;
}

const Scenario& require_scenario(const std::string& name) {
  const Scenario* s = find_scenario(name);
  if (!s) throw invalid_input("unknown scenario: " + name + " (see `ddchaos list`)");
  return *s;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw invalid_input("cannot write " + p.string());
  out << text;
  if (!out) throw invalid_input("failed writing " + p.string());
}

std::string trace_csv(const TraceExport& t) {
  std::ostringstream os;
  write_trace_csv(os, t.trace, t.sigma, t.eps, t.rule);
  return os.str();
}

int cmd_run(const std::string& name, const Overrides& ov, const std::string& out_dir) {
  const Scenario& s = require_scenario(name);
  RunOptions opts = resolve(ov);
  ScenarioResult r = s.run(opts);
  std::string json = dump_json(scenario_report(s, opts, r));
  std::cout << json;
  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    write_file(fs::path(out_dir) / (name + ".json"), json);
    if (r.trace) write_file(fs::path(out_dir) / (name + ".csv"), trace_csv(*r.trace));
  }
  if (r.ok()) return kOk;
  for (const auto& c : r.claims)
    if (!c.matches())
      std::cerr << "mismatch: " << c.name << " expected " << std::boolalpha << c.expected
                << " got " << c.actual << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
  return kMismatch;
}

int cmd_trace(const std::string& name, const Overrides& ov, const std::string& path) {
  const Scenario& s = require_scenario(name);
  ScenarioResult r = s.run(resolve(ov));
  if (!r.trace) throw invalid_input("scenario " + name + " has no trace");
  write_file(path, trace_csv(*r.trace));
  return kOk;
}

// {"progressions": [...], "include": [...], "exclude": [...]} or {"blocks": [[l, r], ...], "horizon": H}
int cmd_density(const std::string& arg) {
  Json j = load_json_arg(arg);
  if (!j.is_object()) throw invalid_input("set must be a JSON object");
  DensityRule rule;
  IndexSet set;
  try {
    rule.delta = j.value("delta", 0.0);
    rule.window = j.value("window", std::size_t{0});
    if (j.contains("blocks")) {
      BlockSet b;
      for (const auto& p : j.at("blocks"))
        b.blocks.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
      b.horizon = j.at("horizon").get<std::int64_t>();
      set = b.to_set();
      rule.checkpoints = j.contains("checkpoints")
                             ? j["checkpoints"].get<std::vector<std::int64_t>>()
                             : b.checkpoints();
    } else {
      ExactSet e;
      for (const auto& p : j.value("progressions", Json::array())) {
        ExactSet::Progression pr;
        pr.offset = p.at("offset").get<std::int64_t>();
        pr.step = p.at("step").get<std::int64_t>();
        if (p.contains("start")) pr.start = p["start"].get<std::int64_t>();
        e.progressions.push_back(pr);
      }
      for (auto v : j.value("include", std::vector<std::int64_t>{})) e.include.insert(v);
      for (auto v : j.value("exclude", std::vector<std::int64_t>{})) e.exclude.insert(v);
      e.validate();
      set = e.to_set();
      if (j.contains("checkpoints"))
        rule.checkpoints = j["checkpoints"].get<std::vector<std::int64_t>>();
    }
  } catch (const Json::exception& e) {
    throw invalid_input(std::string("bad set description: ") + e.what());
  }
  Json out;
  out["set"] = to_json(set);
  out["delta"] = rule.delta;
  out["check"] = to_json(check_full_density(set, rule));
  if (!rule.checkpoints.empty()) out["profile"] = to_json(density_profile(set, rule.checkpoints));
  std::cout << dump_json(out);
  return kOk;
}

WeightSequence weight_from(const Json& w) {
  if (w.contains("constant")) return WeightSequence::constant(w["constant"].get<double>());
  if (w.contains("geometric")) return WeightSequence::geometric(w["geometric"].get<int>());
  if (w.contains("factorial_power"))
    return WeightSequence::factorial_power(w["factorial_power"].get<double>());
  if (w.contains("blocks"))
    return WeightSequence::blocks(w["blocks"].get<std::vector<std::int64_t>>(),
                                  w.value("reciprocal", false));
  if (w.contains("square_exponent_pairs"))
    return WeightSequence::blocks(square_exponent_block_lengths(w["square_exponent_pairs"].get<int>()),
                                  w.value("reciprocal", false));
  throw invalid_input("unknown weight description: " + w.dump());
}

SeminormSpace space_from(const Json& s) {
  std::string kind = s.value("kind", "lp");
  if (kind == "lp") return SeminormSpace::lp(s.value("p", 2.0));
  if (kind == "c0") return SeminormSpace::c0();
  throw invalid_input("unsupported space kind: " + kind);
}

SeqVector vector_from(const Json& x) {
  SeqVector v;
  if (x.is_array()) {
    for (const auto& p : x) v.set(p.at(0).get<std::int64_t>(), p.at(1).get<double>());
  } else if (x.contains("power")) {
    double e = x["power"].get<double>();
    auto len = x.at("length").get<std::int64_t>();
    if (len < 1 || len > 1'000'000) throw invalid_input("vector length must be in [1, 1e6]");
    for (std::int64_t n = 1; n <= len; ++n) v.set(n, std::pow(static_cast<double>(n), e));
  } else {
    throw invalid_input("vector must be [[n, v], ...] or {\"power\": e, \"length\": L}");
  }
  return v;
}

// {"family": {"kind": "backward_shift"|"forward_shift", "weights": [...]}, "space": {...},
//  "x": ..., "condition": i, "K": ..., "m": 1, "tol_zero": ..., "delta": ..., "expected": bool}
int cmd_classify(const std::string& arg) {
  Json j = load_json_arg(arg);
  if (!j.is_object()) throw invalid_input("scenario must be a JSON object");
  try {
    const Json& f = j.at("family");
    std::vector<WeightSequence> ws;
    for (const auto& w : f.at("weights")) ws.push_back(weight_from(w));
    std::string kind = f.value("kind", "backward_shift");
    std::unique_ptr<OperatorFamily> fam;
    if (kind == "backward_shift")
      fam = std::make_unique<BackwardShiftFamily>(ws);
    else if (kind == "forward_shift")
      fam = std::make_unique<ForwardShiftFamily>(ws);
    else
      throw invalid_input("unsupported family kind: " + kind);
    SeminormSpace space = space_from(j.value("space", Json::object()));
    SeqVector x = vector_from(j.at("x"));
    int cond = j.value("condition", 1);
    if (cond < 1 || cond > 12) throw invalid_input("condition must be in 1..12");
    std::int64_t K = j.value("K", std::int64_t{200});
    if (K < 1 || K > 1'000'000) throw invalid_input("K must be in [1, 1e6]");
    ClassifyOptions opts;
    opts.tol_zero = j.value("tol_zero", 1e-6);
    opts.rule.delta = j.value("delta", 0.1);
    opts.rule.checkpoints = j.contains("checkpoints")
                                ? j["checkpoints"].get<std::vector<std::int64_t>>()
                                : std::vector<std::int64_t>{K};
    IrregularVerdict v = classify_irregular(*fam, x, cond, space, j.value("m", 1), K, opts);
    Json out;
    out["family"] = fam->describe();
    out["space"] = space.describe();
    out["K"] = K;
    out["verdict"] = to_json(v);
    std::cout << dump_json(out);
    if (j.contains("expected") && j["expected"].get<bool>() != v.holds) return kMismatch;
    return kOk;
  } catch (const Json::exception& e) {
    throw invalid_input(std::string("bad classify input: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddchaos: disjoint distributional chaos scenarios"};
  app.require_subcommand(1);

  std::string name, out, set_arg, scenario_arg;
  Overrides run_ov, trace_ov;

  auto* run = app.add_subcommand("run", "run a registered scenario and print its JSON report");
  run->add_option("name", name, "scenario name")->required();
  run->add_option("--out", out, "directory for <name>.json and <name>.csv");
  add_overrides(run, run_ov);

  app.add_subcommand("list", "list registered scenarios");

  auto* describe = app.add_subcommand("describe", "show a scenario's parameters");
  describe->add_option("name", name, "scenario name")->required();

  auto* trace = app.add_subcommand("trace", "export a scenario's trace as CSV");
  trace->add_option("name", name, "scenario name")->required();
  trace->add_option("--out", out, "CSV path")->required();
  add_overrides(trace, trace_ov);

  auto* density = app.add_subcommand("density", "upper density verdict for a set");
  density->add_option("--set", set_arg, "JSON text or file")->required();

  auto* classify = app.add_subcommand("classify", "classify a vector for an operator family");
  classify->add_option("--scenario", scenario_arg, "JSON text or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(name, run_ov, out);
    if (app.got_subcommand("list")) {
      for (const auto& s : scenario_registry()) std::cout << s.name << "\t" << s.summary << "\n";
      return kOk;
    }
    if (*describe) {
      const Scenario& s = require_scenario(name);
      std::cout << s.name << "\n  " << s.summary << "\n  " << s.details << "\n";
      return kOk;
    }
    if (*trace) return cmd_trace(name, trace_ov, out);
    if (*density) return cmd_density(set_arg);
    if (*classify) return cmd_classify(scenario_arg);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
