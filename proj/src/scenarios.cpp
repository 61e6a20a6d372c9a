#include "ddchaos/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ddchaos/errors.hpp"
#include "ddchaos/examples.hpp"
#include "ddchaos/report.hpp"

namespace ddc {

void ScenarioResult::claim(std::string name, bool expected, bool actual, std::string note) {
  claims.push_back({std::move(name), expected, actual, std::move(note)});
}

bool ScenarioResult::ok() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.matches(); });
}

AffineCoset GatedPerturbationFamily::apply(int j, std::int64_t k, const Element& x) const {
  if (j < 1 || j > n_) throw invalid_input("operator index j out of range");
  if (k == 0) return {x, Subspace::zero()};
  const auto& v = std::get<SeqVector>(x);
  SeqVector base = gate_.contains(k) ? v : SeqVector(v.domain());
  return canonicalize({base, Subspace::span_of(w_)});
}

std::string GatedPerturbationFamily::describe() const {
  return "gated_identity_plus_span(N=" + std::to_string(n_) + ", W=" + w_.describe() + ")";
}

TwoPartPartition two_part_partition(int blocks) {
  TwoPartPartition p;
  p.horizon = block_partition_horizon(2, blocks);
  auto parts = full_density_partition(2, 2, p.horizon);
  p.A = parts[0].to_set();
  p.B = parts[1].to_set();
  std::int64_t end = 0;
  for (int i = 1; i <= blocks; ++i) p.block_ends.push_back(end += std::int64_t{1} << (i * i));
  return p;
}

TraceMatrix level_trace(const ClauseSets& sets, std::int64_t K,
                        std::vector<std::int64_t> checkpoints) {
  const int n = static_cast<int>(sets.upper.size());
  DiagonalFamily fam(n, 1,
                     [&](int j, std::int64_t k) -> std::vector<double> {
                       if (sets.upper[j - 1].contains(k)) return {static_cast<double>(j + k)};
                       if (sets.lower[j - 1].contains(k)) return {0.0};
                       return {0.75};
                     },
                     "ternary levels");
  return pair_trace(fam, SeqVector::basis(1), SeqVector(), SeminormSpace::lp(2), MetricKind::norm,
                    K, std::move(checkpoints));
}

namespace {

constexpr std::int64_t kMaxDenseTrace = 10'000'000;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

SeqVector random_vector(Rng& rng, std::int64_t lo, std::int64_t hi, IndexDomain d = IndexDomain::natural) {
  SeqVector v(d);
  for (std::int64_t n = lo; n <= hi; ++n) v.set(n, uniform(rng, -1, 1));
  return v;
}

std::int64_t trace_horizon(const RunOptions& o, std::int64_t def) {
  std::int64_t K = o.horizon.value_or(def);
  if (K < 1 || K > kMaxDenseTrace)
    throw invalid_input("trace horizon must be in [1, " + std::to_string(kMaxDenseTrace) + "]");
  return K;
}

std::vector<std::int64_t> checkpoints_upto(const std::vector<std::int64_t>& ends, std::int64_t K) {
  std::vector<std::int64_t> out;
  for (auto e : ends)
    if (e <= K) out.push_back(e);
  if (out.empty() || out.back() != K) out.push_back(K);
  return out;
}

std::vector<double> eps_list(const RunOptions& o, std::vector<double> def) {
  return o.eps ? std::vector<double>{*o.eps} : def;
}

Json to_jarray(const std::vector<std::int64_t>& v) { return Json(v); }

// ---- totan / totanr / weak-mlo --------------------------------------------------------

DensityRule two_part_rule(const RunOptions& o, const std::vector<std::int64_t>& cps) {
  DensityRule r;
  r.delta = o.delta.value_or(0.1);
  r.checkpoints = cps;
  r.window = 2;
  return r;
}

// max selection on A, min selection on B
TraceMatrix per_k_selection(const TraceMatrix& dual, const IndexSet& A) {
  TraceMatrix t = dual.policy(false);
  t.mode = SelectionMode::single_valued;
  for (int j = 0; j < t.N; ++j)
    for (std::int64_t k = 1; k <= t.K; ++k)
      if (A.contains(k)) t.log_s[j][k - 1] = dual.log_s_max[j][k - 1];
  return t;
}

ScenarioResult run_totan(const RunOptions& o) {
  ScenarioResult res;
  auto part = two_part_partition(4);
  const std::int64_t K = trace_horizon(o, part.horizon);
  const double sigma = o.sigma.value_or(1.0);
  const auto eps = eps_list(o, {0.5, 0.1, 1e-3});
  auto cps = checkpoints_upto(part.block_ends, K);
  DensityRule rule = two_part_rule(o, cps);
  SubspacePerturbationFamily fam(2, IndexSet::interval(1, 3));
  auto space = SeminormSpace::lp(2);

  Rng rng(o.seed);
  std::vector<std::pair<SeqVector, SeqVector>> pairs = {
      {SeqVector::from_pairs({{1, 1.0}, {2, -0.5}, {3, 2.0}}), SeqVector()},
      {random_vector(rng, 1, 3), random_vector(rng, 1, 3)}};

  res.parameters = {{"N", 2}, {"dimension", 3}, {"family", fam.describe()}, {"K", K},
                    {"checkpoints", to_jarray(cps)}, {"delta", rule.delta}, {"window", rule.window},
                    {"sigma", sigma}, {"eps", eps}, {"A", to_json(part.A)}, {"B", to_json(part.B)}};

  bool per_k = true, strict_any = false, weak_all = true;
  Json per_pair = Json::array();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    TraceMatrix dual = pair_trace(fam, Element(pairs[p].first), Element(pairs[p].second), space,
                                  MetricKind::norm, K, cps, SelectionMode::mlo_dual);
    TraceMatrix sel = per_k_selection(dual, part.A);
    Json e = {{"pair", p}};
    Json per_eps = Json::array();
    for (double ep : eps) {
      Verdict v = eval_condition(condition_spec(1), clause_sets(sel, sigma, ep), rule);
      StrictWeakVerdict sw = eval_condition_mlo(condition_spec(1), dual, sigma, ep, rule);
      per_k = per_k && v.holds;
      strict_any = strict_any || sw.strict;
      weak_all = weak_all && sw.weak;
      per_eps.push_back({{"eps", ep}, {"per_k_selection", to_json(v)},
                         {"uniform_policies", to_json(sw)}});
    }
    e["per_eps"] = per_eps;
    per_pair.push_back(e);
    if (p == 0) res.trace = TraceExport{sel, sigma, *std::min_element(eps.begin(), eps.end()), rule};
  }
  res.results["pairs"] = per_pair;
  res.claim("condition_1_per_k_selection", true, per_k,
            "totan: a selection with distance >= 1 on A and x = y on B gives condition 1");
  res.claim("condition_1_uniform_strict", false, strict_any,
            "every value is the whole space: the min selection is 0 and the max selection is capped");
  res.claim("condition_1_dual_weak", true, weak_all, "max selection for σ, min selection for ε");
  return res;
}

ScenarioResult run_totanr(const RunOptions& o) {
  ScenarioResult res;
  auto part = two_part_partition(4);
  const std::int64_t K = trace_horizon(o, part.horizon);
  const auto eps = eps_list(o, {0.5, 0.1, 1e-3});
  std::vector<double> sigmas = o.sigma ? std::vector<double>{*o.sigma} : std::vector<double>{1, 10};
  auto cps = checkpoints_upto(part.block_ends, K);
  DensityRule rule = two_part_rule(o, cps);
  const IndexSet& A = part.A;
  DiagonalFamily fam(2, 3,
                     [&A](int j, std::int64_t k) {
                       return std::vector<double>(3, A.contains(k) ? double(j + k) : 0.0);
                     },
                     "(j+k) on A, 0 on B");
  auto space = SeminormSpace::lp(2);
  Rng rng(o.seed);
  std::vector<SeqVector> S = {SeqVector(), SeqVector::basis(1), random_vector(rng, 1, 3),
                              random_vector(rng, 1, 3)};
  res.parameters = {{"N", 2}, {"dimension", 3}, {"family", fam.describe()}, {"K", K},
                    {"checkpoints", to_jarray(cps)}, {"delta", rule.delta}, {"window", rule.window},
                    {"sigma", sigmas}, {"eps", eps}, {"S_size", S.size()}};
  Json per_sigma = Json::array();
  for (double s : sigmas) {
    ScrambledReport r = verify_scrambled_set(S, fam, space, MetricKind::norm, 1, s, eps, K, cps, rule);
    per_sigma.push_back({{"sigma", s}, {"report", to_json(r)}});
    std::ostringstream name;
    name << "condition_1_sigma_" << s;
    res.claim(name.str(), true, r.holds, "totanr: condition 1 holds on S = X for any σ > 0");
  }
  res.results["scrambled"] = per_sigma;
  TraceMatrix t = pair_trace(fam, S[1], S[0], space, MetricKind::norm, K, cps);
  res.trace = TraceExport{t, sigmas.front(), *std::min_element(eps.begin(), eps.end()), rule};
  return res;
}

ScenarioResult run_weak_mlo(const RunOptions& o) {
  ScenarioResult res;
  auto part = two_part_partition(4);
  const std::int64_t K = trace_horizon(o, part.horizon);
  const double sigma = o.sigma.value_or(1.0), eps = o.eps.value_or(0.1);
  auto cps = checkpoints_upto(part.block_ends, K);
  DensityRule rule = two_part_rule(o, cps);
  auto space = SeminormSpace::lp(2);
  SubspacePerturbationFamily iw(2, IndexSet::interval(1, 1));
  GatedPerturbationFamily gated(2, part.A, IndexSet::interval(1, 1));
  res.parameters = {{"K", K}, {"checkpoints", to_jarray(cps)}, {"delta", rule.delta},
                    {"window", rule.window}, {"sigma", sigma}, {"eps", eps},
                    {"weak_family", iw.describe()}, {"strict_family", gated.describe()}};

  TraceMatrix d1 = pair_trace(iw, Element(SeqVector::basis(1)), Element(SeqVector()), space,
                              MetricKind::norm, K, cps, SelectionMode::mlo_dual);
  Json weak = Json::array();
  for (int i = 1; i <= 12; ++i) {
    StrictWeakVerdict sw = eval_condition_mlo(condition_spec(i), d1, sigma, eps, rule);
    weak.push_back({{"condition", i}, {"strict", sw.strict}, {"weak", sw.weak}});
    res.claim("identity_plus_span_condition_" + std::to_string(i) + "_strict", false, sw.strict,
              "x - y lies in W: min selection 0, max selection unbounded");
    res.claim("identity_plus_span_condition_" + std::to_string(i) + "_weak", true, sw.weak,
              "weak reading: max for σ, min for ε");
  }
  res.results["identity_plus_span"] = weak;
  Verdict mixed = eval_condition(condition_spec(1),
                                 clause_sets(per_k_selection(d1, part.A), sigma, eps), rule);
  res.results["identity_plus_span_per_k_selection"] = to_json(mixed);
  res.claim("identity_plus_span_per_k_selection_condition_1", true, mixed.holds,
            "a selection switching per k would also pass; strictness here means one uniform policy");

  TraceMatrix d2 = pair_trace(gated, Element(SeqVector::basis(2)), Element(SeqVector()), space,
                              MetricKind::norm, K, cps, SelectionMode::mlo_dual);
  StrictWeakVerdict g = eval_condition_mlo(condition_spec(1), d2, sigma, eps, rule);
  res.results["gated"] = to_json(g);
  res.claim("gated_condition_1_strict", true, g.strict,
            "min selection is 1 on A and 0 on B, one policy serves both clauses");
  res.claim("gated_condition_1_weak", true, g.weak);
  res.trace = TraceExport{d1, sigma, eps, rule};
  return res;
}

// ---- gallery ----------------------------------------------------------------------------

struct GalleryStatement {
  std::vector<int> fails;
};

const std::map<int, GalleryStatement>& gallery_statements() {
  static const std::map<int, GalleryStatement> m = {
      {2, {{1, 7, 8, 9}}},
      {3, {{1, 2, 6, 7, 8, 9, 11}}},
      {4, {{1, 2, 3, 5, 6, 7, 8, 9, 10, 11}}},
      {5, {{1, 2, 3, 4, 6, 7, 8, 9, 11, 12}}},
      {6, {{1, 2, 3, 5, 7, 8, 9, 10}}},
      {7, {{1, 2, 6, 11}}},
      {8, {{1, 2, 3, 4, 6, 7, 11, 12}}},
      {9, {{1, 2, 3, 4, 5, 6, 7, 8, 11, 12}}},
      {10, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12}}},
      {11, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}},
      {12, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}},
  };
  return m;
}

ScenarioResult run_gallery(int example, const RunOptions& o) {
  ScenarioResult res;
  ConditionSpec spec = condition_spec(example);
  const int u = combinator_level(spec.upper), l = combinator_level(spec.lower);
  LevelConfiguration cfg = level_configuration(u, l);
  DensityRule rule = cfg.rule;
  if (o.delta) rule.delta = *o.delta;
  const auto& st = gallery_statements().at(example);
  std::set<int> fails(st.fails.begin(), st.fails.end());

  res.parameters = {{"N", 2}, {"upper_level", u}, {"lower_level", l}, {"horizon", cfg.horizon},
                    {"checkpoints", to_jarray(rule.checkpoints)}, {"delta", rule.delta},
                    {"window", rule.window}, {"stated_holds", example}, {"stated_fails", st.fails}};
  Json verdicts = Json::array();
  for (int c = 1; c <= 12; ++c) {
    Verdict v = eval_condition(condition_spec(c), cfg.sets, rule);
    verdicts.push_back(to_json(v));
    std::string name = "condition_" + std::to_string(c);
    if (c == example)
      res.claim(name, true, v.holds, "example-" + std::to_string(example) + ": stated to hold");
    else if (fails.count(c))
      res.claim(name, false, v.holds, "example-" + std::to_string(example) + ": stated to fail");
    else
      res.claim(name, level_pattern_holds(c, u, l), v.holds,
                "level model (" + std::to_string(u) + ", " + std::to_string(l) + ")");
  }
  res.results["verdicts"] = verdicts;

  // each part's ratio at the end of its own blocks
  bool profile_ok = true;
  Json prof = Json::array();
  for (std::size_t p = 0; p < cfg.parts.size(); ++p)
    for (std::size_t i = p; i < cfg.rule.checkpoints.size(); i += cfg.parts.size()) {
      std::int64_t at = cfg.rule.checkpoints[i];
      double r = static_cast<double>(cfg.parts[p].count_upto(at)) / static_cast<double>(at);
      double bound = 1.0 - 2.0 / static_cast<double>(i + 1);
      profile_ok = profile_ok && r >= bound;
      prof.push_back({{"part", p}, {"block", i + 1}, {"ratio", r}, {"bound", bound}});
    }
  res.results["part_profiles"] = prof;
  res.claim("part_profile_bound", true, profile_ok, "ratio >= 1 - 2/i at the end of block i");

  // the sets read back from a dense diagonal trace
  const std::int64_t K = trace_horizon(o, block_partition_horizon(2, 4));
  if (K > cfg.horizon) throw invalid_input("trace horizon exceeds the configuration horizon");
  auto cps = checkpoints_upto(cfg.rule.checkpoints, K);
  ClauseSets trunc;
  for (const auto& s : cfg.sets.upper) trunc.upper.push_back(s.truncated(K));
  for (const auto& s : cfg.sets.lower) trunc.lower.push_back(s.truncated(K));
  TraceMatrix t = level_trace(trunc, K, cps);
  const double sigma = o.sigma.value_or(1.0);
  const auto eps = eps_list(o, {0.5, 0.1, 0.01});
  bool same = true;
  for (double ep : eps) {
    ClauseSets got = clause_sets(t, sigma, ep);
    for (std::size_t j = 0; j < got.upper.size(); ++j)
      same = same && got.upper[j] == trunc.upper[j] && got.lower[j] == trunc.lower[j];
  }
  res.parameters["trace_K"] = K;
  res.parameters["sigma"] = sigma;
  res.parameters["eps"] = eps;
  res.claim("trace_reproduces_sets", true, same,
            "values j+k on U_j, 0 on L_j, 0.75 elsewhere, read back with σ and each ε");
  DensityRule trule;
  trule.delta = rule.delta;
  trule.checkpoints = cps;
  res.trace = TraceExport{t, sigma, *std::min_element(eps.begin(), eps.end()), trule};
  return res;
}

// ---- gos / qwer -----------------------------------------------------------------------

double element_seminorm(const SeminormSpace& space, int m, const Element& e) {
  return std::visit([&](const auto& v) { return seminorm(space, m, v); }, e);
}

ScenarioResult run_gos(const RunOptions& o) {
  ScenarioResult res;
  Rng rng(o.seed);
  auto l2 = SeminormSpace::lp(2);
  SeqVector x = random_vector(rng, 2, 6);
  AffineCoset banach{x, Subspace::span_range(1, 1)};
  bool banach_ok = true;
  Json sel = Json::array();
  for (int k = 1; k <= 20; ++k) {
    double thr = std::ldexp(1.0, k);
    Element z = select_exceeding(banach, l2, 1, thr);
    double nz = element_seminorm(l2, 1, z);
    banach_ok = banach_ok && nz > thr && banach.contains(z);
    sel.push_back({{"threshold", thr}, {"norm", nz}});
  }
  res.results["banach_selections"] = sel;
  res.claim("banach_select_exceeding", true, banach_ok,
            "gos: a purely multivalued value in a Banach space has elements of any norm");

  GridFunction f;
  for (int i = -24; i <= 24; ++i) f.set_index(i, uniform(rng, -1, 1));
  GridSupportFamily fam(2);
  auto grid = SeminormSpace::grid_sup();
  bool grid_ok = true;
  int cases = 0;
  for (int m = 1; m <= 5; ++m)
    for (int j = 1; j <= 2; ++j)
      for (std::int64_t k = 1; k <= 10; ++k) {
        if (m > j * k) continue;
        AffineCoset c = fam.apply(j, k, f);
        double thr = seminorm(grid, m, f) + 1;
        bool refused = false;
        try {
          select_exceeding(c, grid, m, thr);
        } catch (const not_attainable&) {
          refused = true;
        }
        grid_ok = grid_ok && refused;
        ++cases;
      }
  res.results["grid_cases"] = cases;
  res.claim("grid_not_attainable", true, grid_ok,
            "gos: for m <= jk the coset does not move p_m, so no selection exceeds it");

  const std::int64_t K = trace_horizon(o, 1000);
  ClassifyOptions opts;
  opts.rule.delta = o.delta.value_or(0.1);
  opts.rule.checkpoints = {K};
  Json unb = Json::array();
  for (int m = 1; m <= 5; ++m) {
    TraceMatrix t = orbit_trace(fam, Element(f), grid, m, K, {K}, SelectionMode::mlo_max);
    TypeVerdict v = classify_unbounded(t, 1, opts);
    unb.push_back({{"m", m}, {"verdict", to_json(v)}});
    res.claim("unbounded_type_1_m_" + std::to_string(m), false, v.holds,
              "the sup over the coset stays p_m(f) once jk >= m");
    if (m == 1) res.trace = TraceExport{t, o.sigma.value_or(1.0), o.eps.value_or(0.1), opts.rule};
  }
  res.results["unbounded"] = unb;
  res.parameters = {{"grid_step", "1/8"}, {"support", "[-3, 3]"}, {"K", K}, {"m", "1..5"},
                    {"banach_space", "lp(2)"}, {"banach_subspace", "span{e_1}"}};
  return res;
}

ScenarioResult run_qwer(const RunOptions& o) {
  ScenarioResult res;
  Rng rng(o.seed);
  ExtensionPowerFamily fam(2);
  auto l2 = SeminormSpace::lp(2);
  SeqVector x = random_vector(rng, 1, 6);
  double xmax = x.sup_abs();
  bool bound = true;
  double worst = INFINITY;
  for (int j = 1; j <= 2; ++j)
    for (std::int64_t k = 1; k <= 20; ++k) {
      AffineCoset c = extension_power_coset(j, j, k, x);
      for (int s = 0; s < 20; ++s) {
        SeqVector z = std::get<SeqVector>(c.base);
        double scale = std::ldexp(1.0, static_cast<int>(uniform_int(rng, -4, 8)));
        for (std::int64_t i = 1; i <= j * k; ++i) z.add(i, scale * uniform(rng, -1, 1));
        double nz = seminorm(l2, 1, z);
        worst = std::min(worst, nz - xmax);
        bound = bound && c.contains(z) && nz >= xmax;
      }
    }
  res.results["min_norm_minus_max_coordinate"] = worst;
  res.claim("coset_norm_bound", true, bound, "qwer: every z in the value has ‖z‖ >= max |x_n|");

  const std::int64_t K = trace_horizon(o, 200);
  const double sigma = o.sigma.value_or(0.5), eps = o.eps.value_or(1e-3);
  DensityRule rule;
  rule.delta = o.delta.value_or(0.1);
  rule.checkpoints = {K};
  TraceMatrix d = pair_trace(fam, Element(x), Element(SeqVector()), l2, MetricKind::norm, K, {K},
                             SelectionMode::mlo_dual);
  Json weak = Json::array();
  for (int i = 1; i <= 12; ++i) {
    StrictWeakVerdict sw = eval_condition_mlo(condition_spec(i), d, sigma, eps, rule);
    weak.push_back({{"condition", i}, {"weak", sw.weak}, {"strict", sw.strict}});
    res.claim("weak_condition_" + std::to_string(i), false, sw.weak,
              "qwer: min selection equals ‖x − y‖ for every k, never below ε");
  }
  res.results["weak"] = weak;
  res.parameters = {{"N", 2}, {"family", fam.describe()}, {"K", K}, {"sigma", sigma}, {"eps", eps}};
  res.trace = TraceExport{d, sigma, eps, rule};
  return res;
}

// ---- sunce / bruk -----------------------------------------------------------------------

DensityRule block_rule(const BlockWeightModel& m, const RunOptions& o) {
  DensityRule r;
  r.delta = o.delta.value_or(0.1);
  r.checkpoints = m.block_ends();
  r.window = 3;
  return r;
}

Json interval_json(const Interval& i) { return Json::array({i.first, i.second}); }

Json bound_json(const BlockWeightModel::BlockBound& b) {
  return {{"l", b.l}, {"A", interval_json(b.A)}, {"B", interval_json(b.B)},
          {"max_log2_product_on_A", b.max_P_on_A}, {"min_log2_product_on_B", b.min_P_on_B},
          {"holds", b.holds}};
}

ScenarioResult run_sunce(const RunOptions& o) {
  ScenarioResult res;
  auto m = BlockWeightModel::square_exponent(3);
  DensityRule rule = block_rule(m, o);
  res.parameters = {{"block_lengths", m.lengths()}, {"block_ends", m.block_ends()},
                    {"horizon", m.horizon()}, {"checkpoints", to_jarray(rule.checkpoints)},
                    {"delta", rule.delta}, {"window", rule.window}};

  auto n0 = m.scan_n0();
  res.results["n0"] = n0 ? Json(*n0) : Json(nullptr);
  res.claim("n0_is_2", true, n0 == 2, "A_1 and B_1 are empty; the bounds hold from l = 2");
  Json bounds = Json::array();
  for (int l = n0.value_or(1); l <= std::min(m.pairs(), n0.value_or(1) + 1); ++l) {
    auto b = m.block_bound(l);
    bounds.push_back(bound_json(b));
    res.claim("block_bound_l_" + std::to_string(l), true, b.holds,
              "product < 2^-l on A_l and > 2^l on B_l");
  }
  res.results["block_bounds"] = bounds;

  ClassifyOptions opts;
  opts.rule = rule;
  Json per_op = Json::array();
  for (int s : {+1, -1}) {
    LevelSets ls = block_level_sets(m, {s}, 1.0, opts);
    IrregularVerdict v = classify_irregular(ls, 1, rule);
    per_op.push_back({{"operator", s > 0 ? "F_omega" : "F_sigma"}, {"verdict", to_json(v)}});
    res.claim(std::string("irregular_e1_") + (s > 0 ? "F_omega" : "F_sigma"), true, v.holds,
              "sunce: e_1 is distributionally irregular for each operator");
  }
  res.results["per_operator"] = per_op;
  LevelSets joint = block_level_sets(m, {+1, -1}, 1.0, opts);
  IrregularVerdict jv = classify_irregular(joint, 1, rule);
  res.results["joint_type_1"] = to_json(jv);
  res.claim("joint_irregular_type_1", false, jv.holds,
            "the near-zero sets of the two operators are disjoint");

  const double sigma = o.sigma.value_or(1.0);
  const auto eps = eps_list(o, {0.5, 0.1, 1e-3});
  const std::set<int> holds = {3, 4, 5, 10, 12}, stated_fail = {1, 7, 8, 9};
  Json conds = Json::array();
  for (int c = 1; c <= 12; ++c) {
    bool all = true;
    for (double ep : eps) all = all && eval_condition(condition_spec(c), block_clause_sets(m, {+1, -1}, 1.0, sigma, ep), rule).holds;
    conds.push_back({{"condition", c}, {"holds", all}});
    res.claim("condition_" + std::to_string(c), holds.count(c) > 0, all,
              holds.count(c) ? "sunce: stated to hold"
                             : stated_fail.count(c) ? "sunce: stated to fail"
                                                    : "upper sets meet only where the product is 1");
  }
  res.results["conditions"] = conds;

  // joint bound ‖F_ω^k x‖ + ‖F_σ^k x‖ >= 2|x_{n0}|
  Rng rng(o.seed);
  ForwardShiftFamily fam({m.omega(), m.sigma()});
  auto l2 = SeminormSpace::lp(2);
  const std::int64_t at = n0.value_or(1);
  bool joint_ok = true;
  double worst = INFINITY;
  for (int t = 0; t < 100; ++t) {
    SeqVector x = random_vector(rng, 1, 8);
    for (std::int64_t k = 1; k <= 50; ++k) {
      double s = std::exp(fam.log_seminorm(1, k, x, l2, 1)) + std::exp(fam.log_seminorm(2, k, x, l2, 1));
      double need = 2 * std::abs(x.at(at));
      worst = std::min(worst, s - need);
      joint_ok = joint_ok && s >= need * (1 - 1e-12);
    }
  }
  res.results["joint_bound_min_slack"] = worst;
  res.claim("joint_norm_bound", true, joint_ok, "2^t + 2^-t >= 2 at the coordinate n0");

  bool norm_ok = true;
  Json norms = Json::array();
  for (std::int64_t k = 1; k <= 30; ++k) {
    double l2n = shift_power_norm(m.omega(), k, 1000).log2();
    norm_ok = norm_ok && l2n >= static_cast<double>(k) - 1e-9;
    norms.push_back(l2n);
  }
  res.results["log2_norm_F_omega_k"] = norms;
  res.claim("operator_norm_bound", true, norm_ok, "‖F_ω^k‖ >= 2^k, k <= 30, from a block of 2's");

  const std::int64_t K = trace_horizon(o, m.block_ends().at(3));
  auto cps = checkpoints_upto(m.block_ends(), K);
  DensityRule trule = rule;
  trule.checkpoints = cps;
  res.trace = TraceExport{orbit_trace(fam, SeqVector::basis(1), l2, 1, K, cps), sigma,
                          *std::min_element(eps.begin(), eps.end()), trule};
  return res;
}

ScenarioResult run_bruk(const RunOptions& o) {
  ScenarioResult res;
  auto m = BlockWeightModel::square_exponent(3);
  DensityRule rule = block_rule(m, o);
  res.parameters = {{"space", "c0"}, {"block_lengths", m.lengths()}, {"horizon", m.horizon()},
                    {"checkpoints", to_jarray(rule.checkpoints)}, {"delta", rule.delta},
                    {"window", rule.window}, {"x", "<1/n>"}};

  // one of the two sliding products is <= 1, exactly in log2
  bool sliding = true;
  std::int64_t worst = std::numeric_limits<std::int64_t>::min();
  for (std::int64_t k = 1; k <= 10'000; ++k)
    for (std::int64_t s = 1; s <= 1'000; ++s) {
      std::int64_t a = m.omega().log2_product(s, s + k - 1);
      std::int64_t b = m.sigma().log2_product(s, s + k - 1);
      worst = std::max(worst, std::min(a, b));
      sliding = sliding && std::min(a, b) <= 0;
    }
  res.results["max_min_log2_sliding_product"] = worst;
  res.claim("sliding_products_min_at_most_1", true, sliding,
            "bruk: ω and 1/ω products over the same window are reciprocal");

  // ‖T_1^n x‖ >= 2^{P(n)}/(n+1) (s = 1 term); log2 of the bound, monotone on each block run
  auto lb = [&m](int sign, std::int64_t n) {
    return sign * static_cast<double>(m.log2_prefix(n)) - std::log2(static_cast<double>(n + 1));
  };
  auto lg = [](std::int64_t n) { return std::log2(std::log1p(static_cast<double>(n))); };
  Json per_op = Json::array();
  std::vector<IndexSet> large;
  for (int sign : {+1, -1}) {
    IndexSet big = monotone_level_set(
        m.runs(), [&](std::int64_t n) { return lb(sign, n) >= lg(n); }, m.horizon());
    DensityCheck c = check_full_density(big, rule);
    large.push_back(big);
    std::string op = sign > 0 ? "T_1" : "T_2";
    per_op.push_back({{"operator", op}, {"large_set", to_json(big)}, {"density", to_json(c)}});
    res.claim("distributionally_unbounded_" + op, true, c.holds,
              sign > 0 ? "growth on the b-blocks" : "growth on the a-blocks");
  }
  res.results["per_operator"] = per_op;
  IndexSet both = large[0] & large[1];
  DensityCheck jc = check_full_density(both, rule);
  res.results["joint_large_set"] = to_json(both);
  res.claim("joint_unbounded_type_1", false, jc.holds, "bruk: no common growth set");

  auto n0 = m.scan_n0().value_or(1);
  bool growth = true;
  Json gb = Json::array();
  for (int l = n0; l <= m.pairs(); ++l) {
    auto b = m.block_bound(l);
    double need = l - std::log2(l + 1.0);
    double t1 = lb(+1, b.B.second), t2 = lb(-1, b.A.second);
    growth = growth && t1 > need && t2 > need;
    gb.push_back({{"l", l}, {"log2_bound_T1_at_B_end", t1}, {"log2_bound_T2_at_A_end", t2},
                  {"log2_target", need}});
  }
  res.results["growth_at_block_ends"] = gb;
  res.claim("growth_bound_block_index", true, growth, "bound > 2^l/(l+1) at the block ends");

  // the s = 1 term against the full c0 norm on a truncated x
  const std::int64_t support = 2000;
  SeqVector x;
  for (std::int64_t n = 1; n <= support; ++n) x.set(n, 1.0 / static_cast<double>(n));
  BackwardShiftFamily fam({m.omega(), m.sigma()});
  auto c0 = SeminormSpace::c0();
  bool lower_ok = true;
  for (int j = 1; j <= 2; ++j)
    for (std::int64_t n = 1; n <= 200; ++n) {
      double l2n = fam.log_seminorm(j, n, x, c0, 1) / std::log(2.0);
      lower_ok = lower_ok && l2n >= lb(j == 1 ? 1 : -1, n) - 1e-9;
    }
  res.claim("s1_term_is_lower_bound", true, lower_ok, "checked for n <= 200 on x truncated at 2000");

  const std::int64_t K = trace_horizon(o, m.block_ends().at(2));
  auto cps = checkpoints_upto(m.block_ends(), K);
  DensityRule trule = rule;
  trule.checkpoints = cps;
  res.trace = TraceExport{orbit_trace(fam, x, c0, 1, K, cps), o.sigma.value_or(1.0),
                          o.eps.value_or(0.1), trule};
  return res;
}

// ---- primerinjo / guerrero -----------------------------------------------------------------

struct Primerinjo {
  std::vector<double> omegas{2, 3};
  double zeta = 2, p = 2;
  std::int64_t truncation = 10'000;
  BackwardShiftFamily family{{WeightSequence::constant(2), WeightSequence::constant(3)}};
  SeqVector x;
  std::vector<double> tail_sum;  // tail_sum[k] = Σ_{n<=T-k} n^{-ζp}

  Primerinjo() {
    for (std::int64_t n = 1; n <= truncation; ++n) x.set(n, std::pow(double(n), -zeta));
    std::vector<double> pre(truncation + 1, 0.0);
    for (std::int64_t n = 1; n <= truncation; ++n) pre[n] = pre[n - 1] + std::pow(double(n), -zeta * p);
    tail_sum.resize(truncation + 1);
    for (std::int64_t k = 0; k <= truncation; ++k) tail_sum[k] = pre[truncation - k];
  }
  // log of 3^{-ζ} ω^k k^{-ζ} (Σ n^{-ζp})^{1/p}
  double log_bound(int j, std::int64_t k) const {
    return -zeta * std::log(3.0) + k * std::log(omegas[j - 1]) - zeta * std::log(double(k)) +
           std::log(tail_sum[k]) / p;
  }
};

ScenarioResult run_primerinjo(const RunOptions& o) {
  ScenarioResult res;
  static const Primerinjo P;
  const std::int64_t K = trace_horizon(o, 50);
  if (K >= P.truncation) throw invalid_input("horizon must stay below the truncation");
  auto lp = SeminormSpace::lp(P.p);
  TraceMatrix t = orbit_trace(P.family, P.x, lp, 1, K, {K});
  bool bound_ok = true;
  double worst = INFINITY;
  for (int j = 1; j <= 2; ++j)
    for (std::int64_t k = 1; k <= K; ++k) {
      double slack = t.log_at(j, k) - P.log_bound(j, k);
      worst = std::min(worst, slack);
      bound_ok = bound_ok && slack >= -1e-12;
    }
  res.parameters = {{"omega", P.omegas}, {"zeta", P.zeta}, {"p", P.p},
                    {"truncation", P.truncation}, {"K", K}, {"x", "<n^-2>"}};
  res.results["min_log_slack"] = worst;
  res.claim("displayed_lower_bound", true, bound_ok, "primerinjo: ‖T_j^k x‖ >= 3^-ζ ω_j^k k^-ζ (Σ n^-ζp)^{1/p}");

  ClassifyOptions opts;
  opts.rule.delta = o.delta.value_or(0.1);
  opts.rule.checkpoints = {K};
  opts.schedule = [](std::int64_t k) {
    return std::exp(std::min(P.log_bound(1, k), P.log_bound(2, k)));
  };
  LevelSets ls = level_sets(t, opts);
  TypeVerdict v = classify_unbounded(ls, 1, opts.rule);
  IndexSet B = ls.large[0] & ls.large[1];
  res.results["type_1_unbounded"] = to_json(v);
  res.claim("type_1_unbounded_B_is_1_to_K", true, B == IndexSet::interval(1, K).truncated(K),
            "the schedule is the displayed bound, so B = [1, K]");
  res.claim("type_1_unbounded", true, v.holds, "primerinjo: irregular vector of type 1 with B = ℕ");

  ClassifyOptions logs = opts;
  logs.schedule = nullptr;
  TypeVerdict vl = classify_unbounded(level_sets(t, logs), 1, logs.rule);
  res.results["type_1_unbounded_log_schedule"] = to_json(vl);
  res.trace = TraceExport{t, o.sigma.value_or(1.0), o.eps.value_or(0.1), opts.rule};
  return res;
}

ScenarioResult run_guerrero(const RunOptions& o) {
  ScenarioResult res;
  static const Primerinjo P;
  const std::int64_t K = trace_horizon(o, 200);
  if (K >= P.truncation) throw invalid_input("horizon must stay below the truncation");
  auto lp = SeminormSpace::lp(P.p);
  TraceMatrix t = orbit_trace(P.family, P.x, lp, 1, K, {K});
  ClassifyOptions opts;
  opts.rule.delta = o.delta.value_or(0.1);
  opts.rule.checkpoints = {K};
  LevelSets ls = level_sets(t, opts);
  IndexSet B = ls.large[0] & ls.large[1];
  DensityCheck c = check_full_density(B, opts.rule);
  res.parameters = {{"family", P.family.describe()}, {"x", "<n^-2>"}, {"K", K},
                    {"schedule", "log(1+k)"}, {"delta", opts.rule.delta}, {"m", 1}};
  res.results["B"] = to_json(B);
  res.results["density"] = to_json(c);
  res.claim("hypothesis_holds", true, c.holds,
            "guerrero: ‖T_j^k x‖ -> ∞ along one B of upper density 1 for every j");

  std::vector<SeqVector> samples;
  for (int n = 1; n <= 10; ++n) samples.push_back(SeqVector::basis(n));
  DensityRule exact;
  CriterionReport i0 = check_I0(P.family, Quantifier::cap, samples, lp, 1, K, 1e-6, exact);
  res.results["I0"] = to_json(i0);
  res.claim("I0_cap_exact", true, i0.passed, "orbits of e_n vanish from k = n on");
  res.trace = TraceExport{t, o.sigma.value_or(1.0), o.eps.value_or(0.1), opts.rule};
  return res;
}

// ---- primena-shifts ------------------------------------------------------------------------

ScenarioResult run_primena(const RunOptions& o) {
  ScenarioResult res;
  const int N = 2;
  const std::int64_t H = 1000;
  std::vector<WeightSequence> w = {WeightSequence::geometric(1), WeightSequence::geometric(2)};
  WeightSequence a = WeightSequence::factorial_power(-(N + 1));
  RegularizedShiftFamily fam(w, a);
  res.parameters = {{"N", N}, {"weights", "2^j n^j"}, {"regularizer", "(n-1)!^-3"},
                    {"sup_horizon", H}};

  bool closed = true, stated = true;
  std::int64_t first_fail = 0;
  Json rows = Json::array();
  std::vector<double> logB1;
  for (int j = 1; j <= N; ++j)
    for (std::int64_t k = 1; k <= 60; ++k) {
      double lb = b_jk(w[j - 1], a, k, H).log();
      if (j == 1) logB1.push_back(lb);
      if (k > 40) continue;
      double cf = j * k * std::log(2.0) + (j - N - 1) * std::lgamma(double(k) + 1);
      double target = j * k * std::log(2.0) + (j - N - 1) * std::log(double(k));
      closed = closed && std::abs(lb - cf) <= 1e-9 * std::max(1.0, std::abs(cf));
      bool ok = lb >= target - 1e-12 * std::max(1.0, std::abs(target));
      if (!ok && !first_fail) first_fail = k;
      stated = stated && ok;
      rows.push_back({{"j", j}, {"k", k}, {"log_B", lb}, {"log_closed_form", cf},
                      {"log_stated_bound", target}});
    }
  res.results["B"] = rows;
  res.claim("B_closed_form", true, closed, "B_{j,k} = 2^{jk} k!^{j-3}, attained at n = 1");
  res.results["stated_bound_first_failure_k"] = first_fail;
  res.claim("stated_bound_2jk_kj3", false, stated,
            "primena-shifts: k!^{j-3} < k^{j-3} for k >= 3, so the displayed bound fails");

  SummabilityResult sr = summability_from_logs(logB1, 1, 10);
  res.results["summability_j1"] = {{"verdict", to_string(sr.verdict)},
                                   {"last_partial_sum", sr.partial_sums.back()},
                                   {"tail_max_increment", sr.tail_max_increment}};
  res.claim("summable_1_over_B1", false, sr.verdict == SumVerdict::converged_heuristic,
            "Σ k!^2/2^k diverges");

  // composition oracle: T^k (C x) step by step
  Rng rng(o.seed);
  bool oracle = true;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    int j = static_cast<int>(uniform_int(rng, 1, N));
    std::int64_t k = uniform_int(rng, 0, 10);
    SeqVector x = random_vector(rng, 1, uniform_int(rng, 1, 15));
    SeqVector got = regularized_power_apply(w[j - 1], a, k, x);
    SeqVector cx;
    for (auto [n, v] : x.entries()) cx.set(n, a.at(n) * v);
    SeqVector want = cx;
    for (std::int64_t s = 0; s < k; ++s) want = backward_shift_power(w[j - 1], 1, want);
    std::set<std::int64_t> idx;
    for (auto& [n, v] : got.entries()) idx.insert(n);
    for (auto& [n, v] : want.entries()) idx.insert(n);
    for (auto n : idx) {
      double g = got.at(n), e = want.at(n);
      double rel = std::abs(g - e) / std::max(std::abs(e), 1e-300);
      worst = std::max(worst, rel);
      oracle = oracle && rel <= 1e-10;
    }
  }
  res.results["composition_max_rel_error"] = worst;
  res.claim("composition_oracle", true, oracle, "T^k C against k single backward steps after C");

  const std::int64_t K = trace_horizon(o, 40);
  SeqVector ones;
  for (int n = 1; n <= 10; ++n) ones.set(n, 1.0);
  res.trace = TraceExport{orbit_trace(fam, ones, SeminormSpace::lp(2), 1, K, {K}),
                          o.sigma.value_or(1.0), o.eps.value_or(0.1), DensityRule{}};
  return res;
}

// ---- da-se-ohladi / jebi-ga-hak ------------------------------------------------------------

ScenarioResult run_da_se_ohladi(const RunOptions& o) {
  ScenarioResult res;
  const std::vector<std::int64_t> r = {1, 2, 3};
  auto space = SeminormSpace::weighted_lp(2, [](std::int64_t n) { return std::ldexp(1.0, -int(std::min<std::int64_t>(n, 1000))); }, "2^-n");
  std::vector<WeightSequence> w(3, WeightSequence::constant(1));
  BackwardShiftFamily fam(w, r);
  IndexSet S = IndexSet::naturals();
  const double eps = o.eps.value_or(0.4);
  const int levels = 8;
  std::vector<std::int64_t> sched;
  std::vector<SeqVector> y;
  for (int l = 1; l <= levels; ++l) {
    std::int64_t Nl = std::int64_t(l) * l + l;
    sched.push_back(Nl);
    SeqVector v;
    for (std::int64_t n = l; n <= 3 * Nl + 1; ++n)
      if (S.contains(n)) v.set(n, 1.0);
    y.push_back(v);
  }
  res.parameters = {{"weights", "1"}, {"r", r}, {"space", space.describe()}, {"S", "N"},
                    {"eps", eps}, {"N_l", sched}};

  CriterionReport q = q_density_criterion(S, r, Rational(1));
  res.results["Q"] = to_json(q);
  res.claim("Q_density_1", true, q.passed, "da-se-ohladi: Q has upper density one for S = ℕ");

  CriterionReport inf = check_I_inf(fam, Quantifier::forall, y, eps, sched, space, 1);
  res.results["I_inf"] = to_json(inf);
  res.claim("I_inf_count_bound", true, inf.passed, "card{k <= N_l : ∀j p(T^{r_j k} y_l) > ε} >= N_l(1 - 1/l)");
  CriterionReport inf_big = check_I_inf(fam, Quantifier::forall, y, 10.0, sched, space, 1);
  res.claim("I_inf_eps_above_orbit_values", false, inf_big.passed, "ε = 10 exceeds every orbit value");

  std::vector<double> inv_a;
  for (int n = 1; n <= 60; ++n) inv_a.push_back(std::ldexp(1.0, n));
  CriterionReport sum = summability_test(inv_a, 2, 10);
  res.results["sum_a_n_p"] = to_json(sum);
  res.claim("sum_a_n_p_converges", true, sum.passed, "Σ (2^-n)^2 < ∞");

  const std::int64_t K = trace_horizon(o, sched.back());
  res.trace = TraceExport{orbit_trace(fam, y[2], space, 1, K, {K}), o.sigma.value_or(1.0), eps,
                          DensityRule{}};
  return res;
}

ScenarioResult run_jebi_ga_hak(const RunOptions& o) {
  ScenarioResult res;
  JumpFn a = [](std::int64_t, int j) { return std::int64_t(j); };
  CoefFn one = [](std::int64_t, int) { return 1.0; };
  bool chain_ok = true, blocked_ok = true;
  for (int j = 1; j <= 2; ++j)
    for (std::int64_t k = 1; k <= 50; ++k) {
      ChainResult c = chain_recursion(1 + j * k, j, a, one, k);
      bool arith = c.reachable && std::int64_t(c.chain.size()) == k;
      for (std::int64_t s = 0; arith && s < k; ++s) arith = c.chain[s] == 1 + j * (k - s - 1);
      chain_ok = chain_ok && arith && c.ends_at_one() && in_p_set(c, 1.0);
      ChainResult d = chain_recursion(2 + j * k, j, a, one, k);
      blocked_ok = blocked_ok && !d.ends_at_one();
    }
  res.claim("constant_jump_chain", true, chain_ok, "n = 1 + jk steps down by j to 1 in k steps");
  res.claim("offset_chain_misses_1", true, blocked_ok, "n = 2 + jk ends at 2");

  const std::int64_t K = trace_horizon(o, 1000);
  IndexSet q = qg_set(IndexSet::naturals(), 2, a, one, [](std::int64_t) { return 1.0; }, K);
  res.results["Q_g"] = to_json(q);
  res.claim("Q_g_is_1_to_K", true, q.count_upto(K) == K, "every P_{j,k} contains f_j^k(1) ∈ S");

  // random increasing jumps against forward simulation
  Rng rng(o.seed);
  bool oracle = true;
  for (int t = 0; t < 200; ++t) {
    int j = static_cast<int>(uniform_int(rng, 1, 3));
    std::int64_t c1 = uniform_int(rng, 2, 6), c2 = uniform_int(rng, 1, 3);
    JumpFn ar = [c1, c2](std::int64_t i, int jj) { return c2 + jj + i / (c1 + jj); };
    CoefFn wr = [](std::int64_t i, int jj) { return 1.0 + 0.25 * double((i * 7 + jj) % 5); };
    std::int64_t n = uniform_int(rng, 1, 400), k = uniform_int(rng, 1, 8);
    ChainResult c = chain_recursion(n, j, ar, wr, k);
    SeqVector img = generalized_backward_apply(wr, ar, j, k, SeqVector::basis(n));
    if (c.reachable) {
      oracle = oracle && img.support_size() == 1 && img.entries().begin()->first == c.chain.back() &&
               std::abs(img.entries().begin()->second - c.coefficient) <= 1e-12 * c.coefficient;
    } else {
      oracle = oracle && img.is_zero();
    }
  }
  res.claim("chain_matches_forward_simulation", true, oracle, "200 random (n, j, k)");
  res.parameters = {{"a", "a(n,j) = j"}, {"omega", "1"}, {"b", "1"}, {"S", "N"}, {"K", K}};

  GeneralizedBackwardFamily fam(2, one, a, "a = j, ω = 1");
  const std::int64_t TK = std::min<std::int64_t>(K, 200);
  res.trace = TraceExport{orbit_trace(fam, SeqVector::basis(2 * TK + 1), SeminormSpace::lp(2), 1,
                                      TK, {TK}),
                          o.sigma.value_or(1.0), o.eps.value_or(0.1), DensityRule{}};
  return res;
}

// ---- tuple-profo --------------------------------------------------------------------------

ScenarioResult run_tuple_profo(const RunOptions& o) {
  ScenarioResult res;
  Rng rng(o.seed);
  const double sigma = o.sigma.value_or(1.0), eps = o.eps.value_or(0.1);
  bool ids = true;
  for (int t = 0; t < 200; ++t) {
    TraceMatrix tr;
    tr.N = static_cast<int>(uniform_int(rng, 2, 3));
    tr.K = uniform_int(rng, 50, 300);
    tr.checkpoints = {tr.K};
    tr.log_s.assign(tr.N, std::vector<double>(tr.K));
    for (auto& row : tr.log_s)
      for (auto& v : row) {
        int pick = static_cast<int>(uniform_int(rng, 0, 9));
        v = pick == 0 ? -INFINITY : pick == 1 ? std::log(sigma) : pick == 2 ? std::log(eps)
                                                                         : uniform(rng, -5, 3);
      }
    DensityRule rule;
    rule.delta = 0.1;
    rule.checkpoints = {tr.K};
    DiagonalReport d = diagonal_equivalence(tr, sigma, eps, rule);
    ids = ids && d.upper_identity && d.lower_identity;
  }
  res.claim("pointwise_identities", true, ids, "200 random traces, ties at σ and ε included");

  auto part = two_part_partition(4);
  const std::int64_t K = trace_horizon(o, part.horizon);
  auto cps = checkpoints_upto(part.block_ends, K);
  ClauseSets sets;
  sets.upper = bounded_density_subpartition(part.A, 2);
  sets.lower = {part.B, part.B};
  for (auto& s : sets.upper) s = s.truncated(K);
  for (auto& s : sets.lower) s = s.truncated(K);
  TraceMatrix t = level_trace(sets, K, cps);
  DensityRule rule = two_part_rule(o, cps);
  DiagonalReport d = diagonal_equivalence(t, sigma, eps, rule);
  res.results["level_9_trace"] = to_json(d);
  res.claim("condition_9", true, d.condition9, "upper sets split A, lower sets equal B");
  res.claim("diagonal_dc", true, d.diagonal_dc, "tuple-profo: equivalent to condition 9");
  res.parameters = {{"random_traces", 200}, {"sigma", sigma}, {"eps", eps}, {"K", K},
                    {"checkpoints", to_jarray(cps)}, {"delta", rule.delta}, {"window", rule.window}};
  res.trace = TraceExport{t, sigma, eps, rule};
  return res;
}

// ---- qwea -----------------------------------------------------------------------------------

ScenarioResult run_qwea(const RunOptions& o) {
  ScenarioResult res;
  const std::int64_t H = o.horizon.value_or(40);
  ZWeight two{[](std::int64_t x) { return x >= 0 ? 2.0 : 1.0; }, "2 on x >= 0, 1 otherwise"};
  ZWeight one{[](std::int64_t) { return 1.0; }, "1"};
  QweaInput in;
  for (std::int64_t k = 1; k <= H; ++k) in.coefficients.emplace_back(k, std::ldexp(1.0, -int(k)));
  in.support = {0};
  in.members = {{1, two}};
  in.phi = YoungFunction::power(2);
  in.horizon = H;
  CriterionReport grow = qwea_condition(in);
  res.results["weighted"] = to_json(grow);
  res.claim("weighted_translation_grows", true, grow.passed, "qwea: N_Φ grows like 2^{n/2}");

  QweaInput flat = in;
  flat.members = {{1, one}};
  CriterionReport fl = qwea_condition(flat);
  res.results["isometric"] = to_json(fl);
  res.claim("isometric_translation_grows", false, fl.passed, "w ≡ 1 keeps the norm constant");

  QweaInput lp = in;
  lp.phi.reset();
  lp.p = 2;
  lp.supports.clear();
  for (std::int64_t k = 1; k <= H; ++k) {
    std::set<std::int64_t> K;
    for (std::int64_t x = 0; x < std::min<std::int64_t>(k, 4); ++x) K.insert(x);
    lp.supports.push_back(K);
  }
  CriterionReport hip = qwea_condition(lp);
  res.results["lp_variant"] = to_json(hip);
  res.claim("lp_variant_grows", true, hip.passed, "ℓ^2 norm with finite K_n, Σ|c_n||K_n|^{1/2} < ∞");

  QweaInput bad = in;
  for (auto& [k, c] : bad.coefficients) c = 1.0 / static_cast<double>(k);
  bool rejected = false;
  try {
    qwea_condition(bad);
  } catch (const invalid_input&) {
    rejected = true;
  }
  res.claim("non_summable_coefficients_rejected", true, rejected, "c_k = 1/k");

  Delta2Report d2 = delta2_check(YoungFunction::power(2), 1e-3, 1e3, 200);
  res.results["delta2_power2"] = {{"M", d2.M}, {"holds", d2.holds}};
  res.claim("power_2_delta2", true, d2.holds, "Φ(2t) = 4Φ(t)");
  res.parameters = {{"a", 1}, {"phi", "power(2)"}, {"K", "{0}"}, {"c_k", "2^-k"}, {"horizon", H},
                    {"B", "N"}};
  return res;
}

std::vector<Scenario> build_registry() {
  std::vector<Scenario> r;
  r.push_back({"totan", "full relations X×X on K^3 (N = 2): condition 1 via per-k selections",
               "MLO values equal the whole space. Partition A/B = full_density_partition(2, 2, 66066); "
               "distance >= 1 chosen on A, x = y on B; σ = 1, ε ∈ {0.5, 0.1, 1e-3}, δ = 0.1.",
               run_totan});
  r.push_back({"totanr", "diagonal matrices on K^3 (N = 2): condition 1 on S = X",
               "T_{j,k} = (j+k)·I on A, 0 on B (4 blocks, K = 66066). S = {0, e_1, random pair}, "
               "σ ∈ {1, 10}, ε ∈ {0.5, 0.1, 1e-3}, δ = 0.1.",
               run_totanr});
  for (int i = 2; i <= 12; ++i) {
    ConditionSpec s = condition_spec(i);
    std::string levels = "(" + combinator_symbol(s.upper) + ", " + combinator_symbol(s.lower) + ")";
    r.push_back({"example-" + std::to_string(i),
                 "gallery: condition " + std::to_string(i) + " " + levels + " holds, stated failures",
                 "Clause sets at combinator levels " + levels +
                     " on a 4-part full density partition (growth 2, 7 blocks, horizon ≈ 5.6e14), "
                     "δ = 0.1 at the block ends; dense diagonal trace to 66066.",
                 [i](const RunOptions& o) { return run_gallery(i, o); }});
  }
  r.push_back({"gos", "support cosets on C(ℝ): Banach selections vs grid seminorms",
               "select_exceeding on x + span{e_1} in ℓ² for thresholds 2^k; f + C_[jk,∞) under "
               "grid_sup seminorms p_m, m <= jk; unbounded type 1 for m = 1..5, K = 1000.",
               run_gos});
  r.push_back({"qwer", "(A^j + W_j)^k on ℓ²: coset bound, no weak chaos",
               "Forward shift A, W_j = span{e_1..e_j}; ‖z‖ >= max|x_n| for k <= 20; "
               "weak conditions 1..12 on K = 200.",
               run_qwer});
  r.push_back({"weak-mlo", "I + W (weak, not strict) against a gated family (strict)",
               "W = span{e_1}, x = e_1: uniform selection policies vs the dual reading; "
               "D_k + W with D_k = I on A, 0 on B and x = e_2.",
               run_weak_mlo});
  r.push_back({"sunce", "forward shifts F_ω, F_{1/ω} with square-exponent blocks",
               "Blocks b1=2, a1=18, b2=530, a2=66066, b3=33620498, a3=68753097234 of 2's and 1/2's; "
               "n0 scan, per-operator irregularity of e_1, conditions 1..12, norm bounds.",
               run_sunce});
  r.push_back({"bruk", "backward shifts with ω and 1/ω on c0",
               "Sliding products for k <= 1e4, s <= 1e3; x = <1/n> unbounded for each operator on "
               "its own blocks, never jointly.",
               run_bruk});
  r.push_back({"primerinjo", "constant weights ω_j ∈ {2, 3} on ℓ², x = <n^-2>",
               "ζ = 2, p = 2, truncation 1e4, K = 50; displayed lower bound and type-1 unboundedness "
               "with the bound itself as schedule (B = [1, K]).",
               run_primerinjo});
  r.push_back({"primena-shifts", "regularized powers T_j^k C, ω_{j,n} = 2^j n^j, a_n = (n-1)!^-3",
               "N = 2, sup horizon 1e3: B_{j,k} closed form, the bound 2^{jk}k^{j-3} (fails from k = 3), "
               "summability of 1/B_{1,k}, composition oracle.",
               run_primena});
  r.push_back({"da-se-ohladi", "unweighted backward shift powers T^{r_j} on ℓ²(2^-n)",
               "r = (1, 2, 3), S = ℕ, ε = 0.4, N_l = l² + l: Q density, the I_∞ count, Σ a_n^p.",
               run_da_se_ohladi});
  r.push_back({"jebi-ga-hak", "generalized backward shifts, a(n, j) = j",
               "Chain recursion closed form, Q_g = [1, K] for S = ℕ, random increasing jumps against "
               "forward simulation.",
               run_jebi_ga_hak});
  r.push_back({"guerrero", "growth hypothesis on the primerinjo family",
               "B = ∩_j {‖T_j^k x‖ >= log(1+k)} has upper density 1 at K = 200; I_0 (∩) exact on e_1..e_10.",
               run_guerrero});
  r.push_back({"tuple-profo", "condition 9 vs the diagonal operator",
               "Set identities on 200 random traces; a two-part trace with split upper sets.",
               run_tuple_profo});
  r.push_back({"qwea", "weighted translations on ℤ under Luxemburg norms",
               "a = 1, w = 2 on x >= 0, Φ = power(2), K = {0}, c_k = 2^-k, horizon 40; w ≡ 1; ℓ^2 variant.",
               run_qwea});
  return r;
}

}  // namespace

const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> r = build_registry();
  return r;
}

const Scenario* find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry())
    if (s.name == name) return &s;
  return nullptr;
}

Json scenario_report(const Scenario& s, const RunOptions& opts, const ScenarioResult& r) {
  Json j;
  j["scenario"] = s.name;
  j["summary"] = s.summary;
  j["seed"] = opts.seed;
  Json ov = Json::object();
  if (opts.horizon) ov["horizon"] = *opts.horizon;
  if (opts.delta) ov["delta"] = *opts.delta;
  if (opts.sigma) ov["sigma"] = *opts.sigma;
  if (opts.eps) ov["eps"] = *opts.eps;
  j["overrides"] = ov;
  j["parameters"] = r.parameters;
  j["results"] = r.results;
  Json claims = Json::array();
  Json mism = Json::array();
  for (const auto& c : r.claims) {
    claims.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual},
                      {"match", c.matches()}, {"note", c.note}});
    if (!c.matches()) mism.push_back(c.name);
  }
  j["claims"] = claims;
  j["mismatches"] = mism;
  j["status"] = r.ok() ? "ok" : "mismatch";
  return j;
}

}  // namespace ddc
