#include "ddchaos/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double v) { return v <= 0 ? kNegInf : std::log(v); }

int type_of(Combinator c) {
  switch (c) {
    case Combinator::ALL_intersect: return 1;
    case Combinator::ANY_union: return 2;
    case Combinator::FORALL_each: return 3;
    case Combinator::EXISTS_one: return 4;
  }
  return 1;
}

Combinator combinator_of_type(int type) {
  switch (type) {
    case 1: return Combinator::ALL_intersect;
    case 2: return Combinator::ANY_union;
    case 3: return Combinator::FORALL_each;
    case 4: return Combinator::EXISTS_one;
  }
  throw invalid_input("classification type must be in 1..4");
}

std::vector<std::int64_t> normalized_checkpoints(std::vector<std::int64_t> cps, std::int64_t K) {
  if (K < 1) throw invalid_input("trace horizon K must be >= 1");
  if (cps.empty()) cps.push_back(K);
  for (auto c : cps)
    if (c < 1 || c > K) throw invalid_input("checkpoint outside [1, K]");
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

Element element_difference(const Element& x, const Element& y) {
  return std::visit(
      [&](const auto& a) -> Element {
        using T = std::decay_t<decltype(a)>;
        const auto* b = std::get_if<T>(&y);
        if (!b) throw invalid_input("pair_trace: x and y have different types");
        return a - *b;
      },
      x);
}

bool element_is_zero(const Element& e) {
  return std::visit([](const auto& v) { return v.is_zero(); }, e);
}

double coset_min(const AffineCoset& c, const SeminormSpace& space, MetricKind metric,
                 double tol) {
  if (metric == MetricKind::norm) return min_seminorm(c, space, 1).value;
  return frechet_sum([&](int n) { return min_seminorm(c, space, n).value; }, tol);
}

double coset_max(const AffineCoset& c, const SeminormSpace& space, MetricKind metric,
                 double cap, double tol) {
  if (metric == MetricKind::norm) return std::min(sup_seminorm(c, space, 1), cap);
  return frechet_sum([&](int n) { return sup_seminorm(c, space, n); }, tol);
}

TraceMatrix empty_trace(int n, std::int64_t K, std::vector<std::int64_t> checkpoints,
                        SelectionMode mode) {
  TraceMatrix t;
  t.N = n;
  t.K = K;
  t.checkpoints = normalized_checkpoints(std::move(checkpoints), K);
  t.mode = mode;
  t.log_s.assign(n, std::vector<double>(K, kNegInf));
  if (mode == SelectionMode::mlo_dual) t.log_s_max.assign(n, std::vector<double>(K, kNegInf));
  return t;
}

IndexSet threshold_set(const std::vector<double>& logs, std::int64_t K,
                       const std::function<bool(std::int64_t, double)>& in) {
  std::vector<bool> bits(K);
  for (std::int64_t k = 1; k <= K; ++k) bits[k - 1] = in(k, logs[k - 1]);
  return IndexSet::from_bitmap(bits, K);
}

}  // namespace

int combinator_level(Combinator c) {
  switch (c) {
    case Combinator::ANY_union: return 1;
    case Combinator::EXISTS_one: return 2;
    case Combinator::FORALL_each: return 3;
    case Combinator::ALL_intersect: return 4;
  }
  return 0;
}

std::string combinator_symbol(Combinator c) {
  switch (c) {
    case Combinator::ALL_intersect: return "∩";
    case Combinator::ANY_union: return "∪";
    case Combinator::FORALL_each: return "∀";
    case Combinator::EXISTS_one: return "∃";
  }
  return "?";
}

ConditionSpec condition_spec(int i) {
  using C = Combinator;
  static const std::array<std::pair<C, C>, 12> table{{
      {C::ALL_intersect, C::ALL_intersect},  // 1
      {C::ALL_intersect, C::FORALL_each},    // 2
      {C::FORALL_each, C::FORALL_each},      // 3
      {C::FORALL_each, C::EXISTS_one},       // 4
      {C::EXISTS_one, C::FORALL_each},       // 5
      {C::ALL_intersect, C::EXISTS_one},     // 6
      {C::FORALL_each, C::ALL_intersect},    // 7
      {C::EXISTS_one, C::ALL_intersect},     // 8
      {C::ANY_union, C::ALL_intersect},      // 9
      {C::ANY_union, C::FORALL_each},        // 10
      {C::ALL_intersect, C::ANY_union},      // 11
      {C::FORALL_each, C::ANY_union},        // 12
  }};
  if (i < 1 || i > 12) throw invalid_input("condition index must be in 1..12");
  return {i, table[i - 1].first, table[i - 1].second};
}

std::string to_string(SelectionMode m) {
  switch (m) {
    case SelectionMode::single_valued: return "single_valued";
    case SelectionMode::mlo_min: return "mlo_min";
    case SelectionMode::mlo_max: return "mlo_max";
    case SelectionMode::mlo_dual: return "mlo_dual";
  }
  return "?";
}

double TraceMatrix::value(int j, std::int64_t k) const { return std::exp(log_at(j, k)); }

TraceMatrix TraceMatrix::policy(bool use_max) const {
  if (mode != SelectionMode::mlo_dual) return *this;
  TraceMatrix t = *this;
  if (use_max) t.log_s = log_s_max;
  t.log_s_max.clear();
  t.mode = use_max ? SelectionMode::mlo_max : SelectionMode::mlo_min;
  return t;
}

// ---- traces ---------------------------------------------------------------------

TraceMatrix pair_trace(const OperatorFamily& family, const SeqVector& x, const SeqVector& y,
                       const SeminormSpace& space, MetricKind metric, std::int64_t K,
                       std::vector<std::int64_t> checkpoints, double tol) {
  if (x == y) throw invalid_input("pair_trace needs distinct points");
  family.check_domain(x);
  family.check_domain(y);
  TraceMatrix t = empty_trace(family.size(), K, std::move(checkpoints),
                              SelectionMode::single_valued);
  SeqVector diff = x - y;
  for (int j = 1; j <= t.N; ++j)
    for (std::int64_t k = 1; k <= K; ++k) {
      double l;
      if (metric == MetricKind::norm) {
        l = family.log_seminorm(j, k, diff, space, 1);
      } else {
        SeqVector img = family.apply(j, k, diff);
        l = safe_log(frechet_sum([&](int n) { return seminorm(space, n, img); }, tol));
      }
      t.log_s[j - 1][k - 1] = l;
    }
  return t;
}

TraceMatrix pair_trace(const MloFamily& family, const Element& x, const Element& y,
                       const SeminormSpace& space, MetricKind metric, std::int64_t K,
                       std::vector<std::int64_t> checkpoints, SelectionMode mode, double cap,
                       double tol) {
  if (mode == SelectionMode::single_valued)
    throw invalid_input("MLO traces need an mlo_* selection mode");
  Element diff = element_difference(x, y);
  if (element_is_zero(diff)) throw invalid_input("pair_trace needs distinct points");
  TraceMatrix t = empty_trace(family.size(), K, std::move(checkpoints), mode);
  for (int j = 1; j <= t.N; ++j)
    for (std::int64_t k = 1; k <= K; ++k) {
      AffineCoset c = family.apply(j, k, diff);
      double lo = mode == SelectionMode::mlo_max ? 0 : coset_min(c, space, metric, tol);
      double hi = mode == SelectionMode::mlo_min ? 0 : coset_max(c, space, metric, cap, tol);
      t.log_s[j - 1][k - 1] = safe_log(mode == SelectionMode::mlo_max ? hi : lo);
      if (mode == SelectionMode::mlo_dual) t.log_s_max[j - 1][k - 1] = safe_log(hi);
    }
  return t;
}

TraceMatrix orbit_trace(const OperatorFamily& family, const SeqVector& x,
                        const SeminormSpace& space, int m, std::int64_t K,
                        std::vector<std::int64_t> checkpoints) {
  family.check_domain(x);
  TraceMatrix t = empty_trace(family.size(), K, std::move(checkpoints),
                              SelectionMode::single_valued);
  for (int j = 1; j <= t.N; ++j) {
    std::optional<std::int64_t> dead = family.vanishing_from(j, x);
    for (std::int64_t k = 1; k <= K; ++k) {
      if (dead && k >= *dead) break;
      t.log_s[j - 1][k - 1] = family.log_seminorm(j, k, x, space, m);
    }
  }
  return t;
}

TraceMatrix orbit_trace(const MloFamily& family, const Element& x, const SeminormSpace& space,
                        int m, std::int64_t K, std::vector<std::int64_t> checkpoints,
                        SelectionMode mode, double cap) {
  if (mode == SelectionMode::single_valued)
    throw invalid_input("MLO traces need an mlo_* selection mode");
  TraceMatrix t = empty_trace(family.size(), K, std::move(checkpoints), mode);
  for (int j = 1; j <= t.N; ++j)
    for (std::int64_t k = 1; k <= K; ++k) {
      AffineCoset c = family.apply(j, k, x);
      double lo = min_seminorm(c, space, m).value;
      double hi = std::min(sup_seminorm(c, space, m), cap);
      t.log_s[j - 1][k - 1] = safe_log(mode == SelectionMode::mlo_max ? hi : lo);
      if (mode == SelectionMode::mlo_dual) t.log_s_max[j - 1][k - 1] = safe_log(hi);
    }
  return t;
}

// ---- clause evaluation ------------------------------------------------------------

ClauseSets clause_sets(const TraceMatrix& t, double sigma, double eps) {
  if (!(sigma > 0) || !(eps > 0)) throw invalid_input("σ and ε must be positive");
  double ls = std::log(sigma), le = std::log(eps);
  const auto& upper_src = t.mode == SelectionMode::mlo_dual ? t.log_s_max : t.log_s;
  ClauseSets out;
  for (int j = 0; j < t.N; ++j) {
    out.upper.push_back(threshold_set(upper_src[j], t.K, [&](auto, double l) { return l >= ls; }));
    out.lower.push_back(threshold_set(t.log_s[j], t.K, [&](auto, double l) { return l < le; }));
  }
  return out;
}

ClauseVerdict eval_clause(Combinator c, const std::vector<IndexSet>& sets,
                          const DensityRule& rule) {
  if (sets.empty()) throw invalid_input("clause needs at least one set");
  ClauseVerdict v;
  v.combinator = c;
  switch (c) {
    case Combinator::ALL_intersect:
    case Combinator::ANY_union: {
      IndexSet acc = sets.front();
      for (std::size_t j = 1; j < sets.size(); ++j)
        acc = c == Combinator::ALL_intersect ? (acc & sets[j]) : (acc | sets[j]);
      v.checks.push_back(check_full_density(acc, rule));
      v.holds = v.checks.back().holds;
      break;
    }
    case Combinator::FORALL_each:
    case Combinator::EXISTS_one: {
      bool all = true;
      for (std::size_t j = 0; j < sets.size(); ++j) {
        v.checks.push_back(check_full_density(sets[j], rule));
        bool ok = v.checks.back().holds;
        all = all && ok;
        if (ok && v.witness_j == 0) v.witness_j = static_cast<int>(j) + 1;
      }
      v.holds = c == Combinator::FORALL_each ? all : v.witness_j != 0;
      break;
    }
  }
  return v;
}

Verdict eval_condition(const ConditionSpec& spec, const ClauseSets& sets,
                       const DensityRule& rule) {
  if (sets.upper.size() != sets.lower.size())
    throw invalid_input("upper and lower clause families differ in size");
  Verdict v;
  v.condition = spec.index;
  v.delta = rule.delta;
  v.upper = eval_clause(spec.upper, sets.upper, rule);
  v.lower = eval_clause(spec.lower, sets.lower, rule);
  v.holds = v.upper.holds && v.lower.holds;
  return v;
}

// ---- classification ------------------------------------------------------------------

LevelSets level_sets(const TraceMatrix& orbit, const ClassifyOptions& opts) {
  if (!(opts.tol_zero > 0)) throw invalid_input("tol_zero must be positive");
  auto g = opts.schedule ? opts.schedule
                         : [](std::int64_t k) { return std::log1p(static_cast<double>(k)); };
  double lz = std::log(opts.tol_zero);
  const auto& big = orbit.mode == SelectionMode::mlo_dual ? orbit.log_s_max : orbit.log_s;
  LevelSets ls;
  std::vector<double> lg(orbit.K);
  for (std::int64_t k = 1; k <= orbit.K; ++k) lg[k - 1] = safe_log(g(k));
  for (int j = 0; j < orbit.N; ++j) {
    ls.small.push_back(threshold_set(orbit.log_s[j], orbit.K, [&](auto, double l) { return l < lz; }));
    ls.large.push_back(threshold_set(big[j], orbit.K,
                                     [&](std::int64_t k, double l) { return l >= lg[k - 1]; }));
  }
  std::vector<double> sums(orbit.K);
  for (std::int64_t k = 1; k <= orbit.K; ++k) {
    std::vector<double> col;
    for (int j = 0; j < orbit.N; ++j) col.push_back(big[j][k - 1]);
    sums[k - 1] = log_sum_exp(col);
  }
  ls.large_sum =
      threshold_set(sums, orbit.K, [&](std::int64_t k, double l) { return l >= lg[k - 1]; });
  return ls;
}

IndexSet monotone_level_set(const std::vector<std::pair<std::int64_t, std::int64_t>>& runs,
                            const std::function<bool(std::int64_t)>& pred,
                            std::optional<std::int64_t> horizon) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto [lo, hi] : runs) {
    if (horizon) hi = std::min(hi, *horizon);
    if (lo > hi) continue;
    bool a = pred(lo), b = pred(hi);
    if (a && b) {
      out.emplace_back(lo, hi);
    } else if (a != b) {
      // binary search for the switch point
      std::int64_t l = lo, r = hi;  // pred(l) == a, pred(r) == b
      while (r - l > 1) {
        std::int64_t mid = l + (r - l) / 2;
        (pred(mid) == a ? l : r) = mid;
      }
      if (a)
        out.emplace_back(lo, l);
      else
        out.emplace_back(r, hi);
    }
  }
  return IndexSet::from_intervals(std::move(out), horizon);
}

TypeVerdict classify_near_zero(const LevelSets& ls, int type, const DensityRule& rule) {
  TypeVerdict v;
  v.type = type;
  v.clause = eval_clause(combinator_of_type(type), ls.small, rule);
  v.holds = v.clause.holds;
  return v;
}

TypeVerdict classify_unbounded(const LevelSets& ls, int type, const DensityRule& rule) {
  TypeVerdict v;
  v.type = type;
  if (type == 2) {
    v.clause.combinator = Combinator::ANY_union;
    v.clause.checks.push_back(check_full_density(ls.large_sum, rule));
    v.clause.holds = v.clause.checks.back().holds;
  } else {
    v.clause = eval_clause(combinator_of_type(type), ls.large, rule);
  }
  v.holds = v.clause.holds;
  return v;
}

TypeVerdict classify_near_zero(const TraceMatrix& orbit, int type, const ClassifyOptions& opts) {
  return classify_near_zero(level_sets(orbit, opts), type, opts.rule);
}

TypeVerdict classify_unbounded(const TraceMatrix& orbit, int type, const ClassifyOptions& opts) {
  return classify_unbounded(level_sets(orbit, opts), type, opts.rule);
}

std::pair<int, int> irregular_types(int i) {
  ConditionSpec s = condition_spec(i);
  return {type_of(s.lower), type_of(s.upper)};
}

std::optional<std::pair<int, int>> irregular_types_alternative(int i) {
  condition_spec(i);
  if (i == 7) return std::make_pair(1, 2);
  return std::nullopt;
}

IrregularVerdict classify_irregular(const LevelSets& ls, int i, const DensityRule& rule) {
  IrregularVerdict v;
  v.condition = i;
  std::tie(v.near_type, v.unbounded_type) = irregular_types(i);
  v.near_zero = classify_near_zero(ls, v.near_type, rule);
  v.unbounded = classify_unbounded(ls, v.unbounded_type, rule);
  v.holds = v.near_zero.holds && v.unbounded.holds;
  v.alt_types = irregular_types_alternative(i);
  if (v.alt_types)
    v.alt_holds = classify_near_zero(ls, v.alt_types->first, rule).holds &&
                  classify_unbounded(ls, v.alt_types->second, rule).holds;
  return v;
}

IrregularVerdict classify_irregular(const TraceMatrix& orbit, int i, const ClassifyOptions& opts) {
  if (orbit.mode != SelectionMode::mlo_dual)
    return classify_irregular(level_sets(orbit, opts), i, opts.rule);
  IrregularVerdict lo = classify_irregular(level_sets(orbit.policy(false), opts), i, opts.rule);
  if (lo.holds) return lo;
  IrregularVerdict hi = classify_irregular(level_sets(orbit.policy(true), opts), i, opts.rule);
  if (hi.holds) return hi;
  IrregularVerdict dual = classify_irregular(level_sets(orbit, opts), i, opts.rule);
  dual.weak_only = dual.holds;
  dual.holds = false;
  return dual;
}

IrregularVerdict classify_irregular(const OperatorFamily& family, const SeqVector& x, int i,
                                    const SeminormSpace& space, int m, std::int64_t K,
                                    const ClassifyOptions& opts) {
  if (x.is_zero()) throw invalid_input("classification needs a nonzero vector");
  TraceMatrix t = orbit_trace(family, x, space, m, K, opts.rule.checkpoints);
  return classify_irregular(t, i, opts);
}

// ---- scrambled sets -----------------------------------------------------------------

StrictWeakVerdict eval_condition_mlo(const ConditionSpec& spec, const TraceMatrix& dual,
                                     double sigma, double eps, const DensityRule& rule) {
  if (dual.mode != SelectionMode::mlo_dual) throw invalid_input("strict/weak needs an mlo_dual trace");
  StrictWeakVerdict v;
  v.min_policy = eval_condition(spec, clause_sets(dual.policy(false), sigma, eps), rule);
  v.max_policy = eval_condition(spec, clause_sets(dual.policy(true), sigma, eps), rule);
  v.dual = eval_condition(spec, clause_sets(dual, sigma, eps), rule);
  v.strict = v.min_policy.holds || v.max_policy.holds;
  v.weak = v.dual.holds;
  return v;
}

ScrambledReport verify_scrambled_set(const std::vector<SeqVector>& S, const OperatorFamily& family,
                                     const SeminormSpace& space, MetricKind metric, int i,
                                     double sigma, const std::vector<double>& eps_list,
                                     std::int64_t K, const std::vector<std::int64_t>& checkpoints,
                                     const DensityRule& rule) {
  if (S.size() < 2) throw invalid_input("scrambled set needs at least two points");
  if (eps_list.empty()) throw invalid_input("ε list must be nonempty");
  for (std::size_t a = 0; a < S.size(); ++a)
    for (std::size_t b = a + 1; b < S.size(); ++b)
      if (S[a] == S[b]) throw invalid_input("scrambled set contains duplicate vectors");
  ScrambledReport rep;
  rep.condition = i;
  rep.holds = true;
  ConditionSpec spec = condition_spec(i);
  for (std::size_t a = 0; a < S.size(); ++a)
    for (std::size_t b = a + 1; b < S.size(); ++b) {
      TraceMatrix t = pair_trace(family, S[a], S[b], space, metric, K, checkpoints);
      PairVerdict pv;
      pv.a = a;
      pv.b = b;
      pv.eps = eps_list;
      pv.holds = true;
      for (double eps : eps_list) {
        pv.verdicts.push_back(eval_condition(spec, clause_sets(t, sigma, eps), rule));
        pv.holds = pv.holds && pv.verdicts.back().holds;
      }
      rep.holds = rep.holds && pv.holds;
      rep.pairs.push_back(std::move(pv));
    }
  return rep;
}

// ---- lattice ---------------------------------------------------------------------------

const Relation& implication_lattice() {
  static const Relation rel = [] {
    Relation r{};
    auto add = [&](int a, std::initializer_list<int> bs) {
      for (int b : bs) r[a][b] = true;
    };
    for (int i = 1; i <= 12; ++i) {
      r[i][i] = true;
      r[1][i] = true;
    }
    add(2, {3, 4, 5, 6, 10, 11, 12});
    add(3, {4, 5, 10, 12});
    add(4, {12});
    add(5, {10});
    add(6, {4, 11, 12});
    add(7, {3, 4, 5, 8, 9, 10, 12});
    add(8, {5, 9, 10});
    add(9, {10});
    add(11, {12});
    return r;
  }();
  return rel;
}

Relation transitive_closure(const Relation& r) {
  Relation c = r;
  for (int k = 1; k <= 12; ++k)
    for (int i = 1; i <= 12; ++i)
      for (int j = 1; j <= 12; ++j)
        if (c[i][k] && c[k][j]) c[i][j] = true;
  return c;
}

bool level_implies(int i1, int i2) {
  ConditionSpec a = condition_spec(i1), b = condition_spec(i2);
  return combinator_level(b.upper) <= combinator_level(a.upper) &&
         combinator_level(b.lower) <= combinator_level(a.lower);
}

LatticeReport lattice_consistency(const ClauseSets& sets, const DensityRule& rule) {
  LatticeReport rep;
  for (int i = 1; i <= 12; ++i) rep.verdicts[i] = eval_condition(condition_spec(i), sets, rule).holds;
  const Relation& lat = implication_lattice();
  for (int a = 1; a <= 12; ++a)
    for (int b = 1; b <= 12; ++b)
      if (lat[a][b] && rep.verdicts[a] && !rep.verdicts[b]) rep.violations.emplace_back(a, b);
  return rep;
}

DiagonalReport diagonal_equivalence(const TraceMatrix& t, double sigma, double eps,
                                    const DensityRule& rule) {
  ClauseSets cs = clause_sets(t, sigma, eps);
  // in dual mode the σ side reads the max selection
  std::vector<double> diag_hi(t.K, kNegInf), diag_lo(t.K, kNegInf);
  const auto& hi_src = t.mode == SelectionMode::mlo_dual ? t.log_s_max : t.log_s;
  for (int j = 0; j < t.N; ++j)
    for (std::int64_t k = 0; k < t.K; ++k) {
      diag_hi[k] = std::max(diag_hi[k], hi_src[j][k]);
      diag_lo[k] = std::max(diag_lo[k], t.log_s[j][k]);
    }
  double ls = std::log(sigma), le = std::log(eps);
  IndexSet up = threshold_set(diag_hi, t.K, [&](auto, double l) { return l >= ls; });
  IndexSet low = threshold_set(diag_lo, t.K, [&](auto, double l) { return l < le; });
  IndexSet uni = cs.upper.front(), inter = cs.lower.front();
  for (int j = 1; j < t.N; ++j) {
    uni = uni | cs.upper[j];
    inter = inter & cs.lower[j];
  }
  DiagonalReport r;
  r.upper_identity = up == uni;
  r.lower_identity = low == inter;
  r.condition9 = eval_condition(condition_spec(9), cs, rule).holds;
  r.diagonal_dc = eval_condition(condition_spec(1), ClauseSets{{up}, {low}}, rule).holds;
  return r;
}

}  // namespace ddc
