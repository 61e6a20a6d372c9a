#include "ddchaos/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json density_json(const DensityCheck& c) {
  Json j;
  j["holds"] = c.holds;
  j["exact"] = c.exact;
  if (c.exact) {
    j["density"] = to_string(c.exact_density);
  } else {
    j["witness_ratio"] = to_string(c.witness_ratio);
    j["witness_at"] = c.witness_at;
  }
  return j;
}

// least-squares slope of ys against xs
double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

DensityRule with_default_checkpoint(DensityRule rule, std::int64_t K) {
  if (rule.checkpoints.empty()) rule.checkpoints.push_back(K);
  return rule;
}

}  // namespace

std::string to_string(Quantifier q) {
  switch (q) {
    case Quantifier::cap: return "cap";
    case Quantifier::cup: return "cup";
    case Quantifier::forall: return "forall";
    case Quantifier::exists: return "exists";
  }
  return "?";
}

std::string to_string(SumVerdict v) {
  switch (v) {
    case SumVerdict::converged_heuristic: return "converged (heuristic)";
    case SumVerdict::diverged: return "diverged";
    case SumVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

// ---- I_0 / I_inf -----------------------------------------------------------------------

CriterionReport check_I0(const OperatorFamily& family, Quantifier q,
                         const std::vector<SeqVector>& samples, const SeminormSpace& space,
                         int m, std::int64_t K, double tol_zero, const DensityRule& rule_in) {
  if (samples.empty()) throw invalid_input("check_I0 needs at least one sample vector");
  if (K < 1) throw invalid_input("check_I0 needs K >= 1");
  if (!(tol_zero > 0)) throw invalid_input("tol_zero must be positive");
  DensityRule rule = with_default_checkpoint(rule_in, K);
  const int N = family.size();
  const double lz = std::log(tol_zero);

  CriterionReport rep;
  rep.name = "I_0," + to_string(q);
  rep.evidence["K"] = K;
  rep.evidence["tol_zero"] = tol_zero;
  rep.evidence["delta"] = rule.delta;

  std::vector<bool> j_ok(N, true);  // j works for every sample
  bool all_ok = true;
  Json per_sample = Json::array();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const SeqVector& x = samples[s];
    family.check_domain(x);
    std::vector<IndexSet> small;
    Json sets = Json::array();
    for (int j = 1; j <= N; ++j) {
      IndexSet a;
      if (auto v = family.vanishing_from(j, x)) {
        a = IndexSet::interval(std::max<std::int64_t>(*v, 1), IndexSet::kUnbounded);
      } else {
        std::vector<bool> bits(K);
        for (std::int64_t k = 1; k <= K; ++k)
          bits[k - 1] = family.log_seminorm(j, k, x, space, m) < lz;
        a = IndexSet::from_bitmap(bits, K);
      }
      small.push_back(a);
    }
    Json ev;
    ev["sample"] = s;
    bool ok;
    if (q == Quantifier::cap || q == Quantifier::cup) {
      IndexSet acc = small.front();
      for (int j = 1; j < N; ++j) acc = acc & small[j];
      DensityCheck c = check_full_density(acc, rule);
      ev["A_x"] = acc.describe();
      ev["check"] = density_json(c);
      ok = c.holds;
    } else {
      ok = q == Quantifier::forall;
      for (int j = 0; j < N; ++j) {
        DensityCheck c = check_full_density(small[j], rule);
        Json e = density_json(c);
        e["j"] = j + 1;
        e["A_x"] = small[j].describe();
        sets.push_back(e);
        if (!c.holds) j_ok[j] = false;
        ok = q == Quantifier::forall ? (ok && c.holds) : (ok || c.holds);
      }
      ev["per_j"] = sets;
    }
    ev["holds"] = ok;
    all_ok = all_ok && ok;
    per_sample.push_back(ev);
  }
  rep.evidence["samples"] = per_sample;
  if (q == Quantifier::exists) {
    // one j has to serve every sample
    int witness = 0;
    for (int j = 0; j < N && !witness; ++j)
      if (j_ok[j]) witness = j + 1;
    rep.evidence["witness_j"] = witness;
    rep.passed = witness != 0;
  } else {
    rep.passed = all_ok;
  }
  return rep;
}

CriterionReport check_I_inf(const OperatorFamily& family, Quantifier q,
                            const std::vector<SeqVector>& y, double eps,
                            const std::vector<std::int64_t>& n_schedule,
                            const SeminormSpace& space, int m) {
  if (y.empty()) throw invalid_input("check_I_inf needs a nonempty sequence y_l");
  if (n_schedule.size() != y.size()) throw invalid_input("N_l schedule and y_l differ in length");
  if (!(eps > 0)) throw invalid_input("ε must be positive");
  for (std::size_t i = 0; i < n_schedule.size(); ++i)
    if (n_schedule[i] < 1 || (i && n_schedule[i] <= n_schedule[i - 1]))
      throw invalid_input("N_l must be strictly increasing and positive");
  const int N = family.size();
  const double le = std::log(eps);

  CriterionReport rep;
  rep.name = "I_inf," + to_string(q);
  rep.evidence["eps"] = eps;
  rep.evidence["m"] = m;
  std::vector<bool> j_ok(N, true);
  bool joint_ok = true;
  Json rows = Json::array();
  for (std::size_t li = 0; li < y.size(); ++li) {
    const std::int64_t l = static_cast<std::int64_t>(li) + 1, Nl = n_schedule[li];
    family.check_domain(y[li]);
    std::vector<std::int64_t> per_j(N, 0);
    std::int64_t all_j = 0, any_j = 0;
    for (std::int64_t k = 1; k <= Nl; ++k) {
      int hits = 0;
      for (int j = 1; j <= N; ++j)
        if (family.log_seminorm(j, k, y[li], space, m) > le) {
          ++per_j[j - 1];
          ++hits;
        }
      if (hits == N) ++all_j;
      if (hits > 0) ++any_j;
    }
    // count >= N_l (1 - 1/l)  ⟺  count·l >= N_l (l - 1)
    auto enough = [&](std::int64_t c) { return c * l >= Nl * (l - 1); };
    Json row;
    row["l"] = l;
    row["N_l"] = Nl;
    row["required"] = static_cast<double>(Nl) * (1.0 - 1.0 / static_cast<double>(l));
    row["norm_y"] = seminorm(space, m, y[li]);
    if (q == Quantifier::cap) {
      row["count"] = all_j;
      joint_ok = joint_ok && enough(all_j);
    } else if (q == Quantifier::cup) {
      row["count"] = any_j;
      joint_ok = joint_ok && enough(any_j);
    } else {
      row["count_per_j"] = per_j;
      for (int j = 0; j < N; ++j)
        if (!enough(per_j[j])) j_ok[j] = false;
    }
    rows.push_back(row);
  }
  rep.evidence["rows"] = rows;
  if (q == Quantifier::forall) {
    rep.passed = std::all_of(j_ok.begin(), j_ok.end(), [](bool b) { return b; });
  } else if (q == Quantifier::exists) {
    int witness = 0;
    for (int j = 0; j < N && !witness; ++j)
      if (j_ok[j]) witness = j + 1;
    rep.evidence["witness_j"] = witness;
    rep.passed = witness != 0;
  } else {
    rep.passed = joint_ok;
  }
  return rep;
}

// ---- summability -------------------------------------------------------------------------

SummabilityResult summability_from_logs(const std::vector<double>& log_values, double power,
                                        std::size_t tail_window) {
  if (log_values.empty()) throw invalid_input("summability needs at least one value");
  if (!(power > 0)) throw invalid_input("summability power must be positive");
  SummabilityResult r;
  double sum = 0;
  std::vector<double> log_inc(log_values.size());
  for (std::size_t i = 0; i < log_values.size(); ++i) {
    if (std::isnan(log_values[i]) || log_values[i] == -kInf)
      throw invalid_input("summability needs positive values");
    log_inc[i] = -power * log_values[i];
    sum += std::exp(log_inc[i]);
    r.partial_sums.push_back(sum);
  }
  std::size_t w = std::min(std::max<std::size_t>(tail_window, 2), log_values.size());
  if (w < 2) return r;
  std::size_t from = log_values.size() - w;
  std::vector<double> ks, lks, lt;
  r.tail_max_increment = 0;
  for (std::size_t i = from; i < log_values.size(); ++i) {
    double k = static_cast<double>(i + 1);
    ks.push_back(k);
    lks.push_back(std::log(k));
    lt.push_back(log_inc[i]);
    r.tail_max_increment = std::max(r.tail_max_increment, std::exp(log_inc[i]));
  }
  r.geometric_ratio = std::exp(slope(ks, lt));
  r.power_exponent = -slope(lks, lt);
  bool nondecreasing = lt.back() >= lt.front();
  if (nondecreasing || r.power_exponent <= 1.05)
    r.verdict = SumVerdict::diverged;
  else if (r.geometric_ratio < 0.999 || r.power_exponent >= 1.5)
    r.verdict = SumVerdict::converged_heuristic;
  else
    r.verdict = SumVerdict::inconclusive;
  return r;
}

CriterionReport summability_test_logs(const std::vector<double>& log_values, double power,
                                      std::size_t tail_window) {
  SummabilityResult s = summability_from_logs(log_values, power, tail_window);
  CriterionReport rep;
  rep.name = "summability";
  rep.passed = s.verdict == SumVerdict::converged_heuristic;
  rep.evidence["power"] = power;
  rep.evidence["horizon"] = log_values.size();
  rep.evidence["verdict"] = to_string(s.verdict);
  rep.evidence["partial_sum"] = s.partial_sums.back();
  rep.evidence["tail_window"] = tail_window;
  rep.evidence["tail_max_increment"] = s.tail_max_increment;
  rep.evidence["geometric_ratio"] = s.geometric_ratio;
  rep.evidence["power_exponent"] = s.power_exponent;
  return rep;
}

CriterionReport summability_test(const std::vector<double>& values, double power,
                                 std::size_t tail_window) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0)) throw invalid_input("summability needs positive values");
    logs.push_back(std::log(v));
  }
  return summability_test_logs(logs, power, tail_window);
}

// ---- interleaving and chains ----------------------------------------------------------------

std::int64_t interleave_index(int j, std::int64_t k, int n) {
  if (n < 1 || j < 1 || j > n || k < 1) throw invalid_input("interleave_index needs 1 <= j <= N, k >= 1");
  return j + (k - 1) * n;
}

std::pair<int, std::int64_t> interleave_inverse(std::int64_t index, int n) {
  if (n < 1 || index < 1) throw invalid_input("interleave_inverse needs index >= 1, N >= 1");
  std::int64_t r = index % n;
  int j = r == 0 ? n : static_cast<int>(r);
  return {j, (index - j) / n + 1};
}

ChainResult chain_recursion(std::int64_t n, int j, const JumpFn& a, const CoefFn& omega,
                            std::int64_t k) {
  if (n < 1 || k < 0) throw invalid_input("chain_recursion needs n >= 1, k >= 0");
  ChainResult r;
  r.coefficient = 1;
  std::int64_t cur = n;
  for (std::int64_t s = 1; s <= k; ++s) {
    // i + a(i,j) is strictly increasing; find i with i + a(i,j) = cur
    std::int64_t lo = 1, hi = cur;
    std::optional<std::int64_t> found;
    while (lo <= hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      std::int64_t v = mid + a(mid, j);
      if (v == cur) {
        found = mid;
        break;
      }
      if (v < cur)
        lo = mid + 1;
      else
        hi = mid - 1;
    }
    if (!found) return r;
    r.chain.push_back(*found);
    r.coefficient *= omega(*found, j);
    cur = *found;
  }
  r.reachable = true;
  return r;
}

bool in_p_set(const ChainResult& c, double b_n, double rel_tol) {
  if (!c.ends_at_one()) return false;
  return std::abs(b_n * c.coefficient - 1.0) <= rel_tol;
}

IndexSet qg_set(const IndexSet& s, int n, const JumpFn& a, const CoefFn& omega,
                const std::function<double(std::int64_t)>& b, std::int64_t K) {
  if (n < 1 || K < 1) throw invalid_input("qg_set needs N >= 1 and K >= 1");
  std::vector<std::int64_t> pos(n, 1);
  std::vector<double> coef(n, 1.0);
  std::vector<bool> alive(n, true);
  std::vector<bool> bits(K);
  for (std::int64_t k = 1; k <= K; ++k) {
    bool all = true;
    for (int j = 0; j < n; ++j) {
      if (alive[j]) {
        std::int64_t step = a(pos[j], j + 1);
        coef[j] *= omega(pos[j], j + 1);
        if (pos[j] > std::numeric_limits<std::int64_t>::max() - step)
          alive[j] = false;
        else
          pos[j] += step;
      }
      bool member = alive[j] && s.contains(pos[j]) &&
                    std::abs(b(pos[j]) * coef[j] - 1.0) <= 1e-12;
      all = all && member;
    }
    bits[k - 1] = all;
  }
  return IndexSet::from_bitmap(bits, K);
}

CriterionReport q_density_criterion(const IndexSet& s, const std::vector<std::int64_t>& r,
                                    Rational required) {
  if (!s.is_exact()) throw invalid_input("q_density_criterion needs an exact set S");
  IndexSet q = q_set(s, r);
  Rational d = q.exact_density();
  CriterionReport rep;
  rep.name = "Q_density";
  rep.passed = d >= required;
  rep.evidence["r"] = r;
  rep.evidence["S"] = s.describe();
  rep.evidence["Q"] = q.describe();
  rep.evidence["density"] = to_string(d);
  rep.evidence["required"] = to_string(required);
  return rep;
}

// ---- weighted translations ------------------------------------------------------------------

CriterionReport qwea_condition(const QweaInput& in) {
  if (in.coefficients.empty()) throw invalid_input("qwea needs coefficients");
  if (in.members.empty()) throw invalid_input("qwea needs at least one translation");
  if (in.horizon < 1) throw invalid_input("qwea needs horizon >= 1");
  if (!in.supports.empty() && in.supports.size() != in.coefficients.size())
    throw invalid_input("one support per coefficient expected");
  if (in.supports.empty() && in.support.empty()) throw invalid_input("support K must be nonempty");

  CriterionReport rep;
  rep.name = in.phi ? "qwea" : "hip-on";

  std::vector<double> inv_abs;
  double l1 = 0;
  for (auto [k, c] : in.coefficients) {
    if (!in.B.contains(k)) throw invalid_input("coefficient index outside B");
    if (c != 0) inv_abs.push_back(1.0 / std::abs(c));
    l1 += std::abs(c);
  }
  rep.evidence["l1_coefficients"] = l1;
  if (inv_abs.size() >= 3) {
    auto s = summability_from_logs(
        [&] {
          std::vector<double> l;
          for (double v : inv_abs) l.push_back(std::log(v));
          return l;
        }(),
        1.0, std::max<std::size_t>(2, inv_abs.size() / 2));
    rep.evidence["coefficient_summability"] = to_string(s.verdict);
    if (s.verdict == SumVerdict::diverged)
      throw invalid_input("coefficients (c_k) are not absolutely summable");
  }

  SeqVector g(IndexDomain::integer);
  for (std::size_t i = 0; i < in.coefficients.size(); ++i) {
    const auto& supp = in.supports.empty() ? in.support : in.supports[i];
    for (std::int64_t x : supp) g.add(x, in.coefficients[i].second);
  }

  auto schedule = in.schedule ? in.schedule
                              : [](std::int64_t n) { return std::log1p(static_cast<double>(n)); };
  std::int64_t tail = in.tail_from > 0 ? in.tail_from : std::max<std::int64_t>(1, in.horizon / 2);
  SeminormSpace lp = SeminormSpace::lp(in.p, IndexDomain::integer);

  bool ok = true;
  std::int64_t tail_points = 0;
  Json per_j = Json::array();
  for (std::size_t j = 0; j < in.members.size(); ++j) {
    const auto& mem = in.members[j];
    Json norms = Json::array();
    double worst_margin = kInf;
    for (std::int64_t n = 1; n <= in.horizon; ++n) {
      if (!in.B.contains(n)) continue;
      SeqVector h = translation_power(mem.a, mem.w, n, g);
      double v = in.phi ? luxemburg_norm(h, *in.phi, in.tol) : seminorm(lp, 1, h);
      norms.push_back(Json::array({n, v}));
      if (n >= tail) {
        ++tail_points;
        double margin = v - schedule(n);
        worst_margin = std::min(worst_margin, margin);
        if (margin < 0) ok = false;
      }
    }
    Json e;
    e["j"] = j + 1;
    e["a"] = mem.a;
    e["w"] = mem.w.name;
    e["norms"] = norms;
    e["worst_margin"] = worst_margin;
    per_j.push_back(e);
  }
  rep.evidence["tail_from"] = tail;
  rep.evidence["per_j"] = per_j;
  rep.passed = ok && tail_points > 0;
  return rep;
}

Json to_json(const CriterionReport& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["evidence"] = r.evidence;
  return j;
}

}  // namespace ddc
