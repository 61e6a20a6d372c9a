#include "ddchaos/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "ddchaos/errors.hpp"

namespace ddc {

Json jnum(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;  // no "-0"
}

Json rounded(const Json& j) {
  if (j.is_number_float()) return jnum(j.get<double>());
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

std::string dump_json(const Json& j) { return rounded(j).dump(2) + "\n"; }

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const IndexSet& s) {
  Json j;
  j["exact"] = s.is_exact();
  if (s.horizon()) j["horizon"] = *s.horizon();
  if (s.is_exact()) j["density"] = to_json(s.exact_density());
  j["describe"] = s.describe();
  return j;
}

Json to_json(const DensityProfile& p) {
  Json pts = Json::array();
  for (const auto& [n, r] : p.points) pts.push_back(Json::array({n, to_json(r)}));
  Json j;
  j["points"] = pts;
  j["sup_ratio"] = to_json(p.sup_ratio);
  j["sup_at"] = p.sup_at;
  return j;
}

Json to_json(const DensityCheck& c) {
  Json j;
  j["holds"] = c.holds;
  j["exact"] = c.exact;
  if (c.exact) {
    j["density"] = to_json(c.exact_density);
  } else {
    j["witness_ratio"] = to_json(c.witness_ratio);
    j["witness_at"] = c.witness_at;
    j["profile"] = to_json(c.profile);
  }
  return j;
}

Json to_json(const ClauseVerdict& v) {
  Json j;
  j["combinator"] = combinator_symbol(v.combinator);
  j["holds"] = v.holds;
  if (v.witness_j) j["witness_j"] = v.witness_j;
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["condition"] = v.condition;
  j["holds"] = v.holds;
  j["delta"] = v.delta;
  j["upper"] = to_json(v.upper);
  j["lower"] = to_json(v.lower);
  return j;
}

Json to_json(const TypeVerdict& v) {
  Json j;
  j["type"] = v.type;
  j["holds"] = v.holds;
  j["clause"] = to_json(v.clause);
  return j;
}

Json to_json(const IrregularVerdict& v) {
  Json j;
  j["condition"] = v.condition;
  j["near_zero_type"] = v.near_type;
  j["unbounded_type"] = v.unbounded_type;
  j["holds"] = v.holds;
  j["weak_only"] = v.weak_only;
  j["near_zero"] = to_json(v.near_zero);
  j["unbounded"] = to_json(v.unbounded);
  if (v.alt_types) {
    j["alternative_types"] = Json::array({v.alt_types->first, v.alt_types->second});
    j["alternative_holds"] = v.alt_holds.value_or(false);
  }
  return j;
}

Json to_json(const StrictWeakVerdict& v) {
  Json j;
  j["strict"] = v.strict;
  j["weak"] = v.weak;
  j["min_policy"] = v.min_policy.holds;
  j["max_policy"] = v.max_policy.holds;
  j["dual"] = to_json(v.dual);
  return j;
}

Json to_json(const DiagonalReport& r) {
  Json j;
  j["condition9"] = r.condition9;
  j["diagonal_dc"] = r.diagonal_dc;
  j["upper_identity"] = r.upper_identity;
  j["lower_identity"] = r.lower_identity;
  return j;
}

Json to_json(const ScrambledReport& r) {
  Json j;
  j["condition"] = r.condition;
  j["holds"] = r.holds;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json e;
    e["a"] = p.a;
    e["b"] = p.b;
    e["holds"] = p.holds;
    Json per_eps = Json::array();
    for (std::size_t i = 0; i < p.verdicts.size(); ++i)
      per_eps.push_back({{"eps", p.eps.at(i)}, {"holds", p.verdicts[i].holds}});
    e["per_eps"] = per_eps;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  return j;
}

// ---- CSV ------------------------------------------------------------------------------

namespace {

std::string fmt(const char* f, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end) throw invalid_input("bad number in trace CSV: " + s);
  return v;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw invalid_input("");
    return v;
  } catch (const std::exception&) {
    throw invalid_input("bad integer in trace CSV: " + s);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

SelectionMode mode_from(const std::string& s) {
  for (auto m : {SelectionMode::single_valued, SelectionMode::mlo_min, SelectionMode::mlo_max,
                 SelectionMode::mlo_dual})
    if (to_string(m) == s) return m;
  throw invalid_input("unknown selection mode in trace CSV: " + s);
}

double ratio(const IndexSet& s, std::int64_t n) {
  return static_cast<double>(s.count_upto(n)) / static_cast<double>(n);
}

}  // namespace

void write_trace_csv(std::ostream& os, const TraceMatrix& t, double sigma, double eps,
                     const DensityRule& rule) {
  ClauseSets sets = clause_sets(t, sigma, eps);
  std::vector<std::int64_t> cps = rule.checkpoints.empty() ? t.checkpoints : rule.checkpoints;
  if (cps.empty()) cps = {t.K};
  os << "# N=" << t.N << "\n# K=" << t.K << "\n# checkpoints=";
  for (std::size_t i = 0; i < cps.size(); ++i) os << (i ? "," : "") << cps[i];
  os << "\n# mode=" << to_string(t.mode) << "\n# sigma=" << fmt("%.17g", sigma)
     << "\n# eps=" << fmt("%.17g", eps) << "\n# delta=" << fmt("%.17g", rule.delta)
     << "\n# window=" << rule.window << "\n";
  os << "j,k,s_value,log_s,log_s_max,in_upper,in_lower\n";
  const bool dual = t.mode == SelectionMode::mlo_dual;
  for (int j = 1; j <= t.N; ++j)
    for (std::int64_t k = 1; k <= t.K; ++k) {
      double l = t.log_at(j, k);
      double lm = dual ? t.log_s_max[j - 1][k - 1] : l;
      os << j << ',' << k << ',' << fmt("%.12g", std::exp(l)) << ',' << fmt("%.17g", l) << ','
         << fmt("%.17g", lm) << ',' << (sets.upper[j - 1].contains(k) ? 1 : 0) << ','
         << (sets.lower[j - 1].contains(k) ? 1 : 0) << '\n';
    }
  os << "\ncheckpoint,j,upper_ratio,lower_ratio\n";
  for (std::int64_t c : cps) {
    if (c > t.K) continue;
    for (int j = 1; j <= t.N; ++j)
      os << c << ',' << j << ',' << fmt("%.12g", ratio(sets.upper[j - 1], c)) << ','
         << fmt("%.12g", ratio(sets.lower[j - 1], c)) << '\n';
  }
}

TraceCsv read_trace_csv(std::istream& is) {
  TraceCsv out;
  TraceMatrix& t = out.trace;
  std::string line;
  bool have_n = false, have_k = false;
  while (std::getline(is, line) && line.rfind("# ", 0) == 0) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw invalid_input("bad preamble line: " + line);
    std::string key = line.substr(2, eq - 2), val = line.substr(eq + 1);
    if (key == "N") {
      t.N = static_cast<int>(parse_int(val));
      have_n = true;
    } else if (key == "K") {
      t.K = parse_int(val);
      have_k = true;
    } else if (key == "checkpoints") {
      for (const auto& s : split(val, ',')) t.checkpoints.push_back(parse_int(s));
    } else if (key == "mode") {
      t.mode = mode_from(val);
    } else if (key == "sigma") {
      out.sigma = parse_double(val);
    } else if (key == "eps") {
      out.eps = parse_double(val);
    } else if (key == "delta") {
      out.rule.delta = parse_double(val);
    } else if (key == "window") {
      out.rule.window = static_cast<std::size_t>(parse_int(val));
    }
  }
  if (!have_n || !have_k || t.N < 1 || t.K < 1) throw invalid_input("trace CSV lacks N or K");
  if (line != "j,k,s_value,log_s,log_s_max,in_upper,in_lower")
    throw invalid_input("trace CSV header missing");
  out.rule.checkpoints = t.checkpoints;
  const bool dual = t.mode == SelectionMode::mlo_dual;
  t.log_s.assign(t.N, std::vector<double>(t.K, -INFINITY));
  if (dual) t.log_s_max = t.log_s;
  std::int64_t rows = 0;
  while (std::getline(is, line) && !line.empty()) {
    auto f = split(line, ',');
    if (f.size() != 7) throw invalid_input("bad trace row: " + line);
    std::int64_t j = parse_int(f[0]), k = parse_int(f[1]);
    if (j < 1 || j > t.N || k < 1 || k > t.K) throw invalid_input("trace row out of range");
    t.log_s[j - 1][k - 1] = parse_double(f[3]);
    if (dual) t.log_s_max[j - 1][k - 1] = parse_double(f[4]);
    ++rows;
  }
  if (rows != t.N * t.K) throw invalid_input("trace CSV row count differs from N·K");
  if (std::getline(is, line)) {
    if (line != "checkpoint,j,upper_ratio,lower_ratio")
      throw invalid_input("densities header missing");
    while (std::getline(is, line) && !line.empty()) {
      auto f = split(line, ',');
      if (f.size() != 4) throw invalid_input("bad density row: " + line);
      out.densities.emplace_back(parse_int(f[0]), static_cast<int>(parse_int(f[1])),
                                 parse_double(f[2]), parse_double(f[3]));
    }
  }
  return out;
}

}  // namespace ddc
