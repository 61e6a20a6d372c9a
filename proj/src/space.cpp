#include "ddchaos/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ddchaos/errors.hpp"

namespace ddc {

// ---- SeqVector ---------------------------------------------------------------

SeqVector SeqVector::basis(std::int64_t n, IndexDomain d) {
  SeqVector v(d);
  v.set(n, 1.0);
  return v;
}

SeqVector SeqVector::from_pairs(const std::vector<std::pair<std::int64_t, double>>& pairs,
                                IndexDomain d) {
  SeqVector v(d);
  for (const auto& [i, x] : pairs) v.add(i, x);
  return v;
}

void SeqVector::check_index(std::int64_t i) const {
  if (domain_ == IndexDomain::natural && i < 1)
    throw invalid_input("index " + std::to_string(i) + " outside ℕ");
}

void SeqVector::check_same_domain(const SeqVector& o) const {
  if (domain_ != o.domain_) throw invalid_input("SeqVector: index domain mismatch");
}

std::int64_t SeqVector::min_index() const {
  if (entries_.empty()) throw invalid_input("min_index of zero vector");
  return entries_.begin()->first;
}

std::int64_t SeqVector::max_index() const {
  if (entries_.empty()) throw invalid_input("max_index of zero vector");
  return entries_.rbegin()->first;
}

double SeqVector::at(std::int64_t i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? 0.0 : it->second;
}

double SeqVector::sup_abs() const {
  double s = 0;
  for (const auto& [i, x] : entries_) s = std::max(s, std::abs(x));
  return s;
}

void SeqVector::add(std::int64_t i, double v) {
  check_index(i);
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(i, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

void SeqVector::set(std::int64_t i, double v) {
  check_index(i);
  if (v == 0)
    entries_.erase(i);
  else
    entries_[i] = v;
}

SeqVector SeqVector::operator+(const SeqVector& o) const {
  check_same_domain(o);
  SeqVector r = *this;
  for (const auto& [i, x] : o.entries_) r.add(i, x);
  return r;
}

SeqVector SeqVector::operator-(const SeqVector& o) const {
  check_same_domain(o);
  SeqVector r = *this;
  for (const auto& [i, x] : o.entries_) r.add(i, -x);
  return r;
}

SeqVector SeqVector::operator*(double c) const {
  SeqVector r(domain_);
  if (c == 0) return r;
  for (const auto& [i, x] : entries_) r.set(i, c * x);
  return r;
}

// ---- GridFunction -------------------------------------------------------------

GridFunction::GridFunction(Rational step) : step_(step) {
  if (step <= 0) throw invalid_input("grid step must be positive");
}

std::int64_t GridFunction::index_of(const Rational& x) const {
  Rational q = x / step_;
  if (q.denominator() != 1) throw invalid_input("point " + to_string(x) + " is off the grid");
  return q.numerator();
}

double GridFunction::at_index(std::int64_t i) const {
  auto it = samples_.find(i);
  return it == samples_.end() ? 0.0 : it->second;
}

void GridFunction::set_index(std::int64_t i, double v) {
  if (v == 0)
    samples_.erase(i);
  else
    samples_[i] = v;
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
  if (step_ != o.step_) throw invalid_input("GridFunction: step mismatch");
  GridFunction r = *this;
  for (const auto& [i, v] : o.samples_) r.set_index(i, r.at_index(i) + v);
  return r;
}

GridFunction GridFunction::operator-(const GridFunction& o) const { return *this + o * -1.0; }

GridFunction GridFunction::operator*(double c) const {
  GridFunction r(step_);
  if (c == 0) return r;
  for (const auto& [i, v] : samples_) r.set_index(i, c * v);
  return r;
}

// ---- YoungFunction ------------------------------------------------------------

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1)) throw invalid_input("power Young function needs p >= 1");
  YoungFunction y;
  y.family_ = Family::power;
  y.param_ = p;
  return y;
}

YoungFunction YoungFunction::log_power(double alpha) {
  if (!(alpha > 1)) throw invalid_input("log_power Young function needs alpha > 1");
  YoungFunction y;
  y.family_ = Family::log_power;
  y.param_ = alpha;
  return y;
}

YoungFunction YoungFunction::table(std::vector<std::pair<double, double>> samples) {
  if (samples.empty() || samples.front().first != 0 || samples.front().second != 0)
    samples.insert(samples.begin(), {0.0, 0.0});
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first))
      throw invalid_input("Young table: abscissae must increase");
    if (!(samples[i].second > 0)) throw invalid_input("Young table: values must be positive");
  }
  if (samples.size() < 2) throw invalid_input("Young table needs a positive sample");
  double prev_slope = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double slope = (samples[i].second - samples[i - 1].second) /
                   (samples[i].first - samples[i - 1].first);
    if (slope < prev_slope - 1e-12 * std::max(1.0, std::abs(prev_slope)))
      throw invalid_input("Young table is not convex");
    prev_slope = slope;
  }
  if (!(prev_slope > 0)) throw invalid_input("Young table must grow without bound");
  YoungFunction y;
  y.family_ = Family::table;
  y.param_ = 0;
  y.table_ = std::move(samples);
  return y;
}

double YoungFunction::operator()(double t) const {
  t = std::abs(t);
  if (t == 0) return 0;
  switch (family_) {
    case Family::power:
      return std::pow(t, param_) / param_;
    case Family::log_power:
      return std::pow(t, param_) * (1 + std::abs(std::log(t)));
    case Family::table: {
      auto it = std::upper_bound(table_.begin(), table_.end(), t,
                                 [](double v, const auto& s) { return v < s.first; });
      std::size_t hi = it == table_.end() ? table_.size() - 1 : it - table_.begin();
      std::size_t lo = hi - 1;
      const auto& [t0, f0] = table_[lo];
      const auto& [t1, f1] = table_[hi];
      return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
    }
  }
  return 0;
}

std::string YoungFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::power: os << "power(" << param_ << ")"; break;
    case Family::log_power: os << "log_power(" << param_ << ")"; break;
    case Family::table: os << "table(" << table_.size() << " samples)"; break;
  }
  return os.str();
}

bool YoungFunction::convex_on(double a, double b, int samples) const {
  if (!(b > a) || samples < 3) return true;
  double h = (b - a) / (samples - 1);
  for (int i = 1; i + 1 < samples; ++i) {
    double t = a + i * h;
    double f0 = (*this)(t - h), f1 = (*this)(t), f2 = (*this)(t + h);
    double scale = std::max({std::abs(f0), std::abs(f1), std::abs(f2), 1e-300});
    if (f0 - 2 * f1 + f2 < -1e-10 * scale) return false;
  }
  return true;
}

// ---- SeminormSpace ------------------------------------------------------------

SeminormSpace SeminormSpace::lp(double p, IndexDomain d) {
  if (!(p >= 1)) throw invalid_input("lp space needs p >= 1");
  SeminormSpace s;
  s.kind_ = Kind::lp;
  s.p_ = p;
  s.domain_ = d;
  return s;
}

SeminormSpace SeminormSpace::c0(IndexDomain d) {
  SeminormSpace s;
  s.kind_ = Kind::c0;
  s.domain_ = d;
  return s;
}

SeminormSpace SeminormSpace::weighted_lp(double p, std::function<double(std::int64_t)> weights,
                                         std::string weight_name, IndexDomain d) {
  if (!(p >= 1)) throw invalid_input("weighted lp space needs p >= 1");
  if (!weights) throw invalid_input("weighted lp space needs weights");
  SeminormSpace s;
  s.kind_ = Kind::weighted_lp;
  s.p_ = p;
  s.weights_ = std::move(weights);
  s.weight_name_ = std::move(weight_name);
  s.domain_ = d;
  return s;
}

SeminormSpace SeminormSpace::frechet_truncation(IndexDomain d) {
  SeminormSpace s;
  s.kind_ = Kind::frechet_truncation;
  s.domain_ = d;
  return s;
}

SeminormSpace SeminormSpace::grid_sup() {
  SeminormSpace s;
  s.kind_ = Kind::grid_sup;
  return s;
}

SeminormSpace SeminormSpace::orlicz(YoungFunction phi, double tol) {
  if (!(tol > 0)) throw invalid_input("orlicz tolerance must be positive");
  SeminormSpace s;
  s.kind_ = Kind::orlicz;
  s.domain_ = IndexDomain::integer;
  s.phi_ = std::move(phi);
  s.tol_ = tol;
  return s;
}

double SeminormSpace::weight(std::int64_t n) const {
  if (kind_ != Kind::weighted_lp) return 1.0;
  double w = weights_(n);
  if (!(w > 0)) throw invalid_input("weights must be strictly positive");
  return w;
}

bool SeminormSpace::is_normed() const {
  return kind_ != Kind::frechet_truncation && kind_ != Kind::grid_sup;
}

std::string SeminormSpace::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::lp: os << "lp(" << p_ << ")"; break;
    case Kind::c0: os << "c0"; break;
    case Kind::weighted_lp: os << "weighted_lp(" << p_ << ", " << weight_name_ << ")"; break;
    case Kind::frechet_truncation: os << "frechet_truncation"; break;
    case Kind::grid_sup: os << "grid_sup"; break;
    case Kind::orlicz: os << "orlicz(" << phi_.describe() << ")"; break;
  }
  if (kind_ != Kind::grid_sup)
    os << (domain_ == IndexDomain::natural ? " over N" : " over Z");
  return os.str();
}

namespace {

double scaled_lp(const SeqVector& v, double p, const SeminormSpace& space) {
  double hi = 0;
  for (const auto& [i, x] : v.entries()) hi = std::max(hi, std::abs(x) * space.weight(i));
  if (hi == 0) return 0;
  double acc = 0;
  for (const auto& [i, x] : v.entries()) acc += std::pow(std::abs(x) * space.weight(i) / hi, p);
  return hi * std::pow(acc, 1.0 / p);
}

}  // namespace

double seminorm(const SeminormSpace& space, int m, const SeqVector& v) {
  if (m < 1) throw invalid_input("seminorm index m must be >= 1");
  if (space.kind() == SeminormSpace::Kind::grid_sup)
    throw invalid_input("grid_sup seminorm needs a GridFunction");
  if (v.domain() != space.domain()) throw invalid_input("vector index domain does not match space");
  switch (space.kind()) {
    case SeminormSpace::Kind::lp:
    case SeminormSpace::Kind::weighted_lp:
      return scaled_lp(v, space.p(), space);
    case SeminormSpace::Kind::c0:
      return v.sup_abs();
    case SeminormSpace::Kind::frechet_truncation: {
      double s = 0;
      for (auto it = v.entries().lower_bound(-m); it != v.entries().end() && it->first <= m; ++it)
        s = std::max(s, std::abs(it->second));
      return s;
    }
    case SeminormSpace::Kind::orlicz:
      return luxemburg_norm(v, space.young(), space.orlicz_tol());
    case SeminormSpace::Kind::grid_sup:
      break;
  }
  return 0;
}

double seminorm(const SeminormSpace& space, int m, const GridFunction& f) {
  if (m < 1) throw invalid_input("seminorm index m must be >= 1");
  if (space.kind() != SeminormSpace::Kind::grid_sup)
    throw invalid_input("GridFunction needs a grid_sup space");
  // grid points i·step with |i·step| <= m
  Rational bound = Rational(m) / f.step();
  std::int64_t hi = bound.numerator() / bound.denominator();
  double s = 0;
  for (auto it = f.samples().lower_bound(-hi); it != f.samples().end() && it->first <= hi; ++it)
    s = std::max(s, std::abs(it->second));
  return s;
}

int frechet_terms(double tol) {
  if (!(tol > 0)) throw invalid_input("tolerance must be positive");
  return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / tol))));
}

double frechet_sum(const std::function<double(int)>& p, double tol) {
  int M = frechet_terms(tol);
  double d = 0, w = 0.5;
  for (int n = 1; n <= M; ++n, w *= 0.5) {
    double pn = p(n);
    if (std::isinf(pn))
      d += w;
    else
      d += w * pn / (1 + pn);
  }
  return d;
}

double frechet_metric(const SeminormSpace& space, const SeqVector& x, const SeqVector& y,
                      double tol) {
  SeqVector diff = x - y;
  return frechet_sum([&](int n) { return seminorm(space, n, diff); }, tol);
}

double frechet_metric(const SeminormSpace& space, const GridFunction& x, const GridFunction& y,
                      double tol) {
  GridFunction diff = x - y;
  return frechet_sum([&](int n) { return seminorm(space, n, diff); }, tol);
}

double distance(const SeminormSpace& space, const SeqVector& x, const SeqVector& y, double tol) {
  if (space.is_normed()) return seminorm(space, 1, x - y);
  return frechet_metric(space, x, y, tol);
}

MetricPropertyReport metric_properties_check(const SeminormSpace& space, const SeqVector& x,
                                             const SeqVector& y, const SeqVector& u,
                                             const SeqVector& v, double alpha, double beta,
                                             double c, double tol) {
  auto d = [&](const SeqVector& a, const SeqVector& b) { return distance(space, a, b, tol); };
  MetricPropertyReport r;
  r.triangle_slack = d(x, y) + d(u, v) - d(x + u, y + v);
  r.scaling_slack = (std::abs(c) + 1) * d(x, y) - d(x * c, y * c);
  double gap = std::abs(alpha - beta);
  SeqVector zero(x.domain());
  r.separation_slack = d(x * alpha, x * beta) - gap / (1 + gap) * d(zero, x);
  r.triangle = r.triangle_slack >= -tol;
  r.scaling = r.scaling_slack >= -tol;
  r.separation = r.separation_slack >= -tol;
  return r;
}

double product_metric_max(const std::vector<double>& dists) {
  if (dists.empty()) throw invalid_input("product_metric_max of an empty list");
  return *std::max_element(dists.begin(), dists.end());
}

double product_metric_sum(const SeminormSpace& space, std::size_t n,
                          const std::vector<SeqVector>& xs, const std::vector<SeqVector>& ys,
                          double tol) {
  if (n == 0 || xs.size() != n || ys.size() != n)
    throw invalid_input("product_metric_sum: component count mismatch");
  std::vector<SeqVector> diffs;
  diffs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) diffs.push_back(xs[j] - ys[j]);
  return frechet_sum(
      [&](int m) {
        double s = 0;
        for (const auto& d : diffs) s += seminorm(space, m, d);
        return s;
      },
      tol);
}

// ---- Orlicz machinery ---------------------------------------------------------

double luxemburg_norm(const SeqVector& f, const YoungFunction& phi, double tol) {
  if (!(tol > 0)) throw invalid_input("tolerance must be positive");
  if (f.is_zero()) return 0;
  std::vector<double> vals;
  vals.reserve(f.support_size());
  for (const auto& [i, x] : f.entries()) vals.push_back(std::abs(x));
  double vmax = f.sup_abs();
  auto modular = [&](double k) {
    double s = 0;
    for (double v : vals) s += phi(v / k);
    return s;
  };
  double hi = vmax;
  for (int it = 0; modular(hi) > 1; ++it) {
    if (it > 2000) throw invalid_input("luxemburg_norm: modular does not decay");
    hi *= 2;
  }
  double lo = hi / 2;
  for (int it = 0; modular(lo) <= 1; ++it) {
    if (it > 2000) throw invalid_input("luxemburg_norm: modular does not grow");
    hi = lo;
    lo /= 2;
  }
  if (!phi.convex_on(0, vmax / lo)) throw invalid_input("Young function is not convex on bracket");
  while (hi - lo >= tol * (1 + hi)) {
    double mid = 0.5 * (lo + hi);
    if (modular(mid) <= 1)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double complementary_young(const YoungFunction& phi, double y, double bracket) {
  if (!(bracket > 0)) throw invalid_input("bracket must be positive");
  double ay = std::abs(y);
  if (ay == 0) return 0;
  auto h = [&](double x) { return x * ay - phi(x); };
  if (h(bracket) >= h(bracket * (1 - 1e-6)))
    throw bracket_too_small("complementary_young: objective still increasing at bracket end");
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = 0, b = bracket;
  double c = b - g * (b - a), d = a + g * (b - a);
  double hc = h(c), hd = h(d);
  while (b - a > 1e-13 * bracket) {
    if (hc > hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - g * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + g * (b - a);
      hd = h(d);
    }
  }
  return std::max({0.0, hc, hd, h(0.5 * (a + b))});
}

Delta2Report delta2_check(const YoungFunction& phi, double t_min, double t_max, int samples) {
  if (!(t_min > 0) || !(t_min < t_max)) throw invalid_input("delta2_check needs 0 < t_min < t_max");
  if (samples < 1) throw invalid_input("delta2_check needs samples >= 1");
  Delta2Report r;
  double lmin = std::log(t_min), lmax = std::log(t_max);
  for (int i = 0; i < samples; ++i) {
    double t = samples == 1 ? t_min : std::exp(lmin + (lmax - lmin) * i / (samples - 1));
    double v = phi(t);
    if (!(v > 0)) throw invalid_input("Young function vanishes at a positive sample");
    r.M = std::max(r.M, phi(2 * t) / v);
  }
  r.holds = std::isfinite(r.M);
  return r;
}

}  // namespace ddc
