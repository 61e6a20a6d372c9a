#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ddchaos/rational.hpp"

namespace ddc {

enum class IndexDomain { natural, integer };

/// Finitely supported scalar sequence over ℕ = {1,2,...} or ℤ. Zeros are never stored.
class SeqVector {
 public:
  using Map = std::map<std::int64_t, double>;

  explicit SeqVector(IndexDomain d = IndexDomain::natural) : domain_(d) {}
  static SeqVector basis(std::int64_t n, IndexDomain d = IndexDomain::natural);
  static SeqVector from_pairs(const std::vector<std::pair<std::int64_t, double>>& pairs,
                              IndexDomain d = IndexDomain::natural);

  IndexDomain domain() const { return domain_; }
  const Map& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  std::int64_t min_index() const;
  std::int64_t max_index() const;
  double at(std::int64_t i) const;
  double sup_abs() const;

  /// Adds v to entry i (drops the entry if the result is exactly zero).
  void add(std::int64_t i, double v);
  void set(std::int64_t i, double v);

  SeqVector operator+(const SeqVector& o) const;
  SeqVector operator-(const SeqVector& o) const;
  SeqVector operator*(double c) const;
  bool operator==(const SeqVector& o) const {
    return domain_ == o.domain_ && entries_ == o.entries_;
  }

 private:
  void check_index(std::int64_t i) const;
  void check_same_domain(const SeqVector& o) const;

  IndexDomain domain_;
  Map entries_;
};

/// Samples of a function on the grid step·ℤ ⊂ ℝ, stored by grid index.
class GridFunction {
 public:
  explicit GridFunction(Rational step = Rational(1, 8));

  const Rational& step() const { return step_; }
  const std::map<std::int64_t, double>& samples() const { return samples_; }
  Rational point(std::int64_t i) const { return step_ * i; }
  /// Grid index of a rational point; throws if the point is off the grid.
  std::int64_t index_of(const Rational& x) const;
  double at_index(std::int64_t i) const;
  void set_index(std::int64_t i, double v);
  void set(const Rational& x, double v) { set_index(index_of(x), v); }
  bool is_zero() const { return samples_.empty(); }

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction operator*(double c) const;
  bool operator==(const GridFunction& o) const {
    return step_ == o.step_ && samples_ == o.samples_;
  }

 private:
  Rational step_;
  std::map<std::int64_t, double> samples_;
};

class YoungFunction {
 public:
  enum class Family { power, log_power, table };

  /// Φ(t) = |t|^p / p
  static YoungFunction power(double p);
  /// Φ(t) = |t|^α (1 + |log|t||)
  static YoungFunction log_power(double alpha);
  /// Piecewise linear through (t_i, Φ_i), starting at (0,0); extended linearly past the last sample.
  static YoungFunction table(std::vector<std::pair<double, double>> samples);

  double operator()(double t) const;
  Family family() const { return family_; }
  double parameter() const { return param_; }
  std::string describe() const;

  /// Second-difference probe for convexity on [a, b].
  bool convex_on(double a, double b, int samples = 64) const;

 private:
  YoungFunction() = default;
  Family family_ = Family::power;
  double param_ = 2.0;
  std::vector<std::pair<double, double>> table_;
};

class SeminormSpace {
 public:
  enum class Kind { lp, c0, weighted_lp, frechet_truncation, grid_sup, orlicz };

  static SeminormSpace lp(double p, IndexDomain d = IndexDomain::natural);
  static SeminormSpace c0(IndexDomain d = IndexDomain::natural);
  static SeminormSpace weighted_lp(double p, std::function<double(std::int64_t)> weights,
                                   std::string weight_name,
                                   IndexDomain d = IndexDomain::natural);
  static SeminormSpace frechet_truncation(IndexDomain d = IndexDomain::natural);
  static SeminormSpace grid_sup();
  static SeminormSpace orlicz(YoungFunction phi, double tol = 1e-12);

  Kind kind() const { return kind_; }
  IndexDomain domain() const { return domain_; }
  double p() const { return p_; }
  double weight(std::int64_t n) const;
  const YoungFunction& young() const { return phi_; }
  double orlicz_tol() const { return tol_; }
  /// True when a single norm (rather than a countable family) defines the topology.
  bool is_normed() const;
  std::string describe() const;

 private:
  SeminormSpace() : phi_(YoungFunction::power(2.0)) {}
  Kind kind_ = Kind::lp;
  IndexDomain domain_ = IndexDomain::natural;
  double p_ = 2.0;
  std::function<double(std::int64_t)> weights_;
  std::string weight_name_;
  YoungFunction phi_;
  double tol_ = 1e-12;
};

double seminorm(const SeminormSpace& space, int m, const SeqVector& v);
double seminorm(const SeminormSpace& space, int m, const GridFunction& f);

/// Number of seminorms kept for a tail below tol: ⌈log2(1/tol)⌉.
int frechet_terms(double tol);
/// Σ_{n=1..M} 2^{-n} p(n)/(1+p(n)) with M = frechet_terms(tol).
double frechet_sum(const std::function<double(int)>& p, double tol);

double frechet_metric(const SeminormSpace& space, const SeqVector& x, const SeqVector& y,
                      double tol);
double frechet_metric(const SeminormSpace& space, const GridFunction& x,
                      const GridFunction& y, double tol);
/// Norm distance for normed kinds, Fréchet metric otherwise.
double distance(const SeminormSpace& space, const SeqVector& x, const SeqVector& y,
                double tol = 1e-12);

struct MetricPropertyReport {
  bool triangle = false;    // d(x+u, y+v) <= d(x,y) + d(u,v)
  bool scaling = false;     // d(cx, cy) <= (|c|+1) d(x,y)
  bool separation = false;  // d(αx, βx) >= |α-β|/(1+|α-β|) d(0,x)
  double triangle_slack = 0, scaling_slack = 0, separation_slack = 0;
};

MetricPropertyReport metric_properties_check(const SeminormSpace& space, const SeqVector& x,
                                             const SeqVector& y, const SeqVector& u,
                                             const SeqVector& v, double alpha, double beta,
                                             double c, double tol = 1e-12);

double product_metric_max(const std::vector<double>& dists);
double product_metric_sum(const SeminormSpace& space, std::size_t n,
                          const std::vector<SeqVector>& xs, const std::vector<SeqVector>& ys,
                          double tol);

double luxemburg_norm(const SeqVector& f, const YoungFunction& phi, double tol);
double complementary_young(const YoungFunction& phi, double y, double bracket);

struct Delta2Report {
  double M = 0;
  bool holds = false;
};
Delta2Report delta2_check(const YoungFunction& phi, double t_min, double t_max, int samples);

}  // namespace ddc
