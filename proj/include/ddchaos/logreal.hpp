#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace ddc {

/**
 * Nonnegative real stored by its natural logarithm. Weight products in the
 * shift examples run far past the double range (2^65536 and beyond).
 */
class LogReal {
 public:
  LogReal() = default;  // zero
  static LogReal from_log(double l) { LogReal r; r.log_ = l; return r; }
  static LogReal from_value(double v);
  static LogReal zero() { return LogReal(); }
  static LogReal one() { return from_log(0.0); }
  static LogReal infinity() { return from_log(std::numeric_limits<double>::infinity()); }

  double log() const { return log_; }
  double log2() const { return log_ / std::log(2.0); }
  double log10() const { return log_ / std::log(10.0); }
  double value() const { return std::exp(log_); }
  bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }
  bool is_infinite() const { return log_ == std::numeric_limits<double>::infinity(); }

  friend LogReal operator*(LogReal a, LogReal b);
  friend LogReal operator/(LogReal a, LogReal b);
  friend LogReal operator+(LogReal a, LogReal b);
  LogReal pow(double e) const;

  friend bool operator<(LogReal a, LogReal b) { return a.log_ < b.log_; }
  friend bool operator>(LogReal a, LogReal b) { return a.log_ > b.log_; }
  friend bool operator<=(LogReal a, LogReal b) { return a.log_ <= b.log_; }
  friend bool operator>=(LogReal a, LogReal b) { return a.log_ >= b.log_; }
  friend bool operator==(LogReal a, LogReal b) { return a.log_ == b.log_; }

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

/// log(sum exp(l_i)); -inf for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& logs);

/// log of the l^p norm of a vector given by log-magnitudes.
double log_lp_norm(const std::vector<double>& logs, double p);

}  // namespace ddc
