#include "ddchaos/logreal.hpp"

#include <algorithm>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogReal LogReal::from_value(double v) {
  if (v < 0 || std::isnan(v)) throw invalid_input("LogReal: negative value");
  return from_log(v == 0 ? kNegInf : std::log(v));
}

LogReal operator*(LogReal a, LogReal b) {
  if (a.is_zero() || b.is_zero()) return LogReal();
  return LogReal::from_log(a.log_ + b.log_);
}

LogReal operator/(LogReal a, LogReal b) {
  if (b.is_zero()) throw invalid_input("LogReal: division by zero");
  if (a.is_zero()) return LogReal();
  return LogReal::from_log(a.log_ - b.log_);
}

LogReal operator+(LogReal a, LogReal b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  double hi = std::max(a.log_, b.log_), lo = std::min(a.log_, b.log_);
  if (std::isinf(hi)) return LogReal::from_log(hi);
  return LogReal::from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogReal LogReal::pow(double e) const {
  if (is_zero()) return e > 0 ? LogReal() : (e == 0 ? one() : infinity());
  return from_log(log_ * e);
}

double log_sum_exp(const std::vector<double>& logs) {
  double hi = kNegInf;
  for (double l : logs) hi = std::max(hi, l);
  if (hi == kNegInf || std::isinf(hi)) return hi;
  double acc = 0;
  for (double l : logs) acc += std::exp(l - hi);
  return hi + std::log(acc);
}

double log_lp_norm(const std::vector<double>& logs, double p) {
  if (std::isinf(p)) {
    double hi = kNegInf;
    for (double l : logs) hi = std::max(hi, l);
    return hi;
  }
  std::vector<double> scaled;
  scaled.reserve(logs.size());
  for (double l : logs) scaled.push_back(p * l);
  return log_sum_exp(scaled) / p;
}

}  // namespace ddc
