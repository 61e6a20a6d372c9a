#include "ddchaos/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

void require_natural(const SeqVector& x) {
  if (x.domain() != IndexDomain::natural) throw invalid_input("shift operators act on ℕ-indexed vectors");
}

/// log p_m of a vector given as (index, log|value|) pairs.
double log_norm_of(const std::vector<std::pair<std::int64_t, double>>& logs,
                   const SeminormSpace& space, int m) {
  std::vector<double> vals;
  vals.reserve(logs.size());
  switch (space.kind()) {
    case SeminormSpace::Kind::lp:
      for (const auto& e : logs) vals.push_back(e.second);
      return log_lp_norm(vals, space.p());
    case SeminormSpace::Kind::weighted_lp:
      for (const auto& e : logs) vals.push_back(e.second + std::log(space.weight(e.first)));
      return log_lp_norm(vals, space.p());
    case SeminormSpace::Kind::c0:
      for (const auto& e : logs) vals.push_back(e.second);
      return log_lp_norm(vals, std::numeric_limits<double>::infinity());
    case SeminormSpace::Kind::frechet_truncation:
      for (const auto& e : logs)
        if (std::abs(e.first) <= m) vals.push_back(e.second);
      return log_lp_norm(vals, std::numeric_limits<double>::infinity());
    default:
      throw invalid_input("log-space seminorm not available for " + space.describe());
  }
}

bool log_space_supported(const SeminormSpace& space) {
  auto k = space.kind();
  return k == SeminormSpace::Kind::lp || k == SeminormSpace::Kind::weighted_lp ||
         k == SeminormSpace::Kind::c0 || k == SeminormSpace::Kind::frechet_truncation;
}

}  // namespace

// ---- WeightSequence -------------------------------------------------------------

WeightSequence WeightSequence::constant(double w) {
  if (!(w > 0)) throw invalid_input("weights must be strictly positive");
  WeightSequence s;
  s.kind_ = Kind::constant;
  s.c_ = w;
  return s;
}

WeightSequence WeightSequence::geometric(int j) {
  if (j < 0) throw invalid_input("geometric weights need j >= 0");
  WeightSequence s;
  s.kind_ = Kind::geometric;
  s.c_ = j;
  return s;
}

WeightSequence WeightSequence::factorial_power(double e) {
  WeightSequence s;
  s.kind_ = Kind::factorial_power;
  s.c_ = e;
  return s;
}

WeightSequence WeightSequence::table(std::vector<double> values, double tail) {
  for (double v : values)
    if (!(v > 0)) throw invalid_input("weights must be strictly positive");
  if (!(tail > 0)) throw invalid_input("weights must be strictly positive");
  WeightSequence s;
  s.kind_ = Kind::table;
  s.table_ = std::move(values);
  s.c_ = tail;
  return s;
}

WeightSequence WeightSequence::blocks(std::vector<std::int64_t> lengths, bool reciprocal) {
  if (lengths.empty()) throw invalid_input("block weights need at least one block");
  WeightSequence s;
  s.kind_ = Kind::blocks;
  s.first_is_two_ = !reciprocal;
  std::int64_t pos = 0, e = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1) throw invalid_input("block lengths must be positive");
    pos += lengths[i];
    bool two = (i % 2 == 0) == s.first_is_two_;
    e += two ? lengths[i] : -lengths[i];
    s.ends_.push_back(pos);
    s.end_prefix_.push_back(e);
  }
  return s;
}

WeightSequence WeightSequence::function(std::function<double(std::int64_t)> f, std::string name) {
  if (!f) throw invalid_input("weight function missing");
  WeightSequence s;
  s.kind_ = Kind::function;
  s.f_ = std::move(f);
  s.name_ = std::move(name);
  return s;
}

std::int64_t WeightSequence::log2_prefix(std::int64_t n) const {
  if (n <= 0) return 0;
  auto it = std::lower_bound(ends_.begin(), ends_.end(), n);
  std::size_t b = it == ends_.end() ? ends_.size() - 1 : it - ends_.begin();
  std::int64_t prev_end = b == 0 ? 0 : ends_[b - 1];
  std::int64_t prev_e = b == 0 ? 0 : end_prefix_[b - 1];
  bool two = (b % 2 == 0) == first_is_two_;
  return prev_e + (two ? 1 : -1) * (n - prev_end);
}

double WeightSequence::at(std::int64_t n) const { return std::exp(log_at(n)); }

double WeightSequence::log_at(std::int64_t n) const {
  if (n < 1) throw invalid_input("weight index must be >= 1");
  switch (kind_) {
    case Kind::constant: return std::log(c_);
    case Kind::geometric: return c_ * (kLn2 + std::log(static_cast<double>(n)));
    case Kind::factorial_power: return c_ * std::lgamma(static_cast<double>(n));
    case Kind::table:
      return std::log(n <= static_cast<std::int64_t>(table_.size()) ? table_[n - 1] : c_);
    case Kind::blocks: return static_cast<double>(log2_product(n, n)) * kLn2;
    case Kind::function: {
      double v = f_(n);
      if (!(v > 0)) throw invalid_input("weights must be strictly positive");
      return std::log(v);
    }
  }
  return 0;
}

double WeightSequence::log_product(std::int64_t from, std::int64_t to) const {
  if (to < from) return 0;
  if (from < 1) throw invalid_input("weight index must be >= 1");
  double len = static_cast<double>(to - from + 1);
  switch (kind_) {
    case Kind::constant: return len * std::log(c_);
    case Kind::geometric:
      return c_ * (len * kLn2 + std::lgamma(static_cast<double>(to) + 1) -
                   std::lgamma(static_cast<double>(from)));
    case Kind::blocks: return static_cast<double>(log2_product(from, to)) * kLn2;
    default: {
      double s = 0;
      for (std::int64_t i = from; i <= to; ++i) s += log_at(i);
      return s;
    }
  }
}

std::int64_t WeightSequence::log2_product(std::int64_t from, std::int64_t to) const {
  if (kind_ != Kind::blocks) throw invalid_input("exact log2 products need block weights");
  if (to < from) return 0;
  return log2_prefix(to) - log2_prefix(from - 1);
}

WeightSequence WeightSequence::reciprocal() const {
  switch (kind_) {
    case Kind::constant: return constant(1.0 / c_);
    case Kind::factorial_power: return factorial_power(-c_);
    case Kind::table: {
      std::vector<double> inv;
      for (double v : table_) inv.push_back(1.0 / v);
      return table(inv, 1.0 / c_);
    }
    case Kind::blocks: {
      WeightSequence s = *this;
      s.first_is_two_ = !first_is_two_;
      for (auto& e : s.end_prefix_) e = -e;
      return s;
    }
    default: {
      WeightSequence self = *this;
      return function([self](std::int64_t n) { return 1.0 / self.at(n); },
                      "1/" + describe());
    }
  }
}

std::string WeightSequence::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << "constant(" << c_ << ")"; break;
    case Kind::geometric: os << "geometric(j=" << c_ << ")"; break;
    case Kind::factorial_power: os << "factorial_power(" << c_ << ")"; break;
    case Kind::table: os << "table(" << table_.size() << ", tail " << c_ << ")"; break;
    case Kind::blocks:
      os << "blocks(" << ends_.size() << (first_is_two_ ? ", 2 first" : ", 1/2 first") << ")";
      break;
    case Kind::function: os << name_; break;
  }
  return os.str();
}

std::vector<std::int64_t> square_exponent_block_lengths(int pairs) {
  if (pairs < 1) throw invalid_input("need at least one block pair");
  std::vector<std::int64_t> out;
  std::int64_t sum = 0;
  for (int i = 1; i <= 2 * pairs; ++i) {
    if (i * i >= 62) throw invalid_input("block lengths overflow 64-bit positions");
    sum += std::int64_t{1} << (i * i);
    out.push_back(sum);
  }
  return out;
}

// ---- OperatorFamily defaults -------------------------------------------------------

void OperatorFamily::check_j(int j) const {
  if (j < 1 || j > size()) throw invalid_input("operator index j out of range");
}

void OperatorFamily::check_domain(const SeqVector& x) const {
  if (x.domain() != domain()) throw domain_violation("vector index domain does not match family");
}

std::optional<std::int64_t> OperatorFamily::vanishing_from(int, const SeqVector&) const {
  return std::nullopt;
}

double OperatorFamily::log_seminorm(int j, std::int64_t k, const SeqVector& x,
                                    const SeminormSpace& space, int m) const {
  double v = seminorm(space, m, apply(j, k, x));
  return v == 0 ? kNegInf : std::log(v);
}

// ---- closed forms ------------------------------------------------------------------

SeqVector backward_shift_power(const WeightSequence& w, std::int64_t k, const SeqVector& x) {
  require_natural(x);
  if (k < 0) throw invalid_input("power k must be >= 0");
  if (k == 0) return x;
  SeqVector y;
  for (const auto& [i, v] : x.entries())
    if (i > k) y.set(i - k, v * std::exp(w.log_product(i - k, i - 1)));
  return y;
}

SeqVector forward_shift_power(const WeightSequence& w, std::int64_t k, const SeqVector& x) {
  require_natural(x);
  if (k < 0) throw invalid_input("power k must be >= 0");
  if (k == 0) return x;
  SeqVector y;
  for (const auto& [i, v] : x.entries()) y.set(i + k, v * std::exp(w.log_product(i, i + k - 1)));
  return y;
}

LogReal shift_power_norm(const WeightSequence& w, std::int64_t k, std::int64_t horizon) {
  if (k < 0) throw invalid_input("power k must be >= 0");
  if (horizon < std::max<std::int64_t>(k, 1)) throw invalid_input("horizon must be >= k");
  if (k == 0) return LogReal::one();
  double best = kNegInf;
  auto kind = w.kind();
  if (kind == WeightSequence::Kind::table || kind == WeightSequence::Kind::function ||
      kind == WeightSequence::Kind::factorial_power) {
    double s = w.log_product(1, k);
    best = s;
    for (std::int64_t n = 2; n <= horizon; ++n) {
      s += w.log_at(n + k - 1) - w.log_at(n - 1);
      best = std::max(best, s);
    }
  } else {
    for (std::int64_t n = 1; n <= horizon; ++n) best = std::max(best, w.log_product(n, n + k - 1));
  }
  return LogReal::from_log(best);
}

SeqVector regularized_power_apply(const WeightSequence& w, const WeightSequence& a,
                                  std::int64_t k, const SeqVector& x) {
  require_natural(x);
  if (k < 0) throw invalid_input("power k must be >= 0");
  SeqVector y;
  for (const auto& [i, v] : x.entries())
    if (i > k) y.set(i - k, v * std::exp(a.log_at(i) + w.log_product(i - k, i - 1)));
  return y;
}

LogReal b_jk(const WeightSequence& w, const WeightSequence& a, std::int64_t k,
             std::int64_t horizon) {
  if (horizon < 1) throw invalid_input("horizon must be >= 1");
  if (k < 0) throw invalid_input("power k must be >= 0");
  double best = kNegInf;
  for (std::int64_t n = 1; n <= horizon; ++n)
    best = std::max(best, a.log_at(n + k) + w.log_product(n, n + k - 1));
  return LogReal::from_log(best);
}

std::vector<double> diagonal_apply(const std::vector<double>& entries,
                                   const std::vector<double>& x) {
  if (entries.size() != x.size()) throw invalid_input("diagonal_apply: dimension mismatch");
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = entries[i] * x[i];
  return y;
}

SeqVector translation_power(std::int64_t a, const ZWeight& w, std::int64_t n,
                            const SeqVector& f) {
  if (f.domain() != IndexDomain::integer) throw invalid_input("translations act on ℤ-indexed vectors");
  if (n < 0) throw invalid_input("power n must be >= 0");
  if (n == 0) return f;
  SeqVector g(IndexDomain::integer);
  for (const auto& [y, v] : f.entries()) g.add(y + n * a, v * phi_product(w, a, n, y));
  return g;
}

double phi_product(const ZWeight& w, std::int64_t a, std::int64_t n, std::int64_t x) {
  if (n < 0) throw invalid_input("power n must be >= 0");
  double p = 1;
  for (std::int64_t s = 1; s <= n; ++s) {
    double ws = w(x + s * a);
    if (!(ws > 0)) throw invalid_input("translation weights must be strictly positive");
    p *= ws;
  }
  return p;
}

SeqVector generalized_backward_apply(const CoefFn& omega, const JumpFn& a, int j,
                                     std::int64_t k, const SeqVector& x) {
  require_natural(x);
  if (k < 0) throw invalid_input("power k must be >= 0");
  SeqVector cur = x;
  for (std::int64_t step = 0; step < k && !cur.is_zero(); ++step) {
    SeqVector next;
    std::int64_t top = cur.max_index();
    for (std::int64_t n = 1; n <= top; ++n) {
      std::int64_t t = n + a(n, j);
      if (t > top) break;
      double v = cur.at(t);
      if (v != 0) next.add(n, omega(n, j) * v);
    }
    cur = std::move(next);
  }
  return cur;
}

// ---- families ------------------------------------------------------------------------

BackwardShiftFamily::BackwardShiftFamily(std::vector<WeightSequence> weights,
                                         std::vector<std::int64_t> strides)
    : w_(std::move(weights)), r_(std::move(strides)) {
  if (w_.empty()) throw invalid_input("family needs at least one operator");
  if (r_.empty()) r_.assign(w_.size(), 1);
  if (r_.size() != w_.size()) throw invalid_input("one stride per operator expected");
  for (auto r : r_)
    if (r < 1) throw invalid_input("strides must be >= 1");
}

SeqVector BackwardShiftFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_j(j);
  check_domain(x);
  return backward_shift_power(w_[j - 1], r_[j - 1] * k, x);
}

std::string BackwardShiftFamily::describe() const {
  std::ostringstream os;
  os << "backward_shift_power[";
  for (std::size_t j = 0; j < w_.size(); ++j) {
    os << (j ? ", " : "") << w_[j].describe();
    if (r_[j] != 1) os << "^" << r_[j];
  }
  os << "]";
  return os.str();
}

std::optional<std::int64_t> BackwardShiftFamily::vanishing_from(int j,
                                                                const SeqVector& x) const {
  check_j(j);
  if (x.is_zero()) return 0;
  std::int64_t r = r_[j - 1];
  return (x.max_index() + r - 1) / r;
}

double BackwardShiftFamily::log_seminorm(int j, std::int64_t k, const SeqVector& x,
                                         const SeminormSpace& space, int m) const {
  check_j(j);
  check_domain(x);
  if (!log_space_supported(space)) return OperatorFamily::log_seminorm(j, k, x, space, m);
  std::int64_t s = r_[j - 1] * k;
  std::vector<std::pair<std::int64_t, double>> logs;
  for (const auto& [i, v] : x.entries())
    if (i > s) logs.emplace_back(i - s, std::log(std::abs(v)) + w_[j - 1].log_product(i - s, i - 1));
  return log_norm_of(logs, space, m);
}

ForwardShiftFamily::ForwardShiftFamily(std::vector<WeightSequence> weights)
    : w_(std::move(weights)) {
  if (w_.empty()) throw invalid_input("family needs at least one operator");
}

SeqVector ForwardShiftFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_j(j);
  check_domain(x);
  return forward_shift_power(w_[j - 1], k, x);
}

std::string ForwardShiftFamily::describe() const {
  std::ostringstream os;
  os << "forward_shift_power[";
  for (std::size_t j = 0; j < w_.size(); ++j) os << (j ? ", " : "") << w_[j].describe();
  os << "]";
  return os.str();
}

double ForwardShiftFamily::log_seminorm(int j, std::int64_t k, const SeqVector& x,
                                        const SeminormSpace& space, int m) const {
  check_j(j);
  check_domain(x);
  if (!log_space_supported(space)) return OperatorFamily::log_seminorm(j, k, x, space, m);
  std::vector<std::pair<std::int64_t, double>> logs;
  for (const auto& [i, v] : x.entries())
    logs.emplace_back(i + k, std::log(std::abs(v)) + w_[j - 1].log_product(i, i + k - 1));
  return log_norm_of(logs, space, m);
}

DiagonalFamily::DiagonalFamily(int n, std::size_t dim, Entries entries, std::string name)
    : n_(n), dim_(dim), entries_(std::move(entries)), name_(std::move(name)) {
  if (n < 1 || dim < 1) throw invalid_input("diagonal family needs N >= 1 and dimension >= 1");
}

void DiagonalFamily::check_domain(const SeqVector& x) const {
  OperatorFamily::check_domain(x);
  if (!x.is_zero() && x.max_index() > static_cast<std::int64_t>(dim_))
    throw domain_violation("diagonal family: vector exceeds the dimension");
}

SeqVector DiagonalFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_j(j);
  check_domain(x);
  std::vector<double> e = entries_(j, k);
  std::vector<double> xs(dim_, 0.0);
  for (const auto& [i, v] : x.entries()) xs[i - 1] = v;
  std::vector<double> y = diagonal_apply(e, xs);
  SeqVector out;
  for (std::size_t i = 0; i < dim_; ++i) out.set(static_cast<std::int64_t>(i) + 1, y[i]);
  return out;
}

RegularizedShiftFamily::RegularizedShiftFamily(std::vector<WeightSequence> weights,
                                               WeightSequence a)
    : w_(std::move(weights)), a_(std::move(a)) {
  if (w_.empty()) throw invalid_input("family needs at least one operator");
}

SeqVector RegularizedShiftFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_j(j);
  check_domain(x);
  return regularized_power_apply(w_[j - 1], a_, k, x);
}

std::string RegularizedShiftFamily::describe() const {
  std::ostringstream os;
  os << "regularized_shift_power[";
  for (std::size_t j = 0; j < w_.size(); ++j) os << (j ? ", " : "") << w_[j].describe();
  os << "; C = diag(" << a_.describe() << ")]";
  return os.str();
}

std::optional<std::int64_t> RegularizedShiftFamily::vanishing_from(int j,
                                                                   const SeqVector& x) const {
  check_j(j);
  if (x.is_zero()) return 0;
  return x.max_index();
}

double RegularizedShiftFamily::log_seminorm(int j, std::int64_t k, const SeqVector& x,
                                            const SeminormSpace& space, int m) const {
  check_j(j);
  check_domain(x);
  if (!log_space_supported(space)) return OperatorFamily::log_seminorm(j, k, x, space, m);
  std::vector<std::pair<std::int64_t, double>> logs;
  for (const auto& [i, v] : x.entries())
    if (i > k)
      logs.emplace_back(i - k, std::log(std::abs(v)) + a_.log_at(i) +
                                   w_[j - 1].log_product(i - k, i - 1));
  return log_norm_of(logs, space, m);
}

TranslationFamily::TranslationFamily(std::vector<Member> members) : m_(std::move(members)) {
  if (m_.empty()) throw invalid_input("family needs at least one operator");
}

SeqVector TranslationFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_j(j);
  check_domain(x);
  return translation_power(m_[j - 1].a, m_[j - 1].w, k, x);
}

std::string TranslationFamily::describe() const {
  std::ostringstream os;
  os << "translation_power[";
  for (std::size_t j = 0; j < m_.size(); ++j)
    os << (j ? ", " : "") << "a=" << m_[j].a << " w=" << m_[j].w.name;
  os << "]";
  return os.str();
}

GeneralizedBackwardFamily::GeneralizedBackwardFamily(int n, CoefFn omega, JumpFn a,
                                                     std::string name)
    : n_(n), omega_(std::move(omega)), a_(std::move(a)), name_(std::move(name)) {
  if (n < 1) throw invalid_input("family needs at least one operator");
}

SeqVector GeneralizedBackwardFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_j(j);
  check_domain(x);
  return generalized_backward_apply(omega_, a_, j, k, x);
}

RestrictedFamily::RestrictedFamily(FamilyPtr inner,
                                   std::function<bool(const SeqVector&)> predicate,
                                   std::string name)
    : inner_(std::move(inner)), pred_(std::move(predicate)), name_(std::move(name)) {
  if (!inner_ || !pred_) throw invalid_input("restriction needs a family and a predicate");
}

void RestrictedFamily::check_domain(const SeqVector& x) const {
  inner_->check_domain(x);
  if (!pred_(x)) throw domain_violation("vector outside the subspace " + name_);
}

SeqVector RestrictedFamily::apply(int j, std::int64_t k, const SeqVector& x) const {
  check_domain(x);
  return inner_->apply(j, k, x);
}

std::string RestrictedFamily::describe() const {
  return inner_->describe() + " restricted to " + name_;
}

std::optional<std::int64_t> RestrictedFamily::vanishing_from(int j, const SeqVector& x) const {
  check_domain(x);
  return inner_->vanishing_from(j, x);
}

double RestrictedFamily::log_seminorm(int j, std::int64_t k, const SeqVector& x,
                                      const SeminormSpace& space, int m) const {
  check_domain(x);
  return inner_->log_seminorm(j, k, x, space, m);
}

FamilyPtr restrict_family(FamilyPtr family, std::function<bool(const SeqVector&)> predicate,
                          std::string name) {
  return std::make_shared<RestrictedFamily>(std::move(family), std::move(predicate),
                                            std::move(name));
}

}  // namespace ddc
