#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddchaos/logreal.hpp"
#include "ddchaos/space.hpp"

namespace ddc {

/// Positive sequence w_1, w_2, ... with log-space products.
class WeightSequence {
 public:
  enum class Kind { constant, geometric, factorial_power, table, blocks, function };

  static WeightSequence constant(double w);
  /// w_n = 2^j n^j
  static WeightSequence geometric(int j);
  /// w_n = ((n-1)!)^e
  static WeightSequence factorial_power(double e);
  /// w_1..w_m from the table, then `tail`.
  static WeightSequence table(std::vector<double> values, double tail);
  /// Alternating blocks of 2's and 1/2's with the given lengths, starting with 2's
  /// (or 1/2's when `reciprocal`); the last block's value continues forever.
  static WeightSequence blocks(std::vector<std::int64_t> lengths, bool reciprocal = false);
  static WeightSequence function(std::function<double(std::int64_t)> f, std::string name);

  Kind kind() const { return kind_; }
  double at(std::int64_t n) const;
  double log_at(std::int64_t n) const;
  /// Σ_{i=from}^{to} log w_i; 0 for an empty range.
  double log_product(std::int64_t from, std::int64_t to) const;
  /// Exact log2 of the product for block weights.
  std::int64_t log2_product(std::int64_t from, std::int64_t to) const;
  /// Cumulative ends of the generated blocks (block kind only).
  const std::vector<std::int64_t>& block_ends() const { return ends_; }
  WeightSequence reciprocal() const;
  std::string describe() const;

 private:
  WeightSequence() = default;
  std::int64_t log2_prefix(std::int64_t n) const;

  Kind kind_ = Kind::constant;
  double c_ = 1.0;
  std::vector<double> table_;
  std::vector<std::int64_t> ends_;        // block kind: cumulative block ends
  std::vector<std::int64_t> end_prefix_;  // log2 prefix at each block end
  bool first_is_two_ = true;
  std::function<double(std::int64_t)> f_;
  std::string name_;
};

/// Block lengths b_1, a_1, b_2, a_2, ... with b_l = Σ_{i<=2l-1} 2^{i²}, a_l = Σ_{i<=2l} 2^{i²}.
std::vector<std::int64_t> square_exponent_block_lengths(int pairs);

/// Doubly indexed family (j,k) ↦ T_{j,k}, 1 <= j <= N, k >= 0.
class OperatorFamily {
 public:
  virtual ~OperatorFamily() = default;
  virtual int size() const = 0;
  virtual SeqVector apply(int j, std::int64_t k, const SeqVector& x) const = 0;
  virtual std::string kind() const = 0;
  virtual std::string describe() const { return kind(); }
  virtual IndexDomain domain() const { return IndexDomain::natural; }
  /// Throws domain_violation when x is outside the family's domain.
  virtual void check_domain(const SeqVector& x) const;
  /// Some k0 with T_{j,k}x = 0 for all k >= k0, if one is known in closed form.
  virtual std::optional<std::int64_t> vanishing_from(int j, const SeqVector& x) const;
  /// log p_m(T_{j,k}x); overridden where the plain value would overflow.
  virtual double log_seminorm(int j, std::int64_t k, const SeqVector& x,
                              const SeminormSpace& space, int m) const;

 protected:
  void check_j(int j) const;
};

using FamilyPtr = std::shared_ptr<const OperatorFamily>;

// ---- closed-form applications ---------------------------------------------------

/// ⟨(∏_{i=n}^{n+k-1} w_i) x_{n+k}⟩_n
SeqVector backward_shift_power(const WeightSequence& w, std::int64_t k, const SeqVector& x);
/// (F^k x)_{n+k} = (∏_{i=n}^{n+k-1} w_i) x_n
SeqVector forward_shift_power(const WeightSequence& w, std::int64_t k, const SeqVector& x);
/// sup_{n<=horizon} ∏_{i=n}^{n+k-1} w_i (lower bound of ‖F^k‖, ‖B^k‖ on ℓ^p / c_0)
LogReal shift_power_norm(const WeightSequence& w, std::int64_t k, std::int64_t horizon);
/// ⟨a_{k+n} x_{k+n} ∏_{i=n}^{k+n-1} w_i⟩_n, i.e. T^k C with C = diag(a_n)
SeqVector regularized_power_apply(const WeightSequence& w, const WeightSequence& a,
                                  std::int64_t k, const SeqVector& x);
/// sup_{n<=horizon} a_{k+n} ∏_{i=n}^{k+n-1} w_i, in log-space
LogReal b_jk(const WeightSequence& w, const WeightSequence& a, std::int64_t k,
             std::int64_t horizon);
std::vector<double> diagonal_apply(const std::vector<double>& entries,
                                   const std::vector<double>& x);

/// Weight function on ℤ.
struct ZWeight {
  std::function<double(std::int64_t)> f;
  std::string name;
  double operator()(std::int64_t x) const { return f(x); }
};

/// T^n f with (T f)(x) = w(x) f(x - a)
SeqVector translation_power(std::int64_t a, const ZWeight& w, std::int64_t n,
                            const SeqVector& f);
/// ∏_{s=1}^{n} w(x + s a)
double phi_product(const ZWeight& w, std::int64_t a, std::int64_t n, std::int64_t x);

using JumpFn = std::function<std::int64_t(std::int64_t n, int j)>;
using CoefFn = std::function<double(std::int64_t n, int j)>;
/// B_j^k x with (B_j x)_n = ω(n,j) x_{n+a(n,j)}, iterated k times.
SeqVector generalized_backward_apply(const CoefFn& omega, const JumpFn& a, int j,
                                     std::int64_t k, const SeqVector& x);

// ---- families ---------------------------------------------------------------------

/// T_{j,k} = B_{w_j}^{r_j k} (r_j = 1 unless given).
class BackwardShiftFamily : public OperatorFamily {
 public:
  explicit BackwardShiftFamily(std::vector<WeightSequence> weights,
                               std::vector<std::int64_t> strides = {});
  int size() const override { return static_cast<int>(w_.size()); }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return "backward_shift_power"; }
  std::string describe() const override;
  std::optional<std::int64_t> vanishing_from(int j, const SeqVector& x) const override;
  double log_seminorm(int j, std::int64_t k, const SeqVector& x, const SeminormSpace& space,
                      int m) const override;
  const WeightSequence& weights(int j) const { return w_.at(j - 1); }

 private:
  std::vector<WeightSequence> w_;
  std::vector<std::int64_t> r_;
};

class ForwardShiftFamily : public OperatorFamily {
 public:
  explicit ForwardShiftFamily(std::vector<WeightSequence> weights);
  int size() const override { return static_cast<int>(w_.size()); }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return "forward_shift_power"; }
  std::string describe() const override;
  double log_seminorm(int j, std::int64_t k, const SeqVector& x, const SeminormSpace& space,
                      int m) const override;

 private:
  std::vector<WeightSequence> w_;
};

/// Finite-dimensional diagonal family on coordinates 1..dim.
class DiagonalFamily : public OperatorFamily {
 public:
  using Entries = std::function<std::vector<double>(int j, std::int64_t k)>;
  DiagonalFamily(int n, std::size_t dim, Entries entries, std::string name);
  int size() const override { return n_; }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return "diagonal_sequence"; }
  std::string describe() const override { return "diagonal_sequence(" + name_ + ")"; }
  void check_domain(const SeqVector& x) const override;
  std::size_t dimension() const { return dim_; }

 private:
  int n_;
  std::size_t dim_;
  Entries entries_;
  std::string name_;
};

/// T_{j,k} = T_j^k C, T_j the backward shift with weights w_j, C = diag(a_n).
class RegularizedShiftFamily : public OperatorFamily {
 public:
  RegularizedShiftFamily(std::vector<WeightSequence> weights, WeightSequence a);
  int size() const override { return static_cast<int>(w_.size()); }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return "regularized_shift_power"; }
  std::string describe() const override;
  std::optional<std::int64_t> vanishing_from(int j, const SeqVector& x) const override;
  double log_seminorm(int j, std::int64_t k, const SeqVector& x, const SeminormSpace& space,
                      int m) const override;
  const WeightSequence& weights(int j) const { return w_.at(j - 1); }
  const WeightSequence& regularizer() const { return a_; }

 private:
  std::vector<WeightSequence> w_;
  WeightSequence a_;
};

/// Weighted translations on ℤ: T_{j,k} = T_{a_j,w_j}^k.
class TranslationFamily : public OperatorFamily {
 public:
  struct Member {
    std::int64_t a;
    ZWeight w;
  };
  explicit TranslationFamily(std::vector<Member> members);
  int size() const override { return static_cast<int>(m_.size()); }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return "translation_power"; }
  std::string describe() const override;
  IndexDomain domain() const override { return IndexDomain::integer; }
  const Member& member(int j) const { return m_.at(j - 1); }

 private:
  std::vector<Member> m_;
};

class GeneralizedBackwardFamily : public OperatorFamily {
 public:
  GeneralizedBackwardFamily(int n, CoefFn omega, JumpFn a, std::string name);
  int size() const override { return n_; }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return "generalized_backward"; }
  std::string describe() const override { return "generalized_backward(" + name_ + ")"; }

 private:
  int n_;
  CoefFn omega_;
  JumpFn a_;
  std::string name_;
};

/// Same application, domain gated by a predicate (restriction to a subspace).
class RestrictedFamily : public OperatorFamily {
 public:
  RestrictedFamily(FamilyPtr inner, std::function<bool(const SeqVector&)> predicate,
                   std::string name);
  int size() const override { return inner_->size(); }
  SeqVector apply(int j, std::int64_t k, const SeqVector& x) const override;
  std::string kind() const override { return inner_->kind(); }
  std::string describe() const override;
  IndexDomain domain() const override { return inner_->domain(); }
  void check_domain(const SeqVector& x) const override;
  std::optional<std::int64_t> vanishing_from(int j, const SeqVector& x) const override;
  double log_seminorm(int j, std::int64_t k, const SeqVector& x, const SeminormSpace& space,
                      int m) const override;

 private:
  FamilyPtr inner_;
  std::function<bool(const SeqVector&)> pred_;
  std::string name_;
};

FamilyPtr restrict_family(FamilyPtr family, std::function<bool(const SeqVector&)> predicate,
                          std::string name);

}  // namespace ddc
