#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "ddchaos/indexset.hpp"
#include "ddchaos/space.hpp"

namespace ddc {

using Element = std::variant<SeqVector, GridFunction>;

/// Linear subspace of an MLO value: {0}, span{e_i : i ∈ I} or {g : supp g ⊆ [t, ∞)}.
struct Subspace {
  enum class Kind { zero, span, support_beyond };
  Kind kind = Kind::zero;
  IndexSet indices;  // span case, finite
  Rational t{0};     // support_beyond case

  static Subspace zero() { return {}; }
  static Subspace span_of(IndexSet indices);
  static Subspace span_range(std::int64_t lo, std::int64_t hi);
  static Subspace support_beyond(Rational t);
  bool contains(const Element& e) const;
  bool is_zero() const;
};

/// base + subspace
struct AffineCoset {
  Element base;
  Subspace subspace;
  bool contains(const Element& e) const;
};

AffineCoset canonicalize(const AffineCoset& c);

struct MinSelection {
  double value = 0;
  Element witness;
};

MinSelection min_seminorm(const AffineCoset& c, const SeminormSpace& space, int m);
/// +inf when the subspace carries a vector with positive p_m.
double sup_seminorm(const AffineCoset& c, const SeminormSpace& space, int m);
/// A coset element with p_m > threshold; throws not_attainable when none exists.
Element select_exceeding(const AffineCoset& c, const SeminormSpace& space, int m,
                         double threshold);
/// (A^j + W_j)^k x for the forward shift A on ℓ² and W_j = span{e_1..e_j}:
/// Σ x_n e_{n+jk} + span{e_1..e_{jk}}.
AffineCoset extension_power_coset(int j, std::int64_t w_dim, std::int64_t k, const SeqVector& x);
bool purely_multivalued(const AffineCoset& c);

/// Doubly indexed family of linear relations (j,k) ↦ 𝒜_{j,k}.
class MloFamily {
 public:
  virtual ~MloFamily() = default;
  virtual int size() const = 0;
  virtual AffineCoset apply(int j, std::int64_t k, const Element& x) const = 0;
  virtual std::string describe() const = 0;
};

using MloFamilyPtr = std::shared_ptr<const MloFamily>;

/// 𝒜_{j,k} = (A^j + W_j)^k on ℓ²(ℕ)
class ExtensionPowerFamily : public MloFamily {
 public:
  explicit ExtensionPowerFamily(int n) : n_(n) {}
  int size() const override { return n_; }
  AffineCoset apply(int j, std::int64_t k, const Element& x) const override;
  std::string describe() const override;

 private:
  int n_;
};

/// 𝒜_{j,k} f = f + C_{[jk, ∞)}(ℝ)
class GridSupportFamily : public MloFamily {
 public:
  explicit GridSupportFamily(int n) : n_(n) {}
  int size() const override { return n_; }
  AffineCoset apply(int j, std::int64_t k, const Element& x) const override;
  std::string describe() const override;

 private:
  int n_;
};

/// 𝒜_{j,k} x = (I + W)^k x = x + W for a fixed span W.
class SubspacePerturbationFamily : public MloFamily {
 public:
  SubspacePerturbationFamily(int n, IndexSet w) : n_(n), w_(std::move(w)) {}
  int size() const override { return n_; }
  AffineCoset apply(int j, std::int64_t k, const Element& x) const override;
  std::string describe() const override;

 private:
  int n_;
  IndexSet w_;
};

}  // namespace ddc
