#include "ddchaos/mlo.hpp"

#include <cmath>
#include <limits>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pm(const SeminormSpace& space, int m, const Element& e) {
  return std::visit([&](const auto& v) { return seminorm(space, m, v); }, e);
}

/// First grid index whose point lies in (t, m].
std::optional<std::int64_t> free_grid_index(const GridFunction& f, const Rational& t, int m) {
  Rational first = t / f.step();
  std::int64_t i = first.numerator() / first.denominator();
  if (Rational(i) <= first) ++i;
  if (f.point(i) > Rational(m)) return std::nullopt;
  return i;
}

}  // namespace

Subspace Subspace::span_of(IndexSet indices) {
  if (!indices.is_exact() || !indices.is_finite())
    throw invalid_input("span subspace needs a finite index set");
  Subspace s;
  s.kind = indices.empty() ? Kind::zero : Kind::span;
  s.indices = std::move(indices);
  return s;
}

Subspace Subspace::span_range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return zero();
  return span_of(IndexSet::interval(lo, hi));
}

Subspace Subspace::support_beyond(Rational t) {
  Subspace s;
  s.kind = Kind::support_beyond;
  s.t = t;
  return s;
}

bool Subspace::is_zero() const { return kind == Kind::zero; }

bool Subspace::contains(const Element& e) const {
  if (const auto* v = std::get_if<SeqVector>(&e)) {
    if (kind == Kind::support_beyond) throw invalid_input("support subspace holds grid functions");
    for (const auto& [i, x] : v->entries())
      if (kind == Kind::zero || !indices.contains(i)) return false;
    return true;
  }
  const auto& g = std::get<GridFunction>(e);
  if (kind == Kind::span) throw invalid_input("span subspace holds sequences");
  for (const auto& [i, x] : g.samples())
    if (kind == Kind::zero || g.point(i) <= t) return false;
  return true;
}

bool AffineCoset::contains(const Element& e) const {
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        const auto* ev = std::get_if<T>(&e);
        if (!ev) return false;
        return subspace.contains(Element(*ev - b));
      },
      base);
}

AffineCoset canonicalize(const AffineCoset& c) {
  AffineCoset out = c;
  if (c.subspace.kind == Subspace::Kind::zero) return out;
  if (auto* v = std::get_if<SeqVector>(&out.base)) {
    if (c.subspace.kind != Subspace::Kind::span) throw invalid_input("subspace/base type mismatch");
    SeqVector trimmed(v->domain());
    for (const auto& [i, x] : v->entries())
      if (!c.subspace.indices.contains(i)) trimmed.set(i, x);
    *v = trimmed;
    return out;
  }
  auto& g = std::get<GridFunction>(out.base);
  if (c.subspace.kind != Subspace::Kind::support_beyond)
    throw invalid_input("subspace/base type mismatch");
  GridFunction trimmed(g.step());
  for (const auto& [i, x] : g.samples())
    if (g.point(i) <= c.subspace.t) trimmed.set_index(i, x);
  g = trimmed;
  return out;
}

MinSelection min_seminorm(const AffineCoset& c, const SeminormSpace& space, int m) {
  AffineCoset cc = canonicalize(c);
  return {pm(space, m, cc.base), cc.base};
}

double sup_seminorm(const AffineCoset& c, const SeminormSpace& space, int m) {
  AffineCoset cc = canonicalize(c);
  const Subspace& s = cc.subspace;
  if (s.kind == Subspace::Kind::span) {
    if (space.is_normed()) return kInf;
    for (const auto& seg : s.indices.segments())
      if (seg.lo <= m) return kInf;  // frechet_truncation sees indices <= m
  } else if (s.kind == Subspace::Kind::support_beyond) {
    const auto& g = std::get<GridFunction>(cc.base);
    if (free_grid_index(g, s.t, m)) return kInf;
  }
  return pm(space, m, cc.base);
}

Element select_exceeding(const AffineCoset& c, const SeminormSpace& space, int m,
                         double threshold) {
  AffineCoset cc = canonicalize(c);
  double base_norm = pm(space, m, cc.base);
  if (base_norm > threshold) return cc.base;
  if (!(sup_seminorm(cc, space, m) > threshold))
    throw not_attainable("no coset element has seminorm above the threshold");
  double target = threshold + base_norm + 1;
  Element out;
  if (auto* v = std::get_if<SeqVector>(&cc.base)) {
    std::int64_t idx = cc.subspace.indices.segments().front().lo;
    SeqVector unit = SeqVector::basis(idx, v->domain());
    double u = seminorm(space, m, unit);
    out = *v + unit * (target / u);
  } else {
    const auto& g = std::get<GridFunction>(cc.base);
    auto idx = free_grid_index(g, cc.subspace.t, m);
    GridFunction r = g;
    r.set_index(*idx, target);
    out = r;
  }
  if (!(pm(space, m, out) > threshold))
    throw not_attainable("selection failed to exceed the threshold");
  return out;
}

AffineCoset extension_power_coset(int j, std::int64_t w_dim, std::int64_t k, const SeqVector& x) {
  if (j < 1 || k < 0) throw invalid_input("extension_power_coset needs j >= 1 and k >= 0");
  if (w_dim != j) throw invalid_input("extension_power_coset needs W_dim = j");
  if (x.domain() != IndexDomain::natural) throw invalid_input("extension acts on ℕ-indexed vectors");
  std::int64_t s = j * k;
  SeqVector base;
  for (const auto& [n, v] : x.entries()) base.set(n + s, v);
  return {base, Subspace::span_range(1, s)};
}

bool purely_multivalued(const AffineCoset& c) { return !c.subspace.is_zero(); }

AffineCoset ExtensionPowerFamily::apply(int j, std::int64_t k, const Element& x) const {
  if (j < 1 || j > n_) throw invalid_input("operator index j out of range");
  return extension_power_coset(j, j, k, std::get<SeqVector>(x));
}

std::string ExtensionPowerFamily::describe() const {
  return "extension_power(N=" + std::to_string(n_) + ")";
}

AffineCoset GridSupportFamily::apply(int j, std::int64_t k, const Element& x) const {
  if (j < 1 || j > n_) throw invalid_input("operator index j out of range");
  return canonicalize({std::get<GridFunction>(x), Subspace::support_beyond(Rational(j * k))});
}

std::string GridSupportFamily::describe() const {
  return "grid_support(N=" + std::to_string(n_) + ")";
}

AffineCoset SubspacePerturbationFamily::apply(int j, std::int64_t k, const Element& x) const {
  if (j < 1 || j > n_) throw invalid_input("operator index j out of range");
  if (k == 0) return {x, Subspace::zero()};
  return canonicalize({std::get<SeqVector>(x), Subspace::span_of(w_)});
}

std::string SubspacePerturbationFamily::describe() const {
  return "identity_plus_span(N=" + std::to_string(n_) + ", W=" + w_.describe() + ")";
}

}  // namespace ddc
