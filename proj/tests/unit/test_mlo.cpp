#include <random>

#include "doctest.h"
#include "ddchaos/errors.hpp"
#include "ddchaos/mlo.hpp"

using namespace ddc;

TEST_SUITE("mlo") {
  TEST_CASE("extension power coset layout") {
    auto x = SeqVector::from_pairs({{1, 2.0}, {3, -1.0}});
    AffineCoset c = extension_power_coset(2, 2, 3, x);
    auto base = std::get<SeqVector>(c.base);
    CHECK(base.at(7) == 2.0);
    CHECK(base.at(9) == -1.0);
    CHECK(c.contains(base + SeqVector::basis(6) * 5.0));
    CHECK_FALSE(c.contains(base + SeqVector::basis(7)));
    CHECK(purely_multivalued(c));
  }

  TEST_CASE("every element of the extension coset has norm at least max |x_n|") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-5, 5);
    auto l2 = SeminormSpace::lp(2);
    auto x = SeqVector::from_pairs({{1, 0.3}, {2, -1.7}, {4, 0.9}});
    for (std::int64_t k = 1; k <= 10; ++k) {
      AffineCoset c = extension_power_coset(1, 1, k, x);
      CHECK(min_seminorm(c, l2, 1).value == doctest::Approx(seminorm(l2, 1, x)));
      for (int s = 0; s < 10; ++s) {
        auto z = std::get<SeqVector>(c.base);
        for (std::int64_t i = 1; i <= k; ++i) z.add(i, u(rng));
        CHECK(seminorm(l2, 1, z) >= 1.7);
      }
    }
  }

  TEST_CASE("min selection drops the subspace part") {
    auto l2 = SeminormSpace::lp(2);
    AffineCoset c{SeqVector::from_pairs({{1, 3.0}, {2, 4.0}}), Subspace::span_range(1, 1)};
    auto m = min_seminorm(c, l2, 1);
    CHECK(m.value == doctest::Approx(4.0));
    CHECK(c.contains(m.witness));
    CHECK(sup_seminorm(c, l2, 1) == INFINITY);
    AffineCoset point{SeqVector::basis(2), Subspace::zero()};
    CHECK(sup_seminorm(point, l2, 1) == 1.0);
  }

  TEST_CASE("select_exceeding in a span and on the grid") {
    auto l2 = SeminormSpace::lp(2);
    AffineCoset c{SeqVector::basis(2), Subspace::span_range(1, 1)};
    for (double thr : {0.5, 100.0, 1e9}) {
      auto z = select_exceeding(c, l2, 1, thr);
      CHECK(seminorm(l2, 1, std::get<SeqVector>(z)) > thr);
      CHECK(c.contains(z));
    }
    AffineCoset fixed{SeqVector::basis(2), Subspace::zero()};
    CHECK_THROWS_AS(select_exceeding(fixed, l2, 1, 2.0), not_attainable);

    GridFunction f;
    f.set(Rational(1), 2.0);
    auto grid = SeminormSpace::grid_sup();
    AffineCoset g{f, Subspace::support_beyond(Rational(4))};
    CHECK_THROWS_AS(select_exceeding(g, grid, 3, 5.0), not_attainable);
    auto big = select_exceeding(g, grid, 6, 5.0);
    CHECK(seminorm(grid, 6, std::get<GridFunction>(big)) > 5.0);
  }

  TEST_CASE("families produce the documented cosets") {
    ExtensionPowerFamily e(2);
    auto c = e.apply(2, 2, SeqVector::basis(1));
    CHECK(std::get<SeqVector>(c.base).at(5) == 1.0);
    GridSupportFamily g(2);
    GridFunction f;
    f.set(Rational(0), 1.0);
    CHECK(g.apply(2, 3, f).subspace.t == Rational(6));
    SubspacePerturbationFamily p(1, IndexSet::interval(1, 2));
    auto pc = p.apply(1, 5, SeqVector::basis(3));
    CHECK(pc.contains(SeqVector::from_pairs({{1, 9.0}, {3, 1.0}})));
  }

  TEST_CASE("canonical cosets strip subspace components from the base") {
    AffineCoset c{SeqVector::from_pairs({{1, 5.0}, {3, 2.0}}), Subspace::span_range(1, 2)};
    auto k = canonicalize(c);
    CHECK(std::get<SeqVector>(k.base) == SeqVector::from_pairs({{3, 2.0}}));
  }
}
