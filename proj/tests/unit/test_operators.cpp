#include <cmath>
#include <random>

#include "doctest.h"
#include "ddchaos/errors.hpp"
#include "ddchaos/operators.hpp"

using namespace ddc;

namespace {
SeqVector sample(std::mt19937_64& rng, int len) {
  std::uniform_real_distribution<double> u(-1, 1);
  SeqVector v;
  for (int n = 1; n <= len; ++n) v.set(n, u(rng));
  return v;
}
}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("weight sequences") {
    auto g = WeightSequence::geometric(2);
    CHECK(g.at(3) == doctest::Approx(36.0));
    CHECK(g.log_product(1, 3) == doctest::Approx(std::log(4.0 * 16 * 36)));
    auto f = WeightSequence::factorial_power(-3);
    CHECK(f.at(1) == doctest::Approx(1.0));
    CHECK(f.at(4) == doctest::Approx(1.0 / 216));
    auto b = WeightSequence::blocks({2, 3, 4});
    CHECK(b.at(2) == 2.0);
    CHECK(b.at(3) == 0.5);
    CHECK(b.at(100) == 2.0);
    CHECK(b.log2_product(1, 5) == -1);
    CHECK(b.reciprocal().log2_product(1, 5) == 1);
    CHECK(b.block_ends() == std::vector<std::int64_t>{2, 5, 9});
  }

  TEST_CASE("square exponent block lengths") {
    CHECK(square_exponent_block_lengths(2) == std::vector<std::int64_t>{2, 18, 530, 66066});
  }

  TEST_CASE("backward shift powers agree with repeated single steps") {
    std::mt19937_64 rng(1);
    auto w = WeightSequence::geometric(1);
    for (int t = 0; t < 30; ++t) {
      auto x = sample(rng, 10);
      std::int64_t k = rng() % 6;
      SeqVector step = x;
      for (std::int64_t s = 0; s < k; ++s) step = backward_shift_power(w, 1, step);
      auto direct = backward_shift_power(w, k, x);
      for (std::int64_t n = 1; n <= 10; ++n)
        CHECK(direct.at(n) == doctest::Approx(step.at(n)).epsilon(1e-12));
    }
  }

  TEST_CASE("forward and backward shifts with unit weights are adjoint") {
    std::mt19937_64 rng(2);
    auto one = WeightSequence::constant(1);
    for (int t = 0; t < 20; ++t) {
      auto x = sample(rng, 8), y = sample(rng, 12);
      std::int64_t k = rng() % 4 + 1;
      auto fx = forward_shift_power(one, k, x), by = backward_shift_power(one, k, y);
      double a = 0, b = 0;
      for (auto& [n, v] : fx.entries()) a += v * y.at(n);
      for (auto& [n, v] : x.entries()) b += v * by.at(n);
      CHECK(a == doctest::Approx(b));
    }
  }

  TEST_CASE("regularized power is T^k after C") {
    auto w = WeightSequence::geometric(1);
    auto a = WeightSequence::factorial_power(-3);
    auto x = SeqVector::from_pairs({{3, 1.0}});
    auto y = regularized_power_apply(w, a, 2, x);
    // a_3 · w_1 w_2 = (2!)^-3 · 2 · 4
    CHECK(y.at(1) == doctest::Approx(1.0));
    CHECK(y.support_size() == 1);
  }

  TEST_CASE("b_jk attains its sup at n = 1 for the factorial regularizer") {
    auto w = WeightSequence::geometric(1);
    auto a = WeightSequence::factorial_power(-3);
    for (std::int64_t k = 1; k <= 10; ++k) {
      double want = k * std::log(2.0) - 2 * std::lgamma(double(k) + 1);
      CHECK(b_jk(w, a, k, 500).log() == doctest::Approx(want).epsilon(1e-12));
    }
  }

  TEST_CASE("shift power norm lower bound") {
    CHECK(shift_power_norm(WeightSequence::constant(2), 5, 100).log2() == doctest::Approx(5.0));
    auto b = WeightSequence::blocks({2, 18, 530});
    CHECK(shift_power_norm(b, 30, 1000).log2() == doctest::Approx(30.0));
  }

  TEST_CASE("weighted translation powers") {
    ZWeight w{[](std::int64_t x) { return x >= 0 ? 2.0 : 1.0; }, "step"};
    SeqVector f(IndexDomain::integer);
    f.set(0, 1.0);
    auto g = translation_power(1, w, 3, f);
    CHECK(g.at(3) == doctest::Approx(phi_product(w, 1, 3, 0)));
    CHECK(phi_product(w, 1, 3, 0) == doctest::Approx(8.0));
    CHECK(g.support_size() == 1);
  }

  TEST_CASE("generalized backward shift with constant jumps") {
    CoefFn om = [](std::int64_t, int) { return 3.0; };
    JumpFn a = [](std::int64_t, int j) { return std::int64_t(j); };
    auto x = SeqVector::basis(7);
    auto y = generalized_backward_apply(om, a, 2, 3, x);
    CHECK(y.at(1) == doctest::Approx(27.0));
  }

  TEST_CASE("families: vanishing orbits and domain checks") {
    BackwardShiftFamily fam({WeightSequence::constant(2), WeightSequence::constant(3)});
    auto e3 = SeqVector::basis(3);
    CHECK(fam.vanishing_from(1, e3).value() <= 3);
    CHECK(fam.apply(2, 3, e3).is_zero());
    CHECK(fam.apply(2, 2, e3).at(1) == doctest::Approx(9.0));
    CHECK_THROWS(fam.apply(3, 1, e3));
    DiagonalFamily d(1, 2, [](int, std::int64_t) { return std::vector<double>{1, 1}; }, "id");
    CHECK_THROWS_AS(d.apply(1, 1, SeqVector::basis(5)), domain_violation);
  }

  TEST_CASE("log seminorm avoids overflow for long products") {
    BackwardShiftFamily fam({WeightSequence::constant(2)});
    auto x = SeqVector::basis(5000);
    double l = fam.log_seminorm(1, 4000, x, SeminormSpace::lp(2), 1);
    CHECK(l == doctest::Approx(4000 * std::log(2.0)));
  }

  TEST_CASE("restricted family rejects vectors outside the subspace") {
    auto inner = std::make_shared<BackwardShiftFamily>(std::vector<WeightSequence>{WeightSequence::constant(2)});
    auto r = restrict_family(inner, [](const SeqVector& v) { return v.at(1) == 0; }, "x_1 = 0");
    CHECK_NOTHROW(r->apply(1, 1, SeqVector::basis(2)));
    CHECK_THROWS_AS(r->apply(1, 1, SeqVector::basis(1)), domain_violation);
  }
}
