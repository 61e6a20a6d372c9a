#include <random>

#include "doctest.h"
#include "ddchaos/errors.hpp"
#include "ddchaos/indexset.hpp"

using namespace ddc;

TEST_SUITE("indexset") {
  TEST_CASE("exact densities of simple sets") {
    CHECK(IndexSet::naturals().exact_density() == Rational(1));
    CHECK(IndexSet().exact_density() == Rational(0));
    CHECK(IndexSet::progression(1, 2).exact_density() == Rational(1, 2));
    CHECK(IndexSet::finite({1, 5, 9}).exact_density() == Rational(0));
    auto s = IndexSet::progression(1, 2) | IndexSet::progression(2, 3);
    CHECK(s.exact_density() == Rational(2, 3));
    CHECK((IndexSet::naturals() - IndexSet::finite({2, 3})).exact_density() == Rational(1));
  }

  TEST_CASE("set algebra matches membership") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
      std::int64_t s1 = rng() % 5 + 1, s2 = rng() % 7 + 1;
      auto a = IndexSet::progression(rng() % s1 + 1, s1) | IndexSet::interval(rng() % 20 + 1, 40);
      auto b = IndexSet::progression(rng() % s2 + 1, s2, 10);
      auto u = a | b, i = a & b, d = a - b, c = a.complement();
      for (std::int64_t k = 1; k <= 300; ++k) {
        CHECK(u.contains(k) == (a.contains(k) || b.contains(k)));
        CHECK(i.contains(k) == (a.contains(k) && b.contains(k)));
        CHECK(d.contains(k) == (a.contains(k) && !b.contains(k)));
        CHECK(c.contains(k) == !a.contains(k));
      }
      CHECK(u.count_upto(300) + i.count_upto(300) == a.count_upto(300) + b.count_upto(300));
      CHECK(set_algebra(a, b, SetOp::intersect) == i);
    }
  }

  TEST_CASE("ExactSet validation and density") {
    ExactSet e;
    e.progressions = {{1, 4, std::nullopt}, {3, 4, std::nullopt}};
    e.include = {2};
    e.exclude = {5};
    CHECK_NOTHROW(e.validate());
    CHECK(exact_upper_density(e) == Rational(1, 2));
    CHECK(e.to_set().contains(2));
    CHECK_FALSE(e.to_set().contains(5));
    ExactSet bad;
    bad.progressions = {{1, 2, std::nullopt}, {3, 4, std::nullopt}};
    CHECK_THROWS_AS(bad.validate(), invalid_input);
    ExactSet clash;
    clash.include = {4};
    clash.exclude = {4};
    CHECK_THROWS_AS(clash.validate(), invalid_input);
  }

  TEST_CASE("horizon-bounded sets refuse an exact density") {
    auto s = IndexSet::interval(1, 10).truncated(20);
    CHECK_FALSE(s.is_exact());
    CHECK_THROWS(s.exact_density());
  }

  TEST_CASE("density profile and the full-density rule") {
    BlockSet b{{{1, 2}, {5, 20}, {41, 200}}, 200};
    auto s = b.to_set();
    CHECK(b.checkpoints() == std::vector<std::int64_t>{2, 20, 200});
    auto prof = density_profile(s, b.checkpoints());
    REQUIRE(prof.points.size() == 3);
    CHECK(prof.points[1].second == Rational(18, 20));
    CHECK(prof.points[2].second == Rational(178, 200));
    DensityRule r;
    r.checkpoints = b.checkpoints();
    r.delta = 0.15;
    CHECK(check_full_density(s, r).holds);
    r.delta = 0.05;
    CHECK_FALSE(check_full_density(s, r).holds);
  }

  TEST_CASE("empirical profile keeps the running maximum") {
    auto prof = empirical_density_profile([](std::int64_t k) { return k <= 3; }, 10, {10});
    CHECK(prof.sup_ratio == Rational(1));
    CHECK(prof.points.back().second == Rational(3, 10));
  }

  TEST_CASE("full density partition covers the horizon with disjoint parts") {
    std::int64_t H = block_partition_horizon(2, 4);
    CHECK(H == 2 + 16 + 512 + 65536);
    auto parts = full_density_partition(2, 2, H);
    REQUIRE(parts.size() == 2);
    auto a = parts[0].to_set(), b = parts[1].to_set();
    CHECK((a & b).count_upto(H) == 0);
    CHECK((a | b).count_upto(H) == H);
    auto pa = density_profile(a, parts[0].checkpoints());
    CHECK(pa.points.back().second >= Rational(1, 2) + Rational(1, 4));
  }

  TEST_CASE("bounded density subpartition") {
    auto parts = bounded_density_subpartition(IndexSet::progression(1, 2), 3);
    REQUIRE(parts.size() == 3);
    for (auto& p : parts) CHECK(p.exact_density() == Rational(1, 6));
    CHECK(parts[0].contains(1));
    CHECK(parts[1].contains(3));
  }

  TEST_CASE("q_set membership") {
    auto q = q_set(IndexSet::progression(1, 2), {2});
    for (std::int64_t k = 1; k <= 50; ++k) CHECK(q.contains(k));
    auto q3 = q_set(IndexSet::progression(2, 3), {1, 3});
    for (std::int64_t k = 1; k <= 60; ++k)
      CHECK(q3.contains(k) == ((k - 1) % 3 == 2 && (3 * k - 1) % 3 == 2));
  }

  TEST_CASE("bitmap round trip") {
    std::vector<bool> bits = {true, false, false, true, true, false, true};
    auto s = IndexSet::from_bitmap(bits, 7);
    CHECK(s.bitmap(7) == bits);
    CHECK(s.count_upto(7) == 4);
  }
}
