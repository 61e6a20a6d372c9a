#include "doctest.h"
#include "ddchaos/examples.hpp"

using namespace ddc;

TEST_SUITE("examples") {
  TEST_CASE("block model prefix is exact") {
    BlockWeightModel m({2, 3, 5, 1});
    // weights: 2 2 | ½ ½ ½ | 2 2 2 2 2 | ½
    const std::int64_t want[] = {0, 1, 2, 1, 0, -1, 0, 1, 2, 3, 4, 3};
    for (std::int64_t n = 0; n <= 11; ++n) CHECK(m.log2_prefix(n) == want[n]);
    CHECK(m.pair_end(1) == 5);
    CHECK(m.b_end(2) == 10);
    CHECK(m.horizon() == 11);
    CHECK(m.omega().log2_product(1, 11) == 3);
    CHECK(m.sigma().log2_product(1, 11) == -3);
  }

  TEST_CASE("square exponent model: n0 and block bounds") {
    auto m = BlockWeightModel::square_exponent(3);
    CHECK(m.b(1) == 2);
    CHECK(m.a(1) == 18);
    CHECK(m.scan_n0() == 2);
    for (int l = 2; l <= 3; ++l) {
      auto b = m.block_bound(l);
      CHECK(b.holds);
      CHECK(b.max_P_on_A < -l);
      CHECK(b.min_P_on_B > l);
    }
    CHECK_FALSE(m.block_bound(1).holds);
  }

  TEST_CASE("runs are monotone pieces of the prefix") {
    BlockWeightModel m({2, 3, 5, 1});
    for (auto [lo, hi] : m.runs()) {
      int dir = 0;
      for (std::int64_t n = lo; n < hi; ++n) {
        int d = m.log2_prefix(n + 1) > m.log2_prefix(n) ? 1 : -1;
        if (dir) CHECK(d == dir);
        dir = d;
      }
    }
  }

  TEST_CASE("level configurations reproduce their combinator levels") {
    for (int u = 1; u <= 4; ++u)
      for (int l = 1; l <= 4; ++l) {
        auto cfg = level_configuration(u, l);
        for (int c = 1; c <= 12; ++c) {
          bool v = eval_condition(condition_spec(c), cfg.sets, cfg.rule).holds;
          CHECK_MESSAGE(v == level_pattern_holds(c, u, l), "levels ", u, "/", l, " condition ", c);
        }
      }
  }

  TEST_CASE("level pattern follows the combinator order") {
    CHECK(level_pattern_holds(1, 4, 4));
    CHECK(level_pattern_holds(10, 1, 3));
    CHECK_FALSE(level_pattern_holds(9, 1, 3));
    CHECK_FALSE(level_pattern_holds(12, 2, 1));
  }

  TEST_CASE("block level sets of e_1 under both operators") {
    auto m = BlockWeightModel::square_exponent(3);
    ClassifyOptions o;
    o.rule.delta = 0.1;
    o.rule.checkpoints = m.block_ends();
    o.rule.window = 3;
    auto ls = block_level_sets(m, {+1, -1}, 1.0, o);
    REQUIRE(ls.small.size() == 2);
    CHECK((ls.small[0] & ls.small[1]).count_upto(m.horizon()) == 0);
    CHECK(check_full_density(ls.large[0], o.rule).holds);
  }
}
