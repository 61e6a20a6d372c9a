#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ddchaos/chaos.hpp"
#include "ddchaos/indexset.hpp"
#include "ddchaos/operators.hpp"

namespace ddc {

using Interval = std::pair<std::int64_t, std::int64_t>;

/**
 * Forward/backward shift weights made of alternating blocks of 2's (lengths b_l) and
 * 1/2's (lengths a_l), b_1, a_1, b_2, a_2, ... . P(n) = log2(ω_1⋯ω_n) is exact.
 */
class BlockWeightModel {
 public:
  static BlockWeightModel square_exponent(int pairs);
  explicit BlockWeightModel(std::vector<std::int64_t> lengths);

  int pairs() const { return static_cast<int>(lengths_.size() / 2); }
  std::int64_t b(int l) const { return lengths_.at(2 * (l - 1)); }
  std::int64_t a(int l) const { return lengths_.at(2 * (l - 1) + 1); }
  /// Σ_{i<=l} (a_i + b_i)
  std::int64_t pair_end(int l) const;
  std::int64_t b_end(int l) const { return pair_end(l - 1) + b(l); }
  std::int64_t horizon() const { return pair_end(pairs()); }
  const std::vector<std::int64_t>& lengths() const { return lengths_; }
  const std::vector<std::int64_t>& block_ends() const { return omega_.block_ends(); }

  const WeightSequence& omega() const { return omega_; }
  const WeightSequence& sigma() const { return sigma_; }

  /// log2(ω_1⋯ω_n), P(0) = 0
  std::int64_t log2_prefix(std::int64_t n) const;

  /// ℕ ∩ [A_l^1, A_l^2] and ℕ ∩ [B_l^1, B_l^2]; empty when lo > hi.
  Interval a_set(int l) const;
  Interval b_set(int l) const;

  /// Block runs [start, end] up to the horizon; P is monotone on each.
  std::vector<Interval> runs() const;

  struct BlockBound {
    int l = 0;
    Interval A, B;
    bool a_empty = true, b_empty = true;
    std::int64_t max_P_on_A = 0, min_P_on_B = 0;
    bool holds = false;  // P < -l on A_l and P > l on B_l
  };
  BlockBound block_bound(int l) const;
  /// Smallest l from which every block bound up to pairs() holds.
  std::optional<int> scan_n0() const;

 private:
  std::vector<std::int64_t> lengths_;
  WeightSequence omega_, sigma_;
};

/// Exact level sets {k : c·2^{±P(k)} ...} for the orbit of e_1 under F_ω (sign +1) and F_σ
/// (sign -1); s_j(k) = |c|·2^{sign_j·P(k)}.
LevelSets block_level_sets(const BlockWeightModel& m, const std::vector<int>& signs, double c,
                           const ClassifyOptions& opts);
ClauseSets block_clause_sets(const BlockWeightModel& m, const std::vector<int>& signs, double c,
                             double sigma, double eps);

/**
 * Clause configuration with N = 2 whose upper and lower families sit at the given
 * combinator levels (1 = ∪ only, 2 = ∃, 3 = ∀, 4 = ∩), built on a four-part full density
 * partition: upper sets live in parts 0/1, lower sets in parts 2/3.
 */
struct LevelConfiguration {
  int upper_level = 4, lower_level = 4;
  std::vector<IndexSet> parts;
  ClauseSets sets;
  DensityRule rule;
  std::int64_t horizon = 0;
};
LevelConfiguration level_configuration(int upper_level, int lower_level, int blocks = 7);

/// Conditions implied by the levels: i holds iff both of its levels are <= the given ones.
bool level_pattern_holds(int condition, int upper_level, int lower_level);

}  // namespace ddc
