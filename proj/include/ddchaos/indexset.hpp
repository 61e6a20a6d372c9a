#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddchaos/rational.hpp"

namespace ddc {

/**
 * Subset of ℕ = {1,2,...} given as disjoint increasing intervals, each carrying a residue
 * mask modulo a period; the last interval may be unbounded. A set with a horizon H is only
 * known on [1, H] (empirical); without a horizon the description is complete and the
 * upper density is an exact rational.
 */
class IndexSet {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kMaxPeriod = std::int64_t{1} << 22;

  struct Pattern {
    std::int64_t period = 1;
    std::vector<std::uint8_t> mask;     // mask[k mod period]
    std::vector<std::int64_t> prefix;   // prefix[r] = members among residues < r
    std::int64_t pop = 0;
    bool full() const { return pop == period; }
    /// #{0 <= k <= x : member}, x >= -1
    std::int64_t count_to(std::int64_t x) const;
  };
  using PatternPtr = std::shared_ptr<const Pattern>;

  struct Segment {
    std::int64_t lo = 1, hi = 1;  // inclusive, hi may be kUnbounded
    PatternPtr pattern;
  };

  IndexSet() = default;  // empty, exact

  static IndexSet naturals();
  static IndexSet interval(std::int64_t lo, std::int64_t hi);
  /// {k >= start : k ≡ offset (mod step)}; start defaults to offset.
  static IndexSet progression(std::int64_t offset, std::int64_t step,
                              std::optional<std::int64_t> start = std::nullopt);
  static IndexSet finite(const std::set<std::int64_t>& elems);
  /// bits[k-1] gives membership of k ∈ [1, bits.size()].
  static IndexSet from_bitmap(const std::vector<bool>& bits,
                              std::optional<std::int64_t> horizon = std::nullopt);
  static IndexSet from_intervals(std::vector<std::pair<std::int64_t, std::int64_t>> intervals,
                                 std::optional<std::int64_t> horizon = std::nullopt);
  static IndexSet from_segments(std::vector<Segment> segments,
                                std::optional<std::int64_t> horizon = std::nullopt);
  static PatternPtr make_pattern(std::vector<std::uint8_t> mask);
  static PatternPtr full_pattern();

  bool contains(std::int64_t k) const;
  /// card(S ∩ [1, n])
  std::int64_t count_upto(std::int64_t n) const;
  bool empty() const { return segments_.empty(); }
  bool is_exact() const { return !horizon_; }
  bool is_finite() const;
  std::optional<std::int64_t> horizon() const { return horizon_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<bool> bitmap(std::int64_t n) const;
  /// Exact upper density; throws for horizon-bounded sets.
  Rational exact_density() const;

  /// Restrict knowledge to [1, h].
  IndexSet truncated(std::int64_t h) const;
  /// ℕ \ S (within the horizon, if any).
  IndexSet complement() const;

  IndexSet operator|(const IndexSet& o) const;
  IndexSet operator&(const IndexSet& o) const;
  IndexSet operator-(const IndexSet& o) const;
  /// Same membership and horizon.
  bool operator==(const IndexSet& o) const;

  std::string describe(std::size_t max_segments = 8) const;

 private:
  void normalize();
  static IndexSet combine(const IndexSet& a, const IndexSet& b, int op);

  std::vector<Segment> segments_;
  std::vector<std::int64_t> cum_;  // cum_[i] = members in segments before i
  std::optional<std::int64_t> horizon_;
};

/// Literal form: union of progressions and include, minus exclude.
struct ExactSet {
  struct Progression {
    std::int64_t offset = 1, step = 1;
    std::optional<std::int64_t> start;
  };
  std::vector<Progression> progressions;
  std::set<std::int64_t> include, exclude;

  /// Throws invalid_input unless progressions are pairwise disjoint and include ∩ exclude = ∅.
  void validate() const;
  IndexSet to_set() const;
};

/// Disjoint increasing blocks [l_i, r_i] known up to a horizon; checkpoints are the r_i.
struct BlockSet {
  std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> checkpoints() const;
  IndexSet to_set() const;
};

struct DensityProfile {
  std::vector<std::pair<std::int64_t, Rational>> points;
  Rational sup_ratio{0};
  std::int64_t sup_at = 0;
};

Rational exact_upper_density(const ExactSet& s);
Rational exact_upper_density(const IndexSet& s);

/// Ratios at the checkpoints plus the running maximum of card(D ∩ [1,n])/n over all n <= horizon.
DensityProfile empirical_density_profile(const std::function<bool(std::int64_t)>& member,
                                         std::int64_t horizon,
                                         const std::vector<std::int64_t>& checkpoints);
/// Ratios at the checkpoints, counted exactly; sup is taken over the checkpoints.
DensityProfile density_profile(const IndexSet& s, const std::vector<std::int64_t>& checkpoints);

struct DensityRule {
  double delta = 0.0;
  std::vector<std::int64_t> checkpoints;  // for horizon-bounded sets
  std::size_t window = 0;                 // trailing checkpoints considered; 0 means ceil(I/2)
};

struct DensityCheck {
  bool holds = false;
  bool exact = false;
  Rational exact_density{0};
  DensityProfile profile;
  Rational witness_ratio{0};
  std::int64_t witness_at = 0;
};

/// Decides "upper density = 1" for a set: exactly for exact sets (density >= 1 - δ),
/// otherwise by the best checkpoint ratio in the trailing window.
DensityCheck check_full_density(const IndexSet& s, const DensityRule& rule);

/// N pairwise disjoint block sets covering [1, horizon]; block i has length growth^{i²}
/// and belongs to part (i-1) mod N; the last block is cut at the horizon.
std::vector<BlockSet> full_density_partition(int n, std::int64_t growth, std::int64_t horizon);
/// Σ_{i<=blocks} growth^{i²}
std::int64_t block_partition_horizon(std::int64_t growth, int blocks);

/// Splits base by the residue of each element's rank (1-based) modulo N.
std::vector<IndexSet> bounded_density_subpartition(const IndexSet& base, int n);

enum class SetOp { unite, intersect, difference };
IndexSet set_algebra(const IndexSet& a, const IndexSet& b, SetOp op);

/// Q = {k : r_j·k − 1 ∈ S for every j}
IndexSet q_set(const IndexSet& s, const std::vector<std::int64_t>& r);

}  // namespace ddc
