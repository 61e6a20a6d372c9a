#include "ddchaos/examples.hpp"

#include <cmath>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

BlockWeightModel BlockWeightModel::square_exponent(int pairs) {
  return BlockWeightModel(square_exponent_block_lengths(pairs));
}

BlockWeightModel::BlockWeightModel(std::vector<std::int64_t> lengths)
    : lengths_(std::move(lengths)),
      omega_(WeightSequence::blocks(lengths_, false)),
      sigma_(WeightSequence::blocks(lengths_, true)) {
  if (lengths_.size() < 2 || lengths_.size() % 2) throw invalid_input("block model needs b/a pairs");
}

std::int64_t BlockWeightModel::pair_end(int l) const {
  if (l <= 0) return 0;
  return omega_.block_ends().at(2 * l - 1);
}

std::int64_t BlockWeightModel::log2_prefix(std::int64_t n) const {
  return n <= 0 ? 0 : omega_.log2_product(1, n);
}

Interval BlockWeightModel::a_set(int l) const {
  std::int64_t lo = 1 + pair_end(l - 1) + b(l) + ceil_div(a(l), l) + l;
  return {lo, pair_end(l)};
}

Interval BlockWeightModel::b_set(int l) const {
  std::int64_t lo = 1 + pair_end(l - 1) + ceil_div(b(l), l) + l;
  return {lo, b(l) + pair_end(l - 1)};
}

std::vector<Interval> BlockWeightModel::runs() const {
  std::vector<Interval> out;
  std::int64_t prev = 0;
  for (std::int64_t e : omega_.block_ends()) {
    out.emplace_back(prev + 1, e);
    prev = e;
  }
  return out;
}

BlockWeightModel::BlockBound BlockWeightModel::block_bound(int l) const {
  BlockBound r;
  r.l = l;
  r.A = a_set(l);
  r.B = b_set(l);
  r.a_empty = r.A.first > r.A.second;
  r.b_empty = r.B.first > r.B.second;
  // P falls along an a-block and rises along a b-block
  if (!r.a_empty) r.max_P_on_A = log2_prefix(r.A.first);
  if (!r.b_empty) r.min_P_on_B = log2_prefix(r.B.first);
  r.holds = !r.a_empty && !r.b_empty && r.max_P_on_A < -l && r.min_P_on_B > l;
  return r;
}

std::optional<int> BlockWeightModel::scan_n0() const {
  std::optional<int> n0;
  for (int l = pairs(); l >= 1; --l) {
    if (!block_bound(l).holds) break;
    n0 = l;
  }
  return n0;
}

namespace {

// splits block runs where P changes sign so |P| is monotone on each piece
std::vector<Interval> sign_split_runs(const BlockWeightModel& m) {
  std::vector<Interval> out;
  for (auto [lo, hi] : m.runs()) {
    std::int64_t plo = m.log2_prefix(lo), phi = m.log2_prefix(hi);
    if ((plo < 0) == (phi < 0)) {
      out.emplace_back(lo, hi);
      continue;
    }
    bool rising = phi > plo;
    // first k in the run with (P >= 0) == rising
    std::int64_t l = lo, r = hi;
    while (l < r) {
      std::int64_t mid = l + (r - l) / 2;
      if ((m.log2_prefix(mid) >= 0) == rising)
        r = mid;
      else
        l = mid + 1;
    }
    if (l > lo) out.emplace_back(lo, l - 1);
    out.emplace_back(l, hi);
  }
  return out;
}

}  // namespace

LevelSets block_level_sets(const BlockWeightModel& m, const std::vector<int>& signs, double c,
                           const ClassifyOptions& opts) {
  if (c == 0) throw invalid_input("level sets need a nonzero coefficient");
  auto g = opts.schedule ? opts.schedule
                         : [](std::int64_t k) { return std::log1p(static_cast<double>(k)); };
  const double lc = std::log2(std::abs(c)), lz = std::log2(opts.tol_zero);
  const std::int64_t H = m.horizon();
  auto runs = sign_split_runs(m);
  auto lg = [&](std::int64_t k) {
    double v = g(k);
    return v > 0 ? std::log2(v) : -INFINITY;
  };
  LevelSets ls;
  for (int s : signs) {
    auto val = [&, s](std::int64_t k) { return lc + s * static_cast<double>(m.log2_prefix(k)); };
    ls.small.push_back(monotone_level_set(runs, [&](std::int64_t k) { return val(k) < lz; }, H));
    ls.large.push_back(
        monotone_level_set(runs, [&](std::int64_t k) { return val(k) >= lg(k); }, H));
  }
  ls.large_sum = monotone_level_set(
      runs,
      [&](std::int64_t k) {
        double acc = -INFINITY;
        for (int s : signs) {
          double v = lc + s * static_cast<double>(m.log2_prefix(k));
          acc = std::max(acc, v) + std::log2(1 + std::exp2(-std::abs(acc - v)));
        }
        return acc >= lg(k);
      },
      H);
  return ls;
}

ClauseSets block_clause_sets(const BlockWeightModel& m, const std::vector<int>& signs, double c,
                             double sigma, double eps) {
  if (c == 0) throw invalid_input("clause sets need a nonzero coefficient");
  const double lc = std::log2(std::abs(c)), ls = std::log2(sigma), le = std::log2(eps);
  auto runs = m.runs();
  ClauseSets out;
  for (int s : signs) {
    auto val = [&, s](std::int64_t k) { return lc + s * static_cast<double>(m.log2_prefix(k)); };
    out.upper.push_back(
        monotone_level_set(runs, [&](std::int64_t k) { return val(k) >= ls; }, m.horizon()));
    out.lower.push_back(
        monotone_level_set(runs, [&](std::int64_t k) { return val(k) < le; }, m.horizon()));
  }
  return out;
}

LevelConfiguration level_configuration(int upper_level, int lower_level, int blocks) {
  if (upper_level < 1 || upper_level > 4 || lower_level < 1 || lower_level > 4)
    throw invalid_input("levels must be in 1..4");
  LevelConfiguration c;
  c.upper_level = upper_level;
  c.lower_level = lower_level;
  c.horizon = block_partition_horizon(2, blocks);
  auto parts = full_density_partition(4, 2, c.horizon);
  for (const auto& p : parts) c.parts.push_back(p.to_set());
  IndexSet none = IndexSet().truncated(c.horizon);

  auto family = [&](int level, int first) -> std::vector<IndexSet> {
    const IndexSet& p = c.parts[first];
    switch (level) {
      case 4: return {p, p};
      case 3: return {p, c.parts[first + 1]};
      case 2: return {p, none};
      default: return bounded_density_subpartition(p, 2);
    }
  };
  c.sets.upper = family(upper_level, 0);
  c.sets.lower = family(lower_level, 2);

  c.rule.delta = 0.1;
  c.rule.window = 4;
  std::int64_t end = 0;
  for (int i = 1; i <= blocks; ++i) {
    end += std::int64_t{1} << (i * i);
    c.rule.checkpoints.push_back(end);
  }
  return c;
}

bool level_pattern_holds(int condition, int upper_level, int lower_level) {
  ConditionSpec s = condition_spec(condition);
  return combinator_level(s.upper) <= upper_level && combinator_level(s.lower) <= lower_level;
}

}  // namespace ddc
