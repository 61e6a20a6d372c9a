#include "ddchaos/indexset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ddchaos/errors.hpp"

namespace ddc {

namespace {

using i128 = __int128;

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  i128 r = static_cast<i128>(a) * b;
  return r > IndexSet::kUnbounded ? IndexSet::kUnbounded : static_cast<std::int64_t>(r);
}

std::int64_t sat_pow(std::int64_t base, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    r = sat_mul(r, base);
    if (r == IndexSet::kUnbounded) break;
  }
  return r;
}

bool same_pattern(const IndexSet::PatternPtr& a, const IndexSet::PatternPtr& b) {
  return a == b || (a->period == b->period && a->mask == b->mask);
}

std::int64_t segment_count(const IndexSet::Segment& s, std::int64_t a, std::int64_t b) {
  if (b < a) return 0;
  return s.pattern->count_to(b) - s.pattern->count_to(a - 1);
}

bool rational_greater(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.numerator()) * b.denominator() >
         static_cast<i128>(b.numerator()) * a.denominator();
}

bool meets_threshold(const Rational& r, double delta) {
  if (delta <= 0) return r == Rational(1);
  return to_double(r) >= 1.0 - delta;
}

}  // namespace

// ---- Pattern ------------------------------------------------------------------

std::int64_t IndexSet::Pattern::count_to(std::int64_t x) const {
  if (x < 0) return 0;
  if (x == kUnbounded) throw invalid_input("count over an unbounded range");
  std::int64_t n = x + 1;
  return (n / period) * pop + prefix[n % period];
}

IndexSet::PatternPtr IndexSet::full_pattern() {
  static const PatternPtr full = [] {
    auto p = std::make_shared<Pattern>();
    p->period = 1;
    p->mask = {1};
    p->prefix = {0, 1};
    p->pop = 1;
    return PatternPtr(p);
  }();
  return full;
}

IndexSet::PatternPtr IndexSet::make_pattern(std::vector<std::uint8_t> mask) {
  if (mask.empty()) throw invalid_input("pattern mask must be nonempty");
  std::int64_t L = static_cast<std::int64_t>(mask.size());
  if (L > kMaxPeriod) throw invalid_input("pattern period exceeds the supported maximum");
  for (auto& m : mask) m = m ? 1 : 0;
  std::int64_t period = L;
  for (std::int64_t d = 1; d < L; ++d) {
    if (L % d) continue;
    bool ok = true;
    for (std::int64_t r = d; r < L && ok; ++r) ok = mask[r] == mask[r % d];
    if (ok) {
      period = d;
      break;
    }
  }
  mask.resize(period);
  if (period == 1 && mask[0]) return full_pattern();
  auto p = std::make_shared<Pattern>();
  p->period = period;
  p->prefix.assign(period + 1, 0);
  for (std::int64_t r = 0; r < period; ++r) p->prefix[r + 1] = p->prefix[r] + mask[r];
  p->pop = p->prefix[period];
  p->mask = std::move(mask);
  return p;
}

// ---- IndexSet construction ----------------------------------------------------

void IndexSet::normalize() {
  std::vector<Segment> out;
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  for (auto s : segments_) {
    s.lo = std::max<std::int64_t>(s.lo, 1);
    if (horizon_) s.hi = std::min(s.hi, *horizon_);
    if (s.lo > s.hi || s.pattern->pop == 0) continue;
    if (s.hi != kUnbounded && segment_count(s, s.lo, s.hi) == 0) continue;
    if (!out.empty()) {
      Segment& prev = out.back();
      if (prev.hi == kUnbounded || prev.hi >= s.lo)
        throw invalid_input("IndexSet: overlapping segments");
      if (prev.hi + 1 == s.lo && same_pattern(prev.pattern, s.pattern)) {
        prev.hi = s.hi;
        continue;
      }
    }
    out.push_back(std::move(s));
  }
  segments_ = std::move(out);
  cum_.assign(segments_.size() + 1, 0);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    cum_[i + 1] = cum_[i] + (s.hi == kUnbounded ? 0 : segment_count(s, s.lo, s.hi));
  }
}

IndexSet IndexSet::from_segments(std::vector<Segment> segments,
                                 std::optional<std::int64_t> horizon) {
  if (horizon && *horizon < 0) throw invalid_input("negative horizon");
  IndexSet s;
  s.segments_ = std::move(segments);
  s.horizon_ = horizon;
  s.normalize();
  return s;
}

IndexSet IndexSet::naturals() { return from_segments({{1, kUnbounded, full_pattern()}}); }

IndexSet IndexSet::interval(std::int64_t lo, std::int64_t hi) {
  return from_segments({{lo, hi, full_pattern()}});
}

IndexSet IndexSet::progression(std::int64_t offset, std::int64_t step,
                               std::optional<std::int64_t> start) {
  if (offset < 1 || step < 1) throw invalid_input("progression needs offset >= 1 and step >= 1");
  std::vector<std::uint8_t> mask(step, 0);
  mask[offset % step] = 1;
  std::int64_t lo = std::max(offset, start.value_or(offset));
  return from_segments({{lo, kUnbounded, make_pattern(std::move(mask))}});
}

IndexSet IndexSet::finite(const std::set<std::int64_t>& elems) {
  std::vector<std::pair<std::int64_t, std::int64_t>> iv;
  for (std::int64_t k : elems) {
    if (k < 1) throw invalid_input("finite set element outside ℕ");
    if (!iv.empty() && iv.back().second + 1 == k)
      iv.back().second = k;
    else
      iv.emplace_back(k, k);
  }
  return from_intervals(std::move(iv));
}

IndexSet IndexSet::from_bitmap(const std::vector<bool>& bits,
                               std::optional<std::int64_t> horizon) {
  std::vector<Segment> segs;
  std::int64_t n = static_cast<std::int64_t>(bits.size());
  for (std::int64_t k = 1; k <= n;) {
    if (!bits[k - 1]) {
      ++k;
      continue;
    }
    std::int64_t lo = k;
    while (k <= n && bits[k - 1]) ++k;
    segs.push_back({lo, k - 1, full_pattern()});
  }
  return from_segments(std::move(segs), horizon);
}

IndexSet IndexSet::from_intervals(std::vector<std::pair<std::int64_t, std::int64_t>> intervals,
                                  std::optional<std::int64_t> horizon) {
  std::vector<Segment> segs;
  segs.reserve(intervals.size());
  for (auto [lo, hi] : intervals) {
    if (lo > hi) throw invalid_input("interval with lo > hi");
    segs.push_back({lo, hi, full_pattern()});
  }
  return from_segments(std::move(segs), horizon);
}

// ---- queries ------------------------------------------------------------------

bool IndexSet::contains(std::int64_t k) const {
  if (k < 1 || (horizon_ && k > *horizon_)) return false;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), k,
                             [](std::int64_t v, const Segment& s) { return v < s.lo; });
  if (it == segments_.begin()) return false;
  --it;
  if (k > it->hi) return false;
  return it->pattern->mask[k % it->pattern->period] != 0;
}

std::int64_t IndexSet::count_upto(std::int64_t n) const {
  if (n < 1) return 0;
  if (horizon_) n = std::min(n, *horizon_);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), n,
                             [](std::int64_t v, const Segment& s) { return v < s.lo; });
  if (it == segments_.begin()) return 0;
  std::size_t idx = static_cast<std::size_t>(it - segments_.begin()) - 1;
  const Segment& s = segments_[idx];
  return cum_[idx] + segment_count(s, s.lo, std::min(s.hi, n));
}

bool IndexSet::is_finite() const {
  return segments_.empty() || segments_.back().hi != kUnbounded;
}

std::vector<bool> IndexSet::bitmap(std::int64_t n) const {
  std::vector<bool> bits(std::max<std::int64_t>(n, 0), false);
  for (const auto& s : segments_) {
    std::int64_t hi = std::min(s.hi, n);
    for (std::int64_t k = s.lo; k <= hi; ++k)
      if (s.pattern->mask[k % s.pattern->period]) bits[k - 1] = true;
  }
  return bits;
}

Rational IndexSet::exact_density() const {
  if (horizon_) throw invalid_input("exact density requested for a horizon-bounded set");
  if (is_finite()) return Rational(0);
  const auto& p = *segments_.back().pattern;
  return Rational(p.pop, p.period);
}

IndexSet IndexSet::truncated(std::int64_t h) const {
  IndexSet r = *this;
  r.horizon_ = horizon_ ? std::min(*horizon_, h) : h;
  r.normalize();
  return r;
}

IndexSet IndexSet::complement() const { return naturals() - *this; }

// ---- algebra ------------------------------------------------------------------

IndexSet IndexSet::combine(const IndexSet& a, const IndexSet& b, int op) {
  std::optional<std::int64_t> horizon;
  if (a.horizon_ && b.horizon_)
    horizon = std::min(*a.horizon_, *b.horizon_);
  else if (a.horizon_)
    horizon = a.horizon_;
  else
    horizon = b.horizon_;

  std::vector<std::int64_t> pts{1};
  for (const auto* set : {&a, &b})
    for (const auto& s : set->segments_) {
      pts.push_back(s.lo);
      if (s.hi != kUnbounded) pts.push_back(s.hi + 1);
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<Segment> out;
  std::size_t ia = 0, ib = 0;
  auto covering = [](const std::vector<Segment>& segs, std::size_t& i,
                     std::int64_t at) -> const Segment* {
    while (i < segs.size() && segs[i].hi < at) ++i;
    if (i < segs.size() && segs[i].lo <= at) return &segs[i];
    return nullptr;
  };
  for (std::size_t t = 0; t < pts.size(); ++t) {
    std::int64_t lo = pts[t];
    std::int64_t hi = t + 1 < pts.size() ? pts[t + 1] - 1 : kUnbounded;
    if (horizon && lo > *horizon) break;
    const Segment* sa = covering(a.segments_, ia, lo);
    const Segment* sb = covering(b.segments_, ib, lo);
    PatternPtr pa = sa ? sa->pattern : nullptr, pb = sb ? sb->pattern : nullptr;
    PatternPtr res;
    if (op == 0) {  // union
      if (!pa && !pb) continue;
      if (!pa || (pb && pb->full())) res = pb;
      else if (!pb || pa->full()) res = pa;
    } else if (op == 1) {  // intersection
      if (!pa || !pb) continue;
      if (pa->full()) res = pb;
      else if (pb->full()) res = pa;
    } else {  // difference
      if (!pa || (pb && pb->full())) continue;
      if (!pb) res = pa;
    }
    if (!res) {
      std::int64_t la = pa ? pa->period : 1, lb = pb ? pb->period : 1;
      std::int64_t L = std::lcm(la, lb);
      if (L > kMaxPeriod) throw invalid_input("set algebra: combined period too large");
      std::vector<std::uint8_t> mask(L);
      for (std::int64_t r = 0; r < L; ++r) {
        bool x = pa && pa->mask[r % la], y = pb && pb->mask[r % lb];
        mask[r] = op == 0 ? (x || y) : op == 1 ? (x && y) : (x && !y);
      }
      res = make_pattern(std::move(mask));
    }
    out.push_back({lo, hi, res});
  }
  return from_segments(std::move(out), horizon);
}

IndexSet IndexSet::operator|(const IndexSet& o) const { return combine(*this, o, 0); }
IndexSet IndexSet::operator&(const IndexSet& o) const { return combine(*this, o, 1); }
IndexSet IndexSet::operator-(const IndexSet& o) const { return combine(*this, o, 2); }

bool IndexSet::operator==(const IndexSet& o) const {
  return horizon_ == o.horizon_ && (*this - o).empty() && (o - *this).empty();
}

std::string IndexSet::describe(std::size_t max_segments) const {
  std::ostringstream os;
  os << "{";
  std::size_t shown = 0;
  for (const auto& s : segments_) {
    if (shown++ == max_segments) {
      os << " ...(" << segments_.size() << " segments)";
      break;
    }
    if (shown > 1) os << ", ";
    os << "[" << s.lo << ",";
    if (s.hi == kUnbounded)
      os << "inf";
    else
      os << s.hi;
    os << "]";
    if (!s.pattern->full()) {
      os << " mod " << s.pattern->period << " {";
      bool first = true;
      for (std::int64_t r = 0; r < s.pattern->period; ++r)
        if (s.pattern->mask[r]) {
          os << (first ? "" : ",") << r;
          first = false;
        }
      os << "}";
    }
  }
  os << "}";
  if (horizon_) os << " up to " << *horizon_;
  return os.str();
}

// ---- literals -----------------------------------------------------------------

void ExactSet::validate() const {
  for (const auto& p : progressions)
    if (p.offset < 1 || p.step < 1)
      throw invalid_input("progression needs offset >= 1 and step >= 1");
  for (std::size_t i = 0; i < progressions.size(); ++i)
    for (std::size_t j = i + 1; j < progressions.size(); ++j) {
      const auto& a = progressions[i];
      const auto& b = progressions[j];
      std::int64_t g = std::gcd(a.step, b.step);
      if ((a.offset - b.offset) % g == 0) throw invalid_input("ExactSet: overlapping progressions");
    }
  for (std::int64_t k : include)
    if (exclude.count(k)) throw invalid_input("ExactSet: include and exclude intersect");
}

IndexSet ExactSet::to_set() const {
  validate();
  IndexSet s;
  for (const auto& p : progressions) s = s | IndexSet::progression(p.offset, p.step, p.start);
  return (s | IndexSet::finite(include)) - IndexSet::finite(exclude);
}

std::vector<std::int64_t> BlockSet::checkpoints() const {
  std::vector<std::int64_t> cps;
  for (const auto& b : blocks) cps.push_back(b.second);
  return cps;
}

IndexSet BlockSet::to_set() const { return IndexSet::from_intervals(blocks, horizon); }

// ---- densities ----------------------------------------------------------------

Rational exact_upper_density(const ExactSet& s) {
  s.validate();
  Rational d(0);
  for (const auto& p : s.progressions) d += Rational(1, p.step);
  return d;
}

Rational exact_upper_density(const IndexSet& s) { return s.exact_density(); }

DensityProfile empirical_density_profile(const std::function<bool(std::int64_t)>& member,
                                         std::int64_t horizon,
                                         const std::vector<std::int64_t>& checkpoints) {
  if (checkpoints.empty()) throw invalid_input("empty checkpoint list");
  for (std::int64_t c : checkpoints)
    if (c < 1 || c > horizon) throw invalid_input("checkpoint outside [1, horizon]");
  std::vector<std::int64_t> sorted = checkpoints;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  DensityProfile prof;
  std::int64_t count = 0, best_c = -1, best_n = 1;
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    if (member(n)) ++count;
    if (best_c < 0 || static_cast<i128>(count) * best_n > static_cast<i128>(best_c) * n) {
      best_c = count;
      best_n = n;
    }
    if (next < sorted.size() && sorted[next] == n) {
      prof.points.emplace_back(n, Rational(count, n));
      ++next;
    }
  }
  prof.sup_ratio = Rational(best_c, best_n);
  prof.sup_at = best_n;
  return prof;
}

DensityProfile density_profile(const IndexSet& s, const std::vector<std::int64_t>& checkpoints) {
  if (checkpoints.empty()) throw invalid_input("empty checkpoint list");
  std::vector<std::int64_t> sorted = checkpoints;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  DensityProfile prof;
  for (std::int64_t c : sorted) {
    if (c < 1 || (s.horizon() && c > *s.horizon()))
      throw invalid_input("checkpoint outside the known range of the set");
    Rational r(s.count_upto(c), c);
    prof.points.emplace_back(c, r);
    if (prof.sup_at == 0 || rational_greater(r, prof.sup_ratio)) {
      prof.sup_ratio = r;
      prof.sup_at = c;
    }
  }
  return prof;
}

DensityCheck check_full_density(const IndexSet& s, const DensityRule& rule) {
  DensityCheck out;
  if (s.is_exact()) {
    out.exact = true;
    out.exact_density = s.exact_density();
    out.witness_ratio = out.exact_density;
    out.holds = meets_threshold(out.exact_density, rule.delta);
    return out;
  }
  std::vector<std::int64_t> cps;
  for (std::int64_t c : rule.checkpoints)
    if (c >= 1 && c <= *s.horizon()) cps.push_back(c);
  if (cps.empty()) throw invalid_input("no checkpoint inside the horizon of the set");
  out.profile = density_profile(s, cps);
  const auto& pts = out.profile.points;
  std::size_t w = rule.window ? std::min(rule.window, pts.size()) : (pts.size() + 1) / 2;
  for (std::size_t i = pts.size() - w; i < pts.size(); ++i)
    if (out.witness_at == 0 || rational_greater(pts[i].second, out.witness_ratio)) {
      out.witness_ratio = pts[i].second;
      out.witness_at = pts[i].first;
    }
  out.holds = meets_threshold(out.witness_ratio, rule.delta);
  return out;
}

// ---- constructions ------------------------------------------------------------

std::vector<BlockSet> full_density_partition(int n, std::int64_t growth, std::int64_t horizon) {
  if (n < 1) throw invalid_input("partition needs N >= 1");
  if (growth < 2) throw invalid_input("partition growth must be >= 2");
  if (horizon < growth) throw invalid_input("horizon smaller than the first block");
  std::vector<BlockSet> parts(n);
  for (auto& p : parts) p.horizon = horizon;
  std::int64_t pos = 1;
  for (std::int64_t i = 1; pos <= horizon; ++i) {
    std::int64_t len = sat_pow(growth, i * i);
    std::int64_t end = len >= horizon - pos + 1 ? horizon : pos + len - 1;
    parts[(i - 1) % n].blocks.emplace_back(pos, end);
    pos = end + 1;
  }
  return parts;
}

std::int64_t block_partition_horizon(std::int64_t growth, int blocks) {
  std::int64_t total = 0;
  for (std::int64_t i = 1; i <= blocks; ++i) {
    std::int64_t len = sat_pow(growth, i * i);
    if (len == IndexSet::kUnbounded || total > IndexSet::kUnbounded - len)
      throw invalid_input("block partition horizon overflows");
    total += len;
  }
  return total;
}

std::vector<IndexSet> bounded_density_subpartition(const IndexSet& base, int n) {
  if (n < 1) throw invalid_input("subpartition needs N >= 1");
  std::vector<std::vector<IndexSet::Segment>> parts(n);
  for (const auto& s : base.segments()) {
    std::int64_t L = s.pattern->period * n;
    if (L > IndexSet::kMaxPeriod) throw invalid_input("subpartition period too large");
    std::vector<std::vector<std::uint8_t>> masks(n, std::vector<std::uint8_t>(L, 0));
    std::int64_t rank = base.count_upto(s.lo - 1);
    std::int64_t stop = s.hi == IndexSet::kUnbounded ? s.lo + L - 1 : std::min(s.hi, s.lo + L - 1);
    for (std::int64_t k = s.lo; k <= stop; ++k) {
      if (!s.pattern->mask[k % s.pattern->period]) continue;
      ++rank;
      masks[(rank - 1) % n][k % L] = 1;
    }
    for (int j = 0; j < n; ++j) {
      if (std::none_of(masks[j].begin(), masks[j].end(), [](auto b) { return b != 0; })) continue;
      parts[j].push_back({s.lo, s.hi, IndexSet::make_pattern(std::move(masks[j]))});
    }
  }
  std::vector<IndexSet> out;
  for (auto& p : parts) out.push_back(IndexSet::from_segments(std::move(p), base.horizon()));
  return out;
}

IndexSet set_algebra(const IndexSet& a, const IndexSet& b, SetOp op) {
  switch (op) {
    case SetOp::unite: return a | b;
    case SetOp::intersect: return a & b;
    case SetOp::difference: return a - b;
  }
  return a;
}

IndexSet q_set(const IndexSet& s, const std::vector<std::int64_t>& r) {
  if (r.empty()) throw invalid_input("q_set needs at least one multiplier");
  for (std::int64_t x : r)
    if (x < 1) throw invalid_input("q_set multipliers must be >= 1");
  std::int64_t rmin = *std::min_element(r.begin(), r.end());
  std::int64_t rmax = *std::max_element(r.begin(), r.end());
  auto member = [&](std::int64_t k) {
    for (std::int64_t x : r)
      if (!s.contains(x * k - 1)) return false;
    return true;
  };
  auto scan = [&](std::int64_t upto, std::optional<std::int64_t> horizon) {
    std::vector<bool> bits(std::max<std::int64_t>(upto, 0));
    for (std::int64_t k = 1; k <= upto; ++k) bits[k - 1] = member(k);
    return IndexSet::from_bitmap(bits, horizon);
  };
  if (!s.is_exact()) {
    std::int64_t qh = (*s.horizon() + 1) / rmax;
    return scan(qh, qh);
  }
  if (s.is_finite()) {
    std::int64_t top = s.empty() ? 0 : s.segments().back().hi;
    return scan((top + 1) / rmin, std::nullopt);
  }
  const auto& tail = s.segments().back();
  std::int64_t k0 = std::max<std::int64_t>(1, (tail.lo + 1 + rmin - 1) / rmin);
  std::int64_t L = tail.pattern->period;
  std::vector<std::uint8_t> mask(L);
  for (std::int64_t k = 0; k < L; ++k) {
    bool ok = true;
    for (std::int64_t x : r) {
      std::int64_t res = ((x % L) * k - 1) % L;
      if (res < 0) res += L;
      if (!tail.pattern->mask[res]) {
        ok = false;
        break;
      }
    }
    mask[k] = ok;
  }
  IndexSet head = scan(k0 - 1, std::nullopt);
  if (std::none_of(mask.begin(), mask.end(), [](auto b) { return b != 0; })) return head;
  return head | IndexSet::from_segments({{k0, IndexSet::kUnbounded,
                                          IndexSet::make_pattern(std::move(mask))}});
}

}  // namespace ddc
