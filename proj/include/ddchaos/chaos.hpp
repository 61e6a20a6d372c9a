#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddchaos/indexset.hpp"
#include "ddchaos/mlo.hpp"
#include "ddchaos/operators.hpp"
#include "ddchaos/space.hpp"

namespace ddc {

enum class Combinator { ALL_intersect, ANY_union, FORALL_each, EXISTS_one };

/// Strength order used by the implication lattice: ∪ < ∃ < ∀ < ∩.
int combinator_level(Combinator c);
std::string combinator_symbol(Combinator c);

struct ConditionSpec {
  int index = 1;
  Combinator upper = Combinator::ALL_intersect;  // the σ-clause
  Combinator lower = Combinator::ALL_intersect;  // the ε-clause
};

ConditionSpec condition_spec(int i);

enum class SelectionMode { single_valued, mlo_min, mlo_max, mlo_dual };
std::string to_string(SelectionMode m);

enum class MetricKind { norm, frechet };

/**
 * Natural logs of the values s[j][k] (-inf for 0), j = 1..N, k = 1..K. In mlo_dual mode
 * `log_s` holds the min selection and `log_s_max` the max selection.
 */
struct TraceMatrix {
  int N = 0;
  std::int64_t K = 0;
  std::vector<std::vector<double>> log_s;
  std::vector<std::vector<double>> log_s_max;
  std::vector<std::int64_t> checkpoints;
  SelectionMode mode = SelectionMode::single_valued;

  double log_at(int j, std::int64_t k) const { return log_s[j - 1][k - 1]; }
  double value(int j, std::int64_t k) const;
  /// Single-selection view: the min matrix, or the max matrix when `use_max`.
  TraceMatrix policy(bool use_max) const;
};

/// Distances between orbits of x and y: s[j][k] = d(T_{j,k}x, T_{j,k}y).
TraceMatrix pair_trace(const OperatorFamily& family, const SeqVector& x, const SeqVector& y,
                       const SeminormSpace& space, MetricKind metric, std::int64_t K,
                       std::vector<std::int64_t> checkpoints, double tol = 1e-12);
/// MLO version; the difference coset 𝒜_{j,k}(x − y) is scanned for its min/max distance.
TraceMatrix pair_trace(const MloFamily& family, const Element& x, const Element& y,
                       const SeminormSpace& space, MetricKind metric, std::int64_t K,
                       std::vector<std::int64_t> checkpoints, SelectionMode mode,
                       double cap = 1e12, double tol = 1e-12);
/// Orbit seminorms s[j][k] = p_m(T_{j,k}x).
TraceMatrix orbit_trace(const OperatorFamily& family, const SeqVector& x,
                        const SeminormSpace& space, int m, std::int64_t K,
                        std::vector<std::int64_t> checkpoints);
TraceMatrix orbit_trace(const MloFamily& family, const Element& x, const SeminormSpace& space,
                        int m, std::int64_t K, std::vector<std::int64_t> checkpoints,
                        SelectionMode mode, double cap = 1e12);

/// U_j = {k : s ≥ σ}, L_j = {k : s < ε}, each known on [1, K].
struct ClauseSets {
  std::vector<IndexSet> upper;
  std::vector<IndexSet> lower;
};

ClauseSets clause_sets(const TraceMatrix& t, double sigma, double eps);

struct ClauseVerdict {
  Combinator combinator = Combinator::ALL_intersect;
  bool holds = false;
  std::vector<DensityCheck> checks;  // one per examined set
  int witness_j = 0;                 // EXISTS_one: first passing j
};

/// Applies a combinator to per-j sets.
ClauseVerdict eval_clause(Combinator c, const std::vector<IndexSet>& sets,
                          const DensityRule& rule);

struct Verdict {
  int condition = 1;
  bool holds = false;
  ClauseVerdict upper, lower;
  double delta = 0;
};

Verdict eval_condition(const ConditionSpec& spec, const ClauseSets& sets,
                       const DensityRule& rule);

// ---- vector classification ---------------------------------------------------------

struct ClassifyOptions {
  double tol_zero = 1e-6;
  /// growth schedule g(k) for "→ ∞"; log(1+k) when empty
  std::function<double(std::int64_t)> schedule;
  DensityRule rule;
};

/// Per-j smallness sets, per-j largeness sets and the largeness set of Σ_j.
struct LevelSets {
  std::vector<IndexSet> small;
  std::vector<IndexSet> large;
  IndexSet large_sum;
};

LevelSets level_sets(const TraceMatrix& orbit, const ClassifyOptions& opts);

/// Union of the sub-intervals of `runs` where `pred` holds; pred switches at most once per run.
IndexSet monotone_level_set(const std::vector<std::pair<std::int64_t, std::int64_t>>& runs,
                            const std::function<bool(std::int64_t)>& pred,
                            std::optional<std::int64_t> horizon);

struct TypeVerdict {
  int type = 1;
  bool holds = false;
  ClauseVerdict clause;
};

/// Types 1-4: ∩, ∪, each j, some j of the smallness sets.
TypeVerdict classify_near_zero(const LevelSets& ls, int type, const DensityRule& rule);
/// Types 1-4: min_j ≥ g, Σ_j ≥ g, each j, some j.
TypeVerdict classify_unbounded(const LevelSets& ls, int type, const DensityRule& rule);
TypeVerdict classify_near_zero(const TraceMatrix& orbit, int type, const ClassifyOptions& opts);
TypeVerdict classify_unbounded(const TraceMatrix& orbit, int type, const ClassifyOptions& opts);

/// (near-zero type, unbounded type) read off the combinators of condition i.
std::pair<int, int> irregular_types(int i);
/// Second reading for condition 7, (near-zero 1, unbounded 2); nullopt elsewhere.
std::optional<std::pair<int, int>> irregular_types_alternative(int i);

struct IrregularVerdict {
  int condition = 1;
  int near_type = 1, unbounded_type = 1;
  bool holds = false;
  TypeVerdict near_zero, unbounded;
  std::optional<std::pair<int, int>> alt_types;
  std::optional<bool> alt_holds;
  bool weak_only = false;  // MLO: passes only with different selections per clause
};

IrregularVerdict classify_irregular(const LevelSets& ls, int i, const DensityRule& rule);
/// For mlo_dual traces, holds needs one selection policy passing both clauses.
IrregularVerdict classify_irregular(const TraceMatrix& orbit, int i, const ClassifyOptions& opts);
IrregularVerdict classify_irregular(const OperatorFamily& family, const SeqVector& x, int i,
                                    const SeminormSpace& space, int m, std::int64_t K,
                                    const ClassifyOptions& opts);

// ---- scrambled sets -------------------------------------------------------------------

struct StrictWeakVerdict {
  bool strict = false;  // one selection policy passes both clauses
  bool weak = false;    // max selection for σ, min selection for ε
  Verdict min_policy, max_policy, dual;
};

/// Condition i on an mlo_dual trace under both readings.
StrictWeakVerdict eval_condition_mlo(const ConditionSpec& spec, const TraceMatrix& dual,
                                     double sigma, double eps, const DensityRule& rule);

struct PairVerdict {
  std::size_t a = 0, b = 0;
  std::vector<double> eps;
  std::vector<Verdict> verdicts;  // one per ε
  bool holds = false;
};

struct ScrambledReport {
  int condition = 1;
  bool holds = false;
  std::vector<PairVerdict> pairs;
};

ScrambledReport verify_scrambled_set(const std::vector<SeqVector>& S, const OperatorFamily& family,
                                     const SeminormSpace& space, MetricKind metric, int i,
                                     double sigma, const std::vector<double>& eps_list,
                                     std::int64_t K, const std::vector<std::int64_t>& checkpoints,
                                     const DensityRule& rule);

// ---- lattice ----------------------------------------------------------------------------

using Relation = std::array<std::array<bool, 13>, 13>;  // 1-based

/// The stated implications between conditions 1..12, reflexive.
const Relation& implication_lattice();
Relation transitive_closure(const Relation& r);
/// i1 → i2 iff both combinator levels of i2 are at most those of i1.
bool level_implies(int i1, int i2);

struct LatticeReport {
  std::array<bool, 13> verdicts{};
  std::vector<std::pair<int, int>> violations;
};

LatticeReport lattice_consistency(const ClauseSets& sets, const DensityRule& rule);

struct DiagonalReport {
  bool condition9 = false;
  bool diagonal_dc = false;
  bool upper_identity = false;  // {max_j s ≥ σ} = ∪_j U_j
  bool lower_identity = false;  // {max_j s < ε} = ∩_j L_j
};

DiagonalReport diagonal_equivalence(const TraceMatrix& t, double sigma, double eps,
                                    const DensityRule& rule);

}  // namespace ddc
