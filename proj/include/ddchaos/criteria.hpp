#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ddchaos/chaos.hpp"
#include "ddchaos/indexset.hpp"
#include "ddchaos/operators.hpp"
#include "ddchaos/space.hpp"

namespace ddc {

using Json = nlohmann::ordered_json;

struct CriterionReport {
  std::string name;
  bool passed = false;
  Json evidence = Json::object();
};

/// How a condition quantifies over j: one set for all j, the same (I_0 only), each j, some j.
enum class Quantifier { cap, cup, forall, exists };
std::string to_string(Quantifier q);

/// Smallness sets A_x for sampled x. Exact (cofinite) where the family vanishes in closed
/// form, otherwise read off an orbit trace of length K.
CriterionReport check_I0(const OperatorFamily& family, Quantifier q,
                         const std::vector<SeqVector>& samples, const SeminormSpace& space,
                         int m, std::int64_t K, double tol_zero, const DensityRule& rule);

/// card{k <= N_l : p_m(T_{j,k} y_l) > ε under q} >= N_l (1 - 1/l) for l = 1..|y|.
CriterionReport check_I_inf(const OperatorFamily& family, Quantifier q,
                            const std::vector<SeqVector>& y, double eps,
                            const std::vector<std::int64_t>& n_schedule,
                            const SeminormSpace& space, int m);

enum class SumVerdict { converged_heuristic, diverged, inconclusive };
std::string to_string(SumVerdict v);

struct SummabilityResult {
  SumVerdict verdict = SumVerdict::inconclusive;
  std::vector<double> partial_sums;  // S_k = Σ_{i<=k} v_i^{-power}
  double tail_max_increment = 0;     // over the tail window
  double geometric_ratio = 0;        // fitted on the tail
  double power_exponent = 0;         // log-log fit on the tail
};

/// Σ 1/v_k^power from log v_k (k = 1..size).
SummabilityResult summability_from_logs(const std::vector<double>& log_values, double power,
                                        std::size_t tail_window);
CriterionReport summability_test(const std::vector<double>& values, double power,
                                 std::size_t tail_window);
CriterionReport summability_test_logs(const std::vector<double>& log_values, double power,
                                      std::size_t tail_window);

std::int64_t interleave_index(int j, std::int64_t k, int n);
std::pair<int, std::int64_t> interleave_inverse(std::int64_t index, int n);

struct ChainResult {
  std::vector<std::int64_t> chain;  // c_1(n,j), ..., as far as preimages exist
  bool reachable = false;           // all k preimages exist
  double coefficient = 0;           // ∏ ω(c_s, j) over the chain
  bool ends_at_one() const { return reachable && !chain.empty() && chain.back() == 1; }
};

/// Inverts i ↦ i + a(i,j) (strictly increasing) k times starting from n.
ChainResult chain_recursion(std::int64_t n, int j, const JumpFn& a, const CoefFn& omega,
                            std::int64_t k);
/// n ∈ P_{j,k}: the chain ends at 1 and b_n ∏ ω = 1.
bool in_p_set(const ChainResult& c, double b_n, double rel_tol = 1e-12);

/// Q_g = {k <= K : ∀j, P_{j,k} ∩ S ≠ ∅}; P_{j,k} has at most the element f_j^k(1),
/// f_j(i) = i + a(i,j).
IndexSet qg_set(const IndexSet& s, int n, const JumpFn& a, const CoefFn& omega,
                const std::function<double(std::int64_t)>& b, std::int64_t K);

CriterionReport q_density_criterion(const IndexSet& s, const std::vector<std::int64_t>& r,
                                    Rational required);

struct QweaInput {
  std::vector<std::pair<std::int64_t, double>> coefficients;  // (k, c_k), k ∈ B
  IndexSet B = IndexSet::naturals();
  std::set<std::int64_t> support;                // K ⊂ ℤ
  std::vector<std::set<std::int64_t>> supports;  // K_k per coefficient (ℓ^p variant)
  std::vector<TranslationFamily::Member> members;
  std::optional<YoungFunction> phi;  // Luxemburg norm; ℓ^p with p below when empty
  double p = 2;
  std::int64_t horizon = 40;
  std::int64_t tail_from = 0;  // 0: horizon/2
  std::function<double(std::int64_t)> schedule;  // log(1+n) when empty
  double tol = 1e-12;
};

/// N_Φ(Σ c_k T_j^n χ_K) >= schedule(n) for n ∈ B on [tail_from, horizon]; rejects
/// coefficient sequences that do not look absolutely summable.
CriterionReport qwea_condition(const QweaInput& in);

Json to_json(const CriterionReport& r);

}  // namespace ddc
