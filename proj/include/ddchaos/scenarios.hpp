#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ddchaos/chaos.hpp"
#include "ddchaos/criteria.hpp"
#include "ddchaos/mlo.hpp"

namespace ddc {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct RunOptions {
  std::optional<std::int64_t> horizon;  // trace length K
  std::optional<double> delta, sigma, eps;
  std::uint64_t seed = kDefaultSeed;
};

/// An expected boolean and what the run produced.
struct Claim {
  std::string name;
  bool expected = true;
  bool actual = false;
  std::string note;
  bool matches() const { return expected == actual; }
};

struct TraceExport {
  TraceMatrix trace;
  double sigma = 1, eps = 0.1;
  DensityRule rule;
};

struct ScenarioResult {
  Json parameters = Json::object();
  Json results = Json::object();
  std::vector<Claim> claims;
  std::optional<TraceExport> trace;

  void claim(std::string name, bool expected, bool actual, std::string note = {});
  bool ok() const;
};

struct Scenario {
  std::string name;
  std::string summary;
  std::string details;  // parameters and anchors for `describe`
  std::function<ScenarioResult(const RunOptions&)> run;
};

const std::vector<Scenario>& scenario_registry();
const Scenario* find_scenario(const std::string& name);

/// Full JSON report of a run: scenario, seed, parameters, results, claims, status.
Json scenario_report(const Scenario& s, const RunOptions& opts, const ScenarioResult& r);

/// 𝒜_{j,k}x = D_k x + W: D_k the identity for k in `gate`, 0 otherwise; W a finite span.
/// Purely multivalued, and a single min-norm selection already separates the two regimes.
class GatedPerturbationFamily : public MloFamily {
 public:
  GatedPerturbationFamily(int n, IndexSet gate, IndexSet w)
      : n_(n), gate_(std::move(gate)), w_(std::move(w)) {}
  int size() const override { return n_; }
  AffineCoset apply(int j, std::int64_t k, const Element& x) const override;
  std::string describe() const override;

 private:
  int n_;
  IndexSet gate_, w_;
};

/// The two-part block partition used by totan/totanr: parts of full_density_partition(2, 2, H)
/// with H = block_partition_horizon(2, blocks).
struct TwoPartPartition {
  IndexSet A, B;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> block_ends;
};
TwoPartPartition two_part_partition(int blocks = 4);

/// Gallery trace: s_j(k) = j+k on U_j, 0 on L_j, 0.75 elsewhere (one coordinate).
TraceMatrix level_trace(const ClauseSets& sets, std::int64_t K,
                        std::vector<std::int64_t> checkpoints);

}  // namespace ddc
