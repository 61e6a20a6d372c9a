#include <set>
#include <sstream>

#include "doctest.h"
#include "ddchaos/errors.hpp"
#include "ddchaos/report.hpp"
#include "ddchaos/scenarios.hpp"

using namespace ddc;

TEST_SUITE("scenarios") {
  TEST_CASE("registry names are unique and cover the catalogue") {
    std::set<std::string> names;
    for (auto& s : scenario_registry()) {
      CHECK(names.insert(s.name).second);
      CHECK_FALSE(s.summary.empty());
    }
    CHECK(names.size() >= 18);
    for (const char* n : {"totan", "totanr", "example-2", "example-12", "gos", "qwer", "sunce",
                          "bruk", "primerinjo", "primena-shifts", "da-se-ohladi", "jebi-ga-hak",
                          "guerrero", "tuple-profo", "qwea"})
      CHECK_MESSAGE(find_scenario(n) != nullptr, n);
    CHECK(find_scenario("nope") == nullptr);
  }

  TEST_CASE("every scenario matches its claims with default options") {
    for (auto& s : scenario_registry()) {
      ScenarioResult r = s.run(RunOptions{});
      CHECK_FALSE(r.claims.empty());
      for (auto& c : r.claims) CHECK_MESSAGE(c.matches(), s.name, ": ", c.name);
      Json rep = scenario_report(s, RunOptions{}, r);
      CHECK(rep["status"] == "ok");
      CHECK(rep["seed"] == kDefaultSeed);
    }
  }

  TEST_CASE("primena-shifts reports a divergent sum") {
    ScenarioResult r = find_scenario("primena-shifts")->run(RunOptions{});
    CHECK(r.results["summability_j1"]["verdict"] == "diverged");
  }

  TEST_CASE("trace export has N*K rows and survives a round trip") {
    ScenarioResult r = find_scenario("totanr")->run(RunOptions{});
    REQUIRE(r.trace.has_value());
    std::stringstream ss;
    write_trace_csv(ss, r.trace->trace, r.trace->sigma, r.trace->eps, r.trace->rule);
    TraceCsv back = read_trace_csv(ss);
    CHECK(back.trace.N * back.trace.K == r.trace->trace.N * r.trace->trace.K);
    auto a = clause_sets(r.trace->trace, r.trace->sigma, r.trace->eps);
    auto b = clause_sets(back.trace, back.sigma, back.eps);
    for (int c = 1; c <= 12; ++c)
      CHECK(eval_condition(condition_spec(c), a, r.trace->rule).holds ==
            eval_condition(condition_spec(c), b, back.rule).holds);
  }

  TEST_CASE("overrides are honoured and bounded") {
    RunOptions o;
    o.horizon = 2000;
    ScenarioResult r = find_scenario("totanr")->run(o);
    CHECK(r.trace->trace.K == 2000);
    o.horizon = 100'000'000;
    CHECK_THROWS_AS(find_scenario("totanr")->run(o), invalid_input);
  }

  TEST_CASE("gated perturbation: identity on the gate, zero elsewhere") {
    GatedPerturbationFamily g(1, IndexSet::progression(1, 2), IndexSet::interval(1, 1));
    auto on = g.apply(1, 3, Element(SeqVector::basis(2)));
    auto off = g.apply(1, 4, Element(SeqVector::basis(2)));
    CHECK(on.contains(Element(SeqVector::basis(2))));
    CHECK(off.contains(Element(SeqVector::basis(1) * 7.0)));
    CHECK_FALSE(off.contains(Element(SeqVector::basis(2))));
  }
}
