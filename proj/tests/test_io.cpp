#include <doctest.h>

#include <string>
#include <variant>

#include <finsler/metric_io.hpp>

#include "builders.hpp"

using namespace finsler;
using namespace finsler::testing;

TEST_CASE("fixture files round trip") {
  LoadedFixture f = loadFixture(fixturePath("minkowski_cubic.json"));
  CHECK(f.name == "minkowski_cubic");
  const auto* M = std::get_if<MetricSpec>(&f.payload);
  REQUIRE(M);
  CHECK(std::holds_alternative<CubicSpec>(*M));
  CHECK(isConstantCoefficient(*M));
  CHECK(isExactConstantCoefficient(*M));

  LoadedFixture c = loadFixture(fixturePath("conformal_x1.json"));
  const auto* D = std::get_if<ConformalData>(&c.payload);
  REQUIRE(D);
  REQUIRE(c.homothetic.has_value());
  CHECK(!*c.homothetic);

  LoadedFixture i = loadFixture(fixturePath("instance_case2.json"));
  const auto* inst = std::get_if<ProofInstance>(&i.payload);
  REQUIRE(inst);
  CHECK(inst->p == 0);
  CHECK(inst->q == 1);
  REQUIRE(i.expect.has_value());
  CHECK(i.expect->outcome == "CaseII-infeasible");
  REQUIRE(i.expect->h.has_value());
  CHECK(*i.expect->h == ratFromLong(3, 16));
}

TEST_CASE("eval loading folds conformal data and refuses instances") {
  MetricSpec viaEval = loadMetricForEval(fixturePath("conformal_const.json"));
  CHECK(std::holds_alternative<CubicSpec>(viaEval));
  CHECK(throwsKind(ErrorKind::Argument,
                   [&] { (void)loadMetricForEval(fixturePath("instance_case2.json")); }));
}

TEST_CASE("malformed fixture payloads are rejected with positions") {
  SUBCASE("floating JSON literals must be written exactly") {
    bool badFloat = false;
    try {
      (void)parseFixture(R"({"kind":"cubic","n":2,"a":[["1","0"],["0","1"]],
                             "b":[0.3,"0"],"p":"1","q":"0"})",
                         "bad");
    } catch (const Error& e) {
      badFloat = e.kind() == ErrorKind::Syntax;
    }
    CHECK(badFloat);
  }

  SUBCASE("asymmetric coefficient matrices are rejected") {
    bool asym = false;
    try {
      (void)parseFixture(R"({"kind":"riemann","n":2,"a":[["1","x1"],["0","1"]]})", "bad2");
    } catch (const Error& e) {
      asym = e.kind() == ErrorKind::Syntax;
    }
    CHECK(asym);
  }
}

TEST_CASE("suite config loading") {
  SuiteConfig cfg = loadSuiteConfig(fixturePath("suite.json"));
  CHECK(cfg.metricFiles.size() == 14);
  CHECK(cfg.samples == 64);
  CHECK(cfg.seedExplicit);
  CHECK(cfg.seed == 20260816);
  CHECK(cfg.checks.empty());
  CHECK(cfg.format == "json");
}
