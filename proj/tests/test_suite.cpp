#include <doctest.h>

#include <chrono>
#include <string>

#include <finsler/suite.hpp>

#include "builders.hpp"

using namespace finsler;
using namespace finsler::testing;

TEST_CASE("unknown check names and tolerance keys are config errors") {
  SuiteConfig cfg = loadSuiteConfig(fixturePath("suite.json"));
  SUBCASE("checks") {
    SuiteConfig bad = cfg;
    bad.checks = {"no-such-check"};
    CHECK(throwsKind(ErrorKind::Argument, [&] { (void)runSuite(bad); }));
  }
  SUBCASE("tolerances") {
    SuiteConfig bad = cfg;
    bad.tolerances["no-such-check"] = 1e-6;
    CHECK(throwsKind(ErrorKind::Argument, [&] { (void)runSuite(bad); }));
  }
}

TEST_CASE("default suite is green, deterministic, and fast enough") {
  SuiteConfig cfg = loadSuiteConfig(fixturePath("suite.json"));
  auto t0 = std::chrono::steady_clock::now();
  Report rep = runSuite(cfg);
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();

  CHECK(allPassed(rep));
  CHECK(rep.failCount == 0);
  CHECK(rep.errorCount == 0);
  CHECK(rep.passCount == static_cast<int>(rep.entries.size()));
  CHECK(secs < 60.0);

  std::string json1 = reportJson(rep);
  Report rep2 = runSuite(cfg);
  CHECK(reportJson(rep2) == json1);

  SUBCASE("entries are sorted by check then fixture") {
    for (size_t k = 1; k < rep.entries.size(); ++k) {
      const auto& a = rep.entries[k - 1];
      const auto& b = rep.entries[k];
      CHECK((a.check < b.check || (a.check == b.check && a.fixture <= b.fixture)));
    }
  }

  SUBCASE("markdown rendering carries the summary") {
    std::string md = reportMarkdown(rep);
    CHECK(md.find("| check | fixture |") != std::string::npos);
    CHECK(md.find("0 fail, 0 error") != std::string::npos);
  }
}

TEST_CASE("impossible tolerance forces a reported failure") {
  SuiteConfig cfg = loadSuiteConfig(fixturePath("suite.json"));
  cfg.tolerances["spray-cross-check"] = 0.0;
  cfg.checks = {"spray-cross-check"};
  Report rep = runSuite(cfg);
  CHECK(rep.failCount > 0);
  bool residualReported = false;
  for (const auto& e : rep.entries)
    if (e.status == CheckStatus::Fail && e.worstResidual > 0) residualReported = true;
  CHECK(residualReported);
  CHECK(!allPassed(rep));
}
