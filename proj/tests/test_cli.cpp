// Integration tests that drive the installed binary through a shell.
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <finsler/linalg.hpp>
#include <finsler/metric_io.hpp>

#include "builders.hpp"

using namespace finsler;
using namespace finsler::testing;
using nlohmann::json;

namespace {

struct CmdResult {
  int exit = -1;
  std::string out;
};

CmdResult run(const std::string& args) {
  static int counter = 0;
  std::string outFile = "cli_out_" + std::to_string(++counter) + ".txt";
  std::string cmd = args + " > " + outFile + " 2>&1";
  int raw = std::system(cmd.c_str());
  CmdResult r;
  r.exit = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(outFile);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(outFile.c_str());
  return r;
}

std::string bin() { return std::string(FINSLERLAB_BIN); }

std::string writeConfig(const std::string& name, const json& j) {
  std::ofstream out(name);
  out << j.dump(2) << "\n";
  return name;
}

}  // namespace

TEST_CASE("eval prints 12 significant digits and clean exit codes") {
  CmdResult f = run(bin() + " eval --metric " + fixturePath("riemann_flat.json") +
                    " --y 3,4,0 --quantity F");
  CHECK(f.exit == 0);
  CHECK(f.out.find("5.00000000000") != std::string::npos);

  CmdResult r = run(bin() + " eval --metric " + fixturePath("minkowski_cubic.json") +
                    " --y \"1,0.2,0.1\" --quantity r");
  CHECK(r.exit == 0);
  // r = 0 within 1e-12 for the flat cubic
  double val = 99;
  std::sscanf(r.out.c_str(), "r = %lf", &val);
  CHECK(std::abs(val) < 1e-12);

  SUBCASE("cone violation exits nonzero") {
    CmdResult c = run(bin() + " eval --metric " + fixturePath("minkowski_cubic.json") +
                      " --y -1,0,0 --quantity F");
    CHECK(c.exit == 1);
    CHECK(c.out.find("error:") != std::string::npos);
  }

  SUBCASE("usage problems exit 2") {
    CHECK(run(bin() + " eval --metric " + fixturePath("riemann_flat.json") +
              " --y 1,0 --quantity F")
              .exit == 2);
    CHECK(run(bin() + " eval --metric " + fixturePath("riemann_flat.json") +
              " --y 1,0,0 --quantity nope")
              .exit == 2);
    CHECK(run(bin() + " nonsense").exit == 2);
  }
}

TEST_CASE("eval spray matches a finite-difference Christoffel oracle") {
  // G^i = 1/2 Gamma^i_jk y^j y^k on the curved Riemannian fixture
  LoadedFixture lf = loadFixture(fixturePath("riemann_curved.json"));
  const auto& A = std::get<RiemannSpec>(std::get<MetricSpec>(lf.payload));
  std::vector<double> x{0.4, -0.3, 0.6}, y{1.0, 0.5, -0.8};

  auto coeff = [&](int i, int j, std::vector<double> xx) {
    return A.a[i][j].evalJet<double>(xx, 0).value();
  };
  const int n = 3;
  const double h = 1e-6;
  Mat<double> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = coeff(i, j, x);
  Mat<double> ai = matInverse(a);
  std::vector<double> want(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double gamma = 0;
        for (int l = 0; l < n; ++l) {
          auto d = [&](int aa, int bb, int cc) {
            auto xp = x, xm = x;
            xp[cc] += h;
            xm[cc] -= h;
            return (coeff(aa, bb, xp) - coeff(aa, bb, xm)) / (2 * h);
          };
          gamma += 0.5 * ai[i][l] * (d(l, k, j) + d(j, l, k) - d(j, k, l));
        }
        want[i] += 0.5 * gamma * y[j] * y[k];
      }

  CmdResult g = run(bin() + " eval --metric " + fixturePath("riemann_curved.json") +
                    " --x \"0.4,-0.3,0.6\" --y \"1,0.5,-0.8\" --quantity G --format json");
  REQUIRE(g.exit == 0);
  json out = json::parse(g.out);
  REQUIRE(out["value"].size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(out["value"][i].get<double>() - want[i]) <
          1e-6 * std::max(1.0, std::abs(want[i])));
}

TEST_CASE("check subcommand exit codes, seeds, and determinism") {
  json cfg;
  cfg["metrics"] = {fixturePath("minkowski_cubic.json"), fixturePath("conformal_const.json"),
                    fixturePath("instance_homothety.json")};
  cfg["checks"] = {"minkowski-flatness", "homothety", "case-analysis"};
  cfg["samples"] = 8;
  cfg["seed"] = 11;
  cfg["format"] = "json";
  std::string cfgPath = writeConfig("cli_suite_small.json", cfg);

  CmdResult a = run(bin() + " check --config " + cfgPath);
  CHECK(a.exit == 0);
  CmdResult b = run(bin() + " check --config " + cfgPath);
  CHECK(b.out == a.out);  // byte-identical across identical seeds
  CHECK(json::parse(a.out)["seed"] == 11);

  SUBCASE("command-line seed wins over the config") {
    CmdResult c = run(bin() + " check --config " + cfgPath + " --seed 777");
    CHECK(c.exit == 0);
    CHECK(json::parse(c.out)["seed"] == 777);
  }

  SUBCASE("environment seed fills in when the config has none") {
    json noseed = cfg;
    noseed.erase("seed");
    std::string p = writeConfig("cli_suite_noseed.json", noseed);
    CmdResult c = run("FINSLERLAB_SEED=4242 " + bin() + " check --config " + p);
    CHECK(c.exit == 0);
    CHECK(json::parse(c.out)["seed"] == 4242);
    CHECK(run("FINSLERLAB_SEED=junk " + bin() + " check --config " + p).exit == 2);
    std::remove(p.c_str());
  }

  SUBCASE("markdown format renders a table") {
    CmdResult c = run(bin() + " check --config " + cfgPath + " --format md");
    CHECK(c.exit == 0);
    CHECK(c.out.find("| check | fixture |") != std::string::npos);
  }

  SUBCASE("a failing check exits 1 and reports the residual") {
    json strict = cfg;
    strict["checks"] = {"spray-cross-check"};
    strict["tolerances"] = {{"spray-cross-check", 0.0}};
    std::string p = writeConfig("cli_suite_strict.json", strict);
    CmdResult c = run(bin() + " check --config " + p);
    CHECK(c.exit == 1);
    json rep = json::parse(c.out);
    CHECK(rep["summary"]["fail"].get<int>() > 0);
    std::remove(p.c_str());
  }

  SUBCASE("config problems exit 2") {
    CHECK(run(bin() + " check --config does_not_exist.json").exit == 2);
    json bad = cfg;
    bad["checks"] = {"no-such-check"};
    std::string p = writeConfig("cli_suite_bad.json", bad);
    CHECK(run(bin() + " check --config " + p).exit == 2);
    std::remove(p.c_str());
  }

  std::remove(cfgPath.c_str());
}
