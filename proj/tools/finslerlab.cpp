// finslerlab: config-driven verification suites (`check`) and ad-hoc metric
// evaluation (`eval`). Exit codes: 0 all pass, 1 any check/evaluation failure,
// 2 usage or config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <finsler/conformal.hpp>
#include <finsler/curvature.hpp>
#include <finsler/errors.hpp>
#include <finsler/metric.hpp>
#include <finsler/metric_io.hpp>
#include <finsler/mroot.hpp>
#include <finsler/suite.hpp>

namespace {

using finsler::Error;
using finsler::ErrorKind;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int exitCodeFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Argument:
    case ErrorKind::Syntax:
      return kExitUsage;
    default:
      return kExitFail;  // cone, definiteness, domain, singularity, ...
  }
}

// 12 significant digits, trailing zeros kept: 5.0 prints as 5.00000000000.
std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

// JSON numbers rounded to the same 12 significant digits as the text output.
double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

std::vector<double> parseTuple(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      finsler::fail(ErrorKind::Argument, flag + ": cannot parse component \"" + piece + "\"");
    }
    while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) ++used;
    if (used != piece.size())
      finsler::fail(ErrorKind::Argument, flag + ": trailing junk in component \"" + piece + "\"");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::optional<std::uint64_t> envSeed() {
  const char* raw = std::getenv("FINSLERLAB_SEED");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0')
    finsler::fail(ErrorKind::Argument,
                  std::string("FINSLERLAB_SEED is set but not a decimal integer: \"") + raw + "\"");
  return static_cast<std::uint64_t>(v);
}

int runCheck(const std::string& configPath, std::optional<std::uint64_t> seedFlag,
             const std::string& formatFlag) {
  finsler::SuiteConfig config = finsler::loadSuiteConfig(configPath);
  if (seedFlag) {
    config.seed = *seedFlag;
  } else if (!config.seedExplicit) {
    if (auto s = envSeed()) config.seed = *s;
  }
  if (!formatFlag.empty()) config.format = formatFlag;

  finsler::Report report = finsler::runSuite(config);
  if (config.format == "md")
    std::cout << finsler::reportMarkdown(report);
  else
    std::cout << finsler::reportJson(report);
  return finsler::allPassed(report) ? 0 : kExitFail;
}

// --- eval output helpers ---

void printScalar(const std::string& name, double v) {
  std::cout << name << " = " << fmt12(v) << "\n";
}

void printVector(const std::string& name, const std::vector<double>& v) {
  for (size_t i = 0; i < v.size(); ++i)
    std::cout << name << "^" << (i + 1) << " = " << fmt12(v[i]) << "\n";
}

void printMatrix(const std::string& header, const finsler::Mat<double>& m) {
  std::cout << header << ":\n";
  for (const auto& row : m) {
    for (size_t j = 0; j < row.size(); ++j)
      std::cout << (j ? " " : "  ") << fmt12(row[j]);
    std::cout << "\n";
  }
}

ordered_json jsonVector(const std::vector<double>& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(round12(x));
  return out;
}

ordered_json jsonMatrix(const finsler::Mat<double>& m) {
  ordered_json out = ordered_json::array();
  for (const auto& row : m) out.push_back(jsonVector(row));
  return out;
}

int runEval(const std::string& metricPath, const std::string& xText, const std::string& yText,
            const std::string& quantity, bool jsonOut) {
  finsler::MetricSpec M = finsler::loadMetricForEval(metricPath);
  const int n = finsler::dimension(M);

  std::vector<double> x =
      xText.empty() ? std::vector<double>(n, 0.0) : parseTuple(xText, "--x");
  std::vector<double> y = parseTuple(yText, "--y");
  if (static_cast<int>(x.size()) != n)
    finsler::fail(ErrorKind::Argument, "--x has " + std::to_string(x.size()) +
                                           " components, metric dimension is " + std::to_string(n));
  if (static_cast<int>(y.size()) != n)
    finsler::fail(ErrorKind::Argument, "--y has " + std::to_string(y.size()) +
                                           " components, metric dimension is " + std::to_string(n));

  ordered_json out;
  out["quantity"] = quantity;
  out["x"] = jsonVector(x);
  out["y"] = jsonVector(y);

  if (quantity == "F") {
    double v = finsler::evalF(M, x, y, 0).value();
    if (jsonOut) out["value"] = round12(v);
    else printScalar("F", v);
  } else if (quantity == "g") {
    auto g = finsler::fundamentalTensor(M, x, y);
    if (jsonOut) out["value"] = jsonMatrix(g);
    else printMatrix("g_ij", g);
  } else if (quantity == "ginv") {
    auto gi = finsler::inverse41(finsler::asMRoot(M), x, y);
    if (jsonOut) out["value"] = jsonMatrix(gi);
    else printMatrix("g^ij", gi);
  } else if (quantity == "G") {
    auto jets = finsler::sprayFromDefinition(M, x, y, 0);
    std::vector<double> G(jets.size());
    for (size_t i = 0; i < jets.size(); ++i) G[i] = jets[i].value();
    if (jsonOut) out["value"] = jsonVector(G);
    else printVector("G", G);
  } else if (quantity == "R") {
    auto R = finsler::riemannCurvature(M, x, y);
    if (jsonOut) out["value"] = jsonMatrix(R);
    else printMatrix("R^i_k", R);
  } else if (quantity == "Ric") {
    double v = finsler::ricci(M, x, y);
    if (jsonOut) out["value"] = round12(v);
    else printScalar("Ric", v);
  } else if (quantity == "r") {
    double v = finsler::scalarCurvature(M, x, y);
    if (jsonOut) out["value"] = round12(v);
    else printScalar("r", v);
  } else if (quantity == "aux") {
    const auto* C = std::get_if<finsler::CubicSpec>(&M);
    if (!C)
      finsler::fail(ErrorKind::Unsupported, "aux quantities are defined for cubic metrics only");
    auto a = finsler::auxQuantities(*C, x, y);
    if (jsonOut) {
      ordered_json v;
      v["rho"] = round12(a.rho);
      v["rho0"] = round12(a.rho0);
      v["rho1"] = round12(a.rho1);
      v["rho2"] = round12(a.rho2);
      v["eps"] = round12(a.eps);
      v["delta"] = round12(a.delta);
      v["mu"] = round12(a.auxMu);
      v["tau"] = round12(a.tau);
      v["lambda"] = round12(a.lambda);
      v["eta"] = round12(a.eta);
      v["Y"] = round12(a.Y);
      v["A"] = jsonMatrix(a.A);
      out["value"] = v;
    } else {
      printScalar("rho", a.rho);
      printScalar("rho0", a.rho0);
      printScalar("rho1", a.rho1);
      printScalar("rho2", a.rho2);
      printScalar("eps", a.eps);
      printScalar("delta", a.delta);
      printScalar("mu", a.auxMu);
      printScalar("tau", a.tau);
      printScalar("lambda", a.lambda);
      printScalar("eta", a.eta);
      printScalar("Y", a.Y);
      printMatrix("A_ij", a.A);
    }
  } else if (quantity == "bundle") {
    auto b = finsler::curvatureBundle(M, x, y);
    if (jsonOut) {
      ordered_json v;
      v["G"] = jsonVector(b.G);
      v["R"] = jsonMatrix(b.R);
      v["Ric"] = round12(b.Ric);
      v["RicTensor"] = jsonMatrix(b.RicTensor);
      v["r"] = round12(b.scalarR);
      out["value"] = v;
    } else {
      printVector("G", b.G);
      printMatrix("R^i_k", b.R);
      printScalar("Ric", b.Ric);
      printMatrix("Ric_ij", b.RicTensor);
      printScalar("r", b.scalarR);
    }
  } else {
    finsler::fail(ErrorKind::Argument, "unknown quantity \"" + quantity + "\"");
  }

  if (jsonOut) std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finsler metric verification suites and pointwise evaluation"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::uint64_t> seedFlag;
  std::string checkFormat;
  auto* check = app.add_subcommand("check", "Run verification checks from a config file");
  check->add_option("--config", configPath, "Suite config (JSON)")->required();
  check->add_option("--seed", seedFlag, "Override the sampling seed");
  check->add_option("--format", checkFormat, "Report format")
      ->check(CLI::IsMember({"json", "md"}));

  std::string metricPath, xText, yText, quantity, evalFormat;
  auto* eval = app.add_subcommand("eval", "Evaluate one quantity at a point and direction");
  eval->add_option("--metric", metricPath, "Metric fixture (JSON)")->required();
  eval->add_option("--x", xText, "Base point, comma separated (default: origin)");
  eval->add_option("--y", yText, "Direction, comma separated")->required();
  eval->add_option("--quantity", quantity, "What to evaluate")
      ->required()
      ->check(CLI::IsMember({"F", "g", "ginv", "G", "R", "Ric", "r", "aux", "bundle"}));
  eval->add_option("--format", evalFormat, "Output format")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return runCheck(configPath, seedFlag, checkFormat);
    return runEval(metricPath, xText, yText, quantity, evalFormat == "json");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
