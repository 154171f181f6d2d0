#include "finsler/metric_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

using nlohmann::json;

[[noreturn]] void badField(const std::string& ctx, const std::string& what) {
  fail(ErrorKind::Syntax, ctx + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) badField(ctx, "missing field \"" + key + "\"");
  return *it;
}

int intField(const json& j, const std::string& key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number_integer()) badField(ctx, "\"" + key + "\" must be an integer");
  return v.get<int>();
}

// Exact scalar entry: string ("3/10", "1.25") or JSON integer. Floating JSON
// literals are rejected so a file cannot silently lose exactness.
Rational jsonRational(const json& v, const std::string& ctx) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) badField(ctx, "write exact values as strings, not floating literals");
  if (!v.is_string()) badField(ctx, "expected an exact scalar");
  auto q = parseRational(v.get<std::string>());
  if (!q) badField(ctx, "unreadable exact scalar \"" + v.get<std::string>() + "\"");
  return *q;
}

Expr jsonExpr(const json& v, int n, const std::string& ctx) {
  std::string text;
  if (v.is_number_integer())
    text = std::to_string(v.get<long>());
  else if (v.is_string())
    text = v.get<std::string>();
  else
    badField(ctx, "expected an expression string");
  try {
    return Expr::parse(text, n);
  } catch (const Error& e) {
    badField(ctx, "cannot parse \"" + text + "\": " + e.what());
  }
}

std::vector<std::vector<Expr>> exprMatrix(const json& v, int n, const std::string& ctx) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    badField(ctx, "expected an " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
  std::vector<std::vector<Expr>> a;
  for (int i = 0; i < n; ++i) {
    const json& row = v[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      badField(ctx, "row " + std::to_string(i) + " has the wrong length");
    std::vector<Expr> r;
    for (int j = 0; j < n; ++j)
      r.push_back(jsonExpr(row[static_cast<size_t>(j)], n,
                           ctx + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    a.push_back(std::move(r));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!exprEqual(a[i][j].ast(), a[j][i].ast()))
        badField(ctx, "matrix is not symmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
  return a;
}

std::vector<Expr> exprVector(const json& v, int n, const std::string& ctx) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    badField(ctx, "expected an array of length " + std::to_string(n));
  std::vector<Expr> out;
  for (int i = 0; i < n; ++i)
    out.push_back(jsonExpr(v[static_cast<size_t>(i)], n, ctx + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Rational> rationalVector(const json& v, int n, const std::string& ctx) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    badField(ctx, "expected an array of length " + std::to_string(n));
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i)
    out.push_back(jsonRational(v[static_cast<size_t>(i)], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

RiemannSpec parseRiemann(const json& j, const std::string& ctx) {
  RiemannSpec R;
  R.n = intField(j, "n", ctx);
  if (R.n < 2) badField(ctx, "n must be at least 2");
  R.a = exprMatrix(field(j, "a", ctx), R.n, ctx + ".a");
  return R;
}

CubicSpec parseCubic(const json& j, const std::string& ctx) {
  CubicSpec C;
  C.alpha = parseRiemann(j, ctx);
  C.beta.b = exprVector(field(j, "b", ctx), C.alpha.n, ctx + ".b");
  C.p = jsonRational(field(j, "p", ctx), ctx + ".p");
  C.q = jsonRational(field(j, "q", ctx), ctx + ".q");
  return C;
}

MRootSpec parseMRoot(const json& j, const std::string& ctx) {
  MRootSpec M;
  M.n = intField(j, "n", ctx);
  M.m = intField(j, "m", ctx);
  if (M.n < 2 || M.m < 2) badField(ctx, "needs n >= 2 and m >= 2");
  const json& terms = field(j, "terms", ctx);
  if (!terms.is_array() || terms.empty()) badField(ctx, "\"terms\" must be a nonempty array");
  for (const json& term : terms) {
    const json& idx = field(term, "idx", ctx + ".terms");
    if (!idx.is_array() || static_cast<int>(idx.size()) != M.m)
      badField(ctx, "term index tuple must have length m");
    std::vector<int> tuple;
    for (const json& c : idx) {
      if (!c.is_number_integer()) badField(ctx, "term indices must be integers");
      tuple.push_back(c.get<int>());
    }
    for (int i = 0; i < M.m; ++i) {
      if (tuple[static_cast<size_t>(i)] < 1 || tuple[static_cast<size_t>(i)] > M.n)
        badField(ctx, "term index out of range 1.." + std::to_string(M.n));
      if (i > 0 && tuple[static_cast<size_t>(i)] < tuple[static_cast<size_t>(i) - 1])
        badField(ctx, "term index tuples must be sorted non-decreasing");
    }
    Expr c = jsonExpr(field(term, "c", ctx + ".terms"), M.n, ctx + ".terms.c");
    if (!M.tensor.emplace(tuple, std::move(c)).second)
      badField(ctx, "duplicate term index tuple");
  }
  return M;
}

MetricSpec parseMetric(const json& j, const std::string& ctx) {
  std::string kind = field(j, "kind", ctx).get<std::string>();
  if (kind == "riemann") return parseRiemann(j, ctx);
  if (kind == "cubic") return parseCubic(j, ctx);
  if (kind == "mroot") return parseMRoot(j, ctx);
  badField(ctx, "unknown metric kind \"" + kind + "\"");
}

ProofInstance parseInstance(const json& j, const std::string& ctx) {
  ProofInstance inst;
  inst.n = intField(j, "n", ctx);
  if (inst.n < 2) badField(ctx, "n must be at least 2");
  const json& am = field(j, "atilde", ctx);
  if (!am.is_array() || static_cast<int>(am.size()) != inst.n)
    badField(ctx, "\"atilde\" must be an n x n matrix");
  for (int i = 0; i < inst.n; ++i)
    inst.atilde.push_back(
        rationalVector(am[static_cast<size_t>(i)], inst.n, ctx + ".atilde row"));
  for (int i = 0; i < inst.n; ++i)
    for (int j2 = i + 1; j2 < inst.n; ++j2)
      if (inst.atilde[static_cast<size_t>(i)][static_cast<size_t>(j2)] !=
          inst.atilde[static_cast<size_t>(j2)][static_cast<size_t>(i)])
        badField(ctx, "\"atilde\" is not symmetric");
  inst.btilde = rationalVector(field(j, "btilde", ctx), inst.n, ctx + ".btilde");
  inst.kgrad = rationalVector(field(j, "kappa_grad", ctx), inst.n, ctx + ".kappa_grad");
  inst.p = jsonRational(field(j, "p", ctx), ctx + ".p");
  inst.q = jsonRational(field(j, "q", ctx), ctx + ".q");
  return inst;
}

}  // namespace

LoadedFixture parseFixture(const std::string& jsonText, const std::string& fallbackName) {
  json j;
  try {
    j = json::parse(jsonText);
  } catch (const json::exception& e) {
    fail(ErrorKind::Syntax, fallbackName + ": " + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Syntax, fallbackName + ": expected a JSON object");

  LoadedFixture out;
  out.name = j.contains("name") ? j["name"].get<std::string>() : fallbackName;
  const std::string& ctx = out.name;

  std::string kind = field(j, "kind", ctx).get<std::string>();
  if (kind == "conformal") {
    ConformalData D;
    D.base = parseMetric(field(j, "base", ctx), ctx + ".base");
    D.kappa = jsonExpr(field(j, "kappa", ctx), dimension(D.base), ctx + ".kappa");
    out.payload = std::move(D);
    if (j.contains("homothetic")) {
      if (!j["homothetic"].is_boolean()) badField(ctx, "\"homothetic\" must be a boolean");
      out.homothetic = j["homothetic"].get<bool>();
    }
  } else if (kind == "instance") {
    out.payload = parseInstance(j, ctx);
    if (j.contains("expect")) {
      const json& e = j["expect"];
      InstanceExpectation x;
      x.outcome = field(e, "outcome", ctx + ".expect").get<std::string>();
      if (e.contains("h")) x.h = jsonRational(e["h"], ctx + ".expect.h");
      out.expect = std::move(x);
    }
  } else {
    out.payload = parseMetric(j, ctx);
  }
  return out;
}

LoadedFixture loadFixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Argument, "cannot open fixture file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseFixture(buf.str(), std::filesystem::path(path).stem().string());
}

MetricSpec loadMetricForEval(const std::string& path) {
  LoadedFixture f = loadFixture(path);
  if (const auto* M = std::get_if<MetricSpec>(&f.payload)) return *M;
  if (const auto* D = std::get_if<ConformalData>(&f.payload)) return makeConformal(*D);
  fail(ErrorKind::Argument, path + " holds a proof-chain instance, not a metric");
}

SuiteConfig loadSuiteConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Argument, "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Syntax, path + ": " + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Syntax, path + ": expected a JSON object");

  SuiteConfig cfg;
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  const json& metrics = field(j, "metrics", path);
  if (!metrics.is_array()) fail(ErrorKind::Syntax, path + ": \"metrics\" must be an array");
  for (const json& m : metrics) {
    if (!m.is_string()) fail(ErrorKind::Syntax, path + ": metric references must be strings");
    std::filesystem::path p(m.get<std::string>());
    cfg.metricFiles.push_back(p.is_absolute() ? p.string() : (dir / p).string());
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) fail(ErrorKind::Syntax, path + ": \"checks\" must be an array");
    for (const json& c : j["checks"]) cfg.checks.push_back(c.get<std::string>());
  }
  if (j.contains("samples")) {
    cfg.samples = intField(j, "samples", path);
    if (cfg.samples < 8) fail(ErrorKind::Argument, path + ": samples must be at least 8");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) fail(ErrorKind::Syntax, path + ": seed must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.seedExplicit = true;
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail(ErrorKind::Syntax, path + ": \"tolerances\" must be an object");
    for (auto it = t.begin(); it != t.end(); ++it)
      cfg.tolerances[it.key()] = it.value().get<double>();
  }
  if (j.contains("format")) {
    cfg.format = j["format"].get<std::string>();
    if (cfg.format != "json" && cfg.format != "md")
      fail(ErrorKind::Argument, path + ": format must be \"json\" or \"md\"");
  }
  return cfg;
}

}  // namespace finsler
