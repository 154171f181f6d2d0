#include <doctest.h>

#include <vector>

#include <finsler/proofsteps.hpp>
#include <finsler/rng.hpp>

#include "builders.hpp"

using namespace finsler;
using finsler::testing::throwsKind;

namespace {

ProofInstance identityInstance(std::vector<Rational> b, std::vector<Rational> k, Rational p,
                               Rational q) {
  ProofInstance inst;
  inst.n = static_cast<int>(b.size());
  inst.atilde = matZero(inst.n, inst.n, Rational(0));
  for (int i = 0; i < inst.n; ++i) inst.atilde[i][i] = Rational(1);
  inst.btilde = std::move(b);
  inst.kgrad = std::move(k);
  inst.p = std::move(p);
  inst.q = std::move(q);
  return inst;
}

}  // namespace

TEST_CASE("instance scalars and index raising") {
  ProofInstance inst;
  inst.n = 3;
  inst.atilde = {{Rational(2), Rational(1), Rational(0)},
                 {Rational(1), Rational(2), Rational(0)},
                 {Rational(0), Rational(0), Rational(1)}};
  inst.btilde = {Rational(1), Rational(1), Rational(0)};
  inst.kgrad = {Rational(1), Rational(0), Rational(0)};
  inst.p = Rational(1);
  inst.q = Rational(0);
  InstanceScalars sc = deriveInstance(inst);
  CHECK(sc.B == ratFromLong(2, 3));
  CHECK(sc.f == ratFromLong(1, 3));
  CHECK(sc.bUp[0] == ratFromLong(1, 3));
  CHECK(sc.bUp[1] == ratFromLong(1, 3));
  CHECK(sc.kUp[0] == ratFromLong(2, 3));
  CHECK(sc.kUp[1] == ratFromLong(-1, 3));

  SUBCASE("degenerate coefficient combinations are rejected") {
    ProofInstance bad = identityInstance({Rational(1), Rational(0), Rational(0)},
                                         {Rational(0), Rational(0), Rational(0)}, Rational(1),
                                         ratFromLong(-4, 3));  // 4p + 3qB = 0
    CHECK(throwsKind(ErrorKind::Argument, [&] { (void)deriveInstance(bad); }));
    ProofInstance bad2 = identityInstance({Rational(1), Rational(0), Rational(0)},
                                          {Rational(0), Rational(0), Rational(0)}, Rational(1),
                                          Rational(-1));  // p + qB = 0
    CHECK(throwsKind(ErrorKind::Argument, [&] { (void)deriveInstance(bad2); }));
    ProofInstance notPD = identityInstance({Rational(1), Rational(0)},
                                           {Rational(0), Rational(0)}, Rational(1), Rational(0));
    notPD.atilde[1][1] = Rational(-1);
    CHECK(throwsKind(ErrorKind::Definiteness, [&] { (void)deriveInstance(notPD); }));
  }
}

TEST_CASE("quadratic identity polynomial on a worked instance") {
  ProofInstance inst =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(1), Rational(0), Rational(0)}, Rational(1), Rational(0));
  InstanceScalars sc = deriveInstance(inst);
  CHECK(sc.B == ratFromLong(1, 4));
  CHECK(sc.f == ratFromLong(1, 2));

  Poly p0 = buildB2(inst, Rational(0));
  CHECK(p0.coefficient({2, 0, 0}) == Rational(-2));  // 1 - 4 + 1
  CHECK(p0.coefficient({0, 2, 0}) == Rational(1));   // 4p f^2
  CHECK(p0.coefficient({0, 0, 2}) == Rational(1));
  CHECK(p0.coefficient({1, 1, 0}) == Rational(0));

  Poly p1 = buildB2(inst, Rational(1));
  CHECK(p1.coefficient({2, 0, 0}) == ratFromLong(-5, 4));  // -2 + 3/4
  CHECK(p1.coefficient({0, 2, 0}) == ratFromLong(3, 4));   // 1 - pB
  for (const auto& [e, c] : p1.terms()) CHECK(e[0] + e[1] + e[2] == 2);

  SUBCASE("symbolic h variant") {
    Poly sym = buildB2Symbolic(inst);
    CHECK(sym.vars() == 4);
    CHECK(sym.names()[3] == "h");
    CHECK(sym.degreeIn(3) == 1);
    for (const auto& [e, c] : sym.terms()) CHECK(e[0] + e[1] + e[2] == 2);
    CHECK(sym.substitute(3, Rational(1)).coefficient({2, 0, 0, 0}) == ratFromLong(-5, 4));
  }

  SUBCASE("independent evaluation oracle at random rational points") {
    Rng rng(11);
    Rational c4 = Rational(4) * inst.p + Rational(3) * inst.q * sc.B;
    Rational h = ratFromLong(5, 7);
    Poly ph = buildB2(inst, h);
    for (int it = 0; it < 20; ++it) {
      std::vector<Rational> yv;
      for (int i = 0; i < 3; ++i)
        yv.push_back(ratFromLong(static_cast<long>(rng.uniformInt(0, 12)) - 6,
                                 static_cast<long>(rng.uniformInt(1, 4))));
      Rational k0(0), bt(0), a2(0);
      for (int i = 0; i < 3; ++i) {
        k0 += inst.kgrad[i] * yv[i];
        bt += inst.btilde[i] * yv[i];
        a2 += yv[i] * yv[i];
      }
      Rational want = sc.B * c4 * k0 * k0 - Rational(4) * c4 * sc.f * bt * k0 +
                      Rational(4) * inst.p * sc.f * sc.f * a2 -
                      h * (inst.p * sc.B * a2 - c4 * bt * bt);
      CHECK(ph.eval(yv) == want);
    }
  }
}

TEST_CASE("solving the identity for h") {
  ProofInstance zeroK =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(0), Rational(0), Rational(0)}, Rational(1), Rational(0));
  auto h = solveForH(zeroK);
  REQUIRE(h.has_value());
  CHECK(*h == 0);

  ProofInstance generic =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(1), Rational(0), Rational(0)}, Rational(1), Rational(0));
  CHECK(!solveForH(generic).has_value());

  // p = 0 with kappa parallel to b: the only solvable nonhomothetic shape
  ProofInstance tuned =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {ratFromLong(1, 4), Rational(0), Rational(0)}, Rational(0), Rational(1));
  auto ht = solveForH(tuned);
  REQUIRE(ht.has_value());
  CHECK(*ht == ratFromLong(3, 16));
  InstanceScalars ts = deriveInstance(tuned);
  CHECK(*ht == step411H(tuned.p, tuned.q, ts.B, ts.f));
  CHECK(buildB2(tuned, *ht).isZero());

  ProofInstance zeroB =
      identityInstance({Rational(0), Rational(0), Rational(0)},
                       {Rational(1), Rational(0), Rational(0)}, Rational(1), Rational(0));
  CHECK(throwsKind(ErrorKind::Singularity, [&] { (void)solveForH(zeroB); }));
}

TEST_CASE("closed form for h") {
  CHECK(step411H(Rational(1), Rational(0), ratFromLong(1, 4), ratFromLong(1, 2)) ==
        ratFromLong(8, 3));
  CHECK(step411H(Rational(1), Rational(0), ratFromLong(1, 4), Rational(0)) == 0);
  CHECK(throwsKind(ErrorKind::Argument,
                   [] { (void)step411H(Rational(1), Rational(0), Rational(0), Rational(1)); }));
}

TEST_CASE("symbolic step identities") {
  auto r410 = verifyStep410Symbolic();
  CHECK(r410.pass);
  CHECK(r410.residue.isZero());
  auto r412 = verifyStep412Symbolic();
  CHECK(r412.pass);
  CHECK(r412.residue.isZero());
  CHECK(verifyCubicPositivityIdentity());
}

TEST_CASE("step identities replicate on concrete instances") {
  ProofInstance generic =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(1), Rational(0), Rational(0)}, Rational(1), Rational(0));
  CHECK(verifyStep410Instance(generic));
  CHECK(verifyStep412Instance(generic).isZero());

  ProofInstance tuned =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {ratFromLong(1, 4), Rational(0), Rational(0)}, Rational(0), Rational(1));
  CHECK(verifyStep410Instance(tuned));
  CHECK(verifyStep412Instance(tuned).isZero());

  ProofInstance perp =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(0), Rational(1), Rational(0)}, Rational(1), Rational(0));
  CHECK(verifyStep410Instance(perp));
  CHECK(verifyStep412Instance(perp).isZero());

  // non-identity atilde
  ProofInstance skew;
  skew.n = 3;
  skew.atilde = {{Rational(2), Rational(1), Rational(0)},
                 {Rational(1), Rational(2), Rational(0)},
                 {Rational(0), Rational(0), Rational(1)}};
  skew.btilde = {Rational(1), Rational(1), Rational(0)};
  skew.kgrad = {Rational(1), Rational(0), ratFromLong(1, 3)};
  skew.p = ratFromLong(2, 3);
  skew.q = ratFromLong(1, 5);
  CHECK(verifyStep410Instance(skew));
  CHECK(verifyStep412Instance(skew).isZero());
}

TEST_CASE("case analysis outcomes") {
  ProofInstance zeroK =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(0), Rational(0), Rational(0)}, Rational(1), Rational(0));
  CaseReport a = caseAnalysis(zeroK);
  CHECK(a.outcome == CaseOutcome::CaseIHomothety);
  REQUIRE(a.h.has_value());
  CHECK(*a.h == 0);
  CHECK(caseOutcomeName(a.outcome) == "CaseI-homothety");

  ProofInstance generic =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {Rational(0), Rational(1), Rational(0)}, Rational(1), Rational(0));
  CaseReport b = caseAnalysis(generic);
  CHECK(b.outcome == CaseOutcome::HypothesisFails);
  CHECK(!b.h.has_value());
  CHECK(caseOutcomeName(b.outcome) == "hypothesis-fails");

  ProofInstance caseII =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {ratFromLong(1, 4), Rational(0), Rational(0)}, Rational(0), Rational(1));
  CaseReport c = caseAnalysis(caseII);
  CHECK(c.outcome == CaseOutcome::CaseIIInfeasible);
  REQUIRE(c.h.has_value());
  CHECK(*c.h == ratFromLong(3, 16));
  CHECK(caseOutcomeName(c.outcome) == "CaseII-infeasible");
  CHECK(c.detail.find("p = 0") != std::string::npos);

  ProofInstance zeroB =
      identityInstance({Rational(0), Rational(0), Rational(0)},
                       {Rational(1), Rational(0), Rational(0)}, Rational(1), Rational(0));
  CHECK(throwsKind(ErrorKind::Singularity, [&] { (void)caseAnalysis(zeroB); }));

  // kappa parallel to btilde with p != 0: the matching equations conflict
  ProofInstance par =
      identityInstance({ratFromLong(1, 2), Rational(0), Rational(0)},
                       {ratFromLong(1, 4), Rational(0), Rational(0)}, Rational(1), Rational(0));
  CHECK(caseAnalysis(par).outcome == CaseOutcome::HypothesisFails);
}
