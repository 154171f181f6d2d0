#include "finsler/proofsteps.hpp"

#include <string>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

std::vector<std::string> yRing(int n, bool withH) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(n) + (withH ? 1 : 0));
  for (int i = 0; i < n; ++i) names.push_back("y" + std::to_string(i + 1));
  if (withH) names.emplace_back("h");
  return names;
}

// c.y as a polynomial; the ring may carry extra trailing symbols.
Poly linearForm(const std::vector<std::string>& names, const std::vector<Rational>& c) {
  Poly out(names);
  for (size_t i = 0; i < c.size(); ++i) {
    std::vector<int> e(names.size(), 0);
    e[i] = 1;
    out.addTerm(e, c[i]);
  }
  return out;
}

// y^T a y as a polynomial.
Poly quadraticForm(const std::vector<std::string>& names, const Mat<Rational>& a) {
  Poly out(names);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a[i].size(); ++j) {
      std::vector<int> e(names.size(), 0);
      e[i] += 1;
      e[j] += 1;
      out.addTerm(e, a[i][j]);
    }
  }
  return out;
}

struct B2Parts {
  Poly lhs;    // B(4p+3qB) k0^2 - 4(4p+3qB) f bt k0 + 4p f^2 a2
  Poly gamma;  // pB a2 - (4p+3qB) bt^2
};

B2Parts b2Parts(const ProofInstance& inst, const InstanceScalars& sc,
                const std::vector<std::string>& names) {
  Rational c4 = Rational(4) * inst.p + Rational(3) * inst.q * sc.B;
  Poly k0 = linearForm(names, inst.kgrad);
  Poly bt = linearForm(names, inst.btilde);
  Poly a2 = quadraticForm(names, inst.atilde);
  B2Parts parts;
  parts.lhs = k0 * k0 * (sc.B * c4) - bt * k0 * (Rational(4) * c4 * sc.f) +
              a2 * (Rational(4) * inst.p * sc.f * sc.f);
  parts.gamma = a2 * (inst.p * sc.B) - bt * bt * c4;
  return parts;
}

}  // namespace

InstanceScalars deriveInstance(const ProofInstance& inst) {
  const int n = inst.n;
  if (n < 2) fail(ErrorKind::Argument, "proof instance needs dimension n >= 2");
  if (static_cast<int>(inst.atilde.size()) != n)
    fail(ErrorKind::Argument, "atilde must be an n x n matrix");
  for (const auto& row : inst.atilde)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::Argument, "atilde must be an n x n matrix");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (inst.atilde[i][j] != inst.atilde[j][i])
        fail(ErrorKind::Argument, "atilde must be symmetric");
  if (static_cast<int>(inst.btilde.size()) != n || static_cast<int>(inst.kgrad.size()) != n)
    fail(ErrorKind::Argument, "btilde and kgrad must be n-vectors");
  if (!isPDExact(inst.atilde))
    fail(ErrorKind::Definiteness, "atilde is not positive definite");

  InstanceScalars sc;
  sc.ainv = matInverse(inst.atilde);
  sc.bUp.assign(static_cast<size_t>(n), Rational(0));
  sc.kUp.assign(static_cast<size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sc.bUp[i] += sc.ainv[i][j] * inst.btilde[j];
      sc.kUp[i] += sc.ainv[i][j] * inst.kgrad[j];
    }
  }
  sc.B = Rational(0);
  sc.f = Rational(0);
  for (int i = 0; i < n; ++i) {
    sc.B += inst.btilde[i] * sc.bUp[i];
    sc.f += inst.btilde[i] * sc.kUp[i];
  }
  Rational pqB = inst.p + inst.q * sc.B;
  if (pqB == 0) fail(ErrorKind::Argument, "unusable parameters: p + qB = 0");
  Rational c4 = Rational(4) * inst.p + Rational(3) * inst.q * sc.B;
  if (c4 == 0) fail(ErrorKind::Argument, "unusable parameters: 4p + 3qB = 0");
  return sc;
}

Poly buildB2(const ProofInstance& inst, const Rational& h) {
  InstanceScalars sc = deriveInstance(inst);
  B2Parts parts = b2Parts(inst, sc, yRing(inst.n, false));
  return parts.lhs - parts.gamma * h;
}

Poly buildB2Symbolic(const ProofInstance& inst) {
  InstanceScalars sc = deriveInstance(inst);
  auto names = yRing(inst.n, true);
  B2Parts parts = b2Parts(inst, sc, names);
  return parts.lhs - parts.gamma * Poly::variable(names, inst.n);
}

std::optional<Rational> solveForH(const ProofInstance& inst) {
  InstanceScalars sc = deriveInstance(inst);
  B2Parts parts = b2Parts(inst, sc, yRing(inst.n, false));
  if (parts.gamma.isZero())
    fail(ErrorKind::Singularity,
         "gamma = pB a~(y,y) - (4p+3qB)(b~.y)^2 is the zero form; cannot divide by gamma");
  const auto& lead = *parts.gamma.terms().begin();
  Rational h = parts.lhs.coefficient(lead.first) / lead.second;
  if ((parts.lhs - parts.gamma * h).isZero()) return h;
  return std::nullopt;
}

Rational step411H(const Rational& p, const Rational& q, const Rational& B, const Rational& f) {
  Rational den = Rational(3) * B * (p + q * B);
  if (den == 0) fail(ErrorKind::Argument, "h is undefined: 3B(p+qB) = 0");
  Rational num = (Rational(8) * p + Rational(9) * q * B) * f * f;
  return num / den;
}

SymbolicStepReport verifyStep410Symbolic() {
  std::vector<std::string> names{"p", "q", "B", "f", "h"};
  Poly P = Poly::variable(names, 0);
  Poly Q = Poly::variable(names, 1);
  Poly B = Poly::variable(names, 2);
  Poly F = Poly::variable(names, 3);
  Poly H = Poly::variable(names, 4);
  Poly c4 = P * Rational(4) + Q * B * Rational(3);

  // The quadratic identity evaluated at y = raised b~: k0 -> f, b~.y -> B,
  // a~(y,y) -> B; the Hessian contraction with b~^i b~^j is twice that value.
  Poly lhsAtB = B * c4 * F * F - c4 * F * F * B * Rational(4) + P * F * F * B * Rational(4);
  Poly gammaAtB = P * B * B - c4 * B * B;
  Poly contraction = (lhsAtB - H * gammaAtB) * Rational(2);

  Poly displayed = B * F * F * (P * Rational(4) - c4 * Rational(3)) * Rational(2) +
                   B * B * H * (P + Q * B) * Rational(6);
  Poly reduced =
      B * F * F * (P * Rational(8) + Q * B * Rational(9)) - B * B * H * (P + Q * B) * Rational(3);

  SymbolicStepReport rep;
  Poly r1 = contraction - displayed;
  Poly r2 = displayed + reduced * Rational(2);
  rep.pass = r1.isZero() && r2.isZero();
  rep.residue = r1.isZero() ? r2 : r1;
  rep.detail =
      "contracting the Hessian of the quadratic identity with the raised 1-form gives "
      "2Bf^2[4p - 3(4p+3qB)] + 6B^2 h(p+qB), which vanishes exactly when "
      "Bf^2(8p+9qB) = 3B^2 h(p+qB)";
  return rep;
}

bool verifyStep410Instance(const ProofInstance& inst) {
  InstanceScalars sc = deriveInstance(inst);
  Poly b2 = buildB2Symbolic(inst);
  const auto& names = b2.names();
  Poly contraction(names);
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j)
      contraction = contraction + b2.derivative(i).derivative(j) * (sc.bUp[i] * sc.bUp[j]);

  Rational c4 = Rational(4) * inst.p + Rational(3) * inst.q * sc.B;
  Rational constPart =
      Rational(2) * sc.B * sc.f * sc.f * (Rational(4) * inst.p - Rational(3) * c4);
  Rational hPart = Rational(6) * sc.B * sc.B * (inst.p + inst.q * sc.B);
  Poly displayed =
      Poly::constant(names, constPart) + Poly::variable(names, inst.n) * hPart;
  return (contraction - displayed).isZero();
}

SymbolicStepReport verifyStep412Symbolic() {
  std::vector<std::string> names{"p", "q", "B", "f", "k0", "bt"};
  Poly P = Poly::variable(names, 0);
  Poly Q = Poly::variable(names, 1);
  Poly B = Poly::variable(names, 2);
  Poly F = Poly::variable(names, 3);
  Poly K0 = Poly::variable(names, 4);
  Poly Bt = Poly::variable(names, 5);
  Poly c4 = P * Rational(4) + Q * B * Rational(3);

  // b~^i-contraction of the halved y-gradient of the quadratic identity, with
  // the h-term eliminated through 3B(p+qB) h = (8p+9qB) f^2.
  Poly cLhs = B * c4 * K0 * F - c4 * F * (B * K0 + Bt * F) * Rational(2) +
              P * F * F * Bt * Rational(4);
  Poly c = cLhs + (P * Rational(8) + Q * B * Rational(9)) * F * F * Bt;
  Poly target = c4 * F * (F * Bt - B * K0);

  SymbolicStepReport rep;
  rep.residue = c - target;
  rep.pass = rep.residue.isZero();
  rep.detail =
      "the raised-1-form contraction of the gradient identity collapses to "
      "(4p+3qB) f (f bt - B k0) once h is eliminated";
  return rep;
}

Poly verifyStep412Instance(const ProofInstance& inst) {
  InstanceScalars sc = deriveInstance(inst);
  Rational h = step411H(inst.p, inst.q, sc.B, sc.f);
  Poly b2 = buildB2(inst, h);
  const auto& names = b2.names();
  Poly cy(names);
  for (int i = 0; i < inst.n; ++i) cy = cy + b2.derivative(i) * sc.bUp[i];
  cy = cy * ratFromLong(1, 2);

  Rational c4 = Rational(4) * inst.p + Rational(3) * inst.q * sc.B;
  Poly bt = linearForm(names, inst.btilde);
  Poly k0 = linearForm(names, inst.kgrad);
  Poly target = (bt * sc.f - k0 * sc.B) * (c4 * sc.f);
  return cy - target;
}

bool verifyCubicPositivityIdentity() {
  std::vector<std::string> names{"s", "B", "p", "q"};
  Poly S = Poly::variable(names, 0);
  Poly B = Poly::variable(names, 1);
  Poly P = Poly::variable(names, 2);
  Poly Q = Poly::variable(names, 3);

  Poly u = P * S + Q * S * S * S;
  Poly up = P + Q * S * S * Rational(3);
  Poly upp = Q * S * Rational(6);

  Poly lhs = u * u * ratFromLong(9, 2) - S * u * up * ratFromLong(3, 2) +
             (B - S * S) * (u * upp * ratFromLong(3, 2) - up * up);
  Poly rhs = P * ((P * Rational(4) + Q * B * Rational(3)) * S * S - P * B);
  return (lhs - rhs).isZero();
}

std::string caseOutcomeName(CaseOutcome o) {
  switch (o) {
    case CaseOutcome::CaseIHomothety:
      return "CaseI-homothety";
    case CaseOutcome::CaseIIInfeasible:
      return "CaseII-infeasible";
    case CaseOutcome::HypothesisFails:
      return "hypothesis-fails";
  }
  return "unknown";
}

CaseReport caseAnalysis(const ProofInstance& inst) {
  InstanceScalars sc = deriveInstance(inst);
  std::optional<Rational> h = solveForH(inst);

  CaseReport rep;
  if (!h) {
    rep.outcome = CaseOutcome::HypothesisFails;
    rep.detail =
        "no scalar h matches the quadratic identity, so the weak-isotropy "
        "consequence does not hold for this data and the conclusion is silent";
    return rep;
  }
  rep.h = h;

  if (sc.f == 0) {
    // Contraction with the raised 1-form forces h = 0, and then the remaining
    // form B(4p+3qB) k0^2 is a perfect square with nonzero coefficient.
    if (*h != 0) fail(ErrorKind::Domain, "internal contradiction: f = 0 forces h = 0");
    for (int i = 0; i < inst.n; ++i)
      if (inst.kgrad[i] != 0)
        fail(ErrorKind::Domain,
             "internal contradiction: f = 0 and h = 0 force a vanishing conformal gradient");
    rep.outcome = CaseOutcome::CaseIHomothety;
    rep.detail =
        "f = 0 forces h = 0, and B(4p+3qB) != 0 then forces every kappa_i = 0: "
        "the conformal factor has constant gradient zero (homothety)";
    return rep;
  }

  // f != 0: the matched h must agree with the closed form, and the gradient
  // identity forces kappa parallel to b~ (f b~_i = B kappa_i).
  Rational hStar = step411H(inst.p, inst.q, sc.B, sc.f);
  if (*h != hStar)
    fail(ErrorKind::Domain,
         "internal contradiction: matched h disagrees with (8p+9qB)f^2 / (3B(p+qB))");
  for (int i = 0; i < inst.n; ++i) {
    Rational v = sc.f * inst.btilde[i] - sc.B * inst.kgrad[i];
    if (v != 0)
      fail(ErrorKind::Domain,
           "internal contradiction: f b~_i - B kappa_i must vanish when f != 0");
  }

  rep.outcome = CaseOutcome::CaseIIInfeasible;
  if (inst.p == 0) {
    rep.detail =
        "kappa is parallel to b~ and the quadratic identity is consistent only "
        "because p = 0; the strong-convexity bracket p[(4p+3qB)s^2 - pB] then "
        "vanishes identically, so no strongly convex metric of this family exists";
  } else {
    rep.detail =
        "kappa is parallel to b~, and matching the a~(y,y) and (b~.y)^2 "
        "coefficients would require h = 4f^2/B and h = 3f^2/B at once; "
        "equivalently the nonzero positive-semidefinite form B a~(y,y) - (b~.y)^2 "
        "would have to vanish identically, impossible with f != 0";
  }
  return rep;
}

}  // namespace finsler
