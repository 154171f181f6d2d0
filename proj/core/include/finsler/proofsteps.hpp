#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/poly.hpp"
#include "finsler/rational.hpp"

namespace finsler {

// Exact rational data for one base point of the homothety derivation:
// a Minkowski (alpha,beta) pair (atilde, btilde), the kappa-gradient, and the
// cubic parameters. Everything downstream is exact polynomial algebra in y.
struct ProofInstance {
  int n = 0;
  Mat<Rational> atilde;
  std::vector<Rational> btilde;
  std::vector<Rational> kgrad;
  Rational p, q;
};

struct InstanceScalars {
  Mat<Rational> ainv;
  std::vector<Rational> bUp;  // btilde raised
  std::vector<Rational> kUp;  // kgrad raised
  Rational B;                 // btilde^i btilde_i
  Rational f;                 // btilde_i k^i
};

// Validates (symmetric, exactly positive definite, p + qB != 0,
// 4p + 3qB != 0) and computes the raised/contracted scalars.
InstanceScalars deriveInstance(const ProofInstance& inst);

// The quadratic-in-y polynomial
//   B(4p+3qB) k0^2 - 4(4p+3qB) bt k0 f + 4p a2 f^2 - h [pB a2 - (4p+3qB) bt^2]
// with k0 = kgrad.y, bt = btilde.y, a2 = atilde(y,y). Variables y1..yn, and a
// trailing h variable in the symbolic overload.
Poly buildB2(const ProofInstance& inst, const Rational& h);
Poly buildB2Symbolic(const ProofInstance& inst);

// The unique rational h making buildB2(inst, h) identically zero, if any:
// coefficient matching of two quadratic forms. Errors when gamma is the zero
// form (degenerate instance).
std::optional<Rational> solveForH(const ProofInstance& inst);

// h = (8p+9qB) f^2 / (3B(p+qB)); errors when 3B(p+qB) = 0.
Rational step411H(const Rational& p, const Rational& q, const Rational& B, const Rational& f);

struct SymbolicStepReport {
  bool pass = false;
  Poly residue;  // zero polynomial iff pass
  std::string detail;
};

// Contracting the y-Hessian of buildB2 with btilde^i btilde^j equals
// 2Bf^2[4p - 3(4p+3qB)] + 6B^2 h (p+qB), and that display vanishes iff
// Bf^2(8p+9qB) = 3B^2 h (p+qB). Checked as exact identities in Q[p,q,B,f,h].
SymbolicStepReport verifyStep410Symbolic();

// Same contraction computed from the actual polynomial pipeline on exact
// instance data, compared term-for-term against the symbolic display.
bool verifyStep410Instance(const ProofInstance& inst);

// The btilde^i-contraction of the halved y-gradient of buildB2 at
// h = step411H reduces to (4p+3qB) f (f bt - B k0); the returned residue is
// the difference and must be the zero polynomial.
SymbolicStepReport verifyStep412Symbolic();
Poly verifyStep412Instance(const ProofInstance& inst);  // residue, linear in y

// (9/2)u^2 - (3/2)s u u' + (B-s^2)[(3/2)u u'' - u'^2] == p[(4p+3qB)s^2 - pB]
// for u = ps+qs^3, as an exact identity in Q[s,B,p,q]. This ties the
// positive-definiteness criterion to its bracket form.
bool verifyCubicPositivityIdentity();

enum class CaseOutcome { CaseIHomothety, CaseIIInfeasible, HypothesisFails };

std::string caseOutcomeName(CaseOutcome o);

struct CaseReport {
  CaseOutcome outcome = CaseOutcome::HypothesisFails;
  std::optional<Rational> h;
  std::string detail;
};

// Full case split: solveForH, then either the kappa-gradient is forced to
// vanish (Case I), or the f != 0 branch is certified infeasible, or the
// hypothesis fails (no h exists) and the derivation is silent.
CaseReport caseAnalysis(const ProofInstance& inst);

}  // namespace finsler
