#pragma once

#include <utility>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

// Spray and curvature pipeline. Everything is a pure function of the metric
// jets; the only floating-specific piece is the least-squares isotropy fit.

// Christoffel symbols of the Riemannian part: Gamma^l[i][j] at x.
template <class T>
std::vector<Mat<T>> christoffel(const RiemannSpec& A, const std::vector<T>& x) {
  const int n = A.n;
  const int vars = 2 * n;
  Mat<Jet<T>> aj = detail::matrixJets(A.a, x, 1, vars);
  Mat<T> a = matZero(n, n, likeZero(x[0]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = aj[i][j].value();
  if (!isPDApprox(a)) fail(ErrorKind::Definiteness, "a_ij not positive definite at this point");
  Mat<T> ainv = matInverse(a);

  // da[k][i][j] = d a_ij / d x^k
  std::vector<Mat<T>> da(static_cast<size_t>(n), matZero(n, n, likeZero(x[0])));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) da[k][i][j] = aj[i][j].derivative(varX(k)).value();

  T half = scalarFromRational<T>(Rational(1, 2));
  std::vector<Mat<T>> gamma(static_cast<size_t>(n), matZero(n, n, likeZero(x[0])));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        T acc = likeZero(x[0]);
        for (int m = 0; m < n; ++m) {
          T low = (da[i][m][j] + da[j][m][i] - da[m][i][j]) * half;
          acc = acc + ainv[l][m] * low;
        }
        gamma[l][i][j] = acc;
      }
    }
  }
  return gamma;
}

// Covariant-derivative data of beta with respect to alpha, contracted with y.
template <class T>
struct CovDerivBundle {
  Mat<T> rij, sij;      // r_ij symmetric, s_ij antisymmetric
  Mat<T> rUp, sUp;      // r^i_j, s^i_j
  std::vector<T> rvec;  // r_i = b^l r_li
  std::vector<T> svec;  // s_i = b^l s_li
  T rScalar;            // r = b^i r_i
  T r00, s0;            // r_ij y^i y^j, s_i y^i
  std::vector<T> sUp0;  // s^i_j y^j
  std::vector<T> braised;
  T B;
};

template <class T>
CovDerivBundle<T> covDerivBundle(const RiemannSpec& A, const OneFormSpec& Bf,
                                 const std::vector<T>& x, const std::vector<T>& y) {
  const int n = A.n;
  const int vars = 2 * n;
  T zero = likeZero(x[0]);
  auto gamma = christoffel(A, x);
  auto bj = detail::coefficientJets(Bf.b, x, 1, vars);

  Mat<T> a = matZero(n, n, zero);
  {
    Mat<Jet<T>> aj = detail::matrixJets(A.a, x, 0, vars);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = aj[i][j].value();
  }
  Mat<T> ainv = matInverse(a);

  Mat<T> nabla = matZero(n, n, zero);  // b_{i|j}
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      T acc = bj[i].derivative(varX(j)).value();
      for (int l = 0; l < n; ++l) acc = acc - gamma[l][i][j] * bj[l].value();
      nabla[i][j] = acc;
    }
  }

  CovDerivBundle<T> out;
  T half = scalarFromRational<T>(Rational(1, 2));
  out.rij = matZero(n, n, zero);
  out.sij = matZero(n, n, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.rij[i][j] = (nabla[i][j] + nabla[j][i]) * half;
      out.sij[i][j] = (nabla[i][j] - nabla[j][i]) * half;
    }
  }
  out.rUp = matMul(ainv, out.rij);
  out.sUp = matMul(ainv, out.sij);

  out.braised.assign(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.braised[i] = out.braised[i] + ainv[i][j] * bj[j].value();
  out.B = zero;
  for (int i = 0; i < n; ++i) out.B = out.B + out.braised[i] * bj[i].value();

  out.rvec.assign(static_cast<size_t>(n), zero);
  out.svec.assign(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      out.rvec[i] = out.rvec[i] + out.braised[l] * out.rij[l][i];
      out.svec[i] = out.svec[i] + out.braised[l] * out.sij[l][i];
    }
  }
  out.rScalar = zero;
  for (int i = 0; i < n; ++i) out.rScalar = out.rScalar + out.braised[i] * out.rvec[i];

  out.r00 = zero;
  out.s0 = zero;
  out.sUp0.assign(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i) {
    out.s0 = out.s0 + out.svec[i] * y[i];
    for (int j = 0; j < n; ++j) {
      out.r00 = out.r00 + out.rij[i][j] * y[i] * y[j];
      out.sUp0[i] = out.sUp0[i] + out.sUp[i][j] * y[j];
    }
  }
  return out;
}

// G^i = 1/4 g^{ij} ( [F^2]_{x^k y^j} y^k - [F^2]_{x^j} ), as jets.
template <class T>
std::vector<Jet<T>> sprayFromDefinition(const MetricSpec& M, const std::vector<T>& x,
                                        const std::vector<T>& y, int order) {
  const int n = dimension(M);
  const int vars = 2 * n;
  Jet<T> f2 = evalF2Jet(M, x, y, order + 2);
  auto yj = detail::yCoordinateJets(y, n, order, vars);

  Mat<Jet<T>> g;
  g.reserve(static_cast<size_t>(n));
  T half = scalarFromRational<T>(Rational(1, 2));
  std::vector<Jet<T>> dy;
  dy.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) dy.push_back(f2.derivative(varY(n, i)));
  for (int i = 0; i < n; ++i) {
    std::vector<Jet<T>> row;
    row.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) row.push_back(dy[i].derivative(varY(n, j)) * half);
    g.push_back(std::move(row));
  }
  Mat<Jet<T>> ginv = matInverse(g);

  std::vector<Jet<T>> rhs;
  rhs.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    Jet<T> acc = dy[j].derivative(varX(0)) * yj[0];
    for (int k = 1; k < n; ++k) acc += dy[j].derivative(varX(k)) * yj[k];
    acc -= f2.derivative(varX(j)).truncated(acc.order());
    rhs.push_back(std::move(acc));
  }

  T quarter = scalarFromRational<T>(Rational(1, 4));
  std::vector<Jet<T>> G;
  G.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Jet<T> acc = ginv[i][0] * rhs[0];
    for (int j = 1; j < n; ++j) acc += ginv[i][j] * rhs[j];
    G.push_back(acc * quarter);
  }
  return G;
}

// R^i_k = 2 G^i_{x^k} - G^i_{x^j y^k} y^j + 2 G^j G^i_{y^j y^k}
//         - G^i_{y^j} G^j_{y^k}, as jets of order (G order - 2).
template <class T>
Mat<Jet<T>> riemannJets(const std::vector<Jet<T>>& G, const std::vector<T>& y) {
  const int n = static_cast<int>(G.size());
  const int vars = G[0].vars();
  const int order = G[0].order() - 2;
  if (order < 0) fail(ErrorKind::Truncation, "Riemann curvature needs spray jets of order >= 2");
  auto yj = detail::yCoordinateJets(y, n, order, vars);
  T two = scalarFromRational<T>(Rational(2));

  std::vector<std::vector<Jet<T>>> Gy;  // Gy[i][j] = dG^i/dy^j
  Gy.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Jet<T>> row;
    for (int j = 0; j < n; ++j) row.push_back(G[i].derivative(varY(n, j)));
    Gy.push_back(std::move(row));
  }

  Mat<Jet<T>> R;
  R.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Jet<T>> row;
    for (int k = 0; k < n; ++k) {
      Jet<T> acc = G[i].derivative(varX(k)) * two;
      for (int j = 0; j < n; ++j) {
        acc -= G[i].derivative(varX(j)).derivative(varY(n, k)) * yj[j];
        acc += G[j].truncated(order) * Gy[i][j].derivative(varY(n, k)) * two;
        acc -= Gy[i][j].truncated(order + 1) * Gy[j][k].truncated(order + 1);
      }
      row.push_back(std::move(acc));
    }
    R.push_back(std::move(row));
  }
  return R;
}

template <class T>
struct CurvatureBundle {
  std::vector<T> G;
  Mat<T> R;
  T Ric;
  Mat<T> RicTensor;
  T scalarR;
};

// Full pipeline at one (x, y): spray jets to order 4, Riemann to order 2,
// Ricci tensor by y-differentiating the Ricci scalar, then r = g^{ij} Ric_ij.
template <class T>
CurvatureBundle<T> curvatureBundle(const MetricSpec& M, const std::vector<T>& x,
                                   const std::vector<T>& y) {
  const int n = dimension(M);
  auto G = sprayFromDefinition(M, x, y, 4);
  auto R = riemannJets(G, y);

  Jet<T> ric = R[0][0];
  for (int k = 1; k < n; ++k) ric += R[k][k];

  CurvatureBundle<T> out;
  out.G.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.G.push_back(G[i].value());
  out.R = matZero(n, n, likeZero(y[0]));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out.R[i][k] = R[i][k].value();
  out.Ric = ric.value();

  T half = scalarFromRational<T>(Rational(1, 2));
  out.RicTensor = matZero(n, n, likeZero(y[0]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.RicTensor[i][j] = ric.derivative(varY(n, i)).derivative(varY(n, j)).value() * half;

  Mat<T> g = fundamentalTensor(M, x, y);
  Mat<T> ginv = matInverse(g);
  T r = likeZero(y[0]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r = r + ginv[i][j] * out.RicTensor[i][j];
  out.scalarR = r;
  return out;
}

// Convenience single-quantity entry points.
template <class T>
Mat<T> riemannCurvature(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  const int n = dimension(M);
  auto G = sprayFromDefinition(M, x, y, 2);
  auto R = riemannJets(G, y);
  Mat<T> out = matZero(n, n, likeZero(y[0]));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out[i][k] = R[i][k].value();
  return out;
}

template <class T>
T ricci(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  const int n = dimension(M);
  auto G = sprayFromDefinition(M, x, y, 2);
  auto R = riemannJets(G, y);
  T acc = R[0][0].value();
  for (int k = 1; k < n; ++k) acc = acc + R[k][k].value();
  return acc;
}

template <class T>
Mat<T> ricciTensor(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  return curvatureBundle(M, x, y).RicTensor;
}

template <class T>
T scalarCurvature(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  return curvatureBundle(M, x, y).scalarR;
}

// (alpha,beta) spray: G^i = G_alpha^i + alpha Q s^i_0
//   + (-2 Q alpha s_0 + r_00)(Psi b^i + Theta y^i / alpha).
// Q = phi'/(phi - s phi'); Theta and Psi share the denominator
// (phi - s phi') + (B - s^2) phi''.
template <class T>
std::vector<T> sprayAlphaBeta(const CubicSpec& C, const std::vector<T>& x,
                              const std::vector<T>& y) {
  const int n = C.alpha.n;
  // phi - s phi' = (2/3) p s (p s + q s^3)^(-2/3), so the Q denominator
  // vanishes identically exactly when p = 0.
  if (C.p == 0)
    fail(ErrorKind::Singularity, "Q undefined: phi - s phi' vanishes identically when p = 0");
  CubicPoint<T> P = cubicPointData(C, x, y);
  CovDerivBundle<T> D = covDerivBundle(C.alpha, C.beta, x, y);
  PhiJet<T> phi = cubicPhiJet(C.p, C.q, P.s);

  T qden = phi.phi - P.s * phi.phi1;
  if (scalarIsZero(qden))
    fail(ErrorKind::Singularity, "Q undefined: phi - s phi' = 0 at s = " + scalarRepr(P.s));
  T Q = phi.phi1 * scalarRecip(qden);

  T bigden = qden + (P.B - P.s * P.s) * phi.phi2;
  if (scalarIsZero(bigden))
    fail(ErrorKind::Singularity,
         "Theta/Psi undefined: (phi - s phi') + (B - s^2) phi'' = 0 at s = " + scalarRepr(P.s));
  T two = scalarFromRational<T>(Rational(2));
  T theta = (phi.phi * phi.phi1 - P.s * (phi.phi * phi.phi2 + phi.phi1 * phi.phi1)) *
            scalarRecip(two * phi.phi * bigden);
  T psi = phi.phi2 * scalarRecip(two * bigden);

  auto gamma = christoffel(C.alpha, x);
  T half = scalarFromRational<T>(Rational(1, 2));

  std::vector<T> G;
  G.reserve(static_cast<size_t>(n));
  T common = D.r00 - two * Q * P.alpha * D.s0;
  T invAlpha = scalarRecip(P.alpha);
  for (int i = 0; i < n; ++i) {
    T galpha = likeZero(P.alpha);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) galpha = galpha + gamma[i][j][k] * y[j] * y[k];
    galpha = galpha * half;
    T gi = galpha + P.alpha * Q * D.sUp0[i] + common * (psi * P.braised[i] + theta * y[i] * invAlpha);
    G.push_back(gi);
  }
  return G;
}

// Lemma-style auxiliary scalars of the cubic phi at (x, y).
template <class T>
struct AuxBundle {
  T rho, rho0, rho1, rho2;
  T eps, delta, auxMu, tau, lambda;
  Mat<T> A;
  T Y2;        // A_ij y^i y^j; every downstream use of Y is through its square
  T Y;         // sqrt(Y2) when representable in T
  bool hasY = false;  // false only for exact scalars whose field lacks sqrt(Y2)
  T eta;
};

template <class T>
AuxBundle<T> auxQuantities(const CubicSpec& C, const std::vector<T>& x, const std::vector<T>& y) {
  const int n = C.alpha.n;
  // rho2 = -(4/9) p^2 s^2 (p s + q s^3)^(-4/3) for the cubic phi: inside the
  // cone (s != 0) it vanishes identically exactly when p = 0.
  if (C.p == 0) fail(ErrorKind::Singularity, "aux quantity eps undefined: rho2 = 0 when p = 0");
  CubicPoint<T> P = cubicPointData(C, x, y);
  PhiJet<T> f = cubicPhiJet(C.p, C.q, P.s);

  AuxBundle<T> out;
  out.rho = f.phi * (f.phi - P.s * f.phi1);
  out.rho0 = f.phi * f.phi2 + f.phi1 * f.phi1;
  out.rho1 = f.phi * f.phi1 - P.s * out.rho0;
  out.rho2 = P.s * (P.s * out.rho0 - f.phi * f.phi1);
  if (scalarIsZero(out.rho2))
    fail(ErrorKind::Singularity, "aux quantity eps undefined: rho2 = 0");
  if (scalarIsZero(out.rho))
    fail(ErrorKind::Singularity, "aux quantities undefined: rho = phi(phi - s phi') = 0");
  out.eps = out.rho1 * scalarRecip(out.rho2);
  T invRho = scalarRecip(out.rho);
  out.delta = (out.rho0 - out.eps * out.eps * out.rho2) * invRho;
  out.auxMu = out.rho2 * invRho;

  T one = likeOne(P.s);
  T denom = one + out.delta * P.B;
  if (scalarIsZero(denom))
    fail(ErrorKind::Singularity, "aux quantities undefined: 1 + delta B = 0");
  out.tau = out.delta * scalarRecip(denom);
  out.lambda = (out.eps - out.delta * P.s) * scalarRecip(denom);

  out.A = matZero(n, n, likeZero(P.s));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.A[i][j] = P.a[i][j] + out.delta * P.bvec[i] * P.bvec[j];
  out.Y2 = likeZero(P.s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.Y2 = out.Y2 + out.A[i][j] * y[i] * y[j];
  if (scalarSignApprox(out.Y2) < 0)
    fail(ErrorKind::Domain, "aux quantity Y undefined: A_ij y^i y^j < 0");
  T etaDen = one + out.Y2 * out.auxMu;
  if (scalarIsZero(etaDen))
    fail(ErrorKind::Singularity, "aux quantities undefined: 1 + Y^2 mu = 0");
  out.eta = out.auxMu * scalarRecip(etaDen);
  out.Y = likeZero(P.s);
  try {
    out.Y = scalarPowRational(out.Y2, Rational(1, 2));
    out.hasY = true;
  } catch (const Error&) {
    out.hasY = false;  // exact field without this square root; Y2 still exact
  }
  return out;
}

// Least-squares fit of r = n(n-1)(theta_i y^i / F + mu) over samples.
struct IsotropyFit {
  std::vector<double> theta;
  double isoMu = 0;
  double residual = 0;
};

IsotropyFit fitWeaklyIsotropic(const std::vector<std::vector<double>>& ys,
                               const std::vector<double>& rValues,
                               const std::vector<double>& fValues, int n);

}  // namespace finsler
