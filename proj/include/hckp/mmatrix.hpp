#pragma once
// Fibre Weyl-Titchmarsh M-matrices for the three-edge period cell, the
// z-dependent boundary matrix of the intermediate operator on the modified
// graph, and the small-eps asymptotics of their inverses.
//
// Vertex order: V1 joins e1(0) and e3(end); V2 joins e1(end) and e2(0);
// V3 joins e2(end) and e3(0).  Stiff phases use the reduced quasimomentum
// tau = eps*t, which equals eps*l_j*t up to the 2pi reduction.

#include <hckp/core.hpp>

namespace hckp {

// M-matrix of the fibre operator before rescaling the soft edge.  Soft
// entries carry the small factor a2 = eps^2 through sqrt(a2) = eps.
inline Matrix3 m1(const SpectralPoint& sp, const Quasimomentum& q, const CellParams& c) {
  const complex k = sp.k;
  const double e = c.eps;
  const double sa1 = std::sqrt(c.a1), sa3 = std::sqrt(c.a3);
  const complex th1 = k * e * c.l1 / sa1;
  const complex th2 = k * c.l2;  // eps*l2 / sqrt(eps^2)
  const complex th3 = k * e * c.l3 / sa3;
  check_sine_regular(th1, "stiff edge 1");
  check_sine_regular(th2, "soft edge");
  check_sine_regular(th3, "stiff edge 3");

  const complex p1 = std::exp(iu * (c.l1 * q.tau));
  const complex p2 = std::exp(iu * (c.l2 * q.tau));
  const complex p3 = std::exp(iu * (c.l3 * q.tau));

  Matrix3 m;
  m(0, 0) = -sa1 * k * cot(th1) - sa3 * k * cot(th3);
  m(0, 1) = sa1 * p1 * k * csc(th1);
  m(0, 2) = sa3 * std::conj(p3) * k * csc(th3);
  m(1, 0) = sa1 * std::conj(p1) * k * csc(th1);
  m(1, 1) = -sa1 * k * cot(th1) - e * k * cot(th2);
  m(1, 2) = e * p2 * k * csc(th2);
  m(2, 0) = sa3 * p3 * k * csc(th3);
  m(2, 1) = e * std::conj(p2) * k * csc(th2);
  m(2, 2) = -e * k * cot(th2) - sa3 * k * cot(th3);
  return m;
}

// M-matrix after the soft edge is rescaled to length l2 with coefficient 1.
// The boundary triple scales the soft traces by sqrt(eps), which reproduces
// the same matrix entrywise; kept separate because the two graphs carry
// different boundary parameterisations downstream.
inline Matrix3 m2(const SpectralPoint& sp, const Quasimomentum& q, const CellParams& c) {
  const complex k = sp.k;
  const double e = c.eps;
  const double sa1 = std::sqrt(c.a1), sa3 = std::sqrt(c.a3);
  const complex th1 = k * e * c.l1 / sa1;
  const complex th2 = k * c.l2;
  const complex th3 = k * e * c.l3 / sa3;
  check_sine_regular(th1, "stiff edge 1");
  check_sine_regular(th2, "soft edge");
  check_sine_regular(th3, "stiff edge 3");

  const complex p1 = std::exp(iu * (c.l1 * q.tau));
  const complex p2 = std::exp(iu * (c.l2 * q.tau));
  const complex p3 = std::exp(iu * (c.l3 * q.tau));

  Matrix3 m;
  m(0, 0) = -sa1 * k * cot(th1) - sa3 * k * cot(th3);
  m(0, 1) = sa1 * p1 * k * csc(th1);
  m(0, 2) = sa3 * std::conj(p3) * k * csc(th3);
  m(1, 0) = sa1 * std::conj(p1) * k * csc(th1);
  m(1, 1) = -sa1 * k * cot(th1) - e * k * cot(th2);
  m(1, 2) = e * p2 * k * csc(th2);
  m(2, 0) = sa3 * p3 * k * csc(th3);
  m(2, 1) = e * std::conj(p2) * k * csc(th2);
  m(2, 2) = -e * k * cot(th2) - sa3 * k * cot(th3);
  return m;
}

// Boundary matrix Btilde(z) - Mtilde(z) of the intermediate operator on the
// modified graph, whose Krein denominator is the negative of this matrix.
// Requires matching stiff coefficients.
inline Matrix3 mtilde_minus_b(const SpectralPoint& sp, const Quasimomentum& q,
                              const CellParams& c) {
  const double a = c.stiff_a();
  const double sa = std::sqrt(a);
  const complex k = sp.k;
  const double e = c.eps;
  const double L = c.coupling();
  const complex th1 = k * e * c.l1 / sa;
  const complex th2 = k * c.l2;
  const complex th3 = k * e * c.l3 / sa;
  check_sine_regular(th1, "stiff edge 1");
  check_sine_regular(th2, "soft edge");
  check_sine_regular(th3, "stiff edge 3");

  const complex C = sa * k * (cot(th1) + cot(th3));
  const complex S = sa * k * (csc(th1) + csc(th3));
  const complex ph3 = std::exp(iu * (c.l3 * q.tau));
  const complex phL = std::exp(iu * (L * q.tau));
  const complex k2 = k * k;
  const double se = std::sqrt(e);

  Matrix3 m = Matrix3::Zero();
  m(0, 0) = -C;
  m(2, 2) = -C;
  m(0, 2) = std::conj(ph3) * S;
  m(2, 0) = ph3 * S;
  m(1, 1) = 2.0 * k * (std::cos(q.tau) - std::cos(th2)) * csc(th2) + 2.0 * k2 * L;
  m(1, 2) = -se * k2 * L * std::conj(phL);
  m(2, 1) = -se * k2 * L * phL;
  return m;
}

// Reduced dispersion denominator D(k): the factor whose zeros are the
// limiting Bloch spectrum of the soft problem.
inline complex dispersion_denominator(complex k, double tau, const CellParams& c) {
  const complex th2 = k * c.l2;
  check_sine_regular(th2, "soft edge");
  const double L = c.coupling();
  return k * k * L - 2.0 * k * cot(th2) + 2.0 * k * std::cos(tau) * csc(th2);
}

// Leading term of eps * det m1 as eps -> 0 at fixed k, tau.
inline complex det_m1_asymptotic(const SpectralPoint& sp, double tau, const CellParams& c) {
  const complex k = sp.k;
  const complex th2 = k * c.l2;
  check_sine_regular(th2, "soft edge");
  const double L = c.coupling();
  return (c.a1 * c.a3 / (c.l1 * c.l3)) * k *
         (2.0 * csc(th2) * std::cos(tau) + k * L - 2.0 * cot(th2));
}

// Coefficients of an expansion in powers of eps:
//   inv ~ m_minus1 / eps + m_0 + eps * m_1.
struct MAsymptotics {
  Matrix3 m_minus1 = Matrix3::Zero();
  Matrix3 m_0 = Matrix3::Zero();
  Matrix3 m_1 = Matrix3::Zero();
  int order = 0;  // highest power of eps provided
};

// Leading term of (m2)^{-1}: rank one, (eps D)^{-1} times a phase matrix
// with eigenvalue 3 on (conj(p3), conj(pL), 1).
inline MAsymptotics m2_inverse_asymptotics(const SpectralPoint& sp, const Quasimomentum& q,
                                           const CellParams& c) {
  const complex D = dispersion_denominator(sp.k, q.tau, c);
  if (std::abs(D) < 1e-8)
    throw NearSingularDispersion("reduced dispersion denominator too small");
  const complex p1 = std::exp(iu * (c.l1 * q.tau));
  const complex p3 = std::exp(iu * (c.l3 * q.tau));
  const complex pL = std::exp(iu * (c.coupling() * q.tau));

  MAsymptotics out;
  out.order = -1;
  Matrix3& P = out.m_minus1;
  P(0, 0) = 1.0;          P(0, 1) = p1;            P(0, 2) = std::conj(p3);
  P(1, 0) = std::conj(p1); P(1, 1) = 1.0;          P(1, 2) = std::conj(pL);
  P(2, 0) = p3;            P(2, 1) = pL;           P(2, 2) = 1.0;
  P /= D;
  return out;
}

// Three-term expansion of (mtilde_minus_b)^{-1} = -(Krein denominator)^{-1}
// sign convention: this returns the expansion of the inverse of the matrix
// produced by mtilde_minus_b itself.  The eps^0 block carries the
// sqrt(eps)-scaled soft couplings; corners at order eps were obtained by
// block elimination of the exact matrix and are validated to O(eps^3)
// against a dense inverse in the tests.
inline MAsymptotics mtb_inverse_asymptotics(const SpectralPoint& sp, const Quasimomentum& q,
                                            const CellParams& c) {
  const double a = c.stiff_a();
  const complex k = sp.k;
  const double L = c.coupling();
  const complex D = dispersion_denominator(k, q.tau, c);
  if (std::abs(D) < 1e-8)
    throw NearSingularDispersion("reduced dispersion denominator too small");

  const complex p1 = std::exp(iu * (c.l1 * q.tau));
  const complex p3 = std::exp(iu * (c.l3 * q.tau));
  const complex pL = std::exp(iu * (L * q.tau));
  const complex k2 = k * k;
  const complex P2 = k2 * L;

  MAsymptotics out;
  out.order = 1;

  const complex r = 1.0 / P2 + 1.0 / D;
  Matrix3& A = out.m_minus1;
  A(0, 0) = r;
  A(0, 2) = r * std::conj(p3);
  A(2, 0) = r * p3;
  A(2, 2) = r;

  const double ise = 1.0 / std::sqrt(c.eps);
  Matrix3& B = out.m_0;
  B(0, 1) = ise * p1 / D;
  B(1, 0) = ise * std::conj(p1) / D;
  B(1, 1) = 1.0 / D;
  B(1, 2) = ise * std::conj(pL) / D;
  B(2, 1) = ise * pL / D;

  const complex sigma = a * L / (c.l1 * c.l3);
  const complex rho = k2 * k2 * (std::pow(c.l1, 3) + std::pow(c.l3, 3)) / (24.0 * a);
  const complex qq = P2 * P2 / (4.0 * sigma) + 2.0 * rho;
  const complex w = -2.0 * rho / (P2 * P2) - qq / (D * D);
  Matrix3& C = out.m_1;
  C(0, 0) = w - 1.0 / (4.0 * sigma) + P2 / (3.0 * sigma * D);
  C(0, 2) = std::conj(p3) * (w + 1.0 / (4.0 * sigma) - P2 / (6.0 * sigma * D));
  C(2, 0) = p3 * (w + 1.0 / (4.0 * sigma) - P2 / (6.0 * sigma * D));
  C(2, 2) = w - 1.0 / (4.0 * sigma) - 2.0 * P2 / (3.0 * sigma * D);
  return out;
}

}  // namespace hckp
