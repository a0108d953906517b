#pragma once
// Resolvents through the boundary-triple route: per-edge Dirichlet solves
// with quasimomentum-twisted derivatives, the Krein formula for the fibre
// operator and for the intermediate operator on the modified graph, the
// rank-one corrector carried by the stiff profile, and the resolvent of
// the homogenised model on L2(soft edge) + C.
//
// Edge conventions: an edge of length L with coefficient a carries the
// twisted derivative d = a (u' + i t u) where t is the quasimomentum
// density (t on stiff edges, tau on the rescaled soft edge).  Dirichlet
// solutions are built from the kernel
//   sin(k x_< / sqrt a) sin(k (L - x_>) / sqrt a) / (sqrt a k sin(k L / sqrt a))
// conjugated by e^{-itx}, evaluated with two fourth-order cumulative
// integrals; endpoint traces come from the same integrals.

#include <hckp/core.hpp>
#include <hckp/mmatrix.hpp>

namespace hckp {

struct EdgeSolve {
  EdgeFunction u;
  complex d0 = 0.0;  // twisted derivative a (u' + itu) at x = 0
  complex dL = 0.0;  // same at x = L
};

// Dirichlet resolvent on a single edge: solves
//   -(d/dx + it) a (d/dx + it) u - z u = f,  u(0) = u(L) = 0.
inline EdgeSolve dirichlet_edge_solve(const EdgeFunction& f, const SpectralPoint& sp,
                                      double a, double tdens) {
  const complex k = sp.k;
  const double sa = std::sqrt(a);
  const double L = f.length;
  const complex thL = k * L / sa;
  check_sine_regular(thL, "edge Dirichlet solve");

  const int n = f.n;
  const double h = f.h();
  std::vector<complex> g1(n + 1), g2(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = f.x(i);
    const complex gx = std::exp(iu * (tdens * x)) * f.samples[i];
    g1[i] = std::sin(k * x / sa) * gx;
    g2[i] = std::sin(k * (L - x) / sa) * gx;
  }
  const std::vector<complex> C1 = cumulative_integral(g1, h);
  const std::vector<complex> C2 = cumulative_integral_reverse(g2, h);

  EdgeSolve out;
  out.u = f;
  const complex pref = 1.0 / (sa * k * std::sin(thL));
  for (int i = 0; i <= n; ++i) {
    const double x = f.x(i);
    out.u.samples[i] = std::exp(-iu * (tdens * x)) * pref *
                       (std::sin(k * (L - x) / sa) * C1[i] + std::sin(k * x / sa) * C2[i]);
  }
  out.d0 = C2[0] / std::sin(thL);
  out.dL = -std::exp(-iu * (tdens * L)) * C1[n] / std::sin(thL);
  return out;
}

// Solution of the homogeneous equation on one edge with prescribed endpoint
// values u(0) = v0, u(L) = vL, plus its twisted derivative traces.
inline EdgeSolve homogeneous_edge_solution(EdgeId edge, double L, int n, const SpectralPoint& sp,
                                           double a, double tdens, complex v0, complex vL) {
  const complex k = sp.k;
  const double sa = std::sqrt(a);
  const complex thL = k * L / sa;
  check_sine_regular(thL, "edge extension solve");

  const complex beta = vL * std::exp(iu * (tdens * L));
  EdgeSolve out;
  out.u = make_edge(edge, L, n);
  const complex inv_sin = 1.0 / std::sin(thL);
  for (int i = 0; i <= n; ++i) {
    const double x = out.u.x(i);
    out.u.samples[i] = std::exp(-iu * (tdens * x)) * inv_sin *
                       (v0 * std::sin(k * (L - x) / sa) + beta * std::sin(k * x / sa));
  }
  out.d0 = sa * k * (beta * csc(thL) - v0 * cot(thL));
  out.dL = std::exp(-iu * (tdens * L)) * sa * k * (beta * cot(thL) - v0 * csc(thL));
  return out;
}

enum class GraphKind { original, modified };

namespace detail {

struct CellSolve {
  EdgeSolve s1, s2, s3;
};

inline void check_uniform_grid(const StateVector& f) {
  if (f.c1.n != f.c2.n || f.c1.n != f.c3.n)
    throw GridMismatch("cell state needs the same interval count on all edges");
}

// Per-edge Dirichlet resolvent on the rescaled cell: stiff edges keep the
// quasimomentum density t, the soft edge (length l2, coefficient 1) carries
// the reduced density tau.
inline CellSolve dirichlet_cell_solve(const StateVector& f, const SpectralPoint& sp,
                                      const Quasimomentum& q, const CellParams& c) {
  if (!f.rescaled) throw GridMismatch("resolvents act on the rescaled cell");
  check_uniform_grid(f);
  CellSolve out;
  out.s1 = dirichlet_edge_solve(f.c1, sp, c.a1, q.t);
  out.s2 = dirichlet_edge_solve(f.c2, sp, 1.0, q.tau);
  out.s3 = dirichlet_edge_solve(f.c3, sp, c.a3, q.t);
  return out;
}

// Boundary map applied to a Dirichlet solution: sums of outward twisted
// derivatives per vertex; the soft contributions of the original graph
// carry the sqrt(eps) trace weight.
inline Vector3 gamma1_traces(const CellSolve& v, const Quasimomentum& q, const CellParams& c,
                             GraphKind graph) {
  Vector3 g;
  if (graph == GraphKind::original) {
    const double se = std::sqrt(c.eps);
    g(0) = v.s1.d0 - v.s3.dL;
    g(1) = -v.s1.dL + se * v.s2.d0;
    g(2) = -se * v.s2.dL + v.s3.d0;
  } else {
    const double L = c.coupling();
    const complex wconj = std::exp(-iu * (L * q.tau));
    g(0) = v.s1.d0 - v.s3.dL;
    g(1) = v.s2.d0 - wconj * v.s2.dL;
    g(2) = v.s3.d0 - std::conj(wconj) * v.s1.dL;
  }
  return g;
}

}  // namespace detail

// Solution operator of the boundary problem: the function in the kernel of
// (expression - z) whose boundary data equals bd under the graph's
// parameterisation.  Grids follow the template state.
inline StateVector gamma_solution(const Vector3& bd, const SpectralPoint& sp,
                                  const Quasimomentum& q, const CellParams& c,
                                  GraphKind graph, int n) {
  EdgeSolve s1, s2, s3;
  if (graph == GraphKind::original) {
    const double se = std::sqrt(c.eps);
    s1 = homogeneous_edge_solution(EdgeId::e1, c.eps * c.l1, n, sp, c.a1, q.t, bd(0), bd(1));
    s2 = homogeneous_edge_solution(EdgeId::e2, c.l2, n, sp, 1.0, q.tau, se * bd(1), se * bd(2));
    s3 = homogeneous_edge_solution(EdgeId::e3, c.eps * c.l3, n, sp, c.a3, q.t, bd(2), bd(0));
  } else {
    const double L = c.coupling();
    const complex ws = std::exp(iu * (L * q.tau));   // stiff-side weight
    const complex wf = std::conj(ws);                // soft-side weight
    s1 = homogeneous_edge_solution(EdgeId::e1, c.eps * c.l1, n, sp, c.a1, q.t, bd(0), wf * bd(2));
    s2 = homogeneous_edge_solution(EdgeId::e2, c.l2, n, sp, 1.0, q.tau, bd(1), ws * bd(1));
    s3 = homogeneous_edge_solution(EdgeId::e3, c.eps * c.l3, n, sp, c.a3, q.t, bd(2), bd(0));
  }
  StateVector u;
  u.c1 = s1.u;
  u.c2 = s2.u;
  u.c3 = s3.u;
  u.rescaled = true;
  return u;
}

namespace detail {

inline void check_denominator(const Matrix3& den) {
  Eigen::JacobiSVD<Matrix3> svd(den);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0 || s(2) < 1e-10 * s(0))
    throw SingularDenominator("Krein denominator is numerically singular");
}

}  // namespace detail

// Krein-formula resolvent of the fibre operator (coupled vertex conditions,
// boundary parameter zero) on the rescaled cell.
inline StateVector fibre_resolvent(const StateVector& f, const SpectralPoint& sp,
                                   const Quasimomentum& q, const CellParams& c) {
  detail::CellSolve v = detail::dirichlet_cell_solve(f, sp, q, c);
  const Vector3 g = detail::gamma1_traces(v, q, c, GraphKind::original);
  const Matrix3 den = -m2(sp, q, c);
  detail::check_denominator(den);
  const Vector3 bd = den.fullPivLu().solve(g);
  StateVector w = gamma_solution(bd, sp, q, c, GraphKind::original, f.c1.n);
  StateVector out;
  out.c1 = v.s1.u;
  out.c2 = v.s2.u;
  out.c3 = v.s3.u;
  out.rescaled = true;
  for (int i = 0; i <= out.c1.n; ++i) out.c1.samples[i] += w.c1.samples[i];
  for (int i = 0; i <= out.c2.n; ++i) out.c2.samples[i] += w.c2.samples[i];
  for (int i = 0; i <= out.c3.n; ++i) out.c3.samples[i] += w.c3.samples[i];
  return out;
}

// Krein-formula resolvent of the intermediate operator on the modified
// graph, with its z-dependent boundary parameter.
inline StateVector intermediate_resolvent(const StateVector& f, const SpectralPoint& sp,
                                          const Quasimomentum& q, const CellParams& c) {
  detail::CellSolve v = detail::dirichlet_cell_solve(f, sp, q, c);
  const Vector3 g = detail::gamma1_traces(v, q, c, GraphKind::modified);
  const Matrix3 den = -mtilde_minus_b(sp, q, c);
  detail::check_denominator(den);
  const Vector3 bd = den.fullPivLu().solve(g);
  StateVector w = gamma_solution(bd, sp, q, c, GraphKind::modified, f.c1.n);
  StateVector out;
  out.c1 = v.s1.u;
  out.c2 = v.s2.u;
  out.c3 = v.s3.u;
  out.rescaled = true;
  for (int i = 0; i <= out.c1.n; ++i) out.c1.samples[i] += w.c1.samples[i];
  for (int i = 0; i <= out.c2.n; ++i) out.c2.samples[i] += w.c2.samples[i];
  for (int i = 0; i <= out.c3.n; ++i) out.c3.samples[i] += w.c3.samples[i];
  return out;
}

// ---------------------------------------------------------------------------
// Stiff profile: the normalised plane-wave-like state supported on the two
// stiff edges.  X is e^{-itx} on e1 and e^{it(eps l3 - x)} on e3; psi is X
// scaled to unit norm with the phase e^{i l1 tau} fixed by the vertex V2.

struct StiffProfile {
  EdgeFunction x1, x3;      // the profile X on e1 and e3
  EdgeFunction psi1, psi3;  // normalised psi on e1 and e3
};

inline StiffProfile stiff_profile(const Quasimomentum& q, const CellParams& c, int n) {
  StiffProfile p;
  p.x1 = sample_edge(EdgeId::e1, c.eps * c.l1, n,
                     [&](double x) { return std::exp(-iu * (q.t * x)); });
  p.x3 = sample_edge(EdgeId::e3, c.eps * c.l3, n,
                     [&](double x) { return std::exp(iu * (q.t * (c.eps * c.l3 - x))); });
  const double amp = 1.0 / std::sqrt(c.eps * c.coupling());
  const complex ph = amp * std::exp(iu * (c.l1 * q.tau));
  p.psi1 = p.x1;
  p.psi3 = p.x3;
  for (auto& v : p.psi1.samples) v *= ph;
  for (auto& v : p.psi3.samples) v *= ph;
  return p;
}

// Rank-one spectral corrector: f -> (eps z (l1+l3))^{-1} <f, X> X on the
// stiff edges, zero on the soft edge.  Equals z^{-1} <f, psi> psi.
inline StateVector corrector_apply(const StateVector& f, const SpectralPoint& sp,
                                   const Quasimomentum& q, const CellParams& c) {
  if (std::abs(sp.z) < 1e-14) throw DomainError("corrector undefined at z = 0");
  detail::check_uniform_grid(f);
  const StiffProfile p = stiff_profile(q, c, f.c1.n);
  const complex coef =
      (inner(f.c1, p.x1) + inner(f.c3, p.x3)) / (c.eps * sp.z * c.coupling());
  StateVector out = f;
  for (int i = 0; i <= out.c1.n; ++i) out.c1.samples[i] = coef * p.x1.samples[i];
  for (size_t i = 0; i < out.c2.samples.size(); ++i) out.c2.samples[i] = 0.0;
  for (int i = 0; i <= out.c3.n; ++i) out.c3.samples[i] = coef * p.x3.samples[i];
  return out;
}

// ---------------------------------------------------------------------------
// Homogenised model on L2(0, l2) + C.  Domain states couple the endpoint
// values through u(0) = w u(l2) with w = e^{-i(l1+l3)tau}, and the scalar
// channel carries beta = sqrt(l1+l3) u(0).  The resolvent solves
//   (-i d/dx + tau)^2 u - z u = f
// with the Robin-type vertex condition
//   d(0) - w d(l2) + z (l1+l3) u(0) = -sqrt(l1+l3) beta_f,
// where d = u' + i tau u.

struct HomState {
  EdgeFunction u;
  complex beta = 0.0;
};

inline complex inner(const HomState& a, const HomState& b) {
  return inner(a.u, b.u) + a.beta * std::conj(b.beta);
}

inline double norm(const HomState& a) {
  double s = std::real(inner(a, a));
  return std::sqrt(std::max(0.0, s));
}

inline HomState hom_resolvent(const HomState& rhs, const SpectralPoint& sp, double tau,
                              const CellParams& c) {
  const complex k = sp.k;
  if (std::abs(k) < 1e-12) throw DomainError("homogenised resolvent needs z away from 0");
  const double L = c.coupling();
  const double l2 = c.l2;
  const EdgeFunction& f = rhs.u;
  if (std::abs(f.length - l2) > 1e-12)
    throw GridMismatch("homogenised state must live on the soft edge length");

  const int n = f.n;
  const double h = f.h();
  // Particular solution by variation of parameters after stripping the
  // phase: w(x) = e^{i tau x} u(x) solves -w'' - z w = g, g = e^{i tau x} f.
  std::vector<complex> gc(n + 1), gs(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = f.x(i);
    const complex g = std::exp(iu * (tau * x)) * f.samples[i];
    gc[i] = std::cos(k * x) * g;
    gs[i] = std::sin(k * x) * g;
  }
  const std::vector<complex> Ic = cumulative_integral(gc, h);
  const std::vector<complex> Is = cumulative_integral(gs, h);

  auto wp = [&](int i) {
    const double x = f.x(i);
    return -(std::sin(k * x) * Ic[i] - std::cos(k * x) * Is[i]) / k;
  };
  auto dwp = [&](int i) {
    const double x = f.x(i);
    return -(std::cos(k * x) * Ic[i] + std::sin(k * x) * Is[i]);
  };

  const complex w = std::exp(-iu * (L * tau));
  const complex phi_p = std::exp(-iu * (tau * l2)) * std::exp(iu * (k * l2));
  const complex phi_m = std::exp(-iu * (tau * l2)) * std::exp(-iu * (k * l2));
  const complex up_l2 = std::exp(-iu * (tau * l2)) * wp(n);
  const complex dup_l2 = std::exp(-iu * (tau * l2)) * dwp(n);

  // Unknown coefficients (cp, cm) of e^{-i tau x} e^{+- i k x}.
  Eigen::Matrix2cd A;
  Eigen::Vector2cd b;
  A(0, 0) = 1.0 - w * phi_p;
  A(0, 1) = 1.0 - w * phi_m;
  b(0) = w * up_l2;
  const complex zL = sp.z * L;
  A(1, 0) = iu * k - w * iu * k * phi_p + zL;
  A(1, 1) = -iu * k + w * iu * k * phi_m + zL;
  b(1) = w * dup_l2 - std::sqrt(L) * rhs.beta;

  const complex det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  double scale = std::max({std::abs(A(0, 0)) * std::abs(A(1, 1)),
                           std::abs(A(0, 1)) * std::abs(A(1, 0)), 1e-30});
  if (std::abs(det) < 1e-8 * scale)
    throw SingularDenominator("homogenised boundary system is numerically singular");
  const complex cp = (b(0) * A(1, 1) - A(0, 1) * b(1)) / det;
  const complex cm = (A(0, 0) * b(1) - b(0) * A(1, 0)) / det;

  HomState out;
  out.u = f;
  for (int i = 0; i <= n; ++i) {
    const double x = f.x(i);
    const complex ph = std::exp(-iu * (tau * x));
    out.u.samples[i] =
        ph * (wp(i) + cp * std::exp(iu * (k * x)) + cm * std::exp(-iu * (k * x)));
  }
  out.beta = std::sqrt(L) * out.u.samples[0];
  return out;
}

// ---------------------------------------------------------------------------
// Operator-norm estimation for sampled maps: the largest singular value of
// the difference of two matrices whose columns are images of an orthonormal
// basis, rows weighted by quadrature.  Dense SVD up to 1024 columns, power
// iteration beyond.

inline double power_iteration_norm(const Eigen::MatrixXcd& d, double tol = 1e-8,
                                   int maxit = 10000) {
  if (d.cols() == 0 || d.rows() == 0) return 0.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(d.cols());
  v.normalize();
  double s_prev = 0.0;
  for (int it = 0; it < maxit; ++it) {
    Eigen::VectorXcd wv = d.adjoint() * (d * v);
    double nn = wv.norm();
    if (nn == 0.0) return 0.0;
    v = wv / nn;
    double s = std::sqrt(nn);
    if (it > 2 && std::abs(s - s_prev) <= tol * std::max(1.0, s)) return s;
    s_prev = s;
  }
  throw NonConvergence("power iteration for the operator norm did not settle");
}

inline double opnorm_diff(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw GridMismatch("operator matrices have different shapes");
  Eigen::MatrixXcd d = lhs - rhs;
  if (d.cols() <= 1024 && d.rows() <= 4096) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(d);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  }
  return power_iteration_norm(d);
}

}  // namespace hckp
