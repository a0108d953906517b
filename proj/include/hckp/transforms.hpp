#pragma once
// Unitary bookkeeping between the spaces in play: the Gelfand transform
// (scaled and unscaled variants) on sampled line data, the soft-edge
// rescaling, and the identification of the effective subspace
// span(psi) + soft with L2(soft) + C.

#include <hckp/core.hpp>
#include <hckp/resolvent.hpp>

namespace hckp {

// ---------------------------------------------------------------------------
// Unscaled Gelfand transform.  Input: samples of a function supported on
// whole cells [cell_lo, cell_lo + ncells) x [0,1) with ny samples per unit
// cell; the truncation window is [-N, N+1).  Output: u_hat(y_i, kappa_j)
// with y_i = i/ny and kappa_j = 2 pi j / nk on [0, 2 pi).
//
//   u_hat(y, kappa) = (2 pi)^{-1/2} sum_n u(y + n) e^{-i kappa (y + n)}
//
// The inverse integral over kappa becomes an exact finite sum once
// nk >= number of occupied cells, by the geometric-sum identity.

struct GelfandSample {
  int N = 0;        // truncation: cells n = -N .. N
  int cell_lo = 0;  // first occupied cell of the input data
  int ny = 0;
  int nk = 0;
  Eigen::MatrixXcd u_hat;  // ny rows, nk columns
};

inline GelfandSample gelfand(const std::vector<complex>& u, int cell_lo, int N, int ny,
                             int nk) {
  if (ny < 1 || nk < 1) throw DomainError("gelfand needs positive sample counts");
  if (u.size() % static_cast<size_t>(ny) != 0)
    throw DomainError("line data must cover whole cells");
  const int ncells = static_cast<int>(u.size() / static_cast<size_t>(ny));
  if (cell_lo < -N || cell_lo + ncells > N + 1)
    throw SupportExceedsWindow("data support leaves the truncation window");

  GelfandSample g;
  g.N = N;
  g.cell_lo = cell_lo;
  g.ny = ny;
  g.nk = nk;
  g.u_hat.resize(ny, nk);
  const double pref = 1.0 / std::sqrt(2.0 * pi);
  for (int i = 0; i < ny; ++i) {
    const double y = static_cast<double>(i) / ny;
    for (int j = 0; j < nk; ++j) {
      const double kap = 2.0 * pi * j / nk;
      complex acc = 0.0;
      for (int cidx = 0; cidx < ncells; ++cidx) {
        const int n = cell_lo + cidx;
        acc += u[static_cast<size_t>(cidx) * ny + i] *
               std::exp(-iu * (kap * (y + n)));
      }
      g.u_hat(i, j) = pref * acc;
    }
  }
  return g;
}

// Inverse transform back onto the cells [-N, N+1); exact (up to rounding)
// when nk >= 2N + 1.
inline std::vector<complex> inverse_gelfand(const GelfandSample& g) {
  const int ncells = 2 * g.N + 1;
  std::vector<complex> u(static_cast<size_t>(ncells) * g.ny, complex(0.0));
  const double pref = std::sqrt(2.0 * pi) / g.nk;
  for (int cidx = 0; cidx < ncells; ++cidx) {
    const int n = cidx - g.N;
    for (int i = 0; i < g.ny; ++i) {
      const double y = static_cast<double>(i) / g.ny;
      complex acc = 0.0;
      for (int j = 0; j < g.nk; ++j) {
        const double kap = 2.0 * pi * j / g.nk;
        acc += g.u_hat(i, j) * std::exp(iu * (kap * (y + n)));
      }
      u[static_cast<size_t>(cidx) * g.ny + i] = pref * acc;
    }
  }
  return u;
}

// Discrete norms matching the transform pair: mesh 1/ny in y, 2 pi / nk in
// kappa.  Plancherel holds exactly for nk >= 2N + 1.
inline double line_norm(const std::vector<complex>& u, int ny) {
  double s = 0.0;
  for (const complex& v : u) s += std::norm(v);
  return std::sqrt(s / ny);
}

inline double gelfand_norm(const GelfandSample& g) {
  double s = 0.0;
  for (int i = 0; i < g.ny; ++i)
    for (int j = 0; j < g.nk; ++j) s += std::norm(g.u_hat(i, j));
  return std::sqrt(s * (2.0 * pi) / (static_cast<double>(g.ny) * g.nk));
}

// Scaled variant: data lives on cells of length eps, the fibre parameter
// t_j = kappa_j / eps runs over [0, 2 pi / eps).
//
//   u_hat(x, t) = (eps / 2 pi)^{1/2} sum_n u(x + eps n) e^{-i t (x + eps n)}
//
// Implemented through the unscaled transform of u(eps .): the two agree
// entrywise after the substitution x = eps y, t = kappa / eps up to the
// factor sqrt(eps).

inline GelfandSample scaled_gelfand(const std::vector<complex>& u, double eps, int cell_lo,
                                    int N, int ny, int nk) {
  if (!(eps > 0.0)) throw DomainError("period must be positive");
  GelfandSample g = gelfand(u, cell_lo, N, ny, nk);
  g.u_hat *= std::sqrt(eps);
  return g;
}

inline std::vector<complex> inverse_scaled_gelfand(const GelfandSample& g, double eps) {
  if (!(eps > 0.0)) throw DomainError("period must be positive");
  GelfandSample tmp = g;
  tmp.u_hat /= std::sqrt(eps);
  return inverse_gelfand(tmp);
}

// ---------------------------------------------------------------------------
// Soft-edge rescaling: (F u)(x) = sqrt(eps) u(eps x) stretches the soft
// edge from physical length eps*l2 to l2 and is unitary; stiff edges are
// untouched.  On samples this is a scalar multiple on the same array.

inline StateVector rescale_soft(const StateVector& u, const CellParams& c) {
  if (u.rescaled) throw GridMismatch("state is already rescaled");
  if (std::abs(u.c2.length - c.eps * c.l2) > 1e-12 * c.l2)
    throw GridMismatch("soft edge length does not match eps * l2");
  StateVector out = u;
  out.c2.length = c.l2;
  const double se = std::sqrt(c.eps);
  for (auto& v : out.c2.samples) v *= se;
  out.rescaled = true;
  return out;
}

inline StateVector unscale_soft(const StateVector& u, const CellParams& c) {
  if (!u.rescaled) throw GridMismatch("state is not rescaled");
  if (std::abs(u.c2.length - c.l2) > 1e-12 * c.l2)
    throw GridMismatch("soft edge length does not match l2");
  StateVector out = u;
  out.c2.length = c.eps * c.l2;
  const double se = std::sqrt(c.eps);
  for (auto& v : out.c2.samples) v /= se;
  out.rescaled = false;
  return out;
}

// ---------------------------------------------------------------------------
// Identification of the effective subspace: states of the form
// beta psi + u_soft map to (u_soft, beta).  The strict map refuses states
// with a stiff component off span(psi); the projection variant reports the
// discarded residual instead.

inline HomState effective_project(const StateVector& u, const Quasimomentum& q,
                                  const CellParams& c, double* residual = nullptr) {
  detail::check_uniform_grid(u);
  const StiffProfile p = stiff_profile(q, c, u.c1.n);
  const complex beta = inner(u.c1, p.psi1) + inner(u.c3, p.psi3);
  if (residual) {
    double r2 = 0.0;
    EdgeFunction r1 = u.c1, r3 = u.c3;
    for (int i = 0; i <= r1.n; ++i) r1.samples[i] -= beta * p.psi1.samples[i];
    for (int i = 0; i <= r3.n; ++i) r3.samples[i] -= beta * p.psi3.samples[i];
    r2 = std::real(inner(r1, r1)) + std::real(inner(r3, r3));
    *residual = std::sqrt(std::max(0.0, r2));
  }
  HomState out;
  out.u = u.c2;
  out.beta = beta;
  return out;
}

inline HomState effective_map(const StateVector& u, const Quasimomentum& q,
                              const CellParams& c) {
  double res = 0.0;
  HomState out = effective_project(u, q, c, &res);
  if (res > 1e-6 * std::max(norm(u), 1e-300))
    throw NotInEffectiveSpace("stiff component leaves span(psi)");
  return out;
}

inline StateVector effective_embed(const HomState& h, const Quasimomentum& q,
                                   const CellParams& c) {
  const int n = h.u.n;
  const StiffProfile p = stiff_profile(q, c, n);
  StateVector out;
  out.c1 = p.psi1;
  out.c3 = p.psi3;
  for (auto& v : out.c1.samples) v *= h.beta;
  for (auto& v : out.c3.samples) v *= h.beta;
  out.c2 = h.u;
  out.rescaled = true;
  return out;
}

}  // namespace hckp
