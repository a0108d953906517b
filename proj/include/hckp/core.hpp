#pragma once
// Core substrate for the high-contrast periodic-graph toolkit: cell
// parameters, spectral points on a fixed square-root branch, quasimomentum
// bookkeeping, sampled edge functions with Simpson quadrature, and a
// fourth-order cumulative integrator used by the resolvent kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hckp {

using complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;
using Vector3 = Eigen::Vector3cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex iu{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error { using Error::Error; };          // invalid parameters
struct GridMismatch : Error { using Error::Error; };         // incompatible discretisations
struct PoleError : Error { using Error::Error; };            // Dirichlet pole of an edge solve
struct SingularDenominator : Error { using Error::Error; };  // boundary linear system singular
struct NearSingularDispersion : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct NotARoot : Error { using Error::Error; };
struct WindowAtPole : Error { using Error::Error; };
struct SupportExceedsWindow : Error { using Error::Error; };
struct NotInEffectiveSpace : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Cell parameters
//
// One period cell carries three edges: two stiff ones with coefficients
// a1, a3 and relative lengths l1, l3, and a soft edge of relative length
// l2 whose coefficient is eps^2.  Physical edge lengths before any
// rescaling are eps*l_j.

struct CellParams {
  double a1 = 1.0;
  double a3 = 1.0;
  double l1 = 0.25;
  double l2 = 0.5;
  double l3 = 0.25;
  double eps = 0.1;

  double coupling() const { return l1 + l3; }
  double a2() const { return eps * eps; }

  // Many derived formulas require the stiff coefficients to agree.
  double stiff_a() const {
    if (std::abs(a1 - a3) > 1e-14 * std::max(std::abs(a1), std::abs(a3)))
      throw DomainError("stiff coefficients must agree for this operation");
    return a1;
  }
};

inline CellParams make_cell(double a1, double a3, double l1, double l2, double eps) {
  if (!(a1 > 0.0) || !(a3 > 0.0))
    throw DomainError("stiff coefficients must be positive");
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw DomainError("edge lengths must be positive");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw DomainError("period must lie in (0,1)");
  const double l3 = 1.0 - l1 - l2;
  if (!(l3 > 0.0))
    throw DomainError("l1 + l2 must be strictly less than 1");
  CellParams c;
  c.a1 = a1;
  c.a3 = a3;
  c.l1 = l1;
  c.l2 = l2;
  c.l3 = l3;
  c.eps = eps;
  return c;
}

// ---------------------------------------------------------------------------
// Spectral point: z together with k = sqrt(z) on the branch arg k in [0, pi).

struct SpectralPoint {
  complex z;
  complex k;
};

inline SpectralPoint spectral_point(complex z) {
  complex k = std::sqrt(z);
  // std::sqrt returns Re k >= 0; fold onto arg k in [0, pi).
  if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
  return {z, k};
}

// ---------------------------------------------------------------------------
// Quasimomentum: fibre parameter t and its reduced form tau = eps*t mod 2pi.

struct Quasimomentum {
  double t = 0.0;
  double tau = 0.0;
};

inline double mod_2pi(double x) {
  double r = std::fmod(x, 2.0 * pi);
  if (r < 0.0) r += 2.0 * pi;
  return r;
}

inline Quasimomentum quasimomentum(double t, double eps) {
  if (!(eps > 0.0)) throw DomainError("period must be positive");
  return {t, mod_2pi(eps * t)};
}

inline Quasimomentum quasimomentum_from_tau(double tau, double eps) {
  if (!(eps > 0.0)) throw DomainError("period must be positive");
  return {tau / eps, mod_2pi(tau)};
}

// ---------------------------------------------------------------------------
// Sampled functions on a single edge.  Uniform grid with n intervals
// (n even, n+1 nodes) and composite Simpson weights, so that the discrete
// inner product is a fourth-order approximation of the L2 pairing.

enum class EdgeId { e1 = 0, e2 = 1, e3 = 2 };

struct EdgeFunction {
  EdgeId edge = EdgeId::e1;
  double length = 1.0;
  int n = 0;  // number of intervals
  std::vector<complex> samples;  // n + 1 values

  double h() const { return length / n; }
  double x(int i) const { return length * static_cast<double>(i) / n; }
};

inline std::vector<double> simpson_weights(int n, double h) {
  if (n < 2 || n % 2 != 0)
    throw DomainError("quadrature grid needs an even, positive interval count");
  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i < n; ++i) w[i] = (i % 2 == 1) ? 4.0 : 2.0;
  w[0] = w[n] = 1.0;
  for (auto& v : w) v *= h / 3.0;
  return w;
}

inline EdgeFunction make_edge(EdgeId edge, double length, int n) {
  if (!(length > 0.0)) throw DomainError("edge length must be positive");
  if (n < 4 || n % 2 != 0)
    throw DomainError("edge grid needs an even interval count, at least 4");
  EdgeFunction f;
  f.edge = edge;
  f.length = length;
  f.n = n;
  f.samples.assign(static_cast<size_t>(n) + 1, complex(0.0, 0.0));
  return f;
}

inline EdgeFunction sample_edge(EdgeId edge, double length, int n,
                                const std::function<complex(double)>& fn) {
  EdgeFunction f = make_edge(edge, length, n);
  for (int i = 0; i <= n; ++i) f.samples[i] = fn(f.x(i));
  return f;
}

inline void check_compatible(const EdgeFunction& u, const EdgeFunction& v) {
  if (u.n != v.n || std::abs(u.length - v.length) > 1e-13 * std::max(u.length, v.length))
    throw GridMismatch("edge functions live on different grids");
}

// <u, v> = integral of u * conj(v); linear in the first argument.
inline complex inner(const EdgeFunction& u, const EdgeFunction& v) {
  check_compatible(u, v);
  const double h = u.h();
  complex acc = 0.0;
  for (int i = 0; i <= u.n; ++i) {
    double w = (i == 0 || i == u.n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * u.samples[i] * std::conj(v.samples[i]);
  }
  return acc * (h / 3.0);
}

inline double norm(const EdgeFunction& u) {
  double s = std::real(inner(u, u));
  return std::sqrt(std::max(0.0, s));
}

// ---------------------------------------------------------------------------
// A state on the three-edge cell.  rescaled = true means the soft edge has
// been stretched to its relative length l2 (coefficient 1); otherwise it
// still has physical length eps*l2.

struct StateVector {
  EdgeFunction c1, c2, c3;
  bool rescaled = true;
};

inline StateVector make_state(const CellParams& c, int n, bool rescaled = true) {
  StateVector u;
  u.c1 = make_edge(EdgeId::e1, c.eps * c.l1, n);
  u.c2 = make_edge(EdgeId::e2, rescaled ? c.l2 : c.eps * c.l2, n);
  u.c3 = make_edge(EdgeId::e3, c.eps * c.l3, n);
  u.rescaled = rescaled;
  return u;
}

inline complex inner(const StateVector& u, const StateVector& v) {
  return inner(u.c1, v.c1) + inner(u.c2, v.c2) + inner(u.c3, v.c3);
}

inline double norm(const StateVector& u) {
  double s = std::real(inner(u, u));
  return std::sqrt(std::max(0.0, s));
}

// ---------------------------------------------------------------------------
// Fourth-order cumulative integral on a uniform grid: returns c with
// c[i] ~ integral of g from x0 to x_i.  Needs at least 4 nodes.  The
// interior step integrates a cubic through the four surrounding nodes;
// the end steps use one-sided cubics.

inline std::vector<complex> cumulative_integral(const std::vector<complex>& g, double h) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n < 3) throw DomainError("cumulative integral needs at least 4 nodes");
  std::vector<complex> c(g.size());
  c[0] = 0.0;
  c[1] = c[0] + h * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]) / 24.0;
  for (int j = 1; j + 2 <= n; ++j)
    c[j + 1] = c[j] + h * (-g[j - 1] + 13.0 * g[j] + 13.0 * g[j + 1] - g[j + 2]) / 24.0;
  c[n] = c[n - 1] + h * (g[n - 3] - 5.0 * g[n - 2] + 19.0 * g[n - 1] + 9.0 * g[n]) / 24.0;
  return c;
}

// Reversed cumulative integral: r[i] ~ integral of g from x_i to x_n.
inline std::vector<complex> cumulative_integral_reverse(const std::vector<complex>& g, double h) {
  std::vector<complex> rev(g.rbegin(), g.rend());
  std::vector<complex> c = cumulative_integral(rev, h);
  std::vector<complex> out(g.size());
  const size_t n = g.size() - 1;
  for (size_t i = 0; i <= n; ++i) out[i] = c[n - i];
  return out;
}

// ---------------------------------------------------------------------------
// Small utilities shared by the modules.

inline bool near_zero(complex v, double scale) {
  return std::abs(v) <= 1e-12 * std::max(1.0, scale);
}

// Guard for cot/csc evaluations: theta at (or numerically at) a multiple
// of pi means the Dirichlet problem on that edge is at an eigenvalue.
inline void check_sine_regular(complex theta, const char* what) {
  if (std::abs(std::sin(theta)) < 1e-12 * std::max(1.0, std::abs(theta)))
    throw PoleError(std::string("Dirichlet pole in ") + what);
}

inline complex cot(complex theta) { return std::cos(theta) / std::sin(theta); }
inline complex csc(complex theta) { return 1.0 / std::sin(theta); }

}  // namespace hckp
