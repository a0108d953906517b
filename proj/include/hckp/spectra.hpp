#pragma once
// Dispersion relations and their root sets: the entire limiting relation,
// the fibre determinant, the Bloch relations of the homogenised and the
// delta'-type models, a two-vertex cross-check of the soft-edge spectrum,
// band assembly, exclusion sets, and a finite-difference eigensolver for
// the fibre operator used as an independent route to the same spectra.
//
// All root-finding runs over k > 0 (z = k^2); z = 0 is never reported.
// The relations are real-valued on the real k axis, which the scanner
// relies on.

#include <hckp/core.hpp>
#include <hckp/mmatrix.hpp>

#include <optional>
#include <set>

namespace hckp {

enum class RelationKind {
  limit_cc,          // entire limiting relation, roots = Bloch plus non-Bloch points
  fibre_det,         // det m1 at fixed eps and fibre parameter t
  hom_bloch,         // Bloch relation of the homogenised model
  deltaprime_bloch,  // Bloch relation of the delta'-type model (tau holds tau')
  zdep_check         // two-vertex boundary determinant on a split soft edge
};

struct DispersionRelation {
  RelationKind kind = RelationKind::limit_cc;
  CellParams cell;
  double tau = 0.0;      // reduced quasimomentum (or tau' for deltaprime_bloch)
  double t = 0.0;        // fibre parameter, fibre_det only
  double split = -1.0;   // zdep_check: first sub-length of the soft edge; l2/2 if < 0
  double coupling_override = -1.0;  // hom/deltaprime: replaces l1+l3 when >= 0
};

inline double relation_coupling(const DispersionRelation& r) {
  return r.coupling_override >= 0.0 ? r.coupling_override : r.cell.coupling();
}

inline complex eval_relation(const DispersionRelation& r, complex k) {
  const CellParams& c = r.cell;
  switch (r.kind) {
    case RelationKind::limit_cc: {
      const complex th = k * c.l2;
      return 2.0 * std::cos(r.tau) + k * c.coupling() * std::sin(th) - 2.0 * std::cos(th);
    }
    case RelationKind::hom_bloch: {
      const complex th = k * c.l2;
      check_sine_regular(th, "soft edge");
      return 2.0 * cot(th) - 2.0 * std::cos(r.tau) * csc(th) - k * relation_coupling(r);
    }
    case RelationKind::deltaprime_bloch: {
      const complex th = k * c.l2;
      check_sine_regular(th, "soft edge");
      return 2.0 * cot(th) + 2.0 * std::cos(r.tau) * csc(th) - k * relation_coupling(r);
    }
    case RelationKind::fibre_det: {
      const SpectralPoint sp{k * k, k};
      return m1(sp, quasimomentum(r.t, c.eps), c).determinant();
    }
    case RelationKind::zdep_check: {
      const double s1 = r.split > 0.0 ? r.split : 0.5 * c.l2;
      if (!(s1 > 0.0) || !(s1 < c.l2))
        throw DomainError("soft-edge split must lie strictly inside (0, l2)");
      const double s2 = c.l2 - s1;
      const double tc = r.tau / c.l2;  // quasimomentum density along the soft edge
      const complex th1 = k * s1, th2 = k * s2;
      check_sine_regular(th1, "first soft segment");
      check_sine_regular(th2, "second soft segment");
      const complex e1 = std::exp(iu * (tc * s1)), e2 = std::exp(iu * (tc * s2));
      Eigen::Matrix2cd m;
      m(0, 0) = -k * (cot(th1) + cot(th2)) + c.coupling() * k * k;
      m(0, 1) = k * (e1 * csc(th1) + std::conj(e2) * csc(th2));
      m(1, 0) = k * (std::conj(e1) * csc(th1) + e2 * csc(th2));
      m(1, 1) = -k * (cot(th1) + cot(th2));
      return m.determinant();
    }
  }
  throw DomainError("unknown relation kind");
}

// Pole abscissae of the relation on (a, b).  limit_cc is entire.
inline std::vector<double> relation_poles(const DispersionRelation& r, double a, double b) {
  std::vector<double> poles;
  auto add_multiples = [&](double step) {
    if (!(step > 0.0)) return;
    for (int m = std::max(1, static_cast<int>(std::ceil(a / step))); m * step <= b; ++m) {
      double p = m * step;
      if (p > a && p <= b) poles.push_back(p);
    }
  };
  const CellParams& c = r.cell;
  switch (r.kind) {
    case RelationKind::limit_cc:
      break;
    case RelationKind::hom_bloch:
    case RelationKind::deltaprime_bloch:
      add_multiples(pi / c.l2);
      break;
    case RelationKind::fibre_det:
      add_multiples(pi / c.l2);
      add_multiples(pi * std::sqrt(c.a1) / (c.eps * c.l1));
      add_multiples(pi * std::sqrt(c.a3) / (c.eps * c.l3));
      break;
    case RelationKind::zdep_check: {
      const double s1 = r.split > 0.0 ? r.split : 0.5 * c.l2;
      add_multiples(pi / s1);
      add_multiples(pi / (c.l2 - s1));
      break;
    }
  }
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-12; }),
              poles.end());
  return poles;
}

namespace detail {

inline double rel_tol(double x) { return std::max(1.0, std::abs(x)); }

// Real part of the relation; all supported relations are real on real k.
inline double eval_real(const DispersionRelation& r, double k) {
  return std::real(eval_relation(r, k));
}

inline double numeric_derivative(const DispersionRelation& r, double k) {
  const double h = 1e-7 * rel_tol(k);
  return (eval_real(r, k + h) - eval_real(r, k - h)) / (2.0 * h);
}

inline double bisect_root(const DispersionRelation& r, double lo, double hi,
                          double flo, double fhi) {
  for (int it = 0; it < 90 && hi - lo > 1e-15 * rel_tol(lo); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = eval_real(r, mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  (void)fhi;
  double x = 0.5 * (lo + hi);
  // Newton polish; keep only improvements inside the bracket.
  for (int it = 0; it < 6; ++it) {
    double f = eval_real(r, x);
    double d = numeric_derivative(r, x);
    if (d == 0.0) break;
    double xn = x - f / d;
    if (xn <= lo || xn >= hi) break;
    if (std::abs(eval_real(r, xn)) >= std::abs(f)) break;
    x = xn;
  }
  return x;
}

// Scan [a, b] with nsub subintervals; skip evaluations adjacent to poles.
// Appends simple roots from sign changes and candidates for even-order
// roots (local minima of |f| with no sign change).
inline void scan_for_roots(const DispersionRelation& r, double a, double b, int nsub,
                           const std::vector<double>& poles, std::vector<double>& roots,
                           bool detect_even_order) {
  if (!(b > a) || nsub < 2) return;
  const double h = (b - a) / nsub;
  std::vector<double> xs(static_cast<size_t>(nsub) + 1);
  std::vector<double> fs(static_cast<size_t>(nsub) + 1);
  std::vector<char> ok(static_cast<size_t>(nsub) + 1, 0);
  size_t pidx = 0;
  for (int i = 0; i <= nsub; ++i) {
    double x = a + i * h;
    xs[i] = x;
    bool near_pole = false;
    while (pidx < poles.size() && poles[pidx] < x - 1e-9 * rel_tol(x)) ++pidx;
    if (pidx < poles.size() && std::abs(poles[pidx] - x) < 1e-9 * rel_tol(x)) near_pole = true;
    if (pidx > 0 && std::abs(poles[pidx - 1] - x) < 1e-9 * rel_tol(x)) near_pole = true;
    if (!near_pole) {
      try {
        fs[i] = eval_real(r, x);
        ok[i] = 1;
      } catch (const Error&) {
        ok[i] = 0;
      }
    }
  }
  auto pole_inside = [&](double lo, double hi) {
    auto it = std::lower_bound(poles.begin(), poles.end(), lo);
    return it != poles.end() && *it < hi;
  };
  // Median magnitude as the typical scale; robust against pole blowups.
  double fscale = 1.0;
  {
    std::vector<double> mags;
    mags.reserve(ok.size());
    for (int i = 0; i <= nsub; ++i)
      if (ok[i]) mags.push_back(std::abs(fs[i]));
    if (!mags.empty()) {
      auto mid = mags.begin() + mags.size() / 2;
      std::nth_element(mags.begin(), mid, mags.end());
      fscale = std::max(*mid, 1e-30);
    }
  }

  for (int i = 0; i < nsub; ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    if (pole_inside(xs[i], xs[i + 1])) continue;
    if (fs[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if ((fs[i] < 0.0) != (fs[i + 1] < 0.0))
      roots.push_back(bisect_root(r, xs[i], xs[i + 1], fs[i], fs[i + 1]));
  }
  if (ok[nsub] && fs[nsub] == 0.0) roots.push_back(xs[nsub]);

  if (!detect_even_order) return;
  // Tangential (even-order) roots: interior local minimum of |f| with both
  // neighbours on the same side of zero.  Refined by a derivative bisection.
  for (int i = 1; i < nsub; ++i) {
    if (!ok[i - 1] || !ok[i] || !ok[i + 1]) continue;
    if (pole_inside(xs[i - 1], xs[i + 1])) continue;
    if ((fs[i - 1] < 0.0) != (fs[i + 1] < 0.0)) continue;  // handled as sign change
    if (std::abs(fs[i]) > std::abs(fs[i - 1]) || std::abs(fs[i]) > std::abs(fs[i + 1])) continue;
    if (std::abs(fs[i]) > 1e-6 * fscale) continue;  // not nearly touching zero
    double d_lo = numeric_derivative(r, xs[i - 1]);
    double d_hi = numeric_derivative(r, xs[i + 1]);
    if ((d_lo < 0.0) == (d_hi < 0.0)) continue;
    double lo = xs[i - 1], hi = xs[i + 1];
    for (int it = 0; it < 80 && hi - lo > 1e-14 * rel_tol(lo); ++it) {
      double mid = 0.5 * (lo + hi);
      double dm = numeric_derivative(r, mid);
      if ((d_lo < 0.0) != (dm < 0.0))
        hi = mid;
      else {
        lo = mid;
        d_lo = dm;
      }
    }
    double x = 0.5 * (lo + hi);
    if (std::abs(eval_real(r, x)) <= 1e-9 * std::max(fscale, 1.0)) roots.push_back(x);
  }
}

}  // namespace detail

// All roots of the relation on the half-open window (k_lo, k_hi].  The
// scanner is pole-aware: brackets containing a known pole abscissa are
// rescanned locally on both sides of the pole, which resolves roots that
// sit a distance O(eps^2) from a soft-edge Dirichlet point.  Window
// endpoints may not sit on a pole.
inline std::vector<double> find_roots(const DispersionRelation& r, double k_lo, double k_hi) {
  if (!(k_hi > k_lo)) throw DomainError("empty root window");
  if (k_lo < 0.0) throw DomainError("root windows live in k >= 0");
  const std::vector<double> poles =
      relation_poles(r, std::max(0.0, k_lo - 1.0), k_hi + 1.0);
  for (double p : poles) {
    if (std::abs(p - k_lo) < 1e-9 * detail::rel_tol(p) ||
        std::abs(p - k_hi) < 1e-9 * detail::rel_tol(p))
      throw WindowAtPole("window endpoint coincides with a pole of the relation");
  }

  const double span = k_hi - k_lo;
  double scale = std::max(1.0, span * std::max(1.0, std::abs(k_hi)) / 20.0);
  int nsub = static_cast<int>(std::min(2.0e6, 4096.0 * scale));

  std::vector<double> roots;
  // The window is open at k_lo; starting half a scan step in also keeps the
  // first node clear of underflow when k_lo = 0.
  const double start = k_lo + 0.5 * span / nsub;
  const bool even_order = r.kind == RelationKind::limit_cc ||
                          r.kind == RelationKind::hom_bloch ||
                          r.kind == RelationKind::deltaprime_bloch;
  detail::scan_for_roots(r, start, k_hi, nsub, poles, roots, even_order);

  // Local refinement around every pole inside the window: the global scan
  // skips brackets containing poles, so roots hiding next to a pole are
  // recovered by a dense one-sided rescan.
  const double hglob = (k_hi - start) / nsub;
  for (double p : poles) {
    if (p <= k_lo || p > k_hi) continue;
    const double delta = 1e-9 * detail::rel_tol(p);
    const double reach = std::max(2.0 * hglob, 1e-3);
    double la = std::max(start, p - reach), lb = p - delta;
    if (lb > la) detail::scan_for_roots(r, la, lb, 4096, poles, roots, false);
    double ra = p + delta, rb = std::min(k_hi, p + reach);
    if (rb > ra) detail::scan_for_roots(r, ra, rb, 4096, poles, roots, false);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double x : roots) {
    if (x <= k_lo || x > k_hi) continue;
    if (!out.empty() && std::abs(x - out.back()) < 1e-9 * detail::rel_tol(x)) continue;
    out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Non-Bloch eigenvalues.  The homogenised model acquires flat eigenvalues
// k = pi*m/l2 of even m at tau = 0 and odd m at tau = pi (eigenfunction
// e^{-i tau x} sin(kx) vanishing at both soft endpoints with beta = 0); the
// delta'-type model swaps the parities (eigenfunction built on cos(kx)).
// Away from tau in {0, pi} the lists are empty.  k = 0 is never reported.

enum class ModelKind { homogenised, deltaprime };

inline std::vector<double> non_bloch_eigenvalues(ModelKind model, double tau,
                                                 const CellParams& c, double k_lo,
                                                 double k_hi) {
  std::vector<double> out;
  const double tr = mod_2pi(tau);
  int parity;  // required parity of m
  if (std::abs(tr) < 1e-12 || std::abs(tr - 2.0 * pi) < 1e-12)
    parity = model == ModelKind::homogenised ? 0 : 1;
  else if (std::abs(tr - pi) < 1e-12)
    parity = model == ModelKind::homogenised ? 1 : 0;
  else
    return out;
  for (int m = 1;; ++m) {
    double k = pi * m / c.l2;
    if (k > k_hi) break;
    if (k <= k_lo) continue;
    if (m % 2 == parity % 2) out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exclusion set: limiting roots (as z = k^2), soft Dirichlet points, and 0.
// Admissibility means staying a distance rho away in the z plane.  Valid
// for test points with Re z <= z_hi.

struct ExclusionSet {
  std::vector<double> points;  // z values
  double rho = 0.0;

  double dist(complex z) const {
    double best = std::numeric_limits<double>::infinity();
    for (double s : points) best = std::min(best, std::abs(z - s));
    return best;
  }
  bool admissible(complex z) const { return dist(z) >= rho; }
};

inline ExclusionSet exclusion_set(const CellParams& c, double tau, double z_hi, double rho) {
  if (!(rho > 0.0)) throw DomainError("exclusion radius must be positive");
  if (!(z_hi > 0.0)) throw DomainError("exclusion window must reach positive z");
  ExclusionSet s;
  s.rho = rho;
  const double z_cap = z_hi + 10.0 * rho + 1.0;
  const double k_cap = std::sqrt(z_cap);
  s.points.push_back(0.0);
  DispersionRelation rel{RelationKind::limit_cc, c, tau};
  for (double k : find_roots(rel, 0.0, k_cap)) s.points.push_back(k * k);
  for (int m = 1; m * pi / c.l2 <= k_cap; ++m) {
    double k = m * pi / c.l2;
    s.points.push_back(k * k);
  }
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-10; }),
                 s.points.end());
  return s;
}

// ---------------------------------------------------------------------------
// Two-vertex cross-check of the limiting soft spectrum.  The soft edge is
// split at an interior point and the boundary determinant of the resulting
// two-vertex problem is compared root-by-root with the limiting relation.
// At roots that coincide with a Dirichlet point of the split (which happens
// at tau in {0, pi}) the determinant itself has a pole, and the regularised
// product det * sin(k s1) * sin(k s2), equal to -k^2 times the limiting
// relation, is checked to vanish instead.

struct ZdepReport {
  bool ok = false;
  double max_mismatch = 0.0;
  size_t n_roots = 0;
  std::string detail;
};

inline ZdepReport zdep_spectrum_check(double tau, const CellParams& c, double k_lo,
                                      double k_hi, double split = -1.0) {
  ZdepReport rep;
  const double s1 = split > 0.0 ? split : 0.5 * c.l2;
  const double s2 = c.l2 - s1;
  DispersionRelation cc{RelationKind::limit_cc, c, tau};
  DispersionRelation zd{RelationKind::zdep_check, c, tau};
  zd.split = s1;

  std::vector<double> rcc = find_roots(cc, k_lo, k_hi);
  std::vector<double> rzd = find_roots(zd, k_lo, k_hi);
  std::vector<double> zpoles = relation_poles(zd, k_lo, k_hi);
  rep.n_roots = rcc.size();

  auto near_pole = [&](double k) {
    for (double p : zpoles)
      if (std::abs(k - p) < 1e-6 * detail::rel_tol(k)) return true;
    return false;
  };

  std::vector<char> used(rzd.size(), 0);
  for (double k : rcc) {
    if (near_pole(k)) {
      // Regularised check: g(k) = det * sin(k s1) * sin(k s2) has a simple
      // zero here; extrapolate g to the point from both sides.
      const double d = 1e-5 * detail::rel_tol(k);
      auto g = [&](double x) {
        return std::real(eval_relation(zd, x)) * std::sin(x * s1) * std::sin(x * s2);
      };
      double g_mid = 0.5 * (g(k + d) + g(k - d));
      double scale = 0.5 * std::abs(g(k + d) - g(k - d));  // ~ |g'| * d
      double miss = std::abs(g_mid) / std::max(scale, 1e-30);
      rep.max_mismatch = std::max(rep.max_mismatch, miss * d);
      if (miss * d > 1e-6) {
        rep.detail = "regularised determinant fails to vanish near k = " + std::to_string(k);
        return rep;
      }
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    size_t bi = rzd.size();
    for (size_t i = 0; i < rzd.size(); ++i) {
      double dd = std::abs(rzd[i] - k);
      if (dd < best) {
        best = dd;
        bi = i;
      }
    }
    rep.max_mismatch = std::max(rep.max_mismatch, best);
    if (best > 1e-8 * detail::rel_tol(k)) {
      rep.detail = "limiting root " + std::to_string(k) + " missing from split determinant";
      return rep;
    }
    used[bi] = 1;
  }
  for (size_t i = 0; i < rzd.size(); ++i) {
    if (used[i] || near_pole(rzd[i])) continue;
    rep.detail = "split determinant has an extra root at k = " + std::to_string(rzd[i]);
    return rep;
  }
  rep.ok = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Band assembly from the limiting relation.  Band functions are monotone
// between their values at tau = 0 and tau = pi, so band and gap endpoints
// in k are exactly the roots at those two quasimomenta; membership of a
// midpoint is decided by |g(k)| <= 2 with g(k) = k(l1+l3) sin(k l2)
// - 2 cos(k l2).

struct BandStructure {
  std::vector<double> tau_grid;
  std::vector<std::vector<double>> roots;           // k roots per tau
  std::vector<std::pair<double, double>> bands;     // in z
  std::vector<std::pair<double, double>> gaps;      // in z, between bands
  std::vector<double> edge_k;                       // sorted band-edge k values
};

inline double limit_band_function(const CellParams& c, double k) {
  return k * c.coupling() * std::sin(k * c.l2) - 2.0 * std::cos(k * c.l2);
}

inline BandStructure compute_bands(const CellParams& c, int tau_samples, double k_max) {
  if (tau_samples < 2) throw DomainError("need at least two quasimomentum samples");
  if (!(k_max > 0.0)) throw DomainError("band window must be positive");
  BandStructure b;
  b.tau_grid.resize(tau_samples);
  b.roots.resize(tau_samples);
  for (int j = 0; j < tau_samples; ++j) {
    double tau = 2.0 * pi * j / tau_samples;
    b.tau_grid[j] = tau;
    DispersionRelation rel{RelationKind::limit_cc, c, tau};
    b.roots[j] = find_roots(rel, 0.0, k_max);
  }
  DispersionRelation r0{RelationKind::limit_cc, c, 0.0};
  DispersionRelation rp{RelationKind::limit_cc, c, pi};
  std::vector<double> edges = find_roots(r0, 0.0, k_max);
  for (double k : find_roots(rp, 0.0, k_max)) edges.push_back(k);
  edges.push_back(0.0);  // g(0) = -2: k = 0 is always a band edge
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-10; }),
              edges.end());
  b.edge_k = edges;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    double km = 0.5 * (edges[i] + edges[i + 1]);
    bool in_band = std::abs(limit_band_function(c, km)) <= 2.0;
    auto z = [&](double k) { return k * k; };
    if (in_band) {
      if (!b.bands.empty() && std::abs(b.bands.back().second - z(edges[i])) < 1e-12)
        b.bands.back().second = z(edges[i + 1]);
      else
        b.bands.emplace_back(z(edges[i]), z(edges[i + 1]));
    } else {
      b.gaps.emplace_back(z(edges[i]), z(edges[i + 1]));
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Hausdorff distance between two finite point sets on the line.

inline double hausdorff(const std::vector<double>& A, const std::vector<double>& B) {
  if (A.empty() && B.empty()) return 0.0;
  if (A.empty() || B.empty()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const std::vector<double>& X, const std::vector<double>& Y) {
    double worst = 0.0;
    for (double x : X) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : Y) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(A, B), one_sided(B, A));
}

// ---------------------------------------------------------------------------
// Finite-difference eigensolver for the fibre operator at fixed eps and t.
// Flux-conserving second-order scheme on the full cell circle of length
// eps, with the quasiperiodic phase e^{i tau} folded into the wrap-around
// couplings after the gauge u -> e^{itx} u.  Returns eigenvalues in
// [z_lo, z_hi].  Serves as an independent route to the fibre spectrum.

inline std::vector<double> fibre_fd_eigenvalues(const CellParams& c, const Quasimomentum& q,
                                                int n, double z_lo, double z_hi) {
  if (n < 16) throw DomainError("finite-difference grid too coarse");
  const double len = c.eps;
  const double h = len / n;
  auto coeff = [&](double x) {
    double s = x / c.eps;  // relative coordinate in [0, 1)
    if (s < c.l1) return c.a1;
    if (s < c.l1 + c.l2) return c.eps * c.eps;
    return c.a3;
  };
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  const complex phase = std::exp(iu * q.tau);
  for (int i = 0; i < n; ++i) {
    double am = coeff(std::fmod(i * h - 0.5 * h + len, len));
    double ap = coeff(i * h + 0.5 * h);
    H(i, i) = (am + ap) / (h * h);
    if (i + 1 < n)
      H(i, i + 1) = -ap / (h * h);
    else
      H(i, 0) += -ap * phase / (h * h);
    if (i > 0)
      H(i, i - 1) = -am / (h * h);
    else
      H(0, n - 1) += -am * std::conj(phase) / (h * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw NonConvergence("fibre eigensolver failed");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    double z = es.eigenvalues()[i];
    if (z >= z_lo && z <= z_hi) out.push_back(z);
  }
  return out;
}

}  // namespace hckp
