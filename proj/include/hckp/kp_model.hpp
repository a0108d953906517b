#pragma once
// The delta'-type limit model: Bloch eigenfunctions of the homogenised and
// the delta'-type operators with closed-form norms, the quasimomentum-shift
// unitary equivalence between the two, the substitution chain onto the
// whole-line model of Kronig-Penney type, and its transfer-matrix band
// structure.

#include <hckp/core.hpp>
#include <hckp/resolvent.hpp>
#include <hckp/spectra.hpp>

namespace hckp {

// ---------------------------------------------------------------------------
// Cell descriptions of the two limit models.

struct DeltaPrimeCell {
  double coupling = 0.5;  // jump strength l1 + l3
  double l2 = 0.5;        // cell length
  double tau_prime = 0.0;
};

inline DeltaPrimeCell make_delta_prime_cell(const CellParams& c, double tau_prime) {
  DeltaPrimeCell d;
  d.coupling = c.coupling();
  d.l2 = c.l2;
  d.tau_prime = mod_2pi(tau_prime);
  if (!(d.coupling > 0.0) || !(d.coupling < 1.0))
    throw DomainError("jump coupling must lie in (0,1)");
  return d;
}

// ---------------------------------------------------------------------------
// Bloch eigenfunctions.  Both are normalised so that the twisted derivative
// at the left endpoint equals k; their squared norms then take closed forms
// that agree pairwise under tau' = tau + pi.

inline double hom_bloch_norm_sq(double k, double tau, const CellParams& c) {
  const double s = std::sin(k * c.l2);
  if (std::abs(s) < 1e-12) throw PoleError("norm formula undefined at a soft Dirichlet point");
  return 0.5 * c.coupling() + c.l2 * (1.0 - std::cos(tau) * std::cos(k * c.l2)) / (s * s);
}

inline double deltaprime_bloch_norm_sq(double k, double tau_prime, const CellParams& c) {
  const double s = std::sin(k * c.l2);
  if (std::abs(s) < 1e-12) throw PoleError("norm formula undefined at a soft Dirichlet point");
  return 0.5 * c.coupling() + c.l2 * (1.0 + std::cos(tau_prime) * std::cos(k * c.l2)) / (s * s);
}

// Eigenfunction of the homogenised model at a Bloch root: the soft profile
// together with the scalar channel beta = sqrt(l1+l3).
inline HomState hom_bloch_eigenfunction(double k, double tau, const CellParams& c, int n) {
  DispersionRelation rel{RelationKind::hom_bloch, c, tau};
  if (std::abs(std::real(eval_relation(rel, k))) > 1e-8 * std::max(1.0, k))
    throw NotARoot("k does not solve the homogenised Bloch relation");
  const double s = std::sin(k * c.l2);
  HomState out;
  out.u = sample_edge(EdgeId::e2, c.l2, n, [&](double x) {
    return std::exp(-iu * (tau * x)) *
           (std::sin(k * (c.l2 - x)) + std::exp(iu * tau) * std::sin(k * x)) / s;
  });
  out.beta = std::sqrt(c.coupling());
  return out;
}

// Eigenfunction of the delta'-type model at a Bloch root, built on cosines.
inline EdgeFunction deltaprime_bloch_eigenfunction(double k, double tau_prime,
                                                   const CellParams& c, int n) {
  DispersionRelation rel{RelationKind::deltaprime_bloch, c, tau_prime};
  if (std::abs(std::real(eval_relation(rel, k))) > 1e-8 * std::max(1.0, k))
    throw NotARoot("k does not solve the delta' Bloch relation");
  const double s = std::sin(k * c.l2);
  return sample_edge(EdgeId::e2, c.l2, n, [&](double x) {
    return std::exp(-iu * (tau_prime * x)) *
           (std::cos(k * (c.l2 - x)) + std::exp(iu * tau_prime) * std::cos(k * x)) / s;
  });
}

// Residuals of the delta'-type vertex conditions on a sampled state, using
// closed-form twisted derivatives of the eigenfunction family.  Returns
// {value-jump residual, derivative-periodicity residual}.
inline std::pair<double, double> deltaprime_matching_residuals(double k, double tau_prime,
                                                               const CellParams& c) {
  const double s = std::sin(k * c.l2);
  if (std::abs(s) < 1e-12) throw PoleError("matching residuals undefined at a Dirichlet point");
  const double L = c.coupling();
  const complex e = std::exp(iu * tau_prime);
  const complex wf = std::exp(-iu * (L * tau_prime));
  const complex v0 = (std::cos(k * c.l2) + e) / s;
  const complex vl = std::exp(-iu * (tau_prime * c.l2)) * (1.0 + e * std::cos(k * c.l2)) / s;
  const complex d0 = complex(k, 0.0);
  const complex dl = -k * std::exp(iu * (tau_prime * (1.0 - c.l2)));
  // Value condition: v(0) + wf v(l2) = L * d(0); derivative condition:
  // d(0) = -wf d(l2).
  const double r1 = std::abs(v0 + wf * vl - L * d0);
  const double r2 = std::abs(d0 + wf * dl);
  return {r1, r2};
}

// ---------------------------------------------------------------------------
// Unitary equivalence between the homogenised model at tau and the
// delta'-type model at tau' = tau + pi: identical Bloch root lists,
// swapped non-Bloch parities, and matching closed-form norms root by root.
// coupling_scale perturbs the jump coupling of the delta' side only; any
// value other than 1 breaks the equivalence, which the check reports.

struct EquivalenceReport {
  bool pass = false;
  size_t shared_roots = 0;
  double max_root_distance = 0.0;
  double max_norm_residual = 0.0;
  bool non_bloch_match = false;
  std::string detail;
};

inline EquivalenceReport unitary_equivalence_check(double tau, const CellParams& c,
                                                   double k_lo, double k_hi,
                                                   double coupling_scale = 1.0) {
  EquivalenceReport rep;
  const double tau_h = mod_2pi(tau);
  const double tau_d = mod_2pi(tau + pi);

  DispersionRelation rh{RelationKind::hom_bloch, c, tau_h};
  DispersionRelation rd{RelationKind::deltaprime_bloch, c, tau_d};
  if (coupling_scale != 1.0) rd.coupling_override = coupling_scale * c.coupling();

  const std::vector<double> kh = find_roots(rh, k_lo, k_hi);
  const std::vector<double> kd = find_roots(rd, k_lo, k_hi);
  if (kh.size() != kd.size()) {
    rep.detail = "Bloch root counts differ: " + std::to_string(kh.size()) + " vs " +
                 std::to_string(kd.size());
    return rep;
  }
  rep.shared_roots = kh.size();
  for (size_t i = 0; i < kh.size(); ++i)
    rep.max_root_distance = std::max(rep.max_root_distance, std::abs(kh[i] - kd[i]));

  const std::vector<double> nb_h = non_bloch_eigenvalues(ModelKind::homogenised, tau_h, c, k_lo, k_hi);
  const std::vector<double> nb_d = non_bloch_eigenvalues(ModelKind::deltaprime, tau_d, c, k_lo, k_hi);
  rep.non_bloch_match = nb_h.size() == nb_d.size();
  if (rep.non_bloch_match)
    for (size_t i = 0; i < nb_h.size(); ++i)
      if (std::abs(nb_h[i] - nb_d[i]) > 1e-10) rep.non_bloch_match = false;

  for (size_t i = 0; i < kh.size(); ++i) {
    // Norm formulas are attached to the unperturbed models.
    double nh = hom_bloch_norm_sq(kh[i], tau_h, c);
    double nd = deltaprime_bloch_norm_sq(kd[i], tau_d, c);
    rep.max_norm_residual = std::max(rep.max_norm_residual, std::abs(nh - nd));
  }

  rep.pass = rep.non_bloch_match && rep.max_root_distance < 1e-8 &&
             rep.max_norm_residual < 1e-8;
  if (!rep.pass && rep.detail.empty()) rep.detail = "equivalence tolerances exceeded";
  return rep;
}

// ---------------------------------------------------------------------------
// Whole-line model of Kronig-Penney type with delta'-like jumps of strength
// (l1+l3)/l2 at integer multiples of l2 (unit spacing after y = x/l2).
// Monodromy over one period: free propagation times the jump matrix.

struct TransferMatrix {
  Eigen::Matrix2cd m;
  complex trace() const { return m(0, 0) + m(1, 1); }
};

// Monodromy in the whole-line variable y = x / l2: free propagation over a
// unit cell with kappa = l2 sqrt(z), then the jump of strength
// coupling / l2.  A zero coupling is allowed; it gives the free line.
inline TransferMatrix kp_transfer(double z, double coupling, double l2) {
  if (!(l2 > 0.0) || coupling < 0.0) throw DomainError("invalid whole-line parameters");
  const complex kappa = spectral_point(complex(z, 0.0)).k * l2;
  Eigen::Matrix2cd R, J;
  const complex cs = std::cos(kappa);
  const complex sn = std::sin(kappa);
  // sin(kappa)/kappa is entire; guard the removable point.
  const complex snc = std::abs(kappa) < 1e-8 ? complex(1.0, 0.0) : sn / kappa;
  R(0, 0) = cs;
  R(0, 1) = snc;
  R(1, 0) = -kappa * sn;
  R(1, 1) = cs;
  J(0, 0) = 1.0;
  J(0, 1) = coupling / l2;
  J(1, 0) = 0.0;
  J(1, 1) = 1.0;
  TransferMatrix T;
  T.m = J * R;
  return T;
}

inline TransferMatrix kp_transfer(double z, const CellParams& c) {
  return kp_transfer(z, c.coupling(), c.l2);
}

// Real-valued discriminant tr T(z); entire in z.
inline double kp_discriminant(double z, double coupling, double l2) {
  return std::real(kp_transfer(z, coupling, l2).trace());
}

inline double kp_discriminant(double z, const CellParams& c) {
  return kp_discriminant(z, c.coupling(), c.l2);
}

struct WholeLineBands {
  std::vector<std::pair<double, double>> bands;  // in z
  std::vector<double> edges;                     // all band edges, sorted
};

// Band structure on [z_lo, z_hi] from |tr T| <= 2.  Edges are the roots of
// tr T -+ 2, found by dense scan plus bisection; double edges (band touching)
// are kept once.
inline WholeLineBands kp_bands(double z_lo, double z_hi, double coupling, double l2,
                               int nscan = 200000) {
  if (!(z_hi > z_lo)) throw DomainError("empty band window");
  WholeLineBands out;
  std::vector<double> edges;
  auto scan_edges = [&](double offset) {
    auto F = [&](double z) { return kp_discriminant(z, coupling, l2) + offset; };
    double prev = F(z_lo);
    double zprev = z_lo;
    for (int i = 1; i <= nscan; ++i) {
      double z = z_lo + (z_hi - z_lo) * i / nscan;
      double f = F(z);
      if (prev == 0.0) edges.push_back(zprev);
      if ((prev < 0.0) != (f < 0.0)) {
        double lo = zprev, hi = z, flo = prev;
        for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = F(mid);
          if ((flo < 0.0) != (fm < 0.0))
            hi = mid;
          else {
            lo = mid;
            flo = fm;
          }
        }
        edges.push_back(0.5 * (lo + hi));
      }
      prev = f;
      zprev = z;
    }
  };
  scan_edges(-2.0);  // tr T = +2
  scan_edges(2.0);   // tr T = -2
  if (z_lo <= 0.0 && z_hi >= 0.0 &&
      std::abs(kp_discriminant(0.0, coupling, l2)) >= 2.0 - 1e-12)
    edges.push_back(0.0);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              edges.end());
  out.edges = edges;

  std::vector<double> pts;
  pts.push_back(z_lo);
  for (double e : edges) pts.push_back(e);
  pts.push_back(z_hi);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i] + 1e-12)) continue;
    double mid = 0.5 * (pts[i] + pts[i + 1]);
    if (std::abs(kp_discriminant(mid, coupling, l2)) <= 2.0) {
      if (!out.bands.empty() && std::abs(out.bands.back().second - pts[i]) < 1e-9)
        out.bands.back().second = pts[i + 1];
      else
        out.bands.emplace_back(pts[i], pts[i + 1]);
    }
  }
  return out;
}

inline WholeLineBands kp_bands(double z_lo, double z_hi, const CellParams& c,
                               int nscan = 200000) {
  return kp_bands(z_lo, z_hi, c.coupling(), c.l2, nscan);
}

// Bloch phase on a band: theta(z) = arccos(tr T / 2).
inline double kp_bloch_phase(double z, const CellParams& c) {
  double d = 0.5 * kp_discriminant(z, c);
  if (std::abs(d) > 1.0 + 1e-12) throw DomainError("z lies in a spectral gap");
  return std::acos(std::clamp(d, -1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Substitution chain between the delta' cell picture on [0, l2] and the
// whole-line picture on [0, 1]: u -> utilde(y) = e^{i l2 y tau'} u(l2 y),
// then v(y) = e^{-i taut y} utilde(y) with taut = tau' + pi (mod 2 pi).
// Pure phases on shared nodes, hence exactly invertible.

struct WholeLineState {
  EdgeFunction v;     // on [0, 1]
  double tau_t = 0.0; // shifted quasimomentum of the whole-line picture
};

inline WholeLineState substitute_forward(const EdgeFunction& u, double tau_prime,
                                         const CellParams& c) {
  if (std::abs(u.length - c.l2) > 1e-12) throw GridMismatch("state must live on [0, l2]");
  WholeLineState out;
  out.tau_t = mod_2pi(tau_prime + pi);
  out.v = make_edge(EdgeId::e2, 1.0, u.n);
  for (int i = 0; i <= u.n; ++i) {
    const double y = out.v.x(i);
    const complex ph = std::exp(iu * (c.l2 * y * tau_prime)) * std::exp(-iu * (out.tau_t * y));
    out.v.samples[i] = ph * u.samples[i];
  }
  return out;
}

inline EdgeFunction substitute_back(const WholeLineState& w, double tau_prime,
                                    const CellParams& c) {
  if (std::abs(w.v.length - 1.0) > 1e-12) throw GridMismatch("whole-line state must live on [0, 1]");
  EdgeFunction u = make_edge(EdgeId::e2, c.l2, w.v.n);
  for (int i = 0; i <= w.v.n; ++i) {
    const double y = w.v.x(i);
    const complex ph = std::exp(iu * (c.l2 * y * tau_prime)) * std::exp(-iu * (w.tau_t * y));
    u.samples[i] = w.v.samples[i] / ph;
  }
  return u;
}

}  // namespace hckp
