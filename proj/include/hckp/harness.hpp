#pragma once
// Empirical convergence harness.  Assembles finite sections of the three
// resolvent comparisons on per-edge trigonometric bases, measures operator
// norms across an eps sweep, fits log-log slopes, and emits deterministic
// CSV/JSON tables.  Also drives the spectral (root set) convergence table.

#include <hckp/core.hpp>
#include <hckp/mmatrix.hpp>
#include <hckp/resolvent.hpp>
#include <hckp/spectra.hpp>
#include <hckp/transforms.hpp>

#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace hckp {

// ---------------------------------------------------------------------------
// Sweep configuration.

struct SweepConfig {
  double a = 1.0;
  double l1 = 0.25;
  double l2 = 0.5;
  std::vector<double> eps_list = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  std::vector<double> tau_list = {0.0, pi / 2.0, pi, 3.0 * pi / 2.0};
  std::vector<complex> z_list = {complex(-1.0, 0.0)};
  int grid_n = 1024;
  int basis_per_edge = 32;
  double rho = 0.5;  // exclusion radius for admissibility checks

  CellParams cell(double eps) const { return make_cell(a, a, l1, l2, eps); }
};

inline void validate_config(const SweepConfig& cfg) {
  if (cfg.eps_list.empty() || cfg.tau_list.empty() || cfg.z_list.empty())
    throw DomainError("sweep lists must be non-empty");
  for (size_t i = 0; i + 1 < cfg.eps_list.size(); ++i)
    if (!(cfg.eps_list[i] > cfg.eps_list[i + 1]))
      throw DomainError("eps_list must be strictly decreasing");
  for (double e : cfg.eps_list)
    if (!(e > 0.0) || !(e < 1.0)) throw DomainError("eps values must lie in (0,1)");
  if (cfg.grid_n < 16 || cfg.grid_n % 2 != 0)
    throw DomainError("grid_n must be even and at least 16");
  if (cfg.basis_per_edge < 2) throw DomainError("basis_per_edge must be at least 2");
  if (!(cfg.rho > 0.0)) throw DomainError("rho must be positive");
}

// "key = value" configuration text, optional [section] headers (ignored for
// key lookup), '#' comments.  Unknown keys are an error.
inline SweepConfig parse_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  auto parse_doubles = [](const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t done = 0;
      out.push_back(std::stod(tok, &done));
    }
    return out;
  };
  auto parse_complex_list = [](const std::string& s) {
    // Entries split by ';', each "re" or "re,im".
    std::vector<complex> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      double re = 0.0, im = 0.0;
      size_t comma = tok.find(',');
      if (comma == std::string::npos) {
        re = std::stod(tok);
      } else {
        re = std::stod(tok.substr(0, comma));
        im = std::stod(tok.substr(comma + 1));
      }
      out.emplace_back(re, im);
    }
    return out;
  };
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '[' && s.back() == ']') continue;  // section header
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + " is not key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    try {
      if (key == "a")
        cfg.a = std::stod(val);
      else if (key == "l1")
        cfg.l1 = std::stod(val);
      else if (key == "l2")
        cfg.l2 = std::stod(val);
      else if (key == "eps_list")
        cfg.eps_list = parse_doubles(val);
      else if (key == "tau_list")
        cfg.tau_list = parse_doubles(val);
      else if (key == "z_list")
        cfg.z_list = parse_complex_list(val);
      else if (key == "grid_n")
        cfg.grid_n = std::stoi(val);
      else if (key == "basis_per_edge")
        cfg.basis_per_edge = std::stoi(val);
      else if (key == "rho")
        cfg.rho = std::stod(val);
      else
        throw DomainError("unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw DomainError("config line " + std::to_string(lineno) + ": bad number");
    } catch (const std::out_of_range&) {
      throw DomainError("config line " + std::to_string(lineno) + ": number out of range");
    }
  }
  validate_config(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Discrete basis and weighting helpers.

namespace detail {

// Quadrature weight vector of a state: Simpson weights per edge, stacked.
inline Eigen::VectorXd state_weights(const StateVector& u) {
  const int n = u.c1.n;
  Eigen::VectorXd w(3 * (n + 1));
  int at = 0;
  for (const EdgeFunction* e : {&u.c1, &u.c2, &u.c3}) {
    std::vector<double> sw = simpson_weights(e->n, e->h());
    for (int i = 0; i <= e->n; ++i) w(at++) = sw[i];
  }
  return w;
}

inline Eigen::VectorXcd state_to_column(const StateVector& u, const Eigen::VectorXd& sqw) {
  const int n = u.c1.n;
  Eigen::VectorXcd col(3 * (n + 1));
  int at = 0;
  for (const EdgeFunction* e : {&u.c1, &u.c2, &u.c3})
    for (int i = 0; i <= e->n; ++i, ++at) col(at) = sqw(at) * e->samples[i];
  return col;
}

inline Eigen::VectorXcd hom_to_column(const HomState& h, const Eigen::VectorXd& sqw) {
  const int n = h.u.n;
  Eigen::VectorXcd col(n + 2);
  for (int i = 0; i <= n; ++i) col(i) = sqw(i) * h.u.samples[i];
  col(n + 1) = h.beta;
  return col;
}

// Real Fourier modes on [0, L]: 1, cos(2 pi x/L), sin(2 pi x/L),
// cos(4 pi x/L), ...  An orthonormal family, so Gram-Schmidt only removes
// quadrature-level drift; a small residual means the grid cannot resolve
// the requested mode count.
inline std::vector<EdgeFunction> edge_modes(EdgeId id, double L, int n, int count) {
  std::vector<EdgeFunction> modes;
  modes.reserve(count);
  for (int m = 0; m < count; ++m) {
    modes.push_back(sample_edge(id, L, n, [&](double x) -> complex {
      if (m == 0) return 1.0;
      int f = (m + 1) / 2;
      double arg = 2.0 * pi * f * x / L;
      return (m % 2 == 1) ? std::cos(arg) : std::sin(arg);
    }));
  }
  for (size_t j = 0; j < modes.size(); ++j) {
    for (size_t i = 0; i < j; ++i) {
      complex c = inner(modes[j], modes[i]);
      for (int s = 0; s <= n; ++s) modes[j].samples[s] -= c * modes[i].samples[s];
    }
    double nn = norm(modes[j]);
    if (nn < 1e-6) throw NonConvergence("degenerate basis mode");
    for (int s = 0; s <= n; ++s) modes[j].samples[s] /= nn;
  }
  return modes;
}

// Orthonormal basis of the sampled cell space: per-edge modes, extended by
// zero to the other edges.
inline std::vector<StateVector> cell_basis(const CellParams& c, int n, int per_edge) {
  std::vector<StateVector> basis;
  const StateVector zero = make_state(c, n, true);
  auto push_edge = [&](int which) {
    const EdgeFunction& tpl = which == 0 ? zero.c1 : which == 1 ? zero.c2 : zero.c3;
    for (EdgeFunction& m : edge_modes(tpl.edge, tpl.length, n, per_edge)) {
      StateVector b = zero;
      (which == 0 ? b.c1 : which == 1 ? b.c2 : b.c3) = m;
      basis.push_back(std::move(b));
    }
  };
  push_edge(0);
  push_edge(1);
  push_edge(2);
  return basis;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Result tables.

struct SweepRow {
  double eps = 0.0;
  double tau = 0.0;
  complex z;
  double norm_thm41 = 0.0;   // fibre vs intermediate + corrector
  double norm_thm54 = 0.0;   // sandwiched intermediate vs homogenised
  double norm_cor55 = 0.0;   // fibre vs embedded homogenised
  double norm_nocorr = 0.0;  // fibre vs intermediate without the corrector
  std::string window_id;
  std::string flags = "ok";
};

struct SlopeFit {
  double tau = 0.0;
  complex z;
  std::string window_id;
  double slope41 = 0.0, slope54 = 0.0, slope55 = 0.0, slope_nocorr = 0.0;
  double resid41 = 0.0, resid54 = 0.0, resid55 = 0.0;
  bool decreasing41 = false, decreasing54 = false, decreasing55 = false;
};

struct SweepResult {
  SweepConfig cfg;
  std::vector<SweepRow> rows;
  std::vector<SlopeFit> slopes;
  std::vector<std::string> global_flags;
};

namespace detail {

// Least-squares slope of log(norm) against log(eps); residual is the RMS
// misfit of the line.
inline std::pair<double, double> loglog_fit(const std::vector<double>& eps,
                                            const std::vector<double>& val) {
  const size_t n = eps.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double x = std::log(eps[i]);
    double y = std::log(std::max(val[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / den;
  double icept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double x = std::log(eps[i]);
    double y = std::log(std::max(val[i], 1e-300));
    double d = y - (slope * x + icept);
    rss += d * d;
  }
  return {slope, std::sqrt(rss / n)};
}

struct CellNorms {
  double n41, n54, n55, nnc;
};

inline CellNorms measure_cell(const SweepConfig& cfg, double eps, double tau, complex z,
                              int grid_n) {
  const CellParams c = cfg.cell(eps);
  const Quasimomentum q = quasimomentum_from_tau(tau, eps);
  const SpectralPoint sp = spectral_point(z);
  const int n = grid_n;
  const int per_edge = cfg.basis_per_edge;

  const std::vector<StateVector> basis = cell_basis(c, n, per_edge);
  const StateVector zero = make_state(c, n, true);
  const Eigen::VectorXd w_state = state_weights(zero);
  const Eigen::VectorXd sqw_state = w_state.cwiseSqrt();

  const int rows_state = 3 * (n + 1);
  const int ncols = static_cast<int>(basis.size());
  Eigen::MatrixXcd fib(rows_state, ncols), itm(rows_state, ncols), cor(rows_state, ncols);
  Eigen::MatrixXcd emb(rows_state, ncols);

  for (int j = 0; j < ncols; ++j) {
    const StateVector& b = basis[j];
    fib.col(j) = state_to_column(fibre_resolvent(b, sp, q, c), sqw_state);
    itm.col(j) = state_to_column(intermediate_resolvent(b, sp, q, c), sqw_state);
    cor.col(j) = state_to_column(corrector_apply(b, sp, q, c), sqw_state);

    // Embedded homogenised route: project, solve, embed.
    HomState hb = effective_project(b, q, c);
    HomState hr = hom_resolvent(hb, sp, q.tau, c);
    emb.col(j) = state_to_column(effective_embed(hr, q, c), sqw_state);
  }

  CellNorms out{};
  out.n41 = opnorm_diff(fib, itm + cor);
  out.nnc = opnorm_diff(fib, itm);
  out.n55 = opnorm_diff(fib, emb);

  // Sandwiched comparison on the effective space: columns are soft modes
  // plus the pure scalar channel.
  const std::vector<EdgeFunction> soft_modes = edge_modes(EdgeId::e2, c.l2, n, per_edge);
  const std::vector<double> sw2 = simpson_weights(n, c.l2 / n);
  Eigen::VectorXd sqw_hom(n + 2);
  for (int i = 0; i <= n; ++i) sqw_hom(i) = std::sqrt(sw2[i]);
  sqw_hom(n + 1) = 1.0;

  const int hcols = per_edge + 1;
  Eigen::MatrixXcd lhs(n + 2, hcols), rhs(n + 2, hcols);
  for (int j = 0; j < hcols; ++j) {
    HomState hb;
    if (j < per_edge) {
      hb.u = soft_modes[j];
      hb.beta = 0.0;
    } else {
      hb.u = make_edge(EdgeId::e2, c.l2, n);
      hb.beta = 1.0;
    }
    StateVector up = effective_embed(hb, q, c);
    StateVector mid = intermediate_resolvent(up, sp, q, c);
    StateVector corr = corrector_apply(up, sp, q, c);
    for (int i = 0; i <= mid.c1.n; ++i) mid.c1.samples[i] += corr.c1.samples[i];
    for (int i = 0; i <= mid.c2.n; ++i) mid.c2.samples[i] += corr.c2.samples[i];
    for (int i = 0; i <= mid.c3.n; ++i) mid.c3.samples[i] += corr.c3.samples[i];
    lhs.col(j) = hom_to_column(effective_project(mid, q, c), sqw_hom);
    rhs.col(j) = hom_to_column(hom_resolvent(hb, sp, q.tau, c), sqw_hom);
  }
  out.n54 = opnorm_diff(lhs, rhs);
  return out;
}

}  // namespace detail

// Full convergence sweep.  Admissibility of every z against the limiting
// exclusion set is enforced up front; the smallest eps is re-measured on a
// halved grid and flagged if the norms move by more than ten percent.
inline SweepResult run_convergence(const SweepConfig& cfg) {
  validate_config(cfg);
  SweepResult res;
  res.cfg = cfg;

  // Admissibility: distance of each z to the limiting spectra over the
  // swept quasimomenta.
  {
    double zmax = 1.0;
    for (complex z : cfg.z_list) zmax = std::max(zmax, std::abs(z) + 1.0);
    for (double tau : cfg.tau_list) {
      ExclusionSet ex = exclusion_set(cfg.cell(cfg.eps_list.front()), tau, zmax, cfg.rho);
      for (complex z : cfg.z_list)
        if (!ex.admissible(z))
          throw DomainError("sweep point z too close to the limiting spectrum");
    }
  }

  std::map<std::pair<size_t, size_t>, std::vector<std::pair<double, detail::CellNorms>>>
      series;  // (tau index, z index) -> per-eps norms

  for (size_t ie = 0; ie < cfg.eps_list.size(); ++ie) {
    const double eps = cfg.eps_list[ie];
    for (size_t it = 0; it < cfg.tau_list.size(); ++it) {
      for (size_t iz = 0; iz < cfg.z_list.size(); ++iz) {
        const double tau = cfg.tau_list[it];
        const complex z = cfg.z_list[iz];
        detail::CellNorms nm = detail::measure_cell(cfg, eps, tau, z, cfg.grid_n);
        SweepRow row;
        row.eps = eps;
        row.tau = tau;
        row.z = z;
        row.norm_thm41 = nm.n41;
        row.norm_thm54 = nm.n54;
        row.norm_cor55 = nm.n55;
        row.norm_nocorr = nm.nnc;
        row.window_id = "t" + std::to_string(it) + "z" + std::to_string(iz);

        if (ie + 1 == cfg.eps_list.size()) {
          // Grid self-consistency at the smallest eps.
          detail::CellNorms half = detail::measure_cell(cfg, eps, tau, z, cfg.grid_n / 2);
          double scale = std::max({nm.n41, nm.n54, nm.n55, 1e-300});
          double drift = std::max({std::abs(half.n41 - nm.n41), std::abs(half.n54 - nm.n54),
                                   std::abs(half.n55 - nm.n55)});
          if (drift > 0.1 * scale) {
            row.flags = "budget";
            res.global_flags.push_back("grid budget check failed at eps = " +
                                       std::to_string(eps));
          }
        }
        res.rows.push_back(row);
        series[{it, iz}].emplace_back(eps, nm);
      }
    }
  }

  for (size_t it = 0; it < cfg.tau_list.size(); ++it) {
    for (size_t iz = 0; iz < cfg.z_list.size(); ++iz) {
      const auto& pts = series[{it, iz}];
      if (pts.size() < 2) continue;
      std::vector<double> es, v41, v54, v55, vnc;
      for (const auto& [e, nm] : pts) {
        es.push_back(e);
        v41.push_back(nm.n41);
        v54.push_back(nm.n54);
        v55.push_back(nm.n55);
        vnc.push_back(nm.nnc);
      }
      SlopeFit fit;
      fit.tau = cfg.tau_list[it];
      fit.z = cfg.z_list[iz];
      fit.window_id = "t" + std::to_string(it) + "z" + std::to_string(iz);
      std::tie(fit.slope41, fit.resid41) = detail::loglog_fit(es, v41);
      std::tie(fit.slope54, fit.resid54) = detail::loglog_fit(es, v54);
      std::tie(fit.slope55, fit.resid55) = detail::loglog_fit(es, v55);
      fit.slope_nocorr = detail::loglog_fit(es, vnc).first;
      auto decreasing = [](const std::vector<double>& v) {
        for (size_t i = 0; i + 1 < v.size(); ++i)
          if (!(v[i + 1] < v[i])) return false;
        return true;
      };
      fit.decreasing41 = decreasing(v41);
      fit.decreasing54 = decreasing(v54);
      fit.decreasing55 = decreasing(v55);
      res.slopes.push_back(fit);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Spectral convergence table: Hausdorff distance between the fibre root set
// and the limiting root set across the eps sweep.

struct SpectralRow {
  double eps = 0.0;
  double tau = 0.0;
  double hausdorff = 0.0;
  size_t n_fibre = 0;
  size_t n_limit = 0;
  std::string flags = "ok";
};

struct SpectralResult {
  SweepConfig cfg;
  double k_lo = 0.1, k_hi = 20.0;
  std::vector<SpectralRow> rows;
  std::vector<std::string> global_flags;
};

inline SpectralResult run_spectral_convergence(const SweepConfig& cfg, double k_lo = 0.1,
                                               double k_hi = 20.0) {
  validate_config(cfg);
  SpectralResult res;
  res.cfg = cfg;
  res.k_lo = k_lo;
  res.k_hi = k_hi;
  for (size_t it = 0; it < cfg.tau_list.size(); ++it) {
    const double tau = cfg.tau_list[it];
    DispersionRelation cc{RelationKind::limit_cc, cfg.cell(cfg.eps_list.front()), tau};
    const std::vector<double> rl = find_roots(cc, k_lo, k_hi);
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : cfg.eps_list) {
      const CellParams c = cfg.cell(eps);
      DispersionRelation fd{RelationKind::fibre_det, c, tau};
      fd.t = quasimomentum_from_tau(tau, eps).t;
      const std::vector<double> rf = find_roots(fd, k_lo, k_hi);
      SpectralRow row;
      row.eps = eps;
      row.tau = tau;
      row.n_fibre = rf.size();
      row.n_limit = rl.size();
      row.hausdorff = hausdorff(rf, rl);
      if (!(row.hausdorff < prev)) {
        row.flags = "not-monotone";
        res.global_flags.push_back("hausdorff not monotone at tau = " + std::to_string(tau));
      }
      prev = row.hausdorff;
      res.rows.push_back(row);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Deterministic emitters.  CSV uses %.17g everywhere; JSON round-trips the
// full result including configuration and derived fits.

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string emit_csv(const SweepResult& r) {
  std::string s = "eps,tau,re_z,im_z,norm_thm41,norm_thm54,norm_cor55,slope_window_id,flags\n";
  for (const SweepRow& row : r.rows) {
    s += detail::fmt(row.eps) + "," + detail::fmt(row.tau) + "," + detail::fmt(row.z.real()) +
         "," + detail::fmt(row.z.imag()) + "," + detail::fmt(row.norm_thm41) + "," +
         detail::fmt(row.norm_thm54) + "," + detail::fmt(row.norm_cor55) + "," +
         row.window_id + "," + row.flags + "\n";
  }
  return s;
}

inline std::string emit_csv(const SpectralResult& r) {
  std::string s = "eps,tau,hausdorff,n_fibre,n_limit,flags\n";
  for (const SpectralRow& row : r.rows) {
    s += detail::fmt(row.eps) + "," + detail::fmt(row.tau) + "," + detail::fmt(row.hausdorff) +
         "," + std::to_string(row.n_fibre) + "," + std::to_string(row.n_limit) + "," +
         row.flags + "\n";
  }
  return s;
}

inline nlohmann::json config_to_json(const SweepConfig& cfg) {
  nlohmann::json j;
  j["a"] = cfg.a;
  j["l1"] = cfg.l1;
  j["l2"] = cfg.l2;
  j["eps_list"] = cfg.eps_list;
  j["tau_list"] = cfg.tau_list;
  nlohmann::json zl = nlohmann::json::array();
  for (complex z : cfg.z_list) zl.push_back({z.real(), z.imag()});
  j["z_list"] = zl;
  j["grid_n"] = cfg.grid_n;
  j["basis_per_edge"] = cfg.basis_per_edge;
  j["rho"] = cfg.rho;
  return j;
}

inline SweepConfig config_from_json(const nlohmann::json& j) {
  SweepConfig cfg;
  cfg.a = j.at("a").get<double>();
  cfg.l1 = j.at("l1").get<double>();
  cfg.l2 = j.at("l2").get<double>();
  cfg.eps_list = j.at("eps_list").get<std::vector<double>>();
  cfg.tau_list = j.at("tau_list").get<std::vector<double>>();
  cfg.z_list.clear();
  for (const auto& p : j.at("z_list")) cfg.z_list.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  cfg.grid_n = j.at("grid_n").get<int>();
  cfg.basis_per_edge = j.at("basis_per_edge").get<int>();
  cfg.rho = j.at("rho").get<double>();
  return cfg;
}

inline nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json j;
  j["config"] = config_to_json(r.cfg);
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"tau", row.tau},
                    {"z", {row.z.real(), row.z.imag()}},
                    {"norm_thm41", row.norm_thm41},
                    {"norm_thm54", row.norm_thm54},
                    {"norm_cor55", row.norm_cor55},
                    {"norm_nocorr", row.norm_nocorr},
                    {"slope_window_id", row.window_id},
                    {"flags", row.flags}});
  }
  j["rows"] = rows;
  nlohmann::json fits = nlohmann::json::array();
  for (const SlopeFit& f : r.slopes) {
    fits.push_back({{"tau", f.tau},
                    {"z", {f.z.real(), f.z.imag()}},
                    {"slope_window_id", f.window_id},
                    {"slope41", f.slope41},
                    {"slope54", f.slope54},
                    {"slope55", f.slope55},
                    {"slope_nocorr", f.slope_nocorr},
                    {"resid41", f.resid41},
                    {"resid54", f.resid54},
                    {"resid55", f.resid55},
                    {"decreasing41", f.decreasing41},
                    {"decreasing54", f.decreasing54},
                    {"decreasing55", f.decreasing55}});
  }
  j["slopes"] = fits;
  j["global_flags"] = r.global_flags;
  return j;
}

inline SweepResult from_json(const nlohmann::json& j) {
  SweepResult r;
  r.cfg = config_from_json(j.at("config"));
  for (const auto& row : j.at("rows")) {
    SweepRow s;
    s.eps = row.at("eps").get<double>();
    s.tau = row.at("tau").get<double>();
    s.z = complex(row.at("z").at(0).get<double>(), row.at("z").at(1).get<double>());
    s.norm_thm41 = row.at("norm_thm41").get<double>();
    s.norm_thm54 = row.at("norm_thm54").get<double>();
    s.norm_cor55 = row.at("norm_cor55").get<double>();
    s.norm_nocorr = row.at("norm_nocorr").get<double>();
    s.window_id = row.at("slope_window_id").get<std::string>();
    s.flags = row.at("flags").get<std::string>();
    r.rows.push_back(s);
  }
  for (const auto& f : j.at("slopes")) {
    SlopeFit s;
    s.tau = f.at("tau").get<double>();
    s.z = complex(f.at("z").at(0).get<double>(), f.at("z").at(1).get<double>());
    s.window_id = f.at("slope_window_id").get<std::string>();
    s.slope41 = f.at("slope41").get<double>();
    s.slope54 = f.at("slope54").get<double>();
    s.slope55 = f.at("slope55").get<double>();
    s.slope_nocorr = f.at("slope_nocorr").get<double>();
    s.resid41 = f.at("resid41").get<double>();
    s.resid54 = f.at("resid54").get<double>();
    s.resid55 = f.at("resid55").get<double>();
    s.decreasing41 = f.at("decreasing41").get<bool>();
    s.decreasing54 = f.at("decreasing54").get<bool>();
    s.decreasing55 = f.at("decreasing55").get<bool>();
    r.slopes.push_back(s);
  }
  r.global_flags = j.at("global_flags").get<std::vector<std::string>>();
  return r;
}

inline std::string emit_json(const SweepResult& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace hckp
