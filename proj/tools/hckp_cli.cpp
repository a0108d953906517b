// Command-line driver for the high-contrast periodic-graph toolkit.
//
// Subcommands:
//   bands         limiting band structure over a quasimomentum sweep
//   spectrum      fibre root set at fixed eps, with optional FD cross-check
//   mmatrix       print one of the boundary matrices at a spectral point
//   converge      resolvent-norm convergence sweep (CSV or JSON)
//   kp-check      homogenised vs delta'-type equivalence and whole-line bands
//   gelfand-demo  transform roundtrip and Plancherel report
//
// Exit codes: 0 success, 1 check failed, 2 usage error, 3 numerical error.

#include <hckp/core.hpp>
#include <hckp/harness.hpp>
#include <hckp/kp_model.hpp>
#include <hckp/mmatrix.hpp>
#include <hckp/resolvent.hpp>
#include <hckp/spectra.hpp>
#include <hckp/transforms.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw hckp::Error("cannot open output file " + path);
  f << text;
}

int cmd_bands(double a, double l1, double l2, int tau_samples, double k_max,
              const std::string& format, const std::string& out) {
  hckp::CellParams c = hckp::make_cell(a, a, l1, l2, 0.5);  // eps unused by the limit
  hckp::BandStructure b = hckp::compute_bands(c, tau_samples, k_max);
  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["tau_grid"] = b.tau_grid;
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : b.roots) roots.push_back(r);
    j["roots"] = roots;
    nlohmann::json bands = nlohmann::json::array();
    for (auto [lo, hi] : b.bands) bands.push_back({lo, hi});
    j["bands"] = bands;
    nlohmann::json gaps = nlohmann::json::array();
    for (auto [lo, hi] : b.gaps) gaps.push_back({lo, hi});
    j["gaps"] = gaps;
    text = j.dump(2) + "\n";
  } else {
    text = "tau,count,roots\n";
    for (size_t i = 0; i < b.tau_grid.size(); ++i) {
      std::string ks;
      for (size_t j = 0; j < b.roots[i].size(); ++j) {
        if (j) ks += " ";
        ks += fmt(b.roots[i][j]);
      }
      text += fmt(b.tau_grid[i]) + "," + std::to_string(b.roots[i].size()) + ",\"" + ks +
              "\"\n";
    }
    for (auto [lo, hi] : b.bands)
      text += "# band," + fmt(lo) + "," + fmt(hi) + "\n";
    for (auto [lo, hi] : b.gaps)
      text += "# gap," + fmt(lo) + "," + fmt(hi) + "\n";
  }
  write_out(out, text);
  return 0;
}

int cmd_spectrum(double a, double l1, double l2, double eps, double tau, double k_lo,
                 double k_max, int fd_check, const std::string& out) {
  hckp::CellParams c = hckp::make_cell(a, a, l1, l2, eps);
  hckp::Quasimomentum q = hckp::quasimomentum_from_tau(tau, eps);
  hckp::DispersionRelation rel{hckp::RelationKind::fibre_det, c, tau};
  rel.t = q.t;
  std::vector<double> roots = hckp::find_roots(rel, k_lo, k_max);
  std::string text = "k,z\n";
  for (double k : roots) text += fmt(k) + "," + fmt(k * k) + "\n";

  int rc = 0;
  if (fd_check > 0) {
    std::vector<double> zs = hckp::fibre_fd_eigenvalues(c, q, fd_check, k_lo * k_lo,
                                                        k_max * k_max);
    // Flag FD eigenvalues with no counterpart among the boundary-determinant
    // roots; discretisation error grows with z, so the match window does too.
    for (double z : zs) {
      double k = std::sqrt(z);
      double best = std::numeric_limits<double>::infinity();
      for (double r : roots) best = std::min(best, std::abs(r - k));
      double tol = 1e-2 * std::max(1.0, k) + 20.0 * k / (fd_check * fd_check);
      if (best > tol) {
        text += "# unmatched_fd," + fmt(z) + "," + fmt(best) + "\n";
        rc = 1;
      }
    }
  }
  write_out(out, text);
  return rc;
}

int cmd_mmatrix(double a, double l1, double l2, double eps, double t, double re_z,
                double im_z, const std::string& variant, const std::string& out) {
  hckp::CellParams c = hckp::make_cell(a, a, l1, l2, eps);
  hckp::Quasimomentum q = hckp::quasimomentum(t, eps);
  hckp::SpectralPoint sp = hckp::spectral_point({re_z, im_z});
  hckp::Matrix3 m;
  if (variant == "m1")
    m = hckp::m1(sp, q, c);
  else if (variant == "m2")
    m = hckp::m2(sp, q, c);
  else if (variant == "mtilde")
    m = hckp::mtilde_minus_b(sp, q, c);
  else
    throw CLI::ValidationError("--variant must be m1, m2 or mtilde");
  std::string text;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (j) text += ",";
      text += fmt(m(i, j).real()) + (m(i, j).imag() < 0 ? "-" : "+") +
              fmt(std::abs(m(i, j).imag())) + "i";
    }
    text += "\n";
  }
  write_out(out, text);
  return 0;
}

int cmd_converge(const std::string& config_path, const std::string& format,
                 const std::string& out, bool spectral) {
  hckp::SweepConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw hckp::Error("cannot open config file " + config_path);
    cfg = hckp::parse_config(f);
  }
  std::string text;
  if (spectral) {
    hckp::SpectralResult r = hckp::run_spectral_convergence(cfg);
    text = hckp::emit_csv(r);
  } else {
    hckp::SweepResult r = hckp::run_convergence(cfg);
    text = format == "json" ? hckp::emit_json(r) : hckp::emit_csv(r);
  }
  write_out(out, text);
  return 0;
}

int cmd_kp_check(double a, double l1, double l2, double tau, double k_max,
                 bool corrupt_coupling, const std::string& out) {
  hckp::CellParams c = hckp::make_cell(a, a, l1, l2, 0.5);
  const double scale = corrupt_coupling ? 1.01 : 1.0;
  hckp::EquivalenceReport rep = hckp::unitary_equivalence_check(tau, c, 0.1, k_max, scale);

  // Whole-line cross-check: band edges from the transfer matrix against the
  // limiting band edges (k squared).
  hckp::WholeLineBands wb = hckp::kp_bands(0.0, k_max * k_max, c);
  hckp::BandStructure lb = hckp::compute_bands(c, 2, k_max);
  bool edges_ok = wb.edges.size() == lb.edge_k.size();
  double max_edge = 0.0;
  if (edges_ok)
    for (size_t i = 0; i < wb.edges.size(); ++i) {
      double ze = lb.edge_k[i] * lb.edge_k[i];
      max_edge = std::max(max_edge, std::abs(wb.edges[i] - ze));
      if (max_edge > 1e-6) edges_ok = false;
    }

  std::string text;
  text += "shared_roots," + std::to_string(rep.shared_roots) + "\n";
  text += "max_root_distance," + fmt(rep.max_root_distance) + "\n";
  text += "max_norm_residual," + fmt(rep.max_norm_residual) + "\n";
  text += std::string("non_bloch_match,") + (rep.non_bloch_match ? "yes" : "no") + "\n";
  text += std::string("band_edges_match,") + (edges_ok ? "yes" : "no") + "\n";
  text += "max_edge_distance," + fmt(max_edge) + "\n";
  bool pass = rep.pass && edges_ok;
  text += std::string("result,") + (pass ? "pass" : "fail") + "\n";
  if (!rep.detail.empty()) text += "detail," + rep.detail + "\n";
  write_out(out, text);
  return pass ? 0 : 1;
}

int cmd_gelfand_demo(double eps, int ncells, int ny, int nk, const std::string& out) {
  if (ncells % 2 == 0) ++ncells;
  const int N = (ncells - 1) / 2;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<hckp::complex> u(static_cast<size_t>(ncells) * ny);
  for (auto& v : u) v = hckp::complex(unif(rng), unif(rng));

  hckp::GelfandSample g = hckp::scaled_gelfand(u, eps, -N, N, ny, nk);
  std::vector<hckp::complex> back = hckp::inverse_scaled_gelfand(g, eps);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    num += std::norm(back[i] - u[i]);
    den += std::norm(u[i]);
  }
  const double roundtrip = std::sqrt(num / den);
  // Plancherel in the matching discrete norms; the eps factors cancel
  // between mesh and prefactor, so compare through the unscaled pair.
  hckp::GelfandSample gu = hckp::gelfand(u, -N, N, ny, nk);
  const double nu = hckp::line_norm(u, ny);
  const double ng = hckp::gelfand_norm(gu);
  const double planch = std::abs(nu - ng) / nu;

  std::string text;
  text += "roundtrip_rel_error," + fmt(roundtrip) + "\n";
  text += "plancherel_rel_error," + fmt(planch) + "\n";
  bool pass = roundtrip < 1e-10 && planch < 1e-10;
  text += std::string("result,") + (pass ? "pass" : "fail") + "\n";
  write_out(out, text);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-contrast periodic operator toolkit"};
  app.require_subcommand(1);

  double a = 1.0, l1 = 0.25, l2 = 0.5, eps = 0.03125;
  double tau = 0.0, t = 0.0, k_lo = 0.1, k_max = 20.0;
  double re_z = -1.0, im_z = 0.0;
  int tau_samples = 64, fd_check = 0, ncells = 9, ny = 16, nk = 32;
  std::string format = "csv", out, config_path, variant = "m1";
  bool spectral = false, corrupt_coupling = false;

  auto* bands = app.add_subcommand("bands", "limiting band structure");
  bands->add_option("--a", a, "stiff coefficient");
  bands->add_option("--l1", l1, "first stiff relative length");
  bands->add_option("--l2", l2, "soft relative length");
  bands->add_option("--tau-samples", tau_samples, "quasimomentum samples")
      ->check(CLI::PositiveNumber);
  bands->add_option("--k-max", k_max, "upper k bound")->check(CLI::PositiveNumber);
  bands->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  bands->add_option("--out", out, "output path, - for stdout");

  auto* spectrum = app.add_subcommand("spectrum", "fibre root set");
  spectrum->add_option("--a", a, "stiff coefficient");
  spectrum->add_option("--l1", l1, "first stiff relative length");
  spectrum->add_option("--l2", l2, "soft relative length");
  spectrum->add_option("--eps", eps, "period")->check(CLI::PositiveNumber);
  spectrum->add_option("--tau", tau, "reduced quasimomentum");
  spectrum->add_option("--k-lo", k_lo, "lower k bound");
  spectrum->add_option("--k-max", k_max, "upper k bound")->check(CLI::PositiveNumber);
  spectrum->add_option("--fd-check", fd_check,
                       "cross-check against an n-point finite-difference eigensolve");
  spectrum->add_option("--out", out, "output path, - for stdout");

  auto* mm = app.add_subcommand("mmatrix", "boundary matrix at a spectral point");
  mm->add_option("--a", a, "stiff coefficient");
  mm->add_option("--l1", l1, "first stiff relative length");
  mm->add_option("--l2", l2, "soft relative length");
  mm->add_option("--eps", eps, "period")->check(CLI::PositiveNumber);
  mm->add_option("--t", t, "fibre quasimomentum");
  mm->add_option("--re-z", re_z, "Re z");
  mm->add_option("--im-z", im_z, "Im z");
  mm->add_option("--variant", variant, "m1, m2 or mtilde");
  mm->add_option("--out", out, "output path, - for stdout");

  auto* conv = app.add_subcommand("converge", "resolvent convergence sweep");
  conv->add_option("--config", config_path, "key = value config file");
  conv->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  conv->add_flag("--spectral", spectral, "emit the spectral table instead");
  conv->add_option("--out", out, "output path, - for stdout");

  auto* kpc = app.add_subcommand("kp-check", "limit-model equivalence checks");
  kpc->add_option("--a", a, "stiff coefficient");
  kpc->add_option("--l1", l1, "first stiff relative length");
  kpc->add_option("--l2", l2, "soft relative length");
  kpc->add_option("--tau", tau, "reduced quasimomentum");
  kpc->add_option("--k-max", k_max, "upper k bound")->check(CLI::PositiveNumber);
  kpc->add_flag("--corrupt-coupling", corrupt_coupling)->group("");  // hidden
  kpc->add_option("--out", out, "output path, - for stdout");

  auto* gd = app.add_subcommand("gelfand-demo", "transform roundtrip report");
  gd->add_option("--eps", eps, "period")->check(CLI::PositiveNumber);
  gd->add_option("--cells", ncells, "number of occupied cells");
  gd->add_option("--ny", ny, "samples per cell");
  gd->add_option("--nk", nk, "quasimomentum samples");
  gd->add_option("--out", out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (bands->parsed()) return cmd_bands(a, l1, l2, tau_samples, k_max, format, out);
    if (spectrum->parsed())
      return cmd_spectrum(a, l1, l2, eps, tau, k_lo, k_max, fd_check, out);
    if (mm->parsed()) return cmd_mmatrix(a, l1, l2, eps, t, re_z, im_z, variant, out);
    if (conv->parsed()) return cmd_converge(config_path, format, out, spectral);
    if (kpc->parsed()) return cmd_kp_check(a, l1, l2, tau, k_max, corrupt_coupling, out);
    if (gd->parsed()) return cmd_gelfand_demo(eps, ncells, ny, nk, out);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const hckp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
