#include <hckp/harness.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"

using namespace hckp;
using Catch::Approx;

TEST_CASE("config parsing", "[harness]") {
  SECTION("sections, comments, and every key") {
    std::stringstream in(
        "# sweep description\n"
        "[cell]\n"
        "a = 2.0\n"
        "l1 = 0.3   # stiff fraction\n"
        "l2 = 0.4\n"
        "\n"
        "[sweep]\n"
        "eps_list = 0.125, 0.0625, 0.03125\n"
        "tau_list = 0.9, 2.1\n"
        "z_list = -1 ; -2,0.5\n"
        "grid_n = 128\n"
        "basis_per_edge = 16\n"
        "rho = 0.25\n");
    const SweepConfig cfg = parse_config(in);
    CHECK(cfg.a == 2.0);
    CHECK(cfg.l1 == 0.3);
    CHECK(cfg.l2 == 0.4);
    CHECK(cfg.eps_list == std::vector<double>{0.125, 0.0625, 0.03125});
    CHECK(cfg.tau_list == std::vector<double>{0.9, 2.1});
    REQUIRE(cfg.z_list.size() == 2);
    CHECK(cfg.z_list[0] == complex(-1.0, 0.0));
    CHECK(cfg.z_list[1] == complex(-2.0, 0.5));
    CHECK(cfg.grid_n == 128);
    CHECK(cfg.basis_per_edge == 16);
    CHECK(cfg.rho == 0.25);
    CHECK(cfg.cell(0.125).a1 == 2.0);
  }

  SECTION("rejected inputs") {
    auto parse = [](const std::string& text) {
      std::stringstream in(text);
      return parse_config(in);
    };
    CHECK_THROWS_AS(parse("unknown_key = 3\n"), DomainError);
    CHECK_THROWS_AS(parse("grid_n = twelve\n"), DomainError);
    CHECK_THROWS_AS(parse("just a line\n"), DomainError);
    // eps must decrease strictly and stay inside (0, 1).
    CHECK_THROWS_AS(parse("eps_list = 0.0625, 0.125\n"), DomainError);
    CHECK_THROWS_AS(parse("eps_list = 1.5, 0.125\n"), DomainError);
    CHECK_THROWS_AS(parse("grid_n = 13\n"), DomainError);
  }
}

TEST_CASE("log-log slope fit recovers synthetic power laws", "[harness]") {
  const std::vector<double> eps = {0.25, 0.125, 0.0625, 0.03125};
  std::vector<double> vals;
  for (double e : eps) vals.push_back(3.7 * e * e);
  const auto fit = detail::loglog_fit(eps, vals);
  CHECK(fit.first == Approx(2.0).margin(1e-12));
  CHECK(fit.second < 1e-12);

  std::vector<double> half;
  for (double e : eps) half.push_back(0.2 * std::sqrt(e));
  CHECK(detail::loglog_fit(eps, half).first == Approx(0.5).margin(1e-12));
}

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.eps_list = {0.125, 0.0625};
  cfg.tau_list = {0.9};
  cfg.z_list = {complex(-1.0, 0.0)};
  cfg.grid_n = 256;
  cfg.basis_per_edge = 12;
  return cfg;
}

}  // namespace

TEST_CASE("norm-resolvent sweep on a small configuration", "[harness]") {
  const SweepConfig cfg = small_config();
  const SweepResult res = run_convergence(cfg);

  REQUIRE(res.rows.size() == 2);
  REQUIRE(res.slopes.size() == 1);

  SECTION("uncorrected distance dominates the corrected ones") {
    for (const SweepRow& row : res.rows) {
      CHECK(row.norm_thm41 < row.norm_nocorr);
      CHECK(row.norm_thm41 > 0.0);
      CHECK(row.flags == "ok");
    }
    // Distances shrink with eps.
    CHECK(res.rows[1].norm_thm41 < res.rows[0].norm_thm41);
    CHECK(res.rows[1].norm_cor55 < res.rows[0].norm_cor55);
  }

  SECTION("CSV emission is stable") {
    const std::string csv = emit_csv(res);
    CHECK(csv.rfind("eps,tau,re_z,im_z,norm_thm41,norm_thm54,norm_cor55,"
                    "slope_window_id,flags\n",
                    0) == 0);
    // One header plus one line per row.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + res.rows.size());
    const SweepResult again = run_convergence(cfg);
    CHECK(emit_csv(again) == csv);
  }

  SECTION("JSON round trip is lossless") {
    const nlohmann::json j = to_json(res);
    const SweepResult back = from_json(j);
    REQUIRE(back.rows.size() == res.rows.size());
    for (size_t i = 0; i < res.rows.size(); ++i) {
      CHECK(back.rows[i].eps == res.rows[i].eps);
      CHECK(back.rows[i].tau == res.rows[i].tau);
      CHECK(back.rows[i].z == res.rows[i].z);
      CHECK(back.rows[i].norm_thm41 == res.rows[i].norm_thm41);
      CHECK(back.rows[i].norm_thm54 == res.rows[i].norm_thm54);
      CHECK(back.rows[i].norm_cor55 == res.rows[i].norm_cor55);
      CHECK(back.rows[i].norm_nocorr == res.rows[i].norm_nocorr);
      CHECK(back.rows[i].window_id == res.rows[i].window_id);
      CHECK(back.rows[i].flags == res.rows[i].flags);
    }
    REQUIRE(back.slopes.size() == 1);
    CHECK(back.slopes[0].slope41 == res.slopes[0].slope41);
    CHECK(back.slopes[0].slope54 == res.slopes[0].slope54);
    CHECK(back.slopes[0].slope55 == res.slopes[0].slope55);
    CHECK(back.slopes[0].slope_nocorr == res.slopes[0].slope_nocorr);
    const std::string js = emit_json(res);
    CHECK(js.back() == '\n');
    CHECK(nlohmann::json::parse(js) == j);
  }

  SECTION("config serialisation round trip") {
    const nlohmann::json j = config_to_json(cfg);
    const SweepConfig back = config_from_json(j);
    CHECK(back.a == cfg.a);
    CHECK(back.l1 == cfg.l1);
    CHECK(back.l2 == cfg.l2);
    CHECK(back.eps_list == cfg.eps_list);
    CHECK(back.tau_list == cfg.tau_list);
    CHECK(back.z_list == cfg.z_list);
    CHECK(back.grid_n == cfg.grid_n);
    CHECK(back.basis_per_edge == cfg.basis_per_edge);
    CHECK(back.rho == cfg.rho);
  }
}

TEST_CASE("sweep points too close to the limiting spectrum are rejected", "[harness]") {
  SweepConfig cfg = small_config();
  // First limiting Bloch root at tau = 0.9: z = k^2.
  const double k1 = 1.2614699023090292;
  cfg.z_list = {complex(k1 * k1, 0.0)};
  CHECK_THROWS_AS(run_convergence(cfg), DomainError);
}

TEST_CASE("spectral Hausdorff sweep on a small configuration", "[harness]") {
  SweepConfig cfg = small_config();
  const SpectralResult res = run_spectral_convergence(cfg);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.k_lo == 0.1);
  CHECK(res.k_hi == 20.0);
  for (const SpectralRow& row : res.rows) {
    CHECK(row.tau == 0.9);
    CHECK(row.n_fibre > 0);
    CHECK(row.n_limit == 4);
    CHECK(row.hausdorff < 0.5);
  }
  CHECK(res.rows[1].hausdorff < res.rows[0].hausdorff);
  CHECK(res.global_flags.empty());

  const std::string csv = emit_csv(res);
  CHECK(csv.rfind("eps,tau,hausdorff,n_fibre,n_limit,flags\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + res.rows.size());
}
