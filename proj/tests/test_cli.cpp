#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int rc = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(HCKP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  CliResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), p)) > 0) res.out.append(buf, got);
  const int st = pclose(p);
  res.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return res;
}

size_t count_lines(const std::string& s) {
  size_t n = 0;
  for (char ch : s)
    if (ch == '\n') ++n;
  return n;
}

const char* kConfigPath = "hckp_cli_test_config.txt";

void write_config() {
  std::ofstream f(kConfigPath);
  f << "# integration sweep\n"
       "[sweep]\n"
       "eps_list = 0.125, 0.0625\n"
       "tau_list = 0.9\n"
       "z_list = -1\n"
       "grid_n = 256\n"
       "basis_per_edge = 12\n";
}

}  // namespace

TEST_CASE("mmatrix subcommand prints the fibre M-matrix", "[cli]") {
  const CliResult r = run_cli("mmatrix --eps 0.1 --t 0 --re-z 1");
  CHECK(r.rc == 0);
  CHECK(count_lines(r.out) == 3);
  // Frozen (0,0) entry at the default cell.
  CHECK(r.out.rfind("-79.983332638847", 0) == 0);

  const CliResult rt = run_cli("mmatrix --eps 0.1 --t 0 --re-z 1 --variant mtilde");
  CHECK(rt.rc == 0);
  CHECK(count_lines(rt.out) == 3);

  // A soft Dirichlet point is a genuine pole of the M-matrix.
  const CliResult rp = run_cli("mmatrix --eps 0.1 --t 0 --re-z 39.4784176043574");
  CHECK(rp.rc == 3);
}

TEST_CASE("bands subcommand emits per-tau root lists and band intervals", "[cli]") {
  const CliResult r = run_cli("bands --tau-samples 8 --k-max 14");
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("tau,count,roots\n", 0) == 0);
  CHECK(r.out.find("# band,0,") != std::string::npos);
  CHECK(r.out.find("# gap,") != std::string::npos);

  const CliResult rj = run_cli("bands --tau-samples 8 --k-max 14 --format json");
  CHECK(rj.rc == 0);
  const nlohmann::json j = nlohmann::json::parse(rj.out);
  CHECK(j.at("tau_grid").size() == 8);
  CHECK(j.at("roots").size() == 8);
  CHECK(j.at("bands").size() == 3);
  CHECK(j.at("gaps").size() == 2);
}

TEST_CASE("spectrum subcommand lists fibre roots and cross-checks them", "[cli]") {
  const CliResult r = run_cli("spectrum --eps 0.125 --tau 0.9 --k-lo 0.1 --k-max 14");
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("k,z\n", 0) == 0);
  REQUIRE(count_lines(r.out) >= 3);
  // First root sits near the first limiting Bloch root at this tau.
  const double k0 = std::strtod(r.out.c_str() + r.out.find('\n') + 1, nullptr);
  CHECK(k0 > 1.0);
  CHECK(k0 < 1.5);

  const CliResult rfd =
      run_cli("spectrum --eps 0.125 --tau 0.9 --k-lo 0.1 --k-max 14 --fd-check 512");
  CHECK(rfd.rc == 0);
  CHECK(rfd.out.find("unmatched_fd") == std::string::npos);
}

TEST_CASE("converge subcommand runs sweeps from a config file", "[cli]") {
  write_config();
  const std::string base = std::string("converge --config ") + kConfigPath;

  const CliResult r = run_cli(base);
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("eps,tau,re_z,im_z,norm_thm41,norm_thm54,norm_cor55,"
                    "slope_window_id,flags\n",
                    0) == 0);
  CHECK(count_lines(r.out) == 3);

  // Deterministic output: a second run is byte-identical.
  const CliResult r2 = run_cli(base);
  CHECK(r2.out == r.out);

  const CliResult rj = run_cli(base + " --format json");
  CHECK(rj.rc == 0);
  const nlohmann::json j = nlohmann::json::parse(rj.out);
  CHECK(j.at("config").at("grid_n") == 256);
  CHECK(j.at("rows").size() == 2);
  CHECK(j.at("slopes").size() == 1);

  const CliResult rs = run_cli(base + " --spectral");
  CHECK(rs.rc == 0);
  CHECK(rs.out.rfind("eps,tau,hausdorff,n_fibre,n_limit,flags\n", 0) == 0);

  const CliResult bad = run_cli("converge --config no_such_file.txt");
  CHECK(bad.rc == 3);

  std::remove(kConfigPath);
}

TEST_CASE("kp-check subcommand verifies the whole-line equivalence", "[cli]") {
  const CliResult r = run_cli("kp-check --tau 0.9 --k-max 14");
  CHECK(r.rc == 0);
  CHECK(r.out.find("result,pass") != std::string::npos);
  CHECK(r.out.find("non_bloch_match,yes") != std::string::npos);
  CHECK(r.out.find("band_edges_match,yes") != std::string::npos);

  const CliResult rb = run_cli("kp-check --tau 0.9 --k-max 14 --corrupt-coupling");
  CHECK(rb.rc == 1);
  CHECK(rb.out.find("result,fail") != std::string::npos);
}

TEST_CASE("gelfand-demo subcommand round-trips a random line state", "[cli]") {
  const CliResult r = run_cli("gelfand-demo");
  CHECK(r.rc == 0);
  CHECK(r.out.find("result,pass") != std::string::npos);
}

TEST_CASE("argument errors exit with the parse code", "[cli]") {
  CHECK(run_cli("no-such-command").rc == 2);
  CHECK(run_cli("bands --no-such-flag 3").rc == 2);
  CHECK(run_cli("").rc == 2);  // a subcommand is required
}
