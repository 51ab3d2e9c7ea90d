#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "blockmax/gev.hpp"
#include "blockmax/rng.hpp"
#include "blockmax/trend.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_test_stdout.txt";
  const std::string err_path = "cli_test_stderr.txt";
  const std::string cmd =
      std::string(BLOCKMAX_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(status);
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

// daily iid GEV(0, 1, -0.2) observations; their disjoint 90-blocks are GEV
// with the same shape
void write_fixture(const std::string& path, std::size_t seasons) {
  blockmax::Rng rng(1357);
  std::ofstream out(path);
  out << "value\n";
  const blockmax::GevParams p{0.0, 1.0, -0.2};
  char buf[64];
  for (std::size_t i = 0; i < seasons * 90; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", blockmax::gev_quantile(p, rng.uniform()));
    out << buf;
  }
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("cli fit on a synthetic series") {
  write_fixture("cli_fixture.csv", 100);
  const RunResult res =
      run_cli("fit cli_fixture.csv --block-size 90 --scheme disjoint --rl 100 --format json");
  REQUIRE(res.exit_code == 0);
  const json body = json::parse(res.out);
  const double shape = body["fit"]["shape"];
  CHECK(shape > -0.30);
  CHECK(shape < -0.10);
  CHECK(body["return_levels"].size() == 1);
  CHECK(body["return_levels"][0]["ci_lo"].is_number());
  CHECK(body["manifest"]["tool_version"].is_string());
  std::remove("cli_fixture.csv");
}

TEST_CASE("cli fit emits one row per horizon") {
  write_fixture("cli_fixture2.csv", 20);
  const RunResult res = run_cli(
      "fit cli_fixture2.csv --block-size 90 --scheme sliding --rl 50 --rl 100 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(count_lines(res.out) == 3);  // header + 2 rows
  std::remove("cli_fixture2.csv");
}

TEST_CASE("cli rejects circular extraction on ragged input") {
  std::ofstream out("cli_ragged.csv");
  out << "value\n";
  for (int i = 0; i < 95; ++i) out << i << "\n";
  out.close();
  const RunResult res = run_cli("fit cli_ragged.csv --block-size 90 --scheme circular");
  CHECK(res.exit_code == 2);
  std::remove("cli_ragged.csv");
}

TEST_CASE("cli reports csv parse errors with line numbers") {
  std::ofstream out("cli_bad.csv");
  out << "value\n1.0\nnot_a_number\n";
  out.close();
  const RunResult res = run_cli("fit cli_bad.csv --block-size 1 --scheme disjoint");
  CHECK(res.exit_code == 1);
  CHECK(res.err.find("line 3") != std::string::npos);
  std::remove("cli_bad.csv");
}

TEST_CASE("cli fit failure outside the invertible moment region") {
  std::ofstream out("cli_dom.csv");
  out << "value\n0\n0\n1\n";
  out.close();
  const RunResult res = run_cli("fit cli_dom.csv --block-size 1 --scheme disjoint");
  CHECK(res.exit_code == 1);
  CHECK(!res.err.empty());
  std::remove("cli_dom.csv");
}

TEST_CASE("cli variance table") {
  const RunResult empty = run_cli("variance");
  REQUIRE(empty.exit_code == 0);
  CHECK(count_lines(empty.out) == 1);  // header only

  const RunResult res = run_cli("variance --gamma 0 --gamma -0.2 --gamma 0.9");
  REQUIRE(res.exit_code == 0);
  CHECK(res.err.find("skipping") != std::string::npos);  // 0.9 out of range
  std::istringstream is(res.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  // gamma 0 row: omega_dj_00 is the second field
  const auto first_comma = row.find(',');
  const auto second_comma = row.find(',', first_comma + 1);
  const double dj00 = std::stod(row.substr(first_comma + 1, second_comma - first_comma - 1));
  CHECK(dj00 == doctest::Approx(1.644934).epsilon(1e-6));
  // ratio columns all at least 1
  std::istringstream hs(header);
  std::vector<std::string> cols;
  std::string col;
  while (std::getline(hs, col, ',')) cols.push_back(col);
  std::istringstream rs(row);
  std::vector<std::string> vals;
  while (std::getline(rs, col, ',')) vals.push_back(col);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].rfind("ratio_", 0) == 0) CHECK(std::stod(vals[i]) >= 1.0);
  }
}

TEST_CASE("cli simulate presets and configs") {
  const RunResult bad = run_cli("simulate --preset nope");
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("table1") != std::string::npos);  // lists available presets

  std::ofstream cfg("cli_sim.cfg");
  cfg << "model = ar\n"
         "dep = 0.5\n"
         "margin = gpd\n"
         "gamma = -0.2\n"
         "scheme = s2\n"
         "seasons = 20\n"
         "r = 30\n"
         "targets = shape\n"
         "population_n = 10000\n";
  cfg.close();
  const RunResult a = run_cli("simulate --config cli_sim.cfg --reps 40 --seed 9 --threads 2");
  REQUIRE(a.exit_code == 0);
  CHECK(count_lines(a.out) == 3);  // header + disjoint + sliding
  const RunResult b = run_cli("simulate --config cli_sim.cfg --reps 40 --seed 9 --threads 2");
  CHECK(a.out == b.out);  // bit-identical reruns

  std::ofstream badcfg("cli_bad.cfg");
  badcfg << "model = warp\n";
  badcfg.close();
  const RunResult c = run_cli("simulate --config cli_bad.cfg");
  CHECK(c.exit_code == 2);
  std::remove("cli_sim.cfg");
  std::remove("cli_bad.cfg");
}

TEST_CASE("cli bootstrap json output") {
  // small trended data set
  const std::size_t seasons = 12, r = 20;
  blockmax::Rng rng(2222);
  std::ofstream daily("cli_daily.csv");
  daily << "season_index,day_index,value\n";
  std::ofstream cov("cli_cov.csv");
  cov << "season_index,x\n";
  const blockmax::GevParams theta{8.0, 1.2, -0.15};
  for (std::size_t t = 0; t < seasons; ++t) {
    const double x = 0.1 * static_cast<double>(t);
    cov << (t + 1) << ',' << x << '\n';
    const blockmax::GevParams tilde = blockmax::bootstrap_tilde_params(theta, 2.0, x, r);
    for (std::size_t i = 0; i < r; ++i) {
      daily << (t + 1) << ',' << (i + 1) << ',' << blockmax::gev_quantile(tilde, rng.uniform())
            << '\n';
    }
  }
  daily.close();
  cov.close();

  const RunResult res = run_cli(
      "bootstrap --daily cli_daily.csv --covariate cli_cov.csv --B 120 --mode sliding "
      "--T 100 --seed 4 --threads 2");
  REQUIRE(res.exit_code == 0);
  const json body = json::parse(res.out);
  CHECK(body["fit"]["slope"].is_number());
  CHECK(body["return_level"]["ci_lo"].is_number());
  CHECK(body["return_level"]["estimate"].is_number());
  CHECK(body["replicates"].get<int>() + body["failures"].get<int>() == 120);
  std::remove("cli_daily.csv");
  std::remove("cli_cov.csv");
}
