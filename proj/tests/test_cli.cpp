// End-to-end checks of the csq binary: output files, stdout, exit codes,
// config precedence and determinism.
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef CSQ_CLI_PATH
#error "CSQ_CLI_PATH must point at the built csq binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = "/tmp/csq_cli_stdout.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + CSQ_CLI_PATH + " " + args + " > " +
                          out_path + " 2>/tmp/csq_cli_stderr.txt";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// parse "header\nv1,v2,...\n..." into columns
std::vector<std::vector<double>> csv_columns(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> cols;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    size_t c = 0;
    while (std::getline(ls, cell, ',')) {
      if (cols.size() <= c) cols.resize(c + 1);
      cols[c].push_back(cell.empty() ? 0.0 : std::stod(cell));
      ++c;
    }
  }
  return cols;
}

}  // namespace

TEST_CASE("dist emits the distribution CSV with the exact cancellation", "[cli]") {
  const RunResult r = run_cli("dist --s 1 --lambda 3 --out /tmp/csq_d13.csv");
  REQUIRE(r.exit_code == 0);
  const auto cols = csv_columns(slurp("/tmp/csq_d13.csv"));
  REQUIRE(cols[1][2] == 0.0);  // P_1(2;3) = 0
  REQUIRE(r.stdout_text.find("relative maxima at n = 0 5") != std::string::npos);

  // Poisson column sums to 1
  const RunResult r0 = run_cli("dist --s 0 --lambda 1 --out /tmp/csq_d01.csv");
  REQUIRE(r0.exit_code == 0);
  const auto cols0 = csv_columns(slurp("/tmp/csq_d01.csv"));
  double sum = 0.0;
  for (double p : cols0[1]) sum += p;
  REQUIRE(std::abs(sum - 1.0) < 1e-12);

  // argmax rows flagged near 5 and 14 at lambda = 10
  const RunResult r10 = run_cli("dist --s 1 --lambda 10 --out /tmp/csq_d110.csv");
  REQUIRE(r10.stdout_text.find("relative maxima at n = 5 14") != std::string::npos);
}

TEST_CASE("dist rejects negative lambda with exit 2", "[cli]") {
  REQUIRE(run_cli("dist --s 1 --lambda -2").exit_code == 2);
  REQUIRE(run_cli("dist --bogus-flag 1").exit_code == 2);
}

TEST_CASE("mandel sweep, root finding and exit codes", "[cli]") {
  const RunResult r = run_cli("mandel --s 1 --find-root --out /tmp/csq_m1.csv");
  REQUIRE(r.exit_code == 0);
  const size_t pos = r.stdout_text.find("root lambda_0 = ");
  REQUIRE(pos != std::string::npos);
  const double root = std::stod(r.stdout_text.substr(pos + 16));
  REQUIRE(std::abs(root - 1.81) < 0.005);

  // s = 0: the Q column is identically zero
  const RunResult r0 = run_cli("mandel --s 0 --steps 40 --out /tmp/csq_m0.csv");
  REQUIRE(r0.exit_code == 0);
  for (double q : csv_columns(slurp("/tmp/csq_m0.csv"))[1]) REQUIRE(std::abs(q) < 1e-10);

  // root requested where none exists
  REQUIRE(run_cli("mandel --s 0 --find-root --out /tmp/csq_m0r.csv").exit_code == 3);

  // large-lambda limit of the s = 1 Mandel parameter
  const RunResult rl = run_cli("mandel --s 1 --lmin 1 --lmax 100 --steps 100 --out /tmp/csq_ml.csv");
  REQUIRE(rl.exit_code == 0);
  const auto cols = csv_columns(slurp("/tmp/csq_ml.csv"));
  REQUIRE(std::abs(cols[1].back() - 2.0) < 1e-4);
}

TEST_CASE("lower-symbol commands", "[cli]") {
  const RunResult r = run_cli(
      "lower-symbol --mode real --N 1 --f x --tmin -4 --tmax 4 --steps 41 --out /tmp/csq_ls.csv");
  REQUIRE(r.exit_code == 0);
  const auto cols = csv_columns(slurp("/tmp/csq_ls.csv"));
  for (size_t i = 0; i < cols[0].size(); ++i) {
    const double t = cols[0][i];
    REQUIRE(std::abs(cols[2][i] - 2.0 * t / (1.0 + 2.0 * t * t)) < 1e-12);
  }

  // N = 0, f = x^4: constant (2*2-1)!!/2^2 = 3/4
  const RunResult r4 = run_cli(
      "lower-symbol --mode real --N 0 --f x^4 --tmin -2 --tmax 2 --steps 9 --out /tmp/csq_ls4.csv");
  REQUIRE(r4.exit_code == 0);
  for (double v : csv_columns(slurp("/tmp/csq_ls4.csv"))[2])
    REQUIRE(std::abs(v - 0.75) < 1e-13);

  // complex mode ratio column
  const RunResult rc = run_cli(
      "lower-symbol --mode complex --s 1 --f q --tmin 0.4 --tmax 3 --steps 14 "
      "--out /tmp/csq_lsc.csv");
  REQUIRE(rc.exit_code == 0);
  const auto ccols = csv_columns(slurp("/tmp/csq_lsc.csv"));
  for (size_t i = 0; i < ccols[0].size(); ++i) {
    const double lambda = 0.5 * ccols[0][i] * ccols[0][i];
    REQUIRE(std::abs(ccols[3][i] - (1.0 + 1.0 / (std::exp(lambda) - lambda))) < 1e-9);
  }

  REQUIRE(run_cli("lower-symbol --mode real --N 1 --f sin").exit_code == 2);
}

TEST_CASE("operators dump", "[cli]") {
  const RunResult r = run_cli("operators --s 2 --D 4 --op q --out /tmp/csq_q.json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp("/tmp/csq_q.json"));
  REQUIRE(j["s"] == 2);
  REQUIRE(j["D"] == 4);
  REQUIRE(j["label"] == "q");
  REQUIRE(std::abs(j["re"][0][1].get<double>() - std::sqrt(1.5)) < 1e-15);
  REQUIRE(j["im"][0][1].get<double>() == 0.0);

  const RunResult rn = run_cli("operators --N 3 --out /tmp/csq_ax.json");
  REQUIRE(rn.exit_code == 0);
  const nlohmann::json jn = nlohmann::json::parse(slurp("/tmp/csq_ax.json"));
  REQUIRE(jn["D"] == 4);
  REQUIRE(std::abs(jn["re"][0][1].get<double>() - std::sqrt(0.5)) < 1e-15);
  for (const auto& row : jn["im"])
    for (const auto& v : row) REQUIRE(v.get<double>() == 0.0);

  REQUIRE(run_cli("operators --s 1 --D 4 --op bogus").exit_code == 2);
}

TEST_CASE("spectrum tables", "[cli]") {
  const RunResult r = run_cli("spectrum --N 2 --out /tmp/csq_sp.csv");
  REQUIRE(r.exit_code == 0);
  const auto cols = csv_columns(slurp("/tmp/csq_sp.csv"));
  REQUIRE(std::abs(cols[1][0] + std::sqrt(1.5)) < 1e-12);
  REQUIRE(std::abs(cols[1][1]) < 1e-12);
  REQUIRE(std::abs(cols[1][2] - std::sqrt(1.5)) < 1e-12);
}

TEST_CASE("susy report", "[cli]") {
  const RunResult r = run_cli("susy --s 2 --out /tmp/csq_susy.json --grid-out /tmp/csq_seed.csv");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp("/tmp/csq_susy.json"));
  REQUIRE(j["epsilon"] == -1.5);
  REQUIRE(j["levels"].size() == 8);
  REQUIRE(std::abs(j["levels"][0].get<double>() + 1.5) < 5e-3);
  REQUIRE(std::abs(j["levels"][1].get<double>() - 0.5) < 5e-3);
  REQUIRE(r.stdout_text.find("max_dev_partner=") != std::string::npos);

  const std::string seed_csv = slurp("/tmp/csq_seed.csv");
  REQUIRE(seed_csv.rfind("x,u,V\n", 0) == 0);
}

TEST_CASE("config file and flag precedence", "[cli]") {
  {
    std::ofstream cfg("/tmp/csq_cfg.txt");
    cfg << "# comment line\nlambda = 5\ns = 0\n";
  }
  const RunResult r =
      run_cli("dist --out /tmp/csq_cfg_d.csv", "CSQ_CONFIG=/tmp/csq_cfg.txt");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.stdout_text.find("s=0 lambda=5") != std::string::npos);

  // flags override the file
  const RunResult r2 =
      run_cli("dist --lambda 2 --out /tmp/csq_cfg_d2.csv", "CSQ_CONFIG=/tmp/csq_cfg.txt");
  REQUIRE(r2.stdout_text.find("lambda=2") != std::string::npos);

  const RunResult rs = run_cli("--show-config", "CSQ_CONFIG=/tmp/csq_cfg.txt");
  REQUIRE(rs.exit_code == 0);
  REQUIRE(rs.stdout_text.find("lambda = 5") != std::string::npos);

  REQUIRE(run_cli("dist", "CSQ_CONFIG=/tmp/does_not_exist.cfg").exit_code == 2);
}

TEST_CASE("identical flags give byte-identical output", "[cli]") {
  REQUIRE(run_cli("dist --s 2 --lambda 4.5 --out /tmp/csq_det_a.csv").exit_code == 0);
  REQUIRE(run_cli("dist --s 2 --lambda 4.5 --out /tmp/csq_det_b.csv").exit_code == 0);
  REQUIRE(slurp("/tmp/csq_det_a.csv") == slurp("/tmp/csq_det_b.csv"));

  REQUIRE(run_cli("operators --s 1 --D 6 --op H_ansatz --out /tmp/csq_det_a.json").exit_code ==
          0);
  REQUIRE(run_cli("operators --s 1 --D 6 --op H_ansatz --out /tmp/csq_det_b.json").exit_code ==
          0);
  REQUIRE(slurp("/tmp/csq_det_a.json") == slurp("/tmp/csq_det_b.json"));
}
