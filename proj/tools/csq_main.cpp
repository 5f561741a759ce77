// csq: command-line front end for the coherent-state quantization library.
// Subcommands expose the statistics, lower-symbol, operator, spectrum and
// SUSY computations as deterministic file-emitting runs.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csq/complex_cs.hpp"
#include "csq/io.hpp"
#include "csq/photon_stats.hpp"
#include "csq/real_frame.hpp"
#include "csq/susy.hpp"
#include "csq/verify.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitModule = 4;

struct RunConfig {
  int s = 1;
  int N = 1;
  int D = 40;
  double lambda = 1.0;
  double lmin = 0.1;
  double lmax = 10.0;
  int steps = 200;
  double tmin = -5.0;
  double tmax = 5.0;
  int nmax = 0;  // 0 = automatic
  std::string f = "x";
  std::string mode = "real";
  std::string op = "q";
  std::string out;  // empty = stdout
  std::string format = "csv";
  double series_tol = 1e-14;
  double eig_tol = 1e-10;
  double quad_tol = 1e-12;
  double L = 12.0;
  double h = 0.01;
  int levels = 8;
};

// key = value lines, '#' comments; pointed to by CSQ_CONFIG
std::map<std::string, std::string> load_config_file() {
  std::map<std::string, std::string> kv;
  const char* path = std::getenv("CSQ_CONFIG");
  if (!path || !*path) return kv;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string("config file not readable: ") + path);
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r");
      const size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, RunConfig& cfg) {
  auto geti = [&](const char* k, int& v) {
    if (auto it = kv.find(k); it != kv.end()) v = std::stoi(it->second);
  };
  auto getd = [&](const char* k, double& v) {
    if (auto it = kv.find(k); it != kv.end()) v = std::stod(it->second);
  };
  auto gets = [&](const char* k, std::string& v) {
    if (auto it = kv.find(k); it != kv.end()) v = it->second;
  };
  geti("s", cfg.s);
  geti("N", cfg.N);
  geti("D", cfg.D);
  geti("steps", cfg.steps);
  geti("nmax", cfg.nmax);
  geti("levels", cfg.levels);
  getd("lambda", cfg.lambda);
  getd("lmin", cfg.lmin);
  getd("lmax", cfg.lmax);
  getd("tmin", cfg.tmin);
  getd("tmax", cfg.tmax);
  getd("series_tol", cfg.series_tol);
  getd("eig_tol", cfg.eig_tol);
  getd("quad_tol", cfg.quad_tol);
  getd("L", cfg.L);
  getd("h", cfg.h);
  gets("f", cfg.f);
  gets("mode", cfg.mode);
  gets("op", cfg.op);
  gets("out", cfg.out);
  gets("format", cfg.format);
}

void write_output(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + out);
  file << content;
}

void show_config(const RunConfig& c) {
  std::ostringstream os;
  os << "s = " << c.s << "\nN = " << c.N << "\nD = " << c.D << "\nlambda = " << c.lambda
     << "\nlmin = " << c.lmin << "\nlmax = " << c.lmax << "\nsteps = " << c.steps
     << "\ntmin = " << c.tmin << "\ntmax = " << c.tmax << "\nnmax = " << c.nmax
     << "\nf = " << c.f << "\nmode = " << c.mode << "\nop = " << c.op << "\nout = " << c.out
     << "\nformat = " << c.format << "\nseries_tol = " << c.series_tol
     << "\neig_tol = " << c.eig_tol << "\nquad_tol = " << c.quad_tol << "\nL = " << c.L
     << "\nh = " << c.h << "\nlevels = " << c.levels << "\n";
  std::cout << os.str();
}

// "x", "x^2", ... -> exponent
int parse_power_of_x(const std::string& f) {
  if (f == "x") return 1;
  if (f.rfind("x^", 0) == 0) {
    const int r = std::stoi(f.substr(2));
    if (r >= 0) return r;
  }
  throw std::invalid_argument("unsupported observable '" + f + "' (expected x or x^k)");
}

int cmd_dist(const RunConfig& cfg) {
  if (cfg.lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  const csq::DistributionTable t =
      csq::distribution(static_cast<unsigned>(cfg.s), cfg.lambda, cfg.nmax);
  write_output(cfg.out, csq::distribution_to_csv(t));
  // keep the emitted CSV clean when it goes to stdout
  std::ostream& info = cfg.out.empty() ? std::cerr : std::cout;
  info << "# s=" << cfg.s << " lambda=" << csq::fmt_double(cfg.lambda)
       << " tail_mass=" << csq::fmt_double(t.tail_mass) << " mean=" << csq::fmt_double(t.mean)
       << " Q=" << csq::fmt_double(t.mandel_q) << "\n# relative maxima at n =";
  for (int n : t.relative_maxima()) info << " " << n;
  info << "\n";
  return 0;
}

int cmd_mandel(const RunConfig& cfg, bool find_root_flag) {
  if (cfg.lmin < 0 || cfg.lmax <= cfg.lmin || cfg.steps < 2)
    throw std::invalid_argument("need 0 <= lmin < lmax and steps >= 2");
  std::vector<double> lambdas(cfg.steps), qs(cfg.steps);
  for (int i = 0; i < cfg.steps; ++i) {
    lambdas[i] = cfg.lmin + (cfg.lmax - cfg.lmin) * i / (cfg.steps - 1);
    qs[i] = csq::mandel_q_series(static_cast<unsigned>(cfg.s), lambdas[i]);
  }
  write_output(cfg.out, csq::mandel_sweep_to_csv(lambdas, qs));
  if (find_root_flag) {
    int bracket = -1;
    for (int i = 0; i + 1 < cfg.steps; ++i)
      if (std::abs(qs[i]) > 1e-12 && std::abs(qs[i + 1]) > 1e-12 &&
          (qs[i] < 0) != (qs[i + 1] < 0)) {
        bracket = i;
        break;
      }
    if (bracket < 0) throw csq::numeric_error("no sign change of Q on the sweep range");
    const double root = csq::transition_point(static_cast<unsigned>(cfg.s), lambdas[bracket],
                                              lambdas[bracket + 1]);
    std::cout << "root lambda_0 = " << csq::fmt_double(root) << "\n";
  }
  return 0;
}

int cmd_lower_symbol(const RunConfig& cfg) {
  if (cfg.steps < 2 || cfg.tmax <= cfg.tmin)
    throw std::invalid_argument("need tmin < tmax and steps >= 2");
  std::vector<double> ts(cfg.steps), fs(cfg.steps), checks(cfg.steps);
  if (cfg.mode == "real") {
    const int r = parse_power_of_x(cfg.f);
    for (int i = 0; i < cfg.steps; ++i) {
      const double t = cfg.tmin + (cfg.tmax - cfg.tmin) * i / (cfg.steps - 1);
      ts[i] = t;
      fs[i] = std::pow(t, r);
      checks[i] = csq::lower_symbol(
          cfg.N, [r](double x) { return std::pow(x, r); }, r, t);
    }
    write_output(cfg.out, csq::lower_symbol_to_csv(ts, fs, checks));
    return 0;
  }
  if (cfg.mode == "complex") {
    if (cfg.f != "q") throw std::invalid_argument("complex mode supports the observable 'q'");
    std::vector<double> ratios(cfg.steps);
    for (int i = 0; i < cfg.steps; ++i) {
      const double q = cfg.tmin + (cfg.tmax - cfg.tmin) * i / (cfg.steps - 1);
      const std::complex<double> z(q / std::sqrt(2.0), 0.0);
      const csq::LowerSymbols ls =
          csq::lower_symbols(csq::SectorConfig{static_cast<unsigned>(cfg.s), cfg.D,
                                               cfg.series_tol},
                             z);
      ts[i] = q;
      fs[i] = q;
      checks[i] = ls.q_check;
      ratios[i] = ls.ratio;
    }
    write_output(cfg.out, csq::lower_symbol_to_csv(ts, fs, checks, &ratios));
    return 0;
  }
  throw std::invalid_argument("mode must be 'real' or 'complex'");
}

int cmd_operators(const RunConfig& cfg, bool have_N) {
  if (have_N) {
    const csq::RealOperator ax = csq::position_operator(cfg.N);
    write_output(cfg.out, csq::operator_to_json(ax) + "\n");
    return 0;
  }
  const csq::SectorConfig sc{static_cast<unsigned>(cfg.s), cfg.D, cfg.series_tol};
  auto [az, azbar] = csq::ladder_operators(sc);
  auto [q, p] = csq::qp_operators(sc);
  auto [hcs, ha] = csq::hamiltonians(sc);
  const std::map<std::string, const csq::TruncatedOperator*> table = {
      {"A_z", &az}, {"A_zbar", &azbar}, {"q", &q}, {"p", &p}, {"H_cs", &hcs},
      {"H_ansatz", &ha}};
  const auto it = table.find(cfg.op);
  if (it == table.end())
    throw std::invalid_argument("unknown operator '" + cfg.op +
                                "' (A_z, A_zbar, q, p, H_cs, H_ansatz)");
  write_output(cfg.out, csq::operator_to_json(*it->second) + "\n");
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, bool have_N) {
  std::ostringstream os;
  if (have_N) {
    const csq::SpectrumResult sp = csq::position_spectrum(cfg.N);
    os << "index,eigenvalue\n";
    for (size_t i = 0; i < sp.eigenvalues.size(); ++i)
      os << i << "," << csq::fmt_double(sp.eigenvalues[i]) << "\n";
  } else {
    const csq::SectorConfig sc{static_cast<unsigned>(cfg.s), cfg.D, cfg.series_tol};
    auto [hcs, ha] = csq::hamiltonians(sc);
    const Eigen::MatrixXcd hai = ha.matrix.topLeftCorner(cfg.D - 1, cfg.D - 1);
    const Eigen::MatrixXcd hci = hcs.matrix.topLeftCorner(cfg.D - 1, cfg.D - 1);
    const csq::SpectrumResult sa = csq::symmetric_spectrum(hai, false);
    const csq::SpectrumResult sc2 = csq::symmetric_spectrum(hci, false);
    os << "n,h_cs,h_ansatz\n";
    for (size_t i = 0; i < sa.eigenvalues.size(); ++i)
      os << i << "," << csq::fmt_double(sc2.eigenvalues[i]) << ","
         << csq::fmt_double(sa.eigenvalues[i]) << "\n";
  }
  write_output(cfg.out, os.str());
  return 0;
}

int cmd_susy(const RunConfig& cfg, const std::string& grid_out) {
  const csq::SusyReport rep =
      csq::identify_with_H_ansatz(static_cast<unsigned>(cfg.s), cfg.L, cfg.h, cfg.levels);
  write_output(cfg.out,
               csq::spectrum_report_to_json(rep.epsilon, rep.partner_levels,
                                            rep.shifted_ansatz) +
                   "\n");
  std::ostream& info = cfg.out.empty() ? std::cerr : std::cout;
  info << "# s=" << cfg.s << " epsilon=" << csq::fmt_double(rep.epsilon)
       << " max_dev_partner=" << csq::fmt_double(rep.max_dev_partner)
       << " max_dev_oscillator=" << csq::fmt_double(rep.max_dev_oscillator) << "\n";
  if (!grid_out.empty()) {
    const csq::SeedSolution seed = csq::seed_solution(rep.epsilon, 0.0, cfg.L, cfg.h);
    const csq::PartnerHamiltonian p = csq::partner_spectrum(seed, cfg.levels - 1);
    write_output(grid_out, csq::seed_to_csv(seed.x, seed.u, p.potential));
  }
  return 0;
}

int cmd_verify() {
  const std::vector<csq::CheckResult> results = csq::run_verification();
  bool all = true;
  for (const csq::CheckResult& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
  return all ? 0 : kExitModule;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    apply_config(load_config_file(), cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  CLI::App app{"coherent-state quantization toolkit"};
  app.require_subcommand(0, 1);
  bool show = false;
  app.add_flag("--show-config", show, "print the effective configuration and exit");

  auto* dist = app.add_subcommand("dist", "tabulate the generalized Poisson distribution");
  dist->add_option("--s", cfg.s);
  dist->add_option("--lambda", cfg.lambda);
  dist->add_option("--nmax", cfg.nmax);
  dist->add_option("--out", cfg.out);

  auto* mandel = app.add_subcommand("mandel", "sweep the Mandel parameter over lambda");
  bool find_root_flag = false;
  mandel->add_option("--s", cfg.s);
  mandel->add_option("--lmin", cfg.lmin);
  mandel->add_option("--lmax", cfg.lmax);
  mandel->add_option("--steps", cfg.steps);
  mandel->add_flag("--find-root", find_root_flag);
  mandel->add_option("--out", cfg.out);

  auto* ls = app.add_subcommand("lower-symbol", "tabulate lower symbols");
  ls->add_option("--mode", cfg.mode);
  auto* ls_n = ls->add_option("--N", cfg.N);
  ls->add_option("--s", cfg.s);
  ls->add_option("--f", cfg.f);
  ls->add_option("--tmin", cfg.tmin);
  ls->add_option("--tmax", cfg.tmax);
  ls->add_option("--steps", cfg.steps);
  ls->add_option("--D", cfg.D);
  ls->add_option("--out", cfg.out);
  (void)ls_n;

  auto* ops = app.add_subcommand("operators", "dump a quantized operator as JSON");
  auto* ops_n = ops->add_option("--N", cfg.N);
  ops->add_option("--s", cfg.s);
  ops->add_option("--D", cfg.D);
  ops->add_option("--op", cfg.op);
  ops->add_option("--out", cfg.out);

  auto* spec = app.add_subcommand("spectrum", "eigenvalue tables");
  auto* spec_n = spec->add_option("--N", cfg.N);
  spec->add_option("--s", cfg.s);
  spec->add_option("--D", cfg.D);
  spec->add_option("--out", cfg.out);

  auto* susy = app.add_subcommand("susy", "supersymmetric-partner comparison report");
  std::string grid_out;
  susy->add_option("--s", cfg.s);
  susy->add_option("--L", cfg.L);
  susy->add_option("--step", cfg.h);
  susy->add_option("--levels", cfg.levels);
  susy->add_option("--out", cfg.out);
  susy->add_option("--grid-out", grid_out);

  auto* verify = app.add_subcommand("verify", "run the full invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  if (show) {
    show_config(cfg);
    return 0;
  }

  try {
    if (dist->parsed()) return cmd_dist(cfg);
    if (mandel->parsed()) return cmd_mandel(cfg, find_root_flag);
    if (ls->parsed()) return cmd_lower_symbol(cfg);
    if (ops->parsed()) return cmd_operators(cfg, ops_n->count() > 0);
    if (spec->parsed()) return cmd_spectrum(cfg, spec_n->count() > 0);
    if (susy->parsed()) return cmd_susy(cfg, grid_out);
    if (verify->parsed()) return cmd_verify();
    std::cout << app.help();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (bad input): " << e.what() << "\n";
    return kExitBadInput;
  } catch (const csq::numeric_error& e) {
    std::cerr << "error (numerical precondition): " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error (module): " << e.what() << "\n";
    return kExitModule;
  }
}
