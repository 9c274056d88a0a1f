// Batch front end: benchmark runs, convergence sweeps, the limiter
// reconstruction study and a realizability checker, all emitting CSV.

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "kershaw/benchmarks.hpp"
#include "kershaw/csv.hpp"
#include "kershaw/dg.hpp"

namespace fs = std::filesystem;
using namespace kershaw;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem;
  int N = 1;
  int k = 1;
  int nz = 0;
  std::vector<int> nz_list;
  int time_order = 0;  // 0: derived from k
  std::optional<double> tvb_M;
  double cfl_safety = 0.95;
  double gamma = 1e-3;
  unsigned long seed = 0;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "problem") {
        c.problem = val;
      } else if (key == "N") {
        c.N = std::stoi(val);
      } else if (key == "k") {
        c.k = std::stoi(val);
      } else if (key == "nz") {
        c.nz = std::stoi(val);
      } else if (key == "nz_list") {
        std::stringstream ss(val);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          c.nz_list.push_back(std::stoi(trim(tok)));
        }
      } else if (key == "time_order") {
        c.time_order = std::stoi(val);
      } else if (key == "tvb_M") {
        c.tvb_M = (val == "inf") ? kTvbInfinity : std::stod(val);
      } else if (key == "cfl_safety") {
        c.cfl_safety = std::stod(val);
      } else if (key == "gamma") {
        c.gamma = std::stod(val);
      } else if (key == "seed") {
        c.seed = std::stoul(val);
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("invalid value for " + key + ": " + val);
    }
  }
  return c;
}

void validate_common(const RunConfig& c) {
  if (c.N < 1) throw ConfigError("N must be >= 1");
  if (c.k < 1) throw ConfigError("k must be >= 1");
  if (c.time_order < 0 || c.time_order > 4) {
    throw ConfigError("time_order must be in 1..4");
  }
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) {
    throw ConfigError("cfl_safety must be in (0,1]");
  }
  if (c.tvb_M && !(*c.tvb_M >= 0.0)) {
    throw ConfigError("tvb_M must be >= 0 or inf");
  }
}

TransportProblem make_problem(const RunConfig& c, int nz) {
  if (c.problem == "manufactured") return manufactured_problem(c.N, nz);
  if (c.problem == "plane_source") return plane_source_problem(c.N, nz);
  if (c.problem == "source_beam") {
    if (nz % 6 != 0) {
      throw ConfigError(
          "source_beam requires nz divisible by 6 so the material "
          "discontinuities align with cell interfaces");
    }
    return source_beam_problem(c.N, nz);
  }
  throw ConfigError("unknown problem: " + c.problem +
                    " (expected manufactured|plane_source|source_beam)");
}

SolverConfig make_solver_config(const RunConfig& c, int threads) {
  SolverConfig s;
  s.k = c.k;
  s.time_order = c.time_order;
  s.tvb_M = c.tvb_M;
  s.cfl_safety = c.cfl_safety;
  s.threads = threads;
  return s;
}

int cmd_run(const RunConfig& c, const fs::path& out, int threads) {
  if (c.nz < 1) throw ConfigError("nz must be >= 1");
  const TransportProblem problem = make_problem(c, c.nz);
  const SolverConfig solver = make_solver_config(c, threads);
  const RunResult result = run(problem, solver);

  fs::create_directories(out);
  {
    CsvWriter w((out / "solution.csv").string());
    std::string header = "z";
    for (int i = 0; i <= c.N; ++i) header += ",u" + std::to_string(i);
    w.row(header);
    for (int j = 0; j < c.nz; ++j) {
      std::string row = fmt17(result.state.grid.center(j));
      const MomentVec mean = result.state.mean(j);
      for (int i = 0; i <= c.N; ++i) row += "," + fmt17(mean(i));
      w.row(row);
    }
  }
  {
    CsvWriter w((out / "diagnostics.csv").string());
    w.row("step,t,dt,mass,min_realizability_margin");
    for (const StepDiag& d : result.diag.steps) {
      w.row(std::to_string(d.step) + "," + fmt17(d.t) + "," + fmt17(d.dt) +
            "," + fmt17(d.mass) + "," + fmt17(d.min_margin));
    }
  }
  {
    CsvWriter w((out / "theta.csv").string());
    w.row("t,z,theta");
    for (const ThetaEvent& e : result.diag.theta_events) {
      w.row(fmt17(e.t) + "," + fmt17(e.z) + "," + fmt17(e.theta));
    }
  }
  if (result.diag.bypass_events > 0) {
    std::cerr << "note: realizability limiter bypassed on "
              << result.diag.bypass_events
              << " cell evaluations with non-realizable means\n";
  }
  return 0;
}

int cmd_converge(const RunConfig& c, const fs::path& out, int threads) {
  if (c.nz_list.empty()) throw ConfigError("converge requires nz_list");
  if (c.problem != "manufactured") {
    throw ConfigError("converge requires problem = manufactured "
                      "(the only case with an exact reference)");
  }
  fs::create_directories(out);
  CsvWriter w((out / "convergence.csv").string());
  w.row("nz,L1,order_L1,Linf,order_Linf");
  double prev_L1 = 0.0, prev_Linf = 0.0, prev_dz = 0.0;
  bool first = true;
  for (int nz : c.nz_list) {
    const TransportProblem problem = make_problem(c, nz);
    const SolverConfig solver = make_solver_config(c, threads);
    const RunResult result = run(problem, solver);
    const double tf = problem.tf;
    const ErrorReport err = error_norms(result.state, [tf](double z) {
      return manufactured_exact_density(tf, z);
    });
    const double dz = problem.grid.dz();
    std::string row = std::to_string(nz) + "," + fmt17(err.L1) + ",";
    if (!first) row += fmt17(observed_order(prev_L1, err.L1, prev_dz, dz));
    row += "," + fmt17(err.Linf) + ",";
    if (!first) row += fmt17(observed_order(prev_Linf, err.Linf, prev_dz, dz));
    w.row(row);
    prev_L1 = err.L1;
    prev_Linf = err.Linf;
    prev_dz = dz;
    first = false;
  }
  return 0;
}

int cmd_limiter_test(const RunConfig& c, const fs::path& out) {
  if (c.nz_list.empty()) throw ConfigError("limiter-test requires nz_list");
  if (c.N < 2) throw ConfigError("limiter-test requires N >= 2");
  if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) {
    throw ConfigError("gamma must be in [0,1]");
  }
  fs::create_directories(out);
  CsvWriter w((out / "convergence.csv").string());
  w.row("nz,L1,order_L1,Linf,order_Linf,theta_max");
  double prev_L1 = 0.0, prev_Linf = 0.0, prev_dz = 0.0;
  bool first = true;
  for (int nz : c.nz_list) {
    const ReconstructionResult r =
        limiter_reconstruction(c.gamma, nz, c.k, c.N);
    const double dz = 2.0 / nz;
    std::string row = std::to_string(nz) + "," + fmt17(r.errors.L1) + ",";
    if (!first)
      row += fmt17(observed_order(prev_L1, r.errors.L1, prev_dz, dz));
    row += "," + fmt17(r.errors.Linf) + ",";
    if (!first)
      row += fmt17(observed_order(prev_Linf, r.errors.Linf, prev_dz, dz));
    row += "," + fmt17(r.theta_max);
    w.row(row);
    prev_L1 = r.errors.L1;
    prev_Linf = r.errors.Linf;
    prev_dz = dz;
    first = false;
  }
  return 0;
}

int cmd_check(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  std::cout << "realizable,flow,fup,closure\n";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      try {
        size_t pos = 0;
        vals.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        std::cerr << "line " << lineno << ": malformed number '" << tok
                  << "'\n";
        return 1;
      }
    }
    if (vals.size() < 2) {
      std::cerr << "line " << lineno << ": need at least 2 moments\n";
      return 1;
    }
    MomentVec u = Eigen::Map<MomentVec>(vals.data(),
                                        static_cast<Eigen::Index>(vals.size()));
    if (!is_realizable(u)) {
      std::cout << "no,,,\n";
      continue;
    }
    const RealizabilityBounds b = realizability_bounds(u);
    std::cout << "yes," << fmt17(b.lower) << "," << fmt17(b.upper) << ","
              << fmt17(kershaw_closure(u)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kershaw-closed moment transport: realizability-preserving "
               "DG solver and benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  std::string check_file;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", config_path, "flat key = value config file")
          ->required();
    }
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads for the RHS")
        ->envname("KERSHAW_THREADS");
  };

  CLI::App* c_run = app.add_subcommand("run", "run one benchmark to tf");
  add_common(c_run, true);
  CLI::App* c_conv =
      app.add_subcommand("converge", "manufactured convergence sweep");
  add_common(c_conv, true);
  CLI::App* c_lim = app.add_subcommand(
      "limiter-test", "realizability-limited reconstruction study");
  add_common(c_lim, true);
  CLI::App* c_check =
      app.add_subcommand("check", "realizability/closure report for a "
                                  "CSV of moment vectors");
  c_check->add_option("file", check_file, "CSV of moment vectors")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return cmd_check(check_file);
    const RunConfig cfg = parse_config(config_path);
    validate_common(cfg);
    if (threads < 1) throw ConfigError("--threads must be >= 1");
    if (c_run->parsed()) return cmd_run(cfg, out_dir, threads);
    if (c_conv->parsed()) return cmd_converge(cfg, out_dir, threads);
    if (c_lim->parsed()) return cmd_limiter_test(cfg, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const MeanNotRealizableError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const NotRealizableError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
