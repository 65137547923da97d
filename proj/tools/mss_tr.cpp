// Command-line driver for the limited-memory trust-region solver,
// the benchmark harness, and the performance-profile plotter.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "msstr/bench.hpp"
#include "msstr/problems.hpp"
#include "msstr/trustregion.hpp"

namespace {

namespace fs = std::filesystem;
using namespace msstr;

int cmd_solve(const std::string& problem_name, int dim,
              const std::string& hessian, const std::string& norm,
              const std::string& init, int memory, int window, double tol,
              int max_iter, const std::string& rep) {
  SolverConfig cfg = hessian == "sr1" ? SolverConfig::sr1_defaults()
                                      : SolverConfig::mss_defaults();
  if (norm == "sc-inf") {
    cfg.norm = NormKind::sc_inf;
  } else if (norm == "sc-l2") {
    cfg.norm = NormKind::sc_l2;
  } else {
    cfg.norm = NormKind::trcg_euclidean;
  }
  cfg.init = init == "dense" ? InitKind::dense : InitKind::scalar;
  cfg.representation =
      rep == "gramfree" ? Representation::gram_free : Representation::standard;
  cfg.memory = memory;
  cfg.window = window;
  cfg.grad_tol = tol;
  cfg.max_iter = max_iter;
  cfg.label = hessian + "/" + norm + "/" + init;

  Problem prob = make_problem(problem_name, dim);
  MinimizeResult res = minimize(prob, prob.x0, cfg);
  const RunRecord& r = res.record;
  std::cout << "problem:    " << r.problem_name << " (n=" << prob.dim << ")\n"
            << "solver:     " << r.solver_name << "\n"
            << "converged:  " << (r.converged ? "yes" : "no") << "\n"
            << "iterations: " << r.iterations << "\n"
            << "f evals:    " << r.f_evals << "\n"
            << "g evals:    " << r.g_evals << "\n"
            << "final f:    " << r.final_f << "\n"
            << "final |g|:  " << r.final_gnorm_inf << "\n"
            << "seconds:    " << r.wall_time << "\n";
  return r.converged ? 0 : 1;
}

int cmd_bench(const std::string& preset, const std::string& out_dir,
              const std::string& metric_name, int jobs) {
  const ExperimentSpec spec = preset_experiment(preset);
  fs::create_directories(out_dir);
  auto progress = [](const RunRecord& r) {
    std::cerr << r.problem_name << " / " << r.solver_name << ": "
              << (r.converged ? "converged" : "failed") << " in "
              << r.iterations << " its, " << r.f_evals << " fevals\n";
  };
  const auto records = run_experiment(spec, jobs, progress);

  {
    std::ofstream out(fs::path(out_dir) / "results.csv");
    write_results_csv(out, records);
  }
  const Metric metric =
      metric_name == "time" ? Metric::time : Metric::f_evals;
  const ProfileData profile = extended_profile(records, metric);
  {
    std::ofstream out(fs::path(out_dir) / "profile.csv");
    write_profile_csv(out, profile);
  }
  {
    std::ofstream out(fs::path(out_dir) / "profile.svg");
    write_profile_svg(out, profile, preset + " (" + metric_name + ")");
  }
  {
    std::ofstream out(fs::path(out_dir) / "table.txt");
    write_profile_table(out, profile);
  }
  write_profile_table(std::cout, profile);
  std::cout << "wrote results.csv, profile.csv, profile.svg, table.txt to "
            << out_dir << "\n";
  return 0;
}

int cmd_profile(const std::string& in_path, const std::string& out_path,
                const std::string& metric_name) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot open " << in_path << "\n";
    return 1;
  }
  ProfileData profile;
  if (in_path.size() > 11 &&
      in_path.substr(in_path.size() - 11) == "profile.csv") {
    profile = read_profile_csv(in);
  } else {
    const auto records = read_results_csv(in);
    const Metric metric =
        metric_name == "time" ? Metric::time : Metric::f_evals;
    profile = extended_profile(records, metric);
  }
  std::ofstream out(out_path);
  if (out_path.size() > 4 &&
      out_path.substr(out_path.size() - 4) == ".csv") {
    write_profile_csv(out, profile);
  } else {
    write_profile_svg(out, profile);
  }
  write_profile_table(std::cout, profile);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limited-memory multipoint symmetric secant trust-region "
               "solver and benchmark harness"};
  app.set_config("--config");
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "minimize one test problem");
  std::string problem, hessian = "mss", norm = "sc-inf", init = "dense",
              rep = "standard";
  int dim = 1000, memory = 3, window = 5, max_iter = 5000, jobs = 1;
  double tol = 5e-4;
  solve->add_option("--problem", problem, "problem name")->required();
  solve->add_option("--dim", dim, "problem dimension");
  solve->add_option("--hessian", hessian)
      ->check(CLI::IsMember({"mss", "sr1"}));
  solve->add_option("--norm", norm)
      ->check(CLI::IsMember({"sc-inf", "sc-l2", "trcg"}));
  solve->add_option("--init", init)->check(CLI::IsMember({"scalar", "dense"}));
  solve->add_option("--memory", memory, "stored pair limit");
  solve->add_option("--window", window, "initialization window");
  solve->add_option("--tol", tol, "gradient sup-norm tolerance");
  solve->add_option("--max-iter", max_iter);
  solve->add_option("--rep", rep)
      ->check(CLI::IsMember({"standard", "gramfree"}));

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark experiment");
  std::string preset, out_dir = "bench-out", metric = "fevals";
  bench->add_option("--preset", preset, "experiment preset")
      ->required()
      ->check(CLI::IsMember(msstr::preset_names()));
  bench->add_option("--out", out_dir, "output directory")->required();
  bench->add_option("--metric", metric)
      ->check(CLI::IsMember({"fevals", "time"}));
  bench->add_option("--jobs", jobs, "worker threads");

  // profile
  auto* prof = app.add_subcommand("profile", "plot performance profiles");
  std::string in_path, out_path;
  prof->add_option("--in", in_path, "results.csv or profile.csv")->required();
  prof->add_option("--out", out_path, "output .svg or .csv")->required();
  prof->add_option("--metric", metric)
      ->check(CLI::IsMember({"fevals", "time"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return cmd_solve(problem, dim, hessian, norm, init, memory, window, tol,
                       max_iter, rep);
    }
    if (bench->parsed()) {
      return cmd_bench(preset, out_dir, metric, jobs);
    }
    return cmd_profile(in_path, out_path, metric);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
