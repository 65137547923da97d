#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "msstr/trustregion.hpp"

namespace msstr {

// A solver configuration with the label used in result files and plots.
struct LabeledConfig {
  std::string label;
  SolverConfig config;
};

struct ProblemRef {
  std::string name;
  int dim = 1000;
};

// One benchmark experiment: a set of solvers run over a set of problems.
struct ExperimentSpec {
  std::string name;
  std::vector<ProblemRef> problems;
  std::vector<LabeledConfig> solvers;
};

enum class Metric { f_evals, time };

// Returns the preset experiment with the given name, or throws
// std::out_of_range. Preset names: exp-ia, exp-ib, exp-ic, exp-ii,
// exp-iiia, exp-iiib, exp-iiic, exp-iiid.
ExperimentSpec preset_experiment(const std::string& name);
std::vector<std::string> preset_names();

// Runs every (problem, solver) cell; results are ordered by problem-major,
// solver-minor regardless of the number of worker threads.
std::vector<RunRecord> run_experiment(
    const ExperimentSpec& spec, int jobs = 1,
    const std::function<void(const RunRecord&)>& progress = nullptr);

// Performance-ratio curves. For solver s on problem p with metric value
// t_{p,s} (infinite when the run failed), the ratio is
//   pi_{p,s} = t_{p,s} / min over other solvers i != s of t_{p,i},
// with 0/finite conventions: t infinite -> ratio infinite; competitor
// minimum infinite with t finite -> ratio 0. The fraction of problems with
// ratio <= tau is tabulated on a log2-spaced tau grid over [2^-6, 32].
struct ProfileData {
  std::vector<double> tau;                  // grid, ascending
  std::vector<std::string> labels;          // solver labels
  std::vector<std::vector<double>> rho;     // rho[s][k] for labels[s], tau[k]
};

ProfileData extended_profile(const std::vector<RunRecord>& records,
                             Metric metric);

// Raw ratio matrix (problem-major, one row per problem, one column per
// solver), exposed for validation against direct recomputation.
struct RatioTable {
  std::vector<std::string> problems;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> ratios;  // ratios[p][s]
};
RatioTable ratio_table(const std::vector<RunRecord>& records, Metric metric);

// results.csv schema:
// problem,solver,converged,iters,fevals,gevals,final_f,final_gnorm,seconds
void write_results_csv(std::ostream& out, const std::vector<RunRecord>& recs);
std::vector<RunRecord> read_results_csv(std::istream& in);

// profile csv schema: tau,<label1>,<label2>,...
void write_profile_csv(std::ostream& out, const ProfileData& data);
ProfileData read_profile_csv(std::istream& in);

// Step-function plot of the profile curves (standalone SVG).
void write_profile_svg(std::ostream& out, const ProfileData& data,
                       const std::string& title = "");

// Text table of rho at tau = 1, 2, 32.
void write_profile_table(std::ostream& out, const ProfileData& data);

}  // namespace msstr
