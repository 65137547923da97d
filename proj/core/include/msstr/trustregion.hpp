#pragma once

// Outer trust-region iteration: model construction per iterate, subproblem
// dispatch, acceptance ratio, radius update, pair harvesting with the
// dependence filter, stopping rules, and run statistics.

#include "msstr/problems.hpp"
#include "msstr/subproblems.hpp"

#include <string>

namespace msstr {

enum class HessianKind { mss, sr1 };
enum class NormKind { sc_inf, sc_l2, trcg_euclidean };

struct RadiusPolicy {
  double initial = 1.0;
  double max = 1e10;
  double shrink = 0.5;
  double grow = 2.0;
  double accept_ratio = 1e-4;   // eta1
  double grow_ratio = 0.75;     // eta2
  double shrink_ratio = 0.1;    // shrink when the agreement falls below this
};

struct SolverConfig {
  HessianKind hessian = HessianKind::mss;
  NormKind norm = NormKind::sc_inf;
  InitKind init = InitKind::scalar;
  Representation representation = Representation::standard;
  int memory = 3;       // m (MSS default; SR1 baseline uses 5)
  int window = 5;       // q (MSS default; SR1 baseline uses 7)
  double grad_tol = 5e-4;
  int max_iter = 5000;
  // dependence threshold for the direction-normalized S-block Gram pivots
  double pair_tol = 1e-3;
  RadiusPolicy radius;
  std::string label = "solver";

  static SolverConfig mss_defaults() { return SolverConfig{}; }
  static SolverConfig sr1_defaults() {
    SolverConfig c;
    c.hessian = HessianKind::sr1;
    c.memory = 5;
    c.window = 7;
    return c;
  }
};

struct RunRecord {
  std::string problem_name;
  std::string solver_name;
  bool converged = false;
  int iterations = 0;
  long f_evals = 0;
  long g_evals = 0;
  double final_f = 0.0;
  double final_gnorm_inf = 0.0;
  double wall_time = 0.0;   // seconds
};

struct MinimizeResult {
  RunRecord record;
  Vec x;
};

MinimizeResult minimize(const Problem& problem, const Vec& x0,
                        const SolverConfig& config);

}  // namespace msstr
