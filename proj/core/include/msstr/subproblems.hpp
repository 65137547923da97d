#pragma once

// Trust-region subproblem solvers for factored models under three
// geometries: the (P,inf) shape-changing norm (closed form), the (P,2)
// shape-changing norm (closed-form perpendicular part, secular-equation
// parallel part), and the Euclidean norm via truncated CG.

#include "msstr/qn_models.hpp"

#include <functional>

namespace msstr {

struct StepResult {
  Vec step;
  double predicted_reduction = 0.0;   // -Q(s*), always >= 0
  bool boundary = false;
  double multiplier = 0.0;            // sigma* for the (P,2) parallel block
};

// g_par = Ppar^T g and the (clamped) norm of the complementary component.
std::pair<Vec, double> split_gradient(const SpectralFactors& f, const Vec& g);

// Componentwise closed form for the infinity-norm block; lambdas[i] is the
// model eigenvalue lambda_hat[i] + zeta.
Vec solve_par_inf(const Vec& g_par, const Vec& lambdas, double delta);

enum class PerpCase {
  interior,            // -g_perp / zeta_perp
  eigen_fill,          // delta * u along a complementary basis direction
  boundary_gradient,   // -(delta/||g_perp||) g_perp
};

struct PerpSolution {
  PerpCase kind = PerpCase::interior;
  double magnitude = 0.0;   // ||v_perp||
};

PerpSolution solve_perp(double norm_g_perp, double zeta_perp, double delta);

// Assemble s* = Ppar (v_par - Ppar^T w*) + w* from the block solutions.
Vec recover_step(const SpectralFactors& f, const Vec& v_par,
                 const PerpSolution& perp, const Vec& g, double delta,
                 double norm_g_perp);

StepResult solve_sc_inf(const SpectralFactors& f, const Vec& g, double delta);

struct ParL2 {
  Vec v;
  double sigma = 0.0;
  bool boundary = false;
};

// Two-norm block: (LambdaHat + (sigma + zeta) I) v = -g_par with the usual
// complementarity and hard-case handling; lambdas ascending.
ParL2 solve_par_2(const Vec& g_par, const Vec& lambdas, double delta);

StepResult solve_sc_l2(const SpectralFactors& f, const Vec& g, double delta);

// Steihaug-Toint truncated CG on the Euclidean-ball subproblem.
StepResult solve_trcg(const Vec& g, const std::function<Vec(const Vec&)>& b_apply,
                      double delta, double tol = 1e-4, int max_iter = -1);

}  // namespace msstr
