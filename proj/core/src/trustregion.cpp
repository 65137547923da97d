#include "msstr/trustregion.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace msstr {

namespace {

constexpr double kRadiusFloor = 1e-15;

struct IterationModel {
  SpectralFactors factors;
  std::function<Vec(const Vec&)> b_apply;
  int rank_bound = 0;   // column count of Psi, for the trCG iteration cap
};

IterationModel build_model(PairBuffer& buf, const SolverConfig& config) {
  IterationModel m;
  const int n = buf.dim();
  if (buf.empty()) {
    m.factors = SpectralFactors::identity_model(n, 1.0);
    m.b_apply = [](const Vec& v) { return v; };
    return m;
  }
  try {
    if (config.hessian == HessianKind::mss) {
      Initialization init = config.init == InitKind::dense
                                ? dense_init(buf, config.window)
                                : make_scalar_init(buf, config.window);
      MssCompact model = build_mss(buf, init, config.representation);
      m.rank_bound = 2 * model.pairs();
      if (config.norm == NormKind::trcg_euclidean) {
        m.b_apply = [model](const Vec& v) { return model.apply(v); };
      } else {
        m.factors = factorize(model);
      }
    } else {
      const double gamma = scalar_init(buf, config.window);
      Sr1Compact model = build_sr1(buf, gamma);
      m.rank_bound = static_cast<int>(model.psi().cols());
      if (config.norm == NormKind::trcg_euclidean) {
        m.b_apply = [model](const Vec& v) { return model.apply(v); };
      } else {
        m.factors = factorize(model);
      }
    }
  } catch (const FactorizationError&) {
    // Numerical breakdown: restart the memory and fall back to gamma I.
    const double gamma = scalar_init(buf, config.window);
    buf.clear();
    m.factors = SpectralFactors::identity_model(n, gamma);
    m.b_apply = [gamma](const Vec& v) -> Vec { return gamma * v; };
    m.rank_bound = 0;
  }
  return m;
}

}  // namespace

MinimizeResult minimize(const Problem& problem, const Vec& x0,
                        const SolverConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(x0.size());

  MinimizeResult out;
  out.record.problem_name = problem.name;
  out.record.solver_name = config.label;
  out.x = x0;

  double f = problem.eval_f(x0);
  Vec g = problem.eval_g(x0);
  out.record.f_evals = 1;
  out.record.g_evals = 1;
  if (!std::isfinite(f) || !g.allFinite()) {
    out.record.final_f = f;
    out.record.final_gnorm_inf = std::numeric_limits<double>::infinity();
    return out;
  }

  PairBuffer buf(n, config.memory);
  double delta = config.radius.initial;
  int k = 0;
  for (; k < config.max_iter; ++k) {
    if (g.lpNorm<Eigen::Infinity>() < config.grad_tol) break;
    if (delta < kRadiusFloor) break;

    IterationModel model = build_model(buf, config);
    StepResult step;
    switch (config.norm) {
      case NormKind::sc_inf:
        step = solve_sc_inf(model.factors, g, delta);
        break;
      case NormKind::sc_l2:
        step = solve_sc_l2(model.factors, g, delta);
        break;
      case NormKind::trcg_euclidean: {
        std::function<Vec(const Vec&)> apply =
            model.b_apply ? model.b_apply : [&model](const Vec& v) {
              return model.factors.apply(v);
            };
        const int cap = model.rank_bound > 0
                            ? std::min(n, model.rank_bound + 30)
                            : n;
        step = solve_trcg(g, apply, delta, 1e-4, cap);
        break;
      }
    }

    if (!(step.predicted_reduction > 0.0) || !step.step.allFinite()) {
      delta *= config.radius.shrink;
      continue;
    }

    Vec x_trial = out.x + step.step;
    const double f_trial = problem.eval_f(x_trial);
    out.record.f_evals++;
    if (!std::isfinite(f_trial)) {
      delta *= config.radius.shrink;
      continue;
    }
    Vec g_trial = problem.eval_g(x_trial);
    out.record.g_evals++;
    if (!g_trial.allFinite()) {
      delta *= config.radius.shrink;
      continue;
    }

    // Curvature pairs are harvested from every finite trial point.
    buf.update(step.step, g_trial - g, config.pair_tol);

    const double rho = (f - f_trial) / step.predicted_reduction;
    if (rho >= config.radius.accept_ratio) {
      out.x = std::move(x_trial);
      f = f_trial;
      g = std::move(g_trial);
    }
    if (rho < config.radius.shrink_ratio) {
      delta *= config.radius.shrink;
    } else if (rho >= config.radius.grow_ratio && step.boundary) {
      delta = std::min(config.radius.grow * delta, config.radius.max);
    }
  }

  out.record.iterations = k;
  out.record.final_f = f;
  out.record.final_gnorm_inf = g.lpNorm<Eigen::Infinity>();
  out.record.converged = out.record.final_gnorm_inf < config.grad_tol;
  out.record.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

}  // namespace msstr
