#include "msstr/subproblems.hpp"

#include <cmath>
#include <limits>

namespace msstr {

namespace {

constexpr double kPerpBasisTol = 1e-8;

// Objective of the perpendicular block at its closed-form solution,
// expressed through ||g_perp||, zeta_perp and the step magnitude.
double perp_objective(const PerpSolution& p, double norm_g_perp,
                      double zeta_perp) {
  switch (p.kind) {
    case PerpCase::interior:
      return zeta_perp > 0.0 ? -0.5 * norm_g_perp * norm_g_perp / zeta_perp : 0.0;
    case PerpCase::eigen_fill:
      return 0.5 * zeta_perp * p.magnitude * p.magnitude;
    case PerpCase::boundary_gradient:
      return -p.magnitude * norm_g_perp +
             0.5 * zeta_perp * p.magnitude * p.magnitude;
  }
  return 0.0;
}

double par_objective(const Vec& g_par, const Vec& lambdas, const Vec& v) {
  double q = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    q += g_par(i) * v(i) + 0.5 * lambdas(i) * v(i) * v(i);
  }
  return q;
}

}  // namespace

std::pair<Vec, double> split_gradient(const SpectralFactors& f, const Vec& g) {
  Vec g_par = f.apply_p_parallel_t(g);
  const double sq = g.squaredNorm() - g_par.squaredNorm();
  return {std::move(g_par), std::sqrt(std::max(0.0, sq))};
}

Vec solve_par_inf(const Vec& g_par, const Vec& lambdas, double delta) {
  Vec v(g_par.size());
  for (int i = 0; i < g_par.size(); ++i) {
    const double g = g_par(i);
    const double lam = lambdas(i);
    if (lam > 0.0 && std::abs(g / lam) <= delta) {
      v(i) = -g / lam;
    } else if (g == 0.0 && lam == 0.0) {
      v(i) = 0.0;   // free parameter c, fixed to 0
    } else if (g != 0.0 && lam == 0.0) {
      v(i) = (g > 0.0 ? -delta : delta);
    } else if (g == 0.0 && lam < 0.0) {
      v(i) = delta;
    } else {
      v(i) = -(delta / std::abs(g)) * g;
    }
  }
  return v;
}

PerpSolution solve_perp(double norm_g_perp, double zeta_perp, double delta) {
  PerpSolution p;
  if (zeta_perp > 0.0 && norm_g_perp <= delta * std::abs(zeta_perp)) {
    p.kind = PerpCase::interior;
    p.magnitude = norm_g_perp / zeta_perp;
  } else if (zeta_perp <= 0.0 && norm_g_perp == 0.0) {
    p.kind = PerpCase::eigen_fill;
    p.magnitude = delta;
  } else {
    p.kind = PerpCase::boundary_gradient;
    p.magnitude = delta;
  }
  return p;
}

Vec recover_step(const SpectralFactors& f, const Vec& v_par,
                 const PerpSolution& perp, const Vec& g, double delta,
                 double norm_g_perp) {
  const int n = static_cast<int>(g.size());
  Vec w = Vec::Zero(n);
  switch (perp.kind) {
    case PerpCase::interior:
      if (f.zeta_perp() > 0.0 && norm_g_perp > 0.0) w = -g / f.zeta_perp();
      break;
    case PerpCase::eigen_fill: {
      int idx = -1;
      double wsq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double perp_sq = 1.0 - f.p_parallel_row_sqnorm(i);
        if (perp_sq > kPerpBasisTol) {
          idx = i;
          wsq = perp_sq;
          break;
        }
      }
      if (idx < 0) break;   // Ppar spans the whole space; no perp component
      w(idx) = delta / std::sqrt(wsq);
      break;
    }
    case PerpCase::boundary_gradient:
      if (norm_g_perp > 0.0) w = -(delta / norm_g_perp) * g;
      break;
  }
  if (f.empty()) return w;
  Vec coeff = v_par - f.apply_p_parallel_t(w);
  return f.apply_p_parallel(coeff) + w;
}

StepResult solve_sc_inf(const SpectralFactors& f, const Vec& g, double delta) {
  auto [g_par, norm_g_perp] = split_gradient(f, g);
  Vec lambdas = f.lambda_hat().array() + f.zeta();
  Vec v_par = solve_par_inf(g_par, lambdas, delta);
  PerpSolution perp = solve_perp(norm_g_perp, f.zeta_perp(), delta);

  StepResult r;
  r.step = recover_step(f, v_par, perp, g, delta, norm_g_perp);
  const double q = par_objective(g_par, lambdas, v_par) +
                   perp_objective(perp, norm_g_perp, f.zeta_perp());
  r.predicted_reduction = std::max(0.0, -q);
  r.boundary = (v_par.size() > 0 &&
                v_par.lpNorm<Eigen::Infinity>() >= delta * (1.0 - 1e-12)) ||
               perp.magnitude >= delta * (1.0 - 1e-12);
  return r;
}

ParL2 solve_par_2(const Vec& g_par, const Vec& lambdas, double delta) {
  ParL2 out;
  const int p = static_cast<int>(g_par.size());
  out.v = Vec::Zero(p);
  if (p == 0) return out;

  const double lam_min = lambdas.minCoeff();
  const double eig_tol =
      1e-12 * std::max(1.0, lambdas.cwiseAbs().maxCoeff());

  auto v_of = [&](double sigma) {
    Vec v = Vec::Zero(p);
    for (int i = 0; i < p; ++i) {
      const double d = lambdas(i) + sigma;
      if (std::abs(d) > eig_tol) v(i) = -g_par(i) / d;
    }
    return v;
  };

  // Interior solution for a positive-definite block.
  if (lam_min > eig_tol) {
    Vec v = v_of(0.0);
    if (v.norm() <= delta) {
      out.v = std::move(v);
      return out;
    }
  }

  const double sigma_lb = std::max(0.0, -lam_min);

  // Detect the hard case: no coordinate with g != 0 touches the minimal
  // eigenvalue and the limiting solution stays inside the ball.
  bool singular_hit = false;
  for (int i = 0; i < p; ++i) {
    if (std::abs(lambdas(i) + sigma_lb) <= eig_tol &&
        std::abs(g_par(i)) > eig_tol) {
      singular_hit = true;
      break;
    }
  }
  if (!singular_hit) {
    Vec v = v_of(sigma_lb);
    const double nv = v.norm();
    if (nv < delta) {
      if (sigma_lb == 0.0) {
        out.v = std::move(v);   // semidefinite block, interior solution
        return out;
      }
      // Hard case: fill to the boundary along a minimal eigencoordinate.
      double alpha = std::sqrt(std::max(0.0, delta * delta - nv * nv));
      for (int i = 0; i < p; ++i) {
        if (std::abs(lambdas(i) + sigma_lb) <= eig_tol) {
          v(i) += alpha;
          break;
        }
      }
      out.v = std::move(v);
      out.sigma = sigma_lb;
      out.boundary = true;
      return out;
    }
  }

  // Boundary solution: root of phi(sigma) = 1/||v(sigma)|| - 1/delta on
  // (sigma_lb, inf), found by safeguarded Newton with bisection fallback.
  const double gnorm = g_par.norm();
  double lo = sigma_lb;
  double hi = std::max(sigma_lb, gnorm / delta - lam_min) + 1.0;
  auto norm_sq = [&](double sigma) {
    double s = 0.0;
    for (int i = 0; i < p; ++i) {
      const double d = lambdas(i) + sigma;
      if (d != 0.0) s += g_par(i) * g_par(i) / (d * d);
    }
    return s;
  };
  auto phi = [&](double sigma) {
    const double n2 = norm_sq(sigma);
    return n2 > 0.0 ? 1.0 / std::sqrt(n2) - 1.0 / delta
                    : std::numeric_limits<double>::infinity();
  };
  while (!std::isfinite(phi(hi)) || phi(hi) < 0.0) hi = 2.0 * hi + 1.0;

  double sigma = sigma_lb + 1e-13 * (1.0 + sigma_lb);
  if (phi(sigma) > 0.0) sigma = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const double n2 = norm_sq(sigma);
    const double nv = std::sqrt(n2);
    if (!std::isfinite(nv) || nv == 0.0) {
      sigma = 0.5 * (lo + hi);
      continue;
    }
    const double ph = 1.0 / nv - 1.0 / delta;
    if (std::abs(nv - delta) <= 1e-13 * delta) {
      converged = true;
      break;
    }
    if (ph < 0.0) lo = sigma; else hi = sigma;
    double dn2 = 0.0;   // d/dsigma of ||v||^2
    for (int i = 0; i < p; ++i) {
      const double d = lambdas(i) + sigma;
      if (d != 0.0) dn2 += -2.0 * g_par(i) * g_par(i) / (d * d * d);
    }
    const double dphi = -0.5 * dn2 / (n2 * nv);
    double next = sigma - ph / dphi;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    sigma = next;
  }
  if (!converged) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      sigma = 0.5 * (lo + hi);
      if (phi(sigma) < 0.0) lo = sigma; else hi = sigma;
    }
  }

  Vec v = v_of(sigma);
  const double nv = v.norm();
  if (nv > 0.0) v *= delta / nv;   // land exactly on the boundary
  out.v = std::move(v);
  out.sigma = std::max(0.0, sigma);
  out.boundary = true;
  return out;
}

StepResult solve_sc_l2(const SpectralFactors& f, const Vec& g, double delta) {
  auto [g_par, norm_g_perp] = split_gradient(f, g);
  Vec lambdas = f.lambda_hat().array() + f.zeta();
  ParL2 par = solve_par_2(g_par, lambdas, delta);
  PerpSolution perp = solve_perp(norm_g_perp, f.zeta_perp(), delta);

  StepResult r;
  r.step = recover_step(f, par.v, perp, g, delta, norm_g_perp);
  const double q = par_objective(g_par, lambdas, par.v) +
                   perp_objective(perp, norm_g_perp, f.zeta_perp());
  r.predicted_reduction = std::max(0.0, -q);
  r.multiplier = par.sigma;
  r.boundary = par.boundary || perp.magnitude >= delta * (1.0 - 1e-12);
  return r;
}

StepResult solve_trcg(const Vec& g, const std::function<Vec(const Vec&)>& b_apply,
                      double delta, double tol, int max_iter) {
  const int n = static_cast<int>(g.size());
  if (max_iter < 0) max_iter = n;
  StepResult out;
  out.step = Vec::Zero(n);
  const double gnorm = g.norm();
  if (gnorm == 0.0) return out;

  Vec s = Vec::Zero(n);
  Vec r = -g;
  Vec d = r;
  double rr = r.squaredNorm();

  auto to_boundary = [&](const Vec& base, const Vec& dir) {
    // positive root of ||base + tau dir|| = delta
    const double a = dir.squaredNorm();
    const double b = 2.0 * base.dot(dir);
    const double c = base.squaredNorm() - delta * delta;
    const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
    return (-b + disc) / (2.0 * a);
  };

  for (int it = 0; it < max_iter; ++it) {
    Vec bd = b_apply(d);
    const double curv = d.dot(bd);
    if (curv <= 0.0) {
      s += to_boundary(s, d) * d;
      out.boundary = true;
      break;
    }
    const double alpha = rr / curv;
    if ((s + alpha * d).norm() >= delta) {
      s += to_boundary(s, d) * d;
      out.boundary = true;
      break;
    }
    s += alpha * d;
    r -= alpha * bd;
    const double rr_new = r.squaredNorm();
    if (std::sqrt(rr_new) <= tol * gnorm) break;
    d = r + (rr_new / rr) * d;
    rr = rr_new;
  }
  out.step = s;
  out.predicted_reduction =
      std::max(0.0, -(g.dot(s) + 0.5 * s.dot(b_apply(s))));
  return out;
}

}  // namespace msstr
