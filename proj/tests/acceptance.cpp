// Acceptance gate: one pass/fail line per criterion, non-zero exit when any
// criterion fails.  Each check validates library output against an
// independent reference (dense recursion, explicit bases, brute-force
// profiles, finite differences) rather than against the library itself.

#include "msstr/bench.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using msstr::Initialization;
using msstr::InitKind;
using msstr::Mat;
using msstr::MssCompact;
using msstr::PairBuffer;
using msstr::RunRecord;
using msstr::SpectralFactors;
using msstr::StepResult;
using msstr::Vec;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& note = "") {
  std::printf("criterion %d: %s%s%s\n", criterion, pass ? "PASS" : "FAIL",
              note.empty() ? "" : "  -- ", note.c_str());
  if (!pass) ++failures;
  std::fflush(stdout);
}

PairBuffer random_buffer(int n, int l) {
  PairBuffer buf(n, l + 2);
  for (int k = 0; k < l; ++k) {
    buf.update(oracles::random_vec(n), oracles::random_vec(n));
  }
  return buf;
}

double model_q(const Mat& b, const Vec& g, const Vec& s) {
  return g.dot(s) + 0.5 * s.dot(b * s);
}

SpectralFactors explicit_model(int n, const Vec& lambda_hat, double zeta,
                               double zeta_perp) {
  const int r = static_cast<int>(lambda_hat.size());
  const Eigen::HouseholderQR<Mat> qr(oracles::random_mat(n, r));
  const Mat q = qr.householderQ() * Mat::Identity(n, r);
  return SpectralFactors(q, Mat::Identity(r, r), lambda_hat, zeta, zeta_perp,
                         n);
}

// 1. Symmetrized multi-secant identity under dense initialization.
void criterion1() {
  std::uniform_int_distribution<int> dim(2, 30);
  std::uniform_int_distribution<int> pairs(1, 5);
  bool ok = true;
  for (int t = 0; t < 200 && ok; ++t) {
    const int l0 = pairs(oracles::rng());
    const int n = std::max(l0 + 1, dim(oracles::rng()));
    const PairBuffer buf = random_buffer(n, l0);
    Initialization init;
    init.kind = InitKind::dense;
    init.zeta = 0.5 + std::abs(oracles::random_vec(1)(0));
    init.zeta_perp = 0.5 + std::abs(oracles::random_vec(1)(0));
    const MssCompact m = msstr::build_mss(buf, init);
    const Mat s = buf.s_matrix();
    const int l = buf.size();
    Mat bs(n, l);
    for (int j = 0; j < l; ++j) bs.col(j) = m.apply(s.col(j));
    const Mat lhs = s.transpose() * bs;
    const Mat rhs = oracles::sym_lower(m.s_t_y());
    const double tol = 1e-8 * (1.0 + m.s_t_y().cwiseAbs().maxCoeff());
    ok = (lhs - rhs).cwiseAbs().maxCoeff() <= tol;
  }
  report(1, ok);
}

// 2. Compact form against the dense rank-two recursion, under a time budget.
void criterion2() {
  const auto start = std::chrono::steady_clock::now();
  std::uniform_int_distribution<int> dim(2, 30);
  std::uniform_int_distribution<int> pairs(1, 5);
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    const int l = pairs(oracles::rng());
    const int n = std::max(l + 1, dim(oracles::rng()));
    std::vector<Vec> s, y;
    PairBuffer buf(n, l + 2);
    for (int k = 0; k < l; ++k) {
      s.push_back(oracles::random_vec(n));
      y.push_back(oracles::random_vec(n));
      buf.update(s.back(), y.back());
    }
    const double gamma = msstr::scalar_init(buf, l);
    Initialization init;
    init.zeta = init.zeta_perp = gamma;
    const MssCompact m = msstr::build_mss(buf, init);
    const Mat b_ref =
        oracles::mss_recursion_oracle(s, y, gamma * Mat::Identity(n, n));
    const Vec v = oracles::random_vec(n);
    const Vec want = b_ref * v;
    ok = (m.apply(v) - want).norm() <= 1e-8 * (1.0 + want.norm());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(2, ok && secs < 10.0,
         "elapsed " + std::to_string(secs).substr(0, 5) + "s");
}

// 3. Standard and gram-free representations give the same operator.
void criterion3() {
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    const int n = 4 + t % 20;
    const int l = 1 + t % 5;
    if (l >= n) continue;
    const PairBuffer buf = random_buffer(n, l);
    const Initialization init = msstr::dense_init(buf, 5);
    const MssCompact std_m =
        msstr::build_mss(buf, init, msstr::Representation::standard);
    const MssCompact gf_m =
        msstr::build_mss(buf, init, msstr::Representation::gram_free);
    const Vec v = oracles::random_vec(n);
    const Vec a = std_m.apply(v);
    ok = (a - gf_m.apply(v)).norm() <= 1e-10 * (1.0 + a.norm());
  }
  report(3, ok);
}

// 4. The initialization acts as zeta * I on the stored step directions.
void criterion4() {
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    const int n = 6 + t % 18;
    const int l = 1 + t % 4;
    const PairBuffer buf = random_buffer(n, l);
    Initialization init;
    init.kind = InitKind::dense;
    init.zeta = 0.5 + std::abs(oracles::random_vec(1)(0));
    init.zeta_perp = 0.1 + std::abs(oracles::random_vec(1)(0));
    const MssCompact m = msstr::build_mss(buf, init);
    const Mat psi = m.psi();
    const Mat core = m.core_standard();
    const Mat s = buf.s_matrix();
    for (int j = 0; j < buf.size() && ok; ++j) {
      const Vec b0s =
          m.apply(s.col(j)) - psi * (core * (psi.transpose() * s.col(j)));
      ok = (b0s - init.zeta * s.col(j)).cwiseAbs().maxCoeff() <=
           1e-10 * std::abs(init.zeta) * s.cwiseAbs().maxCoeff();
    }
  }
  report(4, ok);
}

// 5. Implicit spectral factors reconstruct the compact operator, and the
//    parallel basis is orthonormal.
void criterion5() {
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    const int n = 8 + t % 16;
    const int l = 1 + t % 4;
    const PairBuffer buf = random_buffer(n, l);
    const Initialization init = msstr::dense_init(buf, 5);
    const MssCompact m = msstr::build_mss(buf, init);
    const SpectralFactors f = msstr::factorize(m);
    const Mat p = oracles::explicit_p_parallel(f);
    ok = (p.transpose() * p - Mat::Identity(f.rank(), f.rank()))
             .cwiseAbs()
             .maxCoeff() <= 1e-8;
    if (!ok) break;
    const Vec v = oracles::random_vec(n);
    const Vec via_compact = m.apply(v);
    const Vec lam_part = f.apply_p_parallel(
        ((f.lambda_hat().array() + f.zeta()) *
         f.apply_p_parallel_t(v).array())
            .matrix());
    const Vec reconstructed =
        lam_part +
        f.zeta_perp() * (v - f.apply_p_parallel(f.apply_p_parallel_t(v)));
    ok = (via_compact - reconstructed).norm() <=
         1e-8 * (1.0 + via_compact.norm());
  }
  report(5, ok);
}

// 6. Both shape-changing solves dominate dense Monte-Carlo sampling;
//    the two-norm block satisfies its optimality conditions.
void criterion6() {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  bool ok = true;
  std::string note;
  for (int t = 0; t < 50 && ok; ++t) {
    const int n = 10;
    const int r = 1 + t % 3;
    Vec lam = oracles::random_vec(r, 2.0);
    std::sort(lam.data(), lam.data() + r);
    lam(0) = -std::abs(lam(0)) - 0.1;   // force mixed-sign spectra
    const double zeta = 0.5 + std::abs(oracles::random_vec(1)(0));
    const double zeta_perp = oracles::random_vec(1, 1.5)(0);
    const SpectralFactors f =
        explicit_model(n, (lam.array() - zeta).matrix(), zeta, zeta_perp);
    const Mat b = oracles::dense_from_factors(f);
    const Mat p = oracles::explicit_p_parallel(f);
    Vec g = oracles::random_vec(n);
    if (t % 5 == 0) {   // hard case: no gradient along the minimal direction
      g -= f.apply_p_parallel(f.apply_p_parallel_t(g));
    }
    const double delta = 0.2 + std::abs(oracles::random_vec(1)(0));

    const StepResult s_inf = msstr::solve_sc_inf(f, g, delta);
    const StepResult s_l2 = msstr::solve_sc_l2(f, g, delta);
    const double q_inf = model_q(b, g, s_inf.step);
    const double q_l2 = model_q(b, g, s_l2.step);

    const Vec g_par = msstr::split_gradient(f, g).first;
    const msstr::ParL2 par = msstr::solve_par_2(g_par, lam, delta);
    const Vec kkt =
        (lam.array() + par.sigma).matrix().cwiseProduct(par.v) + g_par;
    if (kkt.norm() > 1e-8 * (1.0 + g_par.norm()) || par.sigma < 0.0 ||
        std::abs(par.sigma * (par.v.norm() - delta)) > 1e-8 * delta ||
        lam(0) + par.sigma < -1e-12 * (1.0 + std::abs(lam(0)))) {
      ok = false;
      note = "two-norm optimality conditions violated";
      break;
    }

    for (int k = 0; k < 100000; ++k) {
      Vec vp(r);
      for (int i = 0; i < r; ++i) vp(i) = delta * unit(oracles::rng());
      Vec w = oracles::random_vec(n);
      w -= p * (p.transpose() * w).eval();
      if (w.norm() > 0.0) {
        w *= delta * std::abs(unit(oracles::rng())) / w.norm();
      }
      if (q_inf > model_q(b, g, p * vp + w) + 1e-8) {
        ok = false;
        note = "sampled point beats the infinity-norm solve";
        break;
      }
      Vec vp2 = vp;
      if (vp2.norm() > delta) vp2 *= delta / vp2.norm();
      if (q_l2 > model_q(b, g, p * vp2 + w) + 1e-8) {
        ok = false;
        note = "sampled point beats the two-norm solve";
        break;
      }
    }
  }
  report(6, ok, note);
}

// 7. Truncated CG against a dense exact solve (interior) and boundary exits
//    under negative curvature.
void criterion7() {
  bool ok = true;
  for (int t = 0; t < 50 && ok; ++t) {
    const int n = 10;
    const Mat v = oracles::random_mat(n, n);
    const Mat b = v * v.transpose() + Mat::Identity(n, n);
    const Vec g = oracles::random_vec(n);
    const Vec exact = -b.ldlt().solve(g);
    auto apply = [&](const Vec& x) { return (b * x).eval(); };
    const StepResult s =
        msstr::solve_trcg(g, apply, 10.0 * exact.norm(), 1e-10, n);
    ok = (s.step - exact).norm() <= 1e-4 * g.norm();
  }
  for (int t = 0; t < 50 && ok; ++t) {
    const int n = 8;
    Mat b = oracles::random_mat(n, n);
    b = Mat(0.5 * (b + b.transpose())) - 2.0 * Mat::Identity(n, n);
    const Vec g = oracles::random_vec(n);
    auto apply = [&](const Vec& x) { return (b * x).eval(); };
    const double delta = 0.5;
    const StepResult s = msstr::solve_trcg(g, apply, delta);
    ok = s.boundary && std::abs(s.step.norm() - delta) <= 1e-10 * delta;
  }
  report(7, ok);
}

// 8 and 9 share one catalog run: both dense-initialized and scalar
// shape-changing infinity-norm solvers over the full catalog at n = 1000.
void criteria8and9() {
  const msstr::ExperimentSpec spec = msstr::preset_experiment("exp-ib");
  const std::vector<RunRecord> recs = msstr::run_experiment(spec);

  int solved_dense = 0, total = 0;
  for (const RunRecord& r : recs) {
    if (r.solver_name == "SC-INF-D") {
      ++total;
      if (r.converged) ++solved_dense;
    }
  }
  const double frac = total > 0 ? static_cast<double>(solved_dense) / total
                                : 0.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "solved %d/%d (%.1f%%)", solved_dense,
                total, 100.0 * frac);
  report(8, frac >= 0.90, buf);

  const msstr::ProfileData prof =
      msstr::extended_profile(recs, msstr::Metric::f_evals);
  double rho_scalar = 0.0, rho_dense = 0.0;
  for (size_t s = 0; s < prof.labels.size(); ++s) {
    double at32 = 0.0;
    for (size_t k = 0; k < prof.tau.size(); ++k) {
      if (prof.tau[k] <= 32.0 * (1.0 + 1e-12)) at32 = prof.rho[s][k];
    }
    if (prof.labels[s] == "SC-INF") rho_scalar = at32;
    if (prof.labels[s] == "SC-INF-D") rho_dense = at32;
  }
  std::snprintf(buf, sizeof(buf),
                "rho(32): dense-init %.4f vs scalar-init %.4f", rho_dense,
                rho_scalar);
  if (rho_dense >= rho_scalar) {
    report(9, true, buf);
  } else if (rho_scalar - rho_dense <= 0.05) {
    // Within five percentage points: reported, not failed.
    report(9, true, std::string(buf) + " (within 5pp, reported only)");
  } else {
    report(9, false, buf);
  }
}

// 10. Profile engine equals brute-force recomputation, plus the worked
//     two-solver example.
void criterion10() {
  bool ok = true;
  std::uniform_int_distribution<int> evals(1, 500);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto mk = [](const std::string& p, const std::string& s, bool conv,
               long fe) {
    RunRecord r;
    r.problem_name = p;
    r.solver_name = s;
    r.converged = conv;
    r.f_evals = fe;
    r.wall_time = 1.0;
    return r;
  };
  for (int trial = 0; trial < 20 && ok; ++trial) {
    std::vector<RunRecord> recs;
    std::vector<std::vector<double>> times(10, std::vector<double>(4));
    for (int p = 0; p < 10; ++p) {
      for (int s = 0; s < 4; ++s) {
        const bool conv = coin(oracles::rng()) > 0.3;
        const long fe = evals(oracles::rng());
        recs.push_back(
            mk("p" + std::to_string(p), "s" + std::to_string(s), conv, fe));
        times[p][s] = conv ? static_cast<double>(fe)
                           : std::numeric_limits<double>::infinity();
      }
    }
    const msstr::ProfileData prof =
        msstr::extended_profile(recs, msstr::Metric::f_evals);
    for (int s = 0; s < 4 && ok; ++s) {
      std::vector<double> ratios;
      for (int p = 0; p < 10; ++p) {
        ratios.push_back(oracles::brute_force_ratio(times[p], s));
      }
      for (size_t k = 0; k < prof.tau.size() && ok; ++k) {
        ok = prof.rho[s][k] == oracles::brute_force_rho(ratios, prof.tau[k]);
      }
    }
  }
  // Worked example: times (1, 2) on a single problem.
  std::vector<RunRecord> two = {mk("p", "a", true, 1), mk("p", "b", true, 2)};
  const msstr::RatioTable table =
      msstr::ratio_table(two, msstr::Metric::f_evals);
  ok = ok && table.ratios[0][0] == 0.5 && table.ratios[0][1] == 2.0;
  const msstr::ProfileData prof =
      msstr::extended_profile(two, msstr::Metric::f_evals);
  auto rho_at = [&](int s, double tau) {
    double best = 0.0;
    for (size_t k = 0; k < prof.tau.size(); ++k) {
      if (prof.tau[k] <= tau * (1.0 + 1e-12)) best = prof.rho[s][k];
    }
    return best;
  };
  ok = ok && rho_at(0, 0.5) == 1.0 && rho_at(1, 1.0) == 0.0 &&
       rho_at(1, 2.0) == 1.0;
  report(10, ok);
}

// 11. Finite-difference gradient validation over the whole catalog.
void criterion11() {
  bool ok = true;
  std::string worst_name;
  double worst = 0.0;
  std::normal_distribution<double> d(0.0, 0.1);
  for (const std::string& name : msstr::catalog()) {
    for (int n : {100, 1000}) {
      const msstr::Problem p = msstr::make_problem(name, n);
      for (int k = 0; k < 6; ++k) {
        Vec x = p.x0;
        if (k > 0) {
          for (int i = 0; i < x.size(); ++i) x(i) += d(oracles::rng());
        }
        const double err = msstr::check_gradient(p, x);
        if (err > worst) {
          worst = err;
          worst_name = name;
        }
        if (err > 1e-5) ok = false;
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "worst relative error %.2e (%s)", worst,
                worst_name.c_str());
  report(11, ok, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criteria8and9();
  criterion10();
  criterion11();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
