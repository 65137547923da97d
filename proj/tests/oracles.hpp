#pragma once

// Independent reference implementations used to validate the library:
// the dense rank-two secant recursion, explicit-basis reconstruction of
// factored models, brute-force performance ratios, and a seeded RNG shared
// by randomized tests (override the seed with MSS_TR_SEED).

#include "msstr/bench.hpp"
#include "msstr/qn_models.hpp"

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

using msstr::Mat;
using msstr::Vec;

inline unsigned test_seed(unsigned fallback = 12345u) {
  if (const char* env = std::getenv("MSS_TR_SEED")) {
    return static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  return fallback;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(test_seed());
  return gen;
}

inline Vec random_vec(int n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng());
  return v;
}

inline Mat random_mat(int rows, int cols, double scale = 1.0) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = random_vec(rows, scale);
  return m;
}

// Dense rank-two secant recursion, applied pair by pair (oldest first):
//   B_{k+1} = B_k + ((y-Bs)c^T + c(y-Bs)^T)/(s^T c) - ((y-Bs)^T s) cc^T/(s^T c)^2
// with c_k the component of s_k orthogonal to span{s_0..s_{k-1}} (so
// c_k^T s_i = 0 for i < k and c_k^T s_k = ||c_k||^2 != 0).
inline Mat mss_recursion_oracle(const std::vector<Vec>& s_oldest_first,
                                const std::vector<Vec>& y_oldest_first,
                                const Mat& b0) {
  Mat b = b0;
  std::vector<Vec> basis;   // orthonormalized previous s directions
  for (std::size_t k = 0; k < s_oldest_first.size(); ++k) {
    const Vec& s = s_oldest_first[k];
    const Vec& y = y_oldest_first[k];
    Vec c = s;
    for (const Vec& q : basis) c -= q.dot(s) * q;
    const double cs = c.dot(s);   // == ||c||^2
    if (!(cs > 1e-14 * s.squaredNorm())) {
      throw std::runtime_error("recursion oracle: dependent s-column");
    }
    const Vec r = y - b * s;
    b += (r * c.transpose() + c * r.transpose()) / cs;
    b -= (r.dot(s) / (cs * cs)) * (c * c.transpose());
    basis.push_back(c / c.norm());
  }
  return b;
}

// sym(A): keep the lower triangle (incl. diagonal), mirror it above.  This
// is the triangle the symmetrized secant identity selects for S and Y blocks
// stored newest-first.
inline Mat sym_lower(const Mat& a) {
  Mat out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i + 1; j < a.cols(); ++j) out(i, j) = a(j, i);
  }
  return out;
}

// Sequential SR1 recursion starting from gamma * I, pairs oldest first;
// updates with a tiny denominator are skipped, as in the standard method.
inline Mat sr1_recursion_oracle(const std::vector<Vec>& s_oldest_first,
                                const std::vector<Vec>& y_oldest_first,
                                double gamma) {
  const int n = static_cast<int>(s_oldest_first.front().size());
  Mat b = gamma * Mat::Identity(n, n);
  for (std::size_t k = 0; k < s_oldest_first.size(); ++k) {
    const Vec& s = s_oldest_first[k];
    const Vec r = y_oldest_first[k] - b * s;
    const double rs = r.dot(s);
    if (std::abs(rs) <= 1e-8 * r.norm() * s.norm()) continue;
    b += (r * r.transpose()) / rs;
  }
  return b;
}

// Explicit n x r orthonormal-basis matrix of the factored model's parallel
// subspace, assembled column by column through apply_p_parallel.
inline Mat explicit_p_parallel(const msstr::SpectralFactors& f) {
  Mat p(f.dim(), f.rank());
  for (int j = 0; j < f.rank(); ++j) {
    Vec e = Vec::Zero(f.rank());
    e(j) = 1.0;
    p.col(j) = f.apply_p_parallel(e);
  }
  return p;
}

// Dense reconstruction Ppar (LambdaHat + zeta I) Ppar^T + zeta_perp (I - Ppar Ppar^T).
inline Mat dense_from_factors(const msstr::SpectralFactors& f) {
  const int n = f.dim();
  if (f.empty()) return f.zeta_perp() * Mat::Identity(n, n);
  const Mat p = explicit_p_parallel(f);
  Mat lam = (f.lambda_hat().array() + f.zeta()).matrix().asDiagonal();
  return p * lam * p.transpose() +
         f.zeta_perp() * (Mat::Identity(n, n) - p * p.transpose());
}

// Brute-force performance ratio pi_{p,s} = t_{p,s} / min_{i != s} t_{p,i},
// with the conventions: t infinite -> infinite; best competitor infinite
// with t finite -> 0.
inline double brute_force_ratio(const std::vector<double>& times, int s) {
  const double inf = std::numeric_limits<double>::infinity();
  double best_other = inf;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (static_cast<int>(i) != s) best_other = std::min(best_other, times[i]);
  }
  if (!std::isfinite(times[s])) return inf;
  if (!std::isfinite(best_other)) return 0.0;
  return times[s] / best_other;
}

// Fraction of problems whose ratio is <= tau (ties included).
inline double brute_force_rho(const std::vector<double>& ratios, double tau) {
  int count = 0;
  for (double r : ratios) {
    if (r <= tau) ++count;
  }
  return ratios.empty() ? 0.0
                        : static_cast<double>(count) /
                              static_cast<double>(ratios.size());
}

}  // namespace oracles
