#include "msstr/smallmat.hpp"

#include <cmath>

namespace msstr {

LdlFactor ldl_with_pivot_threshold(const Mat& a, double tol) {
  const int n = static_cast<int>(a.rows());
  LdlFactor f;
  f.order = n;
  f.lower = Mat::Identity(n, n);
  f.diag = Vec::Zero(n);
  if (n == 0) return f;

  double maxdiag = 0.0;
  for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, std::abs(a(i, i)));
  if (maxdiag == 0.0) maxdiag = 1.0;

  std::vector<bool> kept(n, false);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) {
      if (!kept[k]) continue;
      d -= f.lower(j, k) * f.lower(j, k) * f.diag(k);
    }
    if (std::abs(d) <= tol * maxdiag) {
      // dependent column: zero pivot, skip it in later eliminations
      f.lower.col(j).setZero();
      f.lower(j, j) = 1.0;
      continue;
    }
    kept[j] = true;
    f.diag(j) = d;
    f.kept_columns.push_back(j);
    for (int i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (int k = 0; k < j; ++k) {
        if (!kept[k]) continue;
        v -= f.lower(i, k) * f.lower(j, k) * f.diag(k);
      }
      f.lower(i, j) = v / d;
    }
  }
  f.rank = static_cast<int>(f.kept_columns.size());
  return f;
}

SymEig sym_eig(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) {
    throw FactorizationError("sym_eig: eigensolver did not converge");
  }
  return SymEig{es.eigenvalues(), es.eigenvectors()};
}

Vec GramQr::apply_rinv(const Vec& w) const {
  return r_.triangularView<Eigen::Upper>().solve(w);
}

Vec GramQr::apply_rinv_t(const Vec& w) const {
  return r_.transpose().triangularView<Eigen::Lower>().solve(w);
}

Mat GramQr::apply_rinv(const Mat& w) const {
  return r_.triangularView<Eigen::Upper>().solve(w);
}

Mat GramQr::apply_rinv_t(const Mat& w) const {
  return r_.transpose().triangularView<Eigen::Lower>().solve(w);
}

GramQr gram_qr(const Mat& gram, double tol) {
  LdlFactor f = ldl_with_pivot_threshold(gram, tol);
  std::vector<int> kept;
  kept.reserve(f.kept_columns.size());
  for (int j : f.kept_columns) {
    if (f.diag(j) > 0.0) kept.push_back(j);   // Gram pivots must be positive
  }
  const int r = static_cast<int>(kept.size());
  // Gram_kept = L D L^T on the kept set, so R = sqrt(D) L_kept^T.
  Mat rm = Mat::Zero(r, r);
  for (int col = 0; col < r; ++col) {
    for (int row = 0; row <= col; ++row) {
      rm(row, col) = std::sqrt(f.diag(kept[row])) * f.lower(kept[col], kept[row]);
    }
  }
  return GramQr(std::move(kept), std::move(rm));
}

GramQr thin_qr_via_gram(const Mat& v, double tol) {
  return gram_qr(v.transpose() * v, tol);
}

}  // namespace msstr
