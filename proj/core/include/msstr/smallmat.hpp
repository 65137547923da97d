#pragma once

// Dense kernels on small symmetric matrices (order <= 2m+2, m <= 10):
// diagonal-threshold LDL^T with rank detection, symmetric eigendecomposition,
// and a thin QR built from a Gram matrix that never forms Q.

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace msstr {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when a small-matrix factorization cannot be completed.
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LDL^T of the maximal principal submatrix whose pivots pass the
/// dependence threshold.  Dropped rows/columns keep a zero pivot and a
/// zeroed column in `lower`.
struct LdlFactor {
  int order = 0;
  Mat lower;                       // unit lower triangular on kept columns
  Vec diag;                        // pivots; 0 at dropped positions
  int rank = 0;
  std::vector<int> kept_columns;   // indices with accepted pivots
};

// A column is dropped when its pivot d_j satisfies |d_j| <= tol * max_i |A_ii|.
LdlFactor ldl_with_pivot_threshold(const Mat& a, double tol = 1e-12);

struct SymEig {
  Vec eigenvalues;    // ascending
  Mat eigenvectors;   // column-orthonormal
};

SymEig sym_eig(const Mat& a);

/// Result of a thin QR factorization V = QR obtained through V^T V.
/// Only R and the set of retained columns are stored; products with
/// R^{-1} and R^{-T} are exposed so Q = V_kept R^{-1} is never formed.
class GramQr {
 public:
  GramQr() = default;
  GramQr(std::vector<int> kept, Mat r) : kept_(std::move(kept)), r_(std::move(r)) {}

  bool empty() const { return kept_.empty(); }
  int rank() const { return static_cast<int>(kept_.size()); }
  const std::vector<int>& kept_columns() const { return kept_; }
  const Mat& r() const { return r_; }

  Vec apply_rinv(const Vec& w) const;      // R^{-1} w
  Vec apply_rinv_t(const Vec& w) const;    // R^{-T} w
  Mat apply_rinv(const Mat& w) const;
  Mat apply_rinv_t(const Mat& w) const;

 private:
  std::vector<int> kept_;
  Mat r_;   // upper triangular, rank x rank; Gram_kept = R^T R
};

// Factor a Gram matrix G = V^T V directly (G is symmetric PSD).
GramQr gram_qr(const Mat& gram, double tol = 1e-12);

// Convenience entry point taking the tall matrix itself.
GramQr thin_qr_via_gram(const Mat& v, double tol = 1e-12);

}  // namespace msstr
