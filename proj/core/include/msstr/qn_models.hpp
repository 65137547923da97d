#pragma once

// Limited-memory Hessian approximations in compact form:
//   B = Binit + Psi * M * Psi^T
// with a small symmetric core M and tall-skinny Psi, plus the implicit
// spectral factors (eigenbasis map, eigenvalues, init parameters) consumed
// by the shape-changing subproblem solvers.

#include "msstr/smallmat.hpp"

#include <vector>

namespace msstr {

/// Ring buffer of the most recent quasi-Newton pairs (s, y), newest first.
/// The incoming pair always enters; stored pairs whose s-columns would make
/// the S block rank-deficient with it are evicted oldest-first, so S always
/// has full column rank and the model never freezes on a repeated direction.
class PairBuffer {
 public:
  PairBuffer(int dim, int memory) : dim_(dim), memory_(memory) {}

  int dim() const { return dim_; }
  int memory() const { return memory_; }
  int size() const { return static_cast<int>(s_.size()); }
  bool empty() const { return s_.empty(); }
  void clear() {
    s_.clear();
    y_.clear();
    ratio_history_.clear();
  }

  // Returns false only for a zero step.  The curvature-ratio history is
  // extended on every offered pair: initialization windows count recent
  // iterates, not just pairs currently held in the memory.
  bool update(const Vec& s, const Vec& y, double tol = 1e-12);

  const Vec& s(int i) const { return s_[i]; }   // i = 0 is the newest pair
  const Vec& y(int i) const { return y_[i]; }

  Mat s_matrix() const;   // n x l, newest-first columns
  Mat y_matrix() const;

  // y^T y / y^T s of the i-th most recent offered pair; NaN when that pair
  // had non-positive curvature.
  int history_size() const { return static_cast<int>(ratio_history_.size()); }
  double ratio(int i) const { return ratio_history_[i]; }

 private:
  int dim_;
  int memory_;
  std::vector<Vec> s_;
  std::vector<Vec> y_;
  std::vector<double> ratio_history_;   // newest first, bounded length
};

enum class InitKind { scalar, dense };

/// Initialization parameters: zeta acts on the span of the stored pairs,
/// zeta_perp on its orthogonal complement.  Scalar mode uses one value for
/// both (the conventional gamma * I).
struct Initialization {
  InitKind kind = InitKind::scalar;
  double zeta = 1.0;
  double zeta_perp = 1.0;
  int history = 5;   // number of recent pairs inspected (q)
};

// gamma = max over the q most recent pairs of y^T y / y^T s, restricted to
// pairs with positive curvature; falls back to 1 when none qualifies.
double scalar_init(const PairBuffer& buf, int q);
Initialization make_scalar_init(const PairBuffer& buf, int q);

// zeta from the window maximum, zeta_perp from the newest pair.
Initialization dense_init(const PairBuffer& buf, int q);

enum class Representation { standard, gram_free };

/// Compact multipoint symmetric secant matrix.  The standard representation
/// stores the explicit 2l x 2l core for Psi = [S Y]; the gram-free variant
/// applies Psi = [S(S^TS)^{-1}  Y] implicitly and forms its core without
/// inverting the S Gram matrix.
class MssCompact {
 public:
  int dim() const { return static_cast<int>(s_.rows()); }
  int pairs() const { return static_cast<int>(s_.cols()); }
  double zeta() const { return zeta_; }
  double zeta_perp() const { return zeta_perp_; }
  Representation representation() const { return rep_; }

  Vec apply(const Vec& v) const;   // B v, including the dense-init part

  const Mat& s() const { return s_; }
  const Mat& y() const { return y_; }
  const Mat& gram_s() const { return gram_s_; }
  const Mat& s_t_y() const { return sty_; }

  Mat psi() const;             // [S Y], n x 2l
  Mat core_standard() const;   // 2l x 2l core for psi()

  friend MssCompact build_mss(const PairBuffer&, const Initialization&,
                              Representation);

 private:
  Mat s_, y_;          // n x l blocks
  Mat gram_s_;         // S^T S
  Mat sty_;            // S^T Y
  Mat sym_part_;       // T + E + T^T (T strict upper, E diag of S^T Y)
  Mat w_;              // (S^T S)^{-1}
  Eigen::LLT<Mat> gram_llt_;
  GramQr proj_qr_;     // rank structure of [S Y], for the dense-init projector
  Representation rep_ = Representation::standard;
  double zeta_ = 1.0;
  double zeta_perp_ = 1.0;
};

// Throws FactorizationError when the filtered S Gram matrix is numerically
// singular; callers reset the buffer and continue with B = gamma I.
MssCompact build_mss(const PairBuffer& buf, const Initialization& init,
                     Representation rep = Representation::standard);

/// L-SR1 compact form: B = gamma I + Psi N^{-1} Psi^T with Psi = Y - gamma S.
/// Columns whose core pivot fails the dependence threshold are dropped.
class Sr1Compact {
 public:
  int dim() const { return static_cast<int>(psi_.rows()); }
  double gamma() const { return gamma_; }
  const Mat& psi() const { return psi_; }
  const Mat& core() const { return core_; }

  Vec apply(const Vec& v) const;

  friend Sr1Compact build_sr1(const PairBuffer&, double, double);

 private:
  Mat psi_;    // n x r kept columns of Y - gamma S
  Mat core_;   // r x r symmetric (inverse of the kept SR1 core)
  double gamma_ = 1.0;
};

Sr1Compact build_sr1(const PairBuffer& buf, double gamma, double tol = 1e-10);

/// Implicit spectral factors of a compact model:
///   B = Ppar (LambdaHat + zeta I) Ppar^T + zeta_perp (I - Ppar Ppar^T)
/// where Ppar = Psi_kept * basis_map has orthonormal columns.  An empty
/// basis denotes B = zeta_perp I.
class SpectralFactors {
 public:
  SpectralFactors() = default;
  SpectralFactors(Mat psi_kept, Mat basis_map, Vec lambda_hat, double zeta,
                  double zeta_perp, int dim)
      : psi_kept_(std::move(psi_kept)),
        basis_map_(std::move(basis_map)),
        lambda_hat_(std::move(lambda_hat)),
        zeta_(zeta),
        zeta_perp_(zeta_perp),
        dim_(dim) {}

  static SpectralFactors identity_model(int dim, double gamma) {
    SpectralFactors f;
    f.dim_ = dim;
    f.zeta_ = gamma;
    f.zeta_perp_ = gamma;
    return f;
  }

  bool empty() const { return lambda_hat_.size() == 0; }
  int rank() const { return static_cast<int>(lambda_hat_.size()); }
  int dim() const { return dim_; }
  double zeta() const { return zeta_; }
  double zeta_perp() const { return zeta_perp_; }
  const Vec& lambda_hat() const { return lambda_hat_; }   // ascending
  const Mat& basis_map() const { return basis_map_; }

  Vec apply_p_parallel(const Vec& coeffs) const;     // Ppar * coeffs
  Vec apply_p_parallel_t(const Vec& x) const;        // Ppar^T * x
  double p_parallel_row_sqnorm(int i) const;         // ||Ppar^T e_i||^2
  Vec apply(const Vec& v) const;                     // B v (spectral route)

 private:
  Mat psi_kept_;    // n x r
  Mat basis_map_;   // r x r, R^{-1} U
  Vec lambda_hat_;  // r, ascending
  double zeta_ = 1.0;
  double zeta_perp_ = 1.0;
  int dim_ = 0;
};

// Thin QR of Psi through its Gram matrix, spectral decomposition of the
// projected core.  An empty kept basis yields B = zeta_perp I.
SpectralFactors factorize(const MssCompact& model);
SpectralFactors factorize(const Sr1Compact& model);

// Shared pipeline for any explicit compact form B = Binit + psi core psi^T.
SpectralFactors factorize_compact(const Mat& psi, const Mat& core, double zeta,
                                  double zeta_perp);

}  // namespace msstr
