#include "msstr/qn_models.hpp"

#include <cmath>
#include <limits>

namespace msstr {

namespace {
constexpr double kCurvatureTol = 1e-12;
}

bool PairBuffer::update(const Vec& s, const Vec& y, double tol) {
  if (s.norm() == 0.0) return false;
  const double ys = y.dot(s);
  const double good = ys > kCurvatureTol * y.norm() * s.norm()
                          ? y.squaredNorm() / ys
                          : std::numeric_limits<double>::quiet_NaN();
  ratio_history_.insert(ratio_history_.begin(), good);
  constexpr int kHistoryCap = 32;
  if (static_cast<int>(ratio_history_.size()) > kHistoryCap) {
    ratio_history_.pop_back();
  }
  // The incoming direction always enters the buffer: it carries the newest
  // curvature information.  Stored pairs that would make the S block
  // rank-deficient with it are evicted oldest-first, so S keeps full column
  // rank without ever freezing on a repeated direction.
  while (true) {
    const int l = std::min(size(), memory_ - 1);
    // Gram of the direction-normalized candidate block [s, s_0, ..., s_{l-1}]
    Mat g(l + 1, l + 1);
    g(0, 0) = 1.0;
    for (int i = 0; i < l; ++i) {
      g(0, i + 1) = g(i + 1, 0) = s.dot(s_[i]) / (s.norm() * s_[i].norm());
      for (int j = i; j < l; ++j) {
        g(i + 1, j + 1) = g(j + 1, i + 1) =
            s_[i].dot(s_[j]) / (s_[i].norm() * s_[j].norm());
      }
    }
    LdlFactor f = ldl_with_pivot_threshold(g, tol);
    if (f.rank == l + 1) break;
    s_.pop_back();
    y_.pop_back();
  }

  s_.insert(s_.begin(), s);
  y_.insert(y_.begin(), y);
  if (size() > memory_) {
    s_.pop_back();
    y_.pop_back();
  }
  return true;
}

Mat PairBuffer::s_matrix() const {
  Mat m(dim_, size());
  for (int i = 0; i < size(); ++i) m.col(i) = s_[i];
  return m;
}

Mat PairBuffer::y_matrix() const {
  Mat m(dim_, size());
  for (int i = 0; i < size(); ++i) m.col(i) = y_[i];
  return m;
}

double scalar_init(const PairBuffer& buf, int q) {
  double gamma = 0.0;
  bool found = false;
  const int window = std::min(q, buf.history_size());
  for (int i = 0; i < window; ++i) {
    const double r = buf.ratio(i);
    if (std::isfinite(r)) {
      gamma = std::max(gamma, r);
      found = true;
    }
  }
  return found ? gamma : 1.0;
}

Initialization make_scalar_init(const PairBuffer& buf, int q) {
  Initialization init;
  init.kind = InitKind::scalar;
  init.history = q;
  init.zeta = init.zeta_perp = scalar_init(buf, q);
  return init;
}

Initialization dense_init(const PairBuffer& buf, int q) {
  Initialization init;
  init.kind = InitKind::dense;
  init.history = q;
  init.zeta = scalar_init(buf, q);
  init.zeta_perp = init.zeta;
  if (buf.history_size() > 0 && std::isfinite(buf.ratio(0))) {
    init.zeta_perp = buf.ratio(0);
  }
  return init;
}

MssCompact build_mss(const PairBuffer& buf, const Initialization& init,
                     Representation rep) {
  if (buf.empty()) throw FactorizationError("build_mss: empty pair buffer");
  MssCompact m;
  m.rep_ = rep;
  m.zeta_ = init.zeta;
  m.zeta_perp_ = init.zeta_perp;
  m.s_ = buf.s_matrix();
  m.y_ = buf.y_matrix();
  m.gram_s_ = m.s_.transpose() * m.s_;
  m.sty_ = m.s_.transpose() * m.y_;

  const int l = buf.size();
  Mat t = Mat::Zero(l, l);   // strict upper triangle of S^T Y
  Vec e(l);                  // its diagonal
  for (int i = 0; i < l; ++i) {
    e(i) = m.sty_(i, i);
    for (int j = i + 1; j < l; ++j) t(i, j) = m.sty_(i, j);
  }
  m.sym_part_ = t + t.transpose();
  m.sym_part_.diagonal() += e;

  m.gram_llt_.compute(m.gram_s_);
  if (m.gram_llt_.info() != Eigen::Success) {
    throw FactorizationError("build_mss: S^T S is numerically singular");
  }
  m.w_ = m.gram_llt_.solve(Mat::Identity(l, l));
  m.proj_qr_ = gram_qr(m.psi().transpose() * m.psi());
  return m;
}

Mat MssCompact::psi() const {
  const int l = pairs();
  Mat p(dim(), 2 * l);
  p.leftCols(l) = s_;
  p.rightCols(l) = y_;
  return p;
}

Mat MssCompact::core_standard() const {
  const int l = pairs();
  Mat core = Mat::Zero(2 * l, 2 * l);
  core.topLeftCorner(l, l) = -zeta_ * w_ - w_ * sym_part_ * w_;
  core.topRightCorner(l, l) = w_;
  core.bottomLeftCorner(l, l) = w_;
  return core;
}

Vec MssCompact::apply(const Vec& v) const {
  const int l = pairs();
  // Initialization part: zeta on range([S Y]), zeta_perp on the complement.
  Vec bv = zeta_perp_ * v;
  if (zeta_ != zeta_perp_ && !proj_qr_.empty()) {
    const auto& kept = proj_qr_.kept_columns();
    Vec coeff(kept.size());
    for (size_t i = 0; i < kept.size(); ++i) {
      const int c = kept[i];
      coeff(i) = (c < l ? s_.col(c) : y_.col(c - l)).dot(v);
    }
    Vec z = proj_qr_.apply_rinv(proj_qr_.apply_rinv_t(coeff));
    for (size_t i = 0; i < kept.size(); ++i) {
      const int c = kept[i];
      bv += (zeta_ - zeta_perp_) * z(i) * (c < l ? s_.col(c) : y_.col(c - l));
    }
  }

  if (rep_ == Representation::standard) {
    Vec p(2 * l);
    p.head(l) = s_.transpose() * v;
    p.tail(l) = y_.transpose() * v;
    Vec q = core_standard() * p;
    bv += s_ * q.head(l) + y_ * q.tail(l);
  } else {
    // Psi-hat = [S W, Y]; the core uses S^T S directly, W enters as a solve.
    Vec a = gram_llt_.solve(s_.transpose() * v);   // W S^T v
    Vec b = y_.transpose() * v;
    Vec z1 = (-zeta_) * (gram_s_ * a) - sym_part_ * a + b;
    bv += s_ * gram_llt_.solve(z1) + y_ * a;
  }
  return bv;
}

Sr1Compact build_sr1(const PairBuffer& buf, double gamma, double tol) {
  if (buf.empty()) throw FactorizationError("build_sr1: empty pair buffer");
  const int l = buf.size();
  Mat s = buf.s_matrix();
  Mat y = buf.y_matrix();
  Mat psi = y - gamma * s;
  Mat sty = s.transpose() * y;

  // Newest-first column order flips the usual strict-lower convention.
  Mat t = Mat::Zero(l, l);
  Vec e(l);
  for (int i = 0; i < l; ++i) {
    e(i) = sty(i, i);
    for (int j = i + 1; j < l; ++j) t(i, j) = sty(i, j);
  }
  Mat n = t + t.transpose() - gamma * (s.transpose() * s);
  n.diagonal() += e;

  LdlFactor f = ldl_with_pivot_threshold(n, tol);
  Sr1Compact model;
  model.gamma_ = gamma;
  const int r = f.rank;
  model.psi_.resize(s.rows(), r);
  Mat nk(r, r);
  for (int i = 0; i < r; ++i) {
    model.psi_.col(i) = psi.col(f.kept_columns[i]);
    for (int j = 0; j < r; ++j) nk(i, j) = n(f.kept_columns[i], f.kept_columns[j]);
  }
  if (r > 0) {
    model.core_ = nk.ldlt().solve(Mat::Identity(r, r));
    model.core_ = 0.5 * (model.core_ + model.core_.transpose());
  } else {
    model.core_.resize(0, 0);
  }
  return model;
}

Vec Sr1Compact::apply(const Vec& v) const {
  Vec bv = gamma_ * v;
  if (psi_.cols() > 0) bv += psi_ * (core_ * (psi_.transpose() * v));
  return bv;
}

Vec SpectralFactors::apply_p_parallel(const Vec& coeffs) const {
  if (empty()) return Vec::Zero(dim_);
  return psi_kept_ * (basis_map_ * coeffs);
}

Vec SpectralFactors::apply_p_parallel_t(const Vec& x) const {
  if (empty()) return Vec();
  return basis_map_.transpose() * (psi_kept_.transpose() * x);
}

double SpectralFactors::p_parallel_row_sqnorm(int i) const {
  if (empty()) return 0.0;
  return (basis_map_.transpose() * psi_kept_.row(i).transpose()).squaredNorm();
}

Vec SpectralFactors::apply(const Vec& v) const {
  if (empty()) return zeta_perp_ * v;
  Vec c = apply_p_parallel_t(v);
  Vec scaled = (lambda_hat_.array() + zeta_).matrix().asDiagonal() * c;
  return apply_p_parallel(scaled) + zeta_perp_ * (v - apply_p_parallel(c));
}

SpectralFactors factorize_compact(const Mat& psi, const Mat& core, double zeta,
                                  double zeta_perp) {
  const int n = static_cast<int>(psi.rows());
  if (psi.cols() == 0) return SpectralFactors::identity_model(n, zeta_perp);

  Mat gram = psi.transpose() * psi;
  GramQr qr = gram_qr(gram);
  if (qr.empty()) return SpectralFactors::identity_model(n, zeta_perp);

  const auto& kept = qr.kept_columns();
  const int r = qr.rank();
  // Dropped columns are linear combinations of kept ones; fold those
  // coefficients into the projected core: core_r = (R^{-T} G_J) M (.)^T.
  Mat gj(r, static_cast<int>(psi.cols()));
  for (int i = 0; i < r; ++i) gj.row(i) = gram.row(kept[i]);
  Mat nmap = qr.apply_rinv_t(gj);            // r x p
  Mat projected = nmap * core * nmap.transpose();
  projected = 0.5 * (projected + projected.transpose());

  SymEig eig = sym_eig(projected);
  Mat psi_kept(n, r);
  for (int i = 0; i < r; ++i) psi_kept.col(i) = psi.col(kept[i]);
  Mat basis_map = qr.apply_rinv(eig.eigenvectors);
  return SpectralFactors(std::move(psi_kept), std::move(basis_map),
                         eig.eigenvalues, zeta, zeta_perp, n);
}

SpectralFactors factorize(const MssCompact& model) {
  return factorize_compact(model.psi(), model.core_standard(), model.zeta(),
                           model.zeta_perp());
}

SpectralFactors factorize(const Sr1Compact& model) {
  return factorize_compact(model.psi(), model.core(), model.gamma(),
                           model.gamma());
}

}  // namespace msstr
