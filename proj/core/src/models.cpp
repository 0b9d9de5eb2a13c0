#include "eddeg/models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <utility>

#include "eddeg/errors.hpp"
#include "eddeg/linalg.hpp"
#include "eddeg/rng.hpp"
#include "isospectral.hpp"

namespace edd::models {

using core::EigenPair;
using core::RectMatrix;
using core::Vector;

namespace {

detail::SpectrumDesc flag_spectrum(const FlagSpec& s) {
  return detail::sorted_spectrum(s.bs(), s.block_sizes());
}

detail::SpectrumDesc grassmann_spectrum(const GrassmannSpec& s) {
  return detail::sorted_spectrum({s.a(), s.b()}, {s.k(), s.n() - s.k()});
}

detail::SpectrumDesc schubert_inner_spectrum(const SchubertSpec& s) {
  return detail::sorted_spectrum(
      {s.a(), s.b()}, {s.inner_rank(), s.inner_size() - s.inner_rank()});
}

void require_shape(const ModelHandle& model, const Matrix& X) {
  if (X.rows() != model.rows() || X.cols() != model.cols()) {
    std::ostringstream msg;
    msg << model.kind_name() << ": expected a " << model.rows() << "x"
        << model.cols() << " point, got " << X.rows() << "x" << X.cols();
    throw core::ShapeMismatch(msg.str());
  }
  if (model.symmetric_ambient() && X.size() > 0) {
    const double scale = 1.0 + X.cwiseAbs().maxCoeff();
    if ((X - X.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw core::ShapeMismatch(model.kind_name() +
                                ": point must be symmetric");
  }
}

// Thin orthonormal factor of an n-by-k matrix via Householder QR with the
// R diagonal made positive.
Matrix thin_orthonormal(const Matrix& M) {
  const Eigen::Index n = M.rows(), k = M.cols();
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

// Orthonormal basis of the orthogonal complement of an orthonormal n-by-m
// frame (the trailing columns of its full QR factor).
Matrix orthonormal_complement(const Matrix& Qm) {
  const Eigen::Index n = Qm.rows(), m = Qm.cols();
  if (m == n) return Matrix(n, 0);
  Eigen::HouseholderQR<Matrix> qr(Qm);
  const Matrix full = qr.householderQ();
  return full.rightCols(n - m);
}

double stiefel_membership(const StiefelSpec& s, const Matrix& X) {
  const double scale = 1.0 + X.norm();
  return (X.transpose() * X - s.B()).norm() / (scale * scale);
}

double schubert_membership(const SchubertSpec& s, const Matrix& X) {
  const int k = s.k(), nm = s.n() - s.m(), inner = s.inner_size();
  const Matrix M = s.Q().transpose() * X * s.Q();
  const double scale = 1.0 + X.norm();

  double fixed = 0.0;
  auto accumulate = [&](const Matrix& block) {
    fixed = std::hypot(fixed, block.norm());
  };
  accumulate(M.block(0, 0, k, k) - s.a() * Matrix::Identity(k, k));
  accumulate(M.block(k, k, nm, nm) - s.b() * Matrix::Identity(nm, nm));
  accumulate(M.block(0, k, k, nm));
  accumulate(M.block(0, k + nm, k, inner));
  accumulate(M.block(k, k + nm, nm, inner));

  const double inner_residual = detail::membership(
      M.block(k + nm, k + nm, inner, inner), schubert_inner_spectrum(s));
  return std::max(fixed / scale, inner_residual);
}

}  // namespace

// ---- spec validation --------------------------------------------------------

FlagSpec::FlagSpec(int n, std::vector<int> ks, std::vector<double> bs)
    : n_(n), ks_(std::move(ks)), bs_(std::move(bs)) {
  if (n_ < 2) throw core::InvalidParameter("flag: need n >= 2");
  if (ks_.empty()) throw core::InvalidParameter("flag: need at least one k");
  int prev = 0;
  for (int k : ks_) {
    if (k <= prev)
      throw core::InvalidParameter("flag: ks must be strictly increasing");
    prev = k;
  }
  if (ks_.back() >= n_)
    throw core::InvalidParameter("flag: ks must stay below n");
  if (bs_.size() != ks_.size() + 1)
    throw core::InvalidParameter(
        "flag: need exactly one eigenvalue per block (p+1 values)");
  for (std::size_t i = 0; i < bs_.size(); ++i)
    for (std::size_t j = i + 1; j < bs_.size(); ++j)
      if (bs_[i] == bs_[j])
        throw core::InvalidParameter(
            "flag: block eigenvalues must be pairwise distinct");

  sizes_.reserve(bs_.size());
  prev = 0;
  for (int k : ks_) {
    sizes_.push_back(k - prev);
    prev = k;
  }
  sizes_.push_back(n_ - prev);
}

FlagSpec::FlagSpec(int n, std::vector<int> ks)
    : FlagSpec(n, ks, [&] {
        std::vector<double> bs(ks.size() + 1);
        for (std::size_t j = 0; j < bs.size(); ++j)
          bs[j] = static_cast<double>(bs.size() - 1 - j);
        return bs;
      }()) {}

GrassmannSpec::GrassmannSpec(int n, int k, double a, double b)
    : n_(n), k_(k), a_(a), b_(b) {
  if (n_ < 2 || k_ < 1 || k_ >= n_)
    throw core::InvalidParameter("grassmann: need 1 <= k < n");
  if (a_ == b_)
    throw core::InvalidParameter("grassmann: eigenvalues a and b must differ");
}

StiefelSpec::StiefelSpec(int n, int k, SymmetricMatrix B)
    : n_(n), k_(k), B_(B.mat()) {
  if (k_ < 1 || k_ > n_)
    throw core::InvalidParameter("stiefel: need 1 <= k <= n");
  if (B_.rows() != k_)
    throw core::InvalidParameter("stiefel: B must be k x k");
  B_eig_ = core::sym_eig(SymmetricMatrix(B_), 0.0);
  const double scale = 1.0 + B_.norm();
  if (B_eig_.lambdas[k_ - 1] <= 1e-12 * scale)
    throw core::InvalidParameter(
        "stiefel: B must be positive definite (smallest eigenvalue <= 0)");
}

StiefelSpec::StiefelSpec(int n, int k)
    : StiefelSpec(n, k, SymmetricMatrix(Matrix::Identity(k, k))) {}

SchubertSpec::SchubertSpec(int n, int k, int l, int m, Matrix Q, double a,
                           double b)
    : n_(n), k_(k), l_(l), m_(m), a_(a), b_(b), Q_(std::move(Q)) {
  if (!(0 <= k_ && k_ <= l_ && l_ <= m_ && m_ <= n_) || n_ < 1)
    throw core::InvalidParameter("schubert: need 0 <= k <= l <= m <= n");
  if (a_ == b_)
    throw core::InvalidParameter("schubert: eigenvalues a and b must differ");
  if (Q_.rows() != n_ || Q_.cols() != n_)
    throw core::InvalidParameter("schubert: frame must be n x n");
  const double residual =
      (Q_.transpose() * Q_ - Matrix::Identity(n_, n_)).norm();
  if (residual > 1e-10 * n_)
    throw core::InvalidParameter("schubert: frame is not orthogonal");
}

SchubertSpec::SchubertSpec(int n, int k, int l, int m, double a, double b)
    : SchubertSpec(n, k, l, m, Matrix::Identity(n, n), a, b) {}

ModelHandle::ModelHandle(FlagSpec spec)
    : kind_(ModelKind::flag), spec_(std::move(spec)) {}
ModelHandle::ModelHandle(GrassmannSpec spec)
    : kind_(ModelKind::grassmann), spec_(std::move(spec)) {}
ModelHandle::ModelHandle(StiefelSpec spec)
    : kind_(ModelKind::stiefel), spec_(std::move(spec)) {}
ModelHandle::ModelHandle(SchubertSpec spec)
    : kind_(ModelKind::schubert), spec_(std::move(spec)) {}

Eigen::Index ModelHandle::rows() const {
  switch (kind_) {
    case ModelKind::flag: return flag().n();
    case ModelKind::grassmann: return grassmann().n();
    case ModelKind::stiefel: return stiefel().n();
    case ModelKind::schubert: return schubert().n();
  }
  return 0;
}

Eigen::Index ModelHandle::cols() const {
  return kind_ == ModelKind::stiefel ? stiefel().k() : rows();
}

std::string ModelHandle::kind_name() const {
  switch (kind_) {
    case ModelKind::flag: return "flag";
    case ModelKind::grassmann: return "grassmann";
    case ModelKind::stiefel: return "stiefel";
    case ModelKind::schubert: return "schubert";
  }
  return "?";
}

// ---- degree and dimension ---------------------------------------------------

std::uint64_t ed_degree(const ModelHandle& model, std::uint64_t cap) {
  switch (model.kind()) {
    case ModelKind::flag:
      return core::multinomial(model.flag().block_sizes(), cap);
    case ModelKind::grassmann:
      return core::binomial(model.grassmann().n(), model.grassmann().k(), cap);
    case ModelKind::stiefel:
      return core::two_pow(model.stiefel().k(), cap);
    case ModelKind::schubert:
      return core::binomial(model.schubert().inner_size(),
                            model.schubert().inner_rank(), cap);
  }
  throw core::InvalidParameter("ed_degree: unknown model");
}

int dimension(const ModelHandle& model) {
  switch (model.kind()) {
    case ModelKind::flag: {
      const auto& s = model.flag();
      int sum_sq = 0;
      for (int size : s.block_sizes()) sum_sq += size * size;
      return (s.n() * s.n() - sum_sq) / 2;
    }
    case ModelKind::grassmann: {
      const auto& s = model.grassmann();
      return s.k() * (s.n() - s.k());
    }
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      return s.n() * s.k() - s.k() * (s.k() + 1) / 2;
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      return (s.l() - s.k()) * (s.m() - s.l());
    }
  }
  throw core::InvalidParameter("dimension: unknown model");
}

// ---- membership -------------------------------------------------------------

double membership_residual(const ModelHandle& model, const Matrix& X) {
  require_shape(model, X);
  switch (model.kind()) {
    case ModelKind::flag:
      return detail::membership(X, flag_spectrum(model.flag()));
    case ModelKind::grassmann:
      return detail::membership(X, grassmann_spectrum(model.grassmann()));
    case ModelKind::stiefel:
      return stiefel_membership(model.stiefel(), X);
    case ModelKind::schubert:
      return schubert_membership(model.schubert(), X);
  }
  throw core::InvalidParameter("membership_residual: unknown model");
}

// ---- sampling ---------------------------------------------------------------

Matrix random_point(const ModelHandle& model, std::uint64_t seed) {
  switch (model.kind()) {
    case ModelKind::flag: {
      const auto& s = model.flag();
      const Matrix V = core::random_orthogonal(s.n(), seed);
      const Vector d = detail::expanded_spectrum(flag_spectrum(s));
      return V * d.asDiagonal() * V.transpose();
    }
    case ModelKind::grassmann: {
      const auto& s = model.grassmann();
      const Matrix V = core::random_orthogonal(s.n(), seed);
      const Vector d = detail::expanded_spectrum(grassmann_spectrum(s));
      return V * d.asDiagonal() * V.transpose();
    }
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      const Matrix frame =
          thin_orthonormal(core::random_rect(s.n(), s.k(), seed).mat());
      return frame * core::spd_sqrt(SymmetricMatrix(s.B()));
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      const int inner = s.inner_size();
      Matrix X_inner(inner, inner);
      if (inner > 0) {
        const Matrix V = core::random_orthogonal(inner, seed);
        const Vector d =
            detail::expanded_spectrum(schubert_inner_spectrum(s));
        X_inner = V * d.asDiagonal() * V.transpose();
      }
      return schubert_embed(s, X_inner);
    }
  }
  throw core::InvalidParameter("random_point: unknown model");
}

// ---- tangent projection -----------------------------------------------------

Matrix tangent_project(const ModelHandle& model, const Matrix& X,
                       const Matrix& Z, double membership_tol) {
  require_shape(model, X);
  if (Z.rows() != X.rows() || Z.cols() != X.cols())
    throw core::ShapeMismatch("tangent_project: direction shape mismatch");
  const double residual = membership_residual(model, X);
  if (residual > membership_tol) {
    std::ostringstream msg;
    msg << "tangent_project: point is off the model (membership residual "
        << residual << " above " << membership_tol << ")";
    throw core::NotOnManifold(msg.str());
  }

  switch (model.kind()) {
    case ModelKind::flag:
      return detail::tangent_project(X, flag_spectrum(model.flag()), Z);
    case ModelKind::grassmann:
      return detail::tangent_project(X, grassmann_spectrum(model.grassmann()),
                                     Z);
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      // Solve B S + S B = X^T Z + Z^T X for symmetric S in the eigenbasis of
      // B (denominators beta_i + beta_j > 0 since B is SPD), then remove the
      // normal component X S.
      const EigenPair& be = s.B_eig();
      const Matrix M = X.transpose() * Z + Z.transpose() * X;
      const Matrix Mt = be.Q.transpose() * M * be.Q;
      Matrix St(s.k(), s.k());
      for (int i = 0; i < s.k(); ++i)
        for (int j = 0; j < s.k(); ++j)
          St(i, j) = Mt(i, j) / (be.lambdas[i] + be.lambdas[j]);
      const Matrix S = be.Q * St * be.Q.transpose();
      return Z - X * S;
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      const int k = s.k(), nm = s.n() - s.m(), inner = s.inner_size();
      const Matrix Mx = s.Q().transpose() * X * s.Q();
      const Matrix Mz =
          s.Q().transpose() * ((Z + Z.transpose()) / 2.0) * s.Q();
      Matrix out = Matrix::Zero(s.n(), s.n());
      if (inner > 0) {
        out.block(k + nm, k + nm, inner, inner) = detail::tangent_project(
            Mx.block(k + nm, k + nm, inner, inner),
            schubert_inner_spectrum(s),
            Mz.block(k + nm, k + nm, inner, inner));
      }
      return s.Q() * out * s.Q().transpose();
    }
  }
  throw core::InvalidParameter("tangent_project: unknown model");
}

// ---- schubert plumbing ------------------------------------------------------

Matrix adapted_frame(const Matrix& U_basis, const Matrix& W_basis) {
  const Eigen::Index n = W_basis.rows();
  const Eigen::Index k = U_basis.cols();
  const Eigen::Index m = W_basis.cols();
  if (U_basis.rows() != n && k > 0)
    throw core::ShapeMismatch("adapted_frame: row counts differ");
  if (k > m || m > n)
    throw core::InvalidParameter("adapted_frame: need dim U <= dim W <= n");

  auto orthonormalize = [](const Matrix& basis, const char* name) {
    if (basis.cols() == 0) return Matrix(basis.rows(), 0);
    Eigen::ColPivHouseholderQR<Matrix> qr(basis);
    if (qr.rank() < basis.cols())
      throw core::RankDeficient(std::string("adapted_frame: ") + name +
                                " basis has dependent columns");
    return thin_orthonormal(basis);
  };

  const Matrix Qu = orthonormalize(U_basis, "U");
  const Matrix Qw = orthonormalize(W_basis, "W");

  if (k > 0) {
    const double nesting =
        (Qu - Qw * (Qw.transpose() * Qu)).norm() / std::sqrt(double(k));
    if (nesting > 1e-8)
      throw core::NotNested(
          "adapted_frame: span(U) is not contained in span(W)");
  }

  // Complement of W, then re-orthonormalized against U so the assembled frame
  // is orthogonal to machine precision even for approximately nested input.
  Matrix Wperp = orthonormal_complement(Qw);
  if (k > 0 && Wperp.cols() > 0) {
    Wperp = thin_orthonormal(Wperp - Qu * (Qu.transpose() * Wperp));
  }

  Matrix partial(n, k + Wperp.cols());
  partial.leftCols(k) = Qu;
  partial.rightCols(Wperp.cols()) = Wperp;

  if (partial.cols() == 0) return Matrix::Identity(n, n);
  if (partial.cols() == n) return partial;
  Matrix Q(n, n);
  Q.leftCols(partial.cols()) = partial;
  Q.rightCols(n - partial.cols()) = orthonormal_complement(partial);
  return Q;
}

Matrix schubert_embed(const SchubertSpec& spec, const Matrix& X_inner) {
  const int k = spec.k(), nm = spec.n() - spec.m(), inner = spec.inner_size();
  if (X_inner.rows() != inner || X_inner.cols() != inner)
    throw core::ShapeMismatch("schubert_embed: inner block has wrong size");
  if (inner > 0) {
    const double residual =
        detail::membership(X_inner, schubert_inner_spectrum(spec));
    if (residual > 1e-8 * (1.0 + X_inner.norm()))
      throw core::NotOnManifold(
          "schubert_embed: inner block is off the inner model");
  }
  Matrix D = Matrix::Zero(spec.n(), spec.n());
  D.block(0, 0, k, k) = spec.a() * Matrix::Identity(k, k);
  D.block(k, k, nm, nm) = spec.b() * Matrix::Identity(nm, nm);
  if (inner > 0) D.block(k + nm, k + nm, inner, inner) = X_inner;
  return spec.Q() * D * spec.Q().transpose();
}

Matrix schubert_extract_inner(const SchubertSpec& spec, const Matrix& X) {
  const int k = spec.k(), nm = spec.n() - spec.m(), inner = spec.inner_size();
  const Matrix M = spec.Q().transpose() * X * spec.Q();
  return M.block(k + nm, k + nm, inner, inner);
}

}  // namespace edd::models
