#include "eddeg/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "eddeg/errors.hpp"

namespace edd::core {
namespace {

// Flip a column so its first entry of significant magnitude is positive.
// Returns the applied sign so paired factors can compensate.
double fix_column_sign(Eigen::Ref<Eigen::VectorXd> col) {
  const double scale = col.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return 1.0;
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (std::abs(col[i]) > 1e-12 * scale) {
      if (col[i] < 0.0) {
        col = -col;
        return -1.0;
      }
      return 1.0;
    }
  }
  return 1.0;
}

}  // namespace

EigenPair sym_eig(const SymmetricMatrix& S, double gap_tol) {
  if (gap_tol < 0.0) throw InvalidParameter("sym_eig: gap_tol must be >= 0");
  const Matrix& M = S.mat();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(M);
  if (solver.info() != Eigen::Success)
    throw DecompositionFailure("sym_eig: eigensolver did not converge");

  const Eigen::Index n = M.rows();
  EigenPair out;
  out.Q.resize(n, n);
  out.lambdas.resize(n);
  // Eigen sorts ascending; store decreasing.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.lambdas[i] = solver.eigenvalues()[n - 1 - i];
    out.Q.col(i) = solver.eigenvectors().col(n - 1 - i);
    fix_column_sign(out.Q.col(i));
  }

  out.gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    out.gap = std::min(out.gap, out.lambdas[i] - out.lambdas[i + 1]);

  const double scale = 1.0 + M.norm();
  if (out.gap < gap_tol * scale) {
    std::ostringstream msg;
    msg << "sym_eig: eigenvalues not pairwise distinct (smallest gap "
        << out.gap << " below " << gap_tol * scale << ")";
    throw DegenerateSpectrum(msg.str());
  }
  return out;
}

SvdData full_svd(const RectMatrix& A) {
  const Matrix& M = A.mat();
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().size() != M.cols())
    throw DecompositionFailure("full_svd: unexpected singular value count");

  SvdData out;
  out.U = svd.matrixU();
  out.V = svd.matrixV();
  out.sigmas = svd.singularValues();

  const Eigen::Index k = M.cols();
  for (Eigen::Index i = 0; i < out.U.cols(); ++i) {
    const double sign = fix_column_sign(out.U.col(i));
    // Keep A = U * [diag(sigmas); 0] * V^T exact: columns paired with a
    // singular value compensate in V; null-space columns flip freely.
    if (i < k && sign < 0.0) out.V.col(i) = -out.V.col(i);
  }
  return out;
}

Matrix spd_sqrt(const SymmetricMatrix& S) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(S.mat());
  if (solver.info() != Eigen::Success)
    throw DecompositionFailure("spd_sqrt: eigensolver did not converge");
  Vector d = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * d.asDiagonal() *
         solver.eigenvectors().transpose();
}

// ---- matrix.hpp constructors ------------------------------------------------

SymmetricMatrix::SymmetricMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw ShapeMismatch("SymmetricMatrix: matrix is not square");
  if (m_.size() > 0) {
    const double scale = 1.0 + m_.cwiseAbs().maxCoeff();
    const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
      throw ShapeMismatch("SymmetricMatrix: input is not symmetric");
    m_ = ((m_ + m_.transpose()) / 2.0).eval();
  }
}

RectMatrix::RectMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.cols() > m_.rows())
    throw ShapeMismatch("RectMatrix: more columns than rows");
  if (m_.cols() < 1)
    throw ShapeMismatch("RectMatrix: at least one column required");
}

std::string BlockAssignment::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(labels[i]);
  }
  return out;
}

}  // namespace edd::core
