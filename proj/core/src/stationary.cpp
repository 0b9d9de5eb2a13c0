#include "eddeg/stationary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "eddeg/errors.hpp"
#include "eddeg/linalg.hpp"
#include "isospectral.hpp"

namespace edd::stationary {

using core::EigenPair;
using core::Matrix;
using core::RectMatrix;
using core::SvdData;
using core::SymmetricMatrix;
using core::Vector;
using models::ModelKind;

namespace {

void require_anchor_shape(const ModelHandle& model, const Matrix& A) {
  if (A.rows() != model.rows() || A.cols() != model.cols()) {
    std::ostringstream msg;
    msg << model.kind_name() << ": expected a " << model.rows() << "x"
        << model.cols() << " anchor, got " << A.rows() << "x" << A.cols();
    throw core::ShapeMismatch(msg.str());
  }
  if (model.symmetric_ambient()) {
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw core::ShapeMismatch(model.kind_name() +
                                ": anchor must be symmetric");
  }
}

// Eigendecomposition of a symmetric anchor (or anchor block) with the
// distinctness predicate translated into DegenerateInput.
EigenPair generic_eig(const Matrix& S, double tol, const std::string& what) {
  try {
    return core::sym_eig(SymmetricMatrix(S), tol);
  } catch (const core::DegenerateSpectrum& e) {
    throw core::DegenerateInput(what + " eigenvalues not pairwise distinct (" +
                                e.what() + ")");
  }
}

// Cached ingredients of the stiefel closed form. With B = Q_B D Q_B^T and
// A Q_B = U [S; 0] V^T, every symmetric solution N of
// N^2 = B^{1/2} A^T A B^{1/2} yields the stationary point A B^{1/2} N^{-1}
// B^{1/2}; the 2^k choices of N are sign flips across the eigenvalues mu of
// Stilde = D^{1/2} V S^2 V^T D^{1/2} (similar to B^{1/2} A^T A B^{1/2}).
struct StiefelFactors {
  Matrix sqrtB;  // B^{1/2}
  Matrix R;      // eigenvectors of B^{1/2} A^T A B^{1/2}, mu decreasing
  Vector mu;     // its eigenvalues
  Matrix base;   // A * B^{1/2} * R, shared across all sign choices
};

StiefelFactors stiefel_factors(const models::StiefelSpec& s, const Matrix& A,
                               const SpectralData& data) {
  const EigenPair& be = s.B_eig();
  const Matrix sqrtD = be.lambdas.cwiseSqrt().asDiagonal();
  const Matrix& V = data.aqb_svd->V;
  Vector sig2 = data.aqb_svd->sigmas.array().square();
  const Matrix Stilde = sqrtD * V * sig2.asDiagonal() * V.transpose() * sqrtD;

  const EigenPair se = core::sym_eig(SymmetricMatrix(Stilde), 0.0);
  StiefelFactors f;
  f.sqrtB = be.Q * sqrtD * be.Q.transpose();
  f.R = be.Q * se.Q;  // eigenvectors of B^{1/2} A^T A B^{1/2}
  f.mu = se.lambdas;
  f.base = A * f.sqrtB * f.R;
  return f;
}

// Stationary point for one sign vector: X = A B^{1/2} N^{-1} B^{1/2} with
// N = R diag(eps_i sqrt(mu_i)) R^T.
Matrix stiefel_point(const StiefelFactors& f, const std::vector<int>& signs) {
  Vector inv_c(f.mu.size());
  for (Eigen::Index i = 0; i < f.mu.size(); ++i)
    inv_c[i] = signs[i] / std::sqrt(f.mu[i]);
  return f.base * inv_c.asDiagonal() * f.R.transpose() * f.sqrtB;
}

StationaryPoint make_point(const ModelHandle& model, const Matrix& A,
                           std::string label, Matrix X) {
  StationaryPoint p;
  p.label = std::move(label);
  p.objective = objective(A, X);
  p.grad_residual = stationarity_residual(model, A, X);
  p.X = std::move(X);
  return p;
}

}  // namespace

double objective(const Matrix& A, const Matrix& X) {
  if (A.rows() != X.rows() || A.cols() != X.cols())
    throw core::ShapeMismatch("objective: shapes differ");
  return 0.5 * (X - A).squaredNorm();
}

SpectralData check_generic(const ModelHandle& model, const Matrix& A,
                           double tol) {
  require_anchor_shape(model, A);
  SpectralData data;
  switch (model.kind()) {
    case ModelKind::flag:
    case ModelKind::grassmann: {
      data.anchor_eig = generic_eig(A, tol, "anchor");
      break;
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      data.inner_block = models::schubert_extract_inner(s, A);
      if (s.inner_size() > 0) {
        data.inner_eig =
            generic_eig(data.inner_block, tol, "inner anchor block");
      }
      break;
    }
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      const Matrix AQb = A * s.B_eig().Q;
      data.aqb_svd = core::full_svd(RectMatrix(AQb));
      const Vector& sig = data.aqb_svd->sigmas;
      const double scale = 1.0 + A.norm();
      for (int i = 0; i < s.k(); ++i) {
        if (sig[i] <= tol * scale)
          throw core::DegenerateInput(
              "singular values of the compressed anchor not strictly "
              "positive");
        if (i + 1 < s.k() && sig[i] - sig[i + 1] <= tol * scale)
          throw core::DegenerateInput(
              "singular values of the compressed anchor not pairwise "
              "distinct");
      }
      const StiefelFactors f = stiefel_factors(s, A, data);
      data.stat_eig = EigenPair{f.R, f.mu, 0.0};
      data.c_values.resize(f.mu.size());
      for (Eigen::Index i = 0; i < f.mu.size(); ++i)
        data.c_values[i] = std::sqrt(std::max(f.mu[i], 0.0));
      const double c_scale =
          1.0 + (data.c_values.empty() ? 0.0 : data.c_values.front());
      for (std::size_t i = 0; i + 1 < data.c_values.size(); ++i) {
        if (data.c_values[i] - data.c_values[i + 1] <= tol * c_scale) {
          std::ostringstream msg;
          msg << "stationary spectrum collision: c values not pairwise "
                 "distinct (c_"
              << i + 1 << " = " << data.c_values[i] << ", c_" << i + 2
              << " = " << data.c_values[i + 1] << ")";
          throw core::DegenerateInput(msg.str());
        }
      }
      break;
    }
  }
  data.genericity_ok = true;
  return data;
}

std::vector<StationaryPoint> enumerate_stationary(const ModelHandle& model,
                                                  const Matrix& A, double tol,
                                                  std::uint64_t cap) {
  const SpectralData data = check_generic(model, A, tol);
  std::vector<StationaryPoint> out;

  switch (model.kind()) {
    case ModelKind::flag:
    case ModelKind::grassmann: {
      // Assignment points Q diag(b_f) Q^T over the eigenbasis Q of A. The
      // grassmann case enumerates subsets (positions of the eigenvalue a).
      const Matrix& Q = data.anchor_eig->Q;
      const int n = static_cast<int>(model.rows());
      if (model.kind() == ModelKind::flag) {
        const auto& s = model.flag();
        const auto assignments = core::block_assignments(s.block_sizes(), cap);
        out.reserve(assignments.size());
        for (const auto& f : assignments) {
          Vector d(n);
          for (int i = 0; i < n; ++i) d[i] = s.bs()[f.labels[i] - 1];
          out.push_back(make_point(model, A, f.to_string(),
                                   Q * d.asDiagonal() * Q.transpose()));
        }
      } else {
        const auto& s = model.grassmann();
        const auto subsets = core::k_subsets(n, s.k(), cap);
        out.reserve(subsets.size());
        for (const auto& subset : subsets) {
          Vector d = Vector::Constant(n, s.b());
          for (int pos : subset) d[pos] = s.a();
          out.push_back(make_point(model, A, core::subset_label(subset),
                                   Q * d.asDiagonal() * Q.transpose()));
        }
      }
      break;
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      const int inner = s.inner_size();
      const auto subsets = core::k_subsets(inner, s.inner_rank(), cap);
      out.reserve(subsets.size());
      for (const auto& subset : subsets) {
        Matrix X_inner(inner, inner);
        if (inner > 0) {
          const Matrix& V = data.inner_eig->Q;
          Vector d = Vector::Constant(inner, s.b());
          for (int pos : subset) d[pos] = s.a();
          X_inner = V * d.asDiagonal() * V.transpose();
        }
        out.push_back(make_point(model, A, core::subset_label(subset),
                                 models::schubert_embed(s, X_inner)));
      }
      break;
    }
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      const StiefelFactors f = stiefel_factors(s, A, data);
      const auto signs = core::sign_vectors(s.k(), cap);
      out.reserve(signs.size());
      for (const auto& eps : signs) {
        out.push_back(make_point(model, A, core::signs_label(eps),
                                 stiefel_point(f, eps)));
      }
      break;
    }
  }
  return out;
}

double stationarity_residual(const ModelHandle& model, const Matrix& A,
                             const Matrix& X) {
  return models::tangent_project(model, X, X - A).norm();
}

StationaryPoint nearest_point(const ModelHandle& model, const Matrix& A,
                              double tol) {
  const SpectralData data = check_generic(model, A, tol);

  switch (model.kind()) {
    case ModelKind::flag: {
      const auto& s = model.flag();
      for (std::size_t j = 0; j + 1 < s.bs().size(); ++j)
        if (!(s.bs()[j] > s.bs()[j + 1]))
          throw core::ParameterOrderViolation(
              "nearest_point: flag eigenvalues must be strictly decreasing");
      // Identity assignment: the i-th largest anchor eigenvalue receives the
      // i-th largest model eigenvalue.
      const Matrix& Q = data.anchor_eig->Q;
      const int n = s.n();
      Vector d(n);
      std::string label;
      int pos = 0;
      for (std::size_t j = 0; j < s.bs().size(); ++j) {
        for (int i = 0; i < s.block_sizes()[j]; ++i) {
          d[pos++] = s.bs()[j];
          if (!label.empty()) label += ',';
          label += std::to_string(j + 1);
        }
      }
      return make_point(model, A, std::move(label),
                        Q * d.asDiagonal() * Q.transpose());
    }
    case ModelKind::grassmann: {
      const auto& s = model.grassmann();
      if (!(s.a() > s.b()))
        throw core::ParameterOrderViolation(
            "nearest_point: need a > b for the top-eigenvalue construction");
      const Matrix& Q = data.anchor_eig->Q;
      Vector d = Vector::Constant(s.n(), s.b());
      std::vector<int> subset(s.k());
      for (int i = 0; i < s.k(); ++i) {
        d[i] = s.a();
        subset[i] = i;
      }
      return make_point(model, A, core::subset_label(subset),
                        Q * d.asDiagonal() * Q.transpose());
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      if (!(s.a() > s.b()))
        throw core::ParameterOrderViolation(
            "nearest_point: need a > b for the top-eigenvalue construction");
      const int inner = s.inner_size();
      Matrix X_inner(inner, inner);
      std::vector<int> subset(s.inner_rank());
      if (inner > 0) {
        const Matrix& V = data.inner_eig->Q;
        Vector d = Vector::Constant(inner, s.b());
        for (int i = 0; i < s.inner_rank(); ++i) {
          d[i] = s.a();
          subset[i] = i;
        }
        X_inner = V * d.asDiagonal() * V.transpose();
      }
      return make_point(model, A, core::subset_label(subset),
                        models::schubert_embed(s, X_inner));
    }
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      const StiefelFactors f = stiefel_factors(s, A, data);
      const std::vector<int> all_plus(s.k(), +1);
      return make_point(model, A, core::signs_label(all_plus),
                        stiefel_point(f, all_plus));
    }
  }
  throw core::InvalidParameter("nearest_point: unknown model");
}

}  // namespace edd::stationary
