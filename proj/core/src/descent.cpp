#include "eddeg/descent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "eddeg/errors.hpp"
#include "eddeg/linalg.hpp"
#include "eddeg/rng.hpp"
#include "isospectral.hpp"

namespace edd::descent {

using core::Matrix;
using core::SymmetricMatrix;
using models::ModelKind;

namespace {

models::detail::SpectrumDesc model_spectrum(const ModelHandle& model) {
  switch (model.kind()) {
    case ModelKind::flag:
      return models::detail::sorted_spectrum(model.flag().bs(),
                                             model.flag().block_sizes());
    case ModelKind::grassmann: {
      const auto& s = model.grassmann();
      return models::detail::sorted_spectrum({s.a(), s.b()},
                                             {s.k(), s.n() - s.k()});
    }
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      return models::detail::sorted_spectrum(
          {s.a(), s.b()}, {s.inner_rank(), s.inner_size() - s.inner_rank()});
    }
    case ModelKind::stiefel:
      break;
  }
  throw core::InvalidParameter("model_spectrum: not a symmetric-ambient model");
}

// Thin QR with positive R diagonal (unique orthonormal factor).
Matrix orthonormalize(const Matrix& M) {
  const Eigen::Index n = M.rows(), k = M.cols();
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace

Matrix retract(const ModelHandle& model, const Matrix& target) {
  switch (model.kind()) {
    case ModelKind::flag:
    case ModelKind::grassmann:
      return models::detail::retract(target, model_spectrum(model));
    case ModelKind::schubert: {
      const auto& s = model.schubert();
      const int inner = s.inner_size();
      Matrix X_inner(inner, inner);
      if (inner > 0) {
        const Matrix block = models::schubert_extract_inner(s, target);
        X_inner = models::detail::retract(block, model_spectrum(model));
      }
      // Re-embedding restores the fixed blocks exactly.
      return models::schubert_embed(s, X_inner);
    }
    case ModelKind::stiefel: {
      const auto& s = model.stiefel();
      const core::EigenPair& be = s.B_eig();
      const Matrix inv_sqrtB = be.Q *
                               be.lambdas.cwiseSqrt().cwiseInverse().asDiagonal() *
                               be.Q.transpose();
      const Matrix sqrtB =
          be.Q * be.lambdas.cwiseSqrt().asDiagonal() * be.Q.transpose();
      return orthonormalize(target * inv_sqrtB) * sqrtB;
    }
  }
  throw core::InvalidParameter("retract: unknown model");
}

DescentResult riemannian_descent(const ModelHandle& model, const Matrix& A,
                                 const Matrix& X0,
                                 const DescentParams& params) {
  if (params.max_iters < 1 || params.shrink <= 0.0 || params.shrink >= 1.0 ||
      params.grad_tol <= 0.0 || params.step < 0.0)
    throw core::InvalidParameter("riemannian_descent: invalid parameters");

  const double scale = 1.0 + A.norm();
  const double step0 = params.step > 0.0 ? params.step : 0.1 / scale;
  const double tol = params.grad_tol * scale;
  // Below this predicted decrease the acceptance test is dominated by the
  // rounding noise of the retraction (absolute, ~eps·‖X‖·‖X−A‖), so the line
  // search is skipped and the plain gradient step taken; that step remains a
  // contraction near any nondegenerate stationary point.
  const double noise_floor =
      256.0 * std::numeric_limits<double>::epsilon() * scale * scale;

  DescentResult result;
  result.X = X0;
  if (params.record_objectives)
    result.objectives.push_back(stationary::objective(A, result.X));

  for (int it = 0; it < params.max_iters; ++it) {
    const Matrix G = models::tangent_project(model, result.X, result.X - A);
    result.grad_residual = G.norm();
    result.iterations = it;
    if (result.grad_residual <= tol) return result;

    if (step0 * G.squaredNorm() <= noise_floor) {
      result.X = retract(model, result.X - step0 * G);
      if (params.record_objectives)
        result.objectives.push_back(stationary::objective(A, result.X));
      continue;
    }

    // Backtracking on the objective: accept the first step that decreases it.
    // The decrease is evaluated as f(Xn) - f(X) = <Xn - X, (Xn + X)/2 - A>,
    // which stays accurate long after the difference of the two objective
    // values has drowned in rounding.
    double eta = step0;
    while (true) {
      const Matrix Xn = retract(model, result.X - eta * G);
      const double diff =
          ((Xn - result.X).array() * (0.5 * (Xn + result.X) - A).array())
              .sum();
      if (diff < 0.0) {
        result.X = Xn;
        break;
      }
      eta *= params.shrink;
      if (eta < 1e-18 * step0) {
        // No decrease in any direction the line search can reach; report the
        // current residual.
        std::ostringstream msg;
        msg << "riemannian_descent: line search stalled at gradient residual "
            << result.grad_residual;
        throw core::NoConvergence(msg.str(), result.grad_residual);
      }
    }
    if (params.record_objectives)
      result.objectives.push_back(stationary::objective(A, result.X));
  }

  const Matrix G = models::tangent_project(model, result.X, result.X - A);
  result.grad_residual = G.norm();
  result.iterations = params.max_iters;
  if (result.grad_residual <= tol) return result;
  std::ostringstream msg;
  msg << "riemannian_descent: iteration cap reached at gradient residual "
      << result.grad_residual;
  throw core::NoConvergence(msg.str(), result.grad_residual);
}

MultistartResult multistart(const ModelHandle& model, const Matrix& A,
                            int n_starts, std::uint64_t seed,
                            const DescentParams& params, double cluster_tol) {
  if (n_starts < 1)
    throw core::InvalidParameter("multistart: need n_starts >= 1");

  struct Converged {
    Matrix X;
    double grad_residual;
    double objective;
  };
  std::vector<Converged> runs;
  MultistartResult out;

  for (int i = 0; i < n_starts; ++i) {
    const Matrix X0 =
        models::random_point(model, core::derive_seed(seed, i));
    try {
      DescentResult r = riemannian_descent(model, A, X0, params);
      runs.push_back(Converged{std::move(r.X), r.grad_residual, 0.0});
      runs.back().objective = stationary::objective(A, runs.back().X);
      ++out.n_converged;
    } catch (const core::NoConvergence&) {
      ++out.n_dropped;
    }
  }

  // Single-linkage clustering via union-find at the relative threshold.
  const double threshold = cluster_tol * (1.0 + A.norm());
  std::vector<int> parent(runs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j)
      if ((runs[i].X - runs[j].X).norm() <= threshold)
        parent[find(static_cast<int>(j))] = find(static_cast<int>(i));

  // Representative per cluster: the member with the smallest re-certified
  // gradient residual.
  std::vector<int> rep_of_root(runs.size(), -1);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const int root = find(static_cast<int>(i));
    const double certified =
        stationary::stationarity_residual(model, A, runs[i].X);
    runs[i].grad_residual = certified;
    if (rep_of_root[root] < 0 ||
        certified < runs[rep_of_root[root]].grad_residual)
      rep_of_root[root] = static_cast<int>(i);
  }
  std::vector<int> reps;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (rep_of_root[find(static_cast<int>(i))] == static_cast<int>(i))
      reps.push_back(static_cast<int>(i));
  std::sort(reps.begin(), reps.end(), [&](int a, int b) {
    return runs[a].objective < runs[b].objective;
  });
  out.representatives.reserve(reps.size());
  for (int r : reps) out.representatives.push_back(std::move(runs[r].X));
  return out;
}

MatchReport match_points(
    const std::vector<Matrix>& found,
    const std::vector<stationary::StationaryPoint>& enumerated, double tol,
    double anchor_norm) {
  MatchReport report;
  report.n_found_clusters = static_cast<int>(found.size());
  report.n_expected = static_cast<int>(enumerated.size());

  struct Pair {
    double distance;
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(found.size() * enumerated.size());
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < enumerated.size(); ++j)
      pairs.push_back(Pair{(found[i] - enumerated[j].X).norm(),
                           static_cast<int>(i), static_cast<int>(j)});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  const double threshold = tol * (1.0 + anchor_norm);
  std::vector<bool> found_used(found.size(), false);
  std::vector<bool> enum_used(enumerated.size(), false);
  for (const Pair& p : pairs) {
    if (p.distance > threshold) break;
    if (found_used[p.i] || enum_used[p.j]) continue;
    found_used[p.i] = enum_used[p.j] = true;
    report.matched_labels.push_back(
        MatchPair{p.i, enumerated[p.j].label, p.distance});
    report.max_match_distance =
        std::max(report.max_match_distance, p.distance);
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    if (!found_used[i]) report.unmatched_clusters.push_back(static_cast<int>(i));
  return report;
}

}  // namespace edd::descent
