#pragma once

// Verification oracle independent of the closed-form enumeration: projected
// Riemannian gradient descent with model-specific retractions, multistart
// clustering, and matching of rediscovered points against an enumerated set.

#include <cstdint>
#include <string>
#include <vector>

#include "eddeg/matrix.hpp"
#include "eddeg/models.hpp"
#include "eddeg/stationary.hpp"

namespace edd::descent {

using core::Matrix;
using models::ModelHandle;

struct DescentParams {
  int max_iters = 5000;
  // Initial backtracking step; 0 means the automatic 0.1 / (1 + ||A||_F).
  double step = 0.0;
  // Backtracking shrink factor in (0, 1).
  double shrink = 0.5;
  // Convergence threshold on the gradient residual, relative to 1 + ||A||_F.
  double grad_tol = 1e-9;
  // When true, DescentResult records the objective after each accepted step.
  bool record_objectives = false;
};

struct DescentResult {
  Matrix X;
  double grad_residual = 0.0;
  int iterations = 0;
  std::vector<double> objectives;  // filled when record_objectives is set
};

struct MultistartResult {
  // One representative per cluster (the member with the smallest certified
  // gradient residual), sorted by objective ascending.
  std::vector<Matrix> representatives;
  int n_converged = 0;
  int n_dropped = 0;
};

struct MatchPair {
  int cluster = 0;        // index into the found list
  std::string label;      // matched enumerated label
  double distance = 0.0;  // Frobenius distance of the pair
};

// Result of greedy nearest-pair matching between rediscovered cluster
// representatives and an enumerated stationary set.
struct MatchReport {
  int n_found_clusters = 0;
  int n_expected = 0;
  std::vector<MatchPair> matched_labels;
  double max_match_distance = 0.0;
  std::vector<int> unmatched_clusters;

  bool complete() const {
    return static_cast<int>(matched_labels.size()) == n_expected;
  }
};

// Map an ambient step target back onto the model: eigenvalue reassignment by
// rank order against the decreasing-sorted model spectrum (symmetric-ambient
// models; the metric projection applied locally), or thin-QR
// re-orthonormalization of T * B^{-1/2} followed by * B^{1/2} (stiefel).
// retract(T) = T holds to machine precision for on-model T.
Matrix retract(const ModelHandle& model, const Matrix& target);

// Projected descent X <- retract(X - eta * G), G = tangent_project(X, X - A),
// with backtracking on the objective (accepted steps strictly decrease it).
// Returns once the gradient residual drops to grad_tol * (1 + ||A||_F);
// throws NoConvergence (carrying the final residual) at the iteration cap.
DescentResult riemannian_descent(const ModelHandle& model, const Matrix& A,
                                 const Matrix& X0,
                                 const DescentParams& params = {});

// Descend from n_starts seeded random on-model points (per-start seeds are
// derived from `seed`), drop non-converged runs, single-linkage cluster the
// converged iterates at cluster_tol * (1 + ||A||_F) and return one certified
// representative per cluster.
MultistartResult multistart(const ModelHandle& model, const Matrix& A,
                            int n_starts, std::uint64_t seed,
                            const DescentParams& params = {},
                            double cluster_tol = 1e-4);

// Greedy nearest-pair matching under Frobenius distance; a pair matches when
// its distance is at most tol * (1 + anchor_norm). Each found cluster matches
// at most one enumerated label and vice versa.
MatchReport match_points(const std::vector<Matrix>& found,
                         const std::vector<stationary::StationaryPoint>& enumerated,
                         double tol, double anchor_norm);

}  // namespace edd::descent
