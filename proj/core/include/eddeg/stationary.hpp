#pragma once

// Closed-form enumeration of every stationary point of the squared-distance
// objective 0.5 * ||X - A||_F^2 on a model, independent certification via
// the tangent-space gradient residual, and the closed-form nearest point.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eddeg/matrix.hpp"
#include "eddeg/models.hpp"

namespace edd::stationary {

using core::Matrix;
using models::ModelHandle;

// Default tolerance scale (relative to 1 + ||input||_F) for the genericity
// predicates.
inline constexpr double kDefaultGapTol = 1e-8;

// One stationary point: its combinatorial label (assignment vector "1,2,1",
// subset "1,3" in 1-based positions, or sign vector "+-+"), the matrix, the
// objective value 0.5 * ||X - A||_F^2 and the certified gradient residual
// ||tangent_project(model, X, X - A)||_F.
struct StationaryPoint {
  std::string label;
  Matrix X;
  double objective = 0.0;
  double grad_residual = 0.0;
};

// Cached anchor factorizations produced by check_generic. Fields are filled
// per model: anchor_eig for flag/grassmann; inner_block and inner_eig for
// schubert; B-related factors plus the stationary spectrum (mu, c = sqrt(mu))
// for stiefel.
struct SpectralData {
  bool genericity_ok = false;

  // flag / grassmann
  std::optional<core::EigenPair> anchor_eig;

  // schubert: compression block of the anchor spanning W ∩ U-perp
  Matrix inner_block;
  std::optional<core::EigenPair> inner_eig;

  // stiefel
  std::optional<core::SvdData> aqb_svd;     // SVD of A * Q_B
  std::optional<core::EigenPair> stat_eig;  // eig (mu, R) of D^{1/2} V S^2 V^T D^{1/2}
  std::vector<double> c_values;             // sqrt(mu), decreasing
};

// 0.5 * sum (x_ij - a_ij)^2. Throws ShapeMismatch.
double objective(const Matrix& A, const Matrix& X);

// Validate the model's genericity predicate for the anchor and return the
// cached factorizations. Predicates: pairwise-distinct anchor eigenvalues
// (flag/grassmann), pairwise-distinct inner-block eigenvalues (schubert),
// distinct positive singular values of A*Q_B plus pairwise-distinct c values
// (stiefel). Throws DegenerateInput naming the violated predicate.
SpectralData check_generic(const ModelHandle& model, const Matrix& A,
                           double tol = kDefaultGapTol);

// All stationary points for a generic anchor, in canonical lexicographic
// label order. Counts: multinomial / C(n,k) / 2^k / C(m-k, l-k). Each point
// carries its objective and independently computed gradient residual.
std::vector<StationaryPoint> enumerate_stationary(
    const ModelHandle& model, const Matrix& A, double tol = kDefaultGapTol,
    std::uint64_t cap = core::kEnumerationCap);

// ||tangent_project(model, X, X - A)||_F: the stationarity certificate,
// independent of the enumeration formulas. Throws NotOnManifold.
double stationarity_residual(const ModelHandle& model, const Matrix& A,
                             const Matrix& X);

// Closed-form minimizer of the objective over the model: identity assignment
// on sorted spectra (flag; requires bs strictly decreasing), the larger
// eigenvalue a on the top-k eigenpositions (grassmann/schubert; requires
// a > b), the all-plus sign choice (stiefel; no ordering needed). Throws
// ParameterOrderViolation when the required ordering fails, DegenerateInput
// when the anchor is not generic.
StationaryPoint nearest_point(const ModelHandle& model, const Matrix& A,
                              double tol = kDefaultGapTol);

}  // namespace edd::stationary
