#pragma once

// Internal helpers shared by the symmetric-ambient models (flag, grassmann,
// schubert-inner): all three are isospectral families "spectrum = bs with
// multiplicities sizes", differing only in the spectrum they fix.

#include <vector>

#include "eddeg/matrix.hpp"

namespace edd::models::detail {

using core::Matrix;

// (b_j, s_j) pairs sorted by b decreasing. Zero sizes are kept (they make
// the two-eigenvalue edge cases r = 0 and r = size uniform).
struct SpectrumDesc {
  std::vector<double> bs;  // decreasing
  std::vector<int> sizes;  // aligned with bs
};
SpectrumDesc sorted_spectrum(const std::vector<double>& bs,
                             const std::vector<int>& sizes);

// Max of the normalized defining-equation residuals:
//   || prod_j (X - b_j I) ||_F / (1 + ||X||_F)^(#factors)   and
//   | tr X - sum_j s_j b_j | / (1 + ||X||_F).
// X must already be symmetric.
double membership(const Matrix& X, const SpectrumDesc& sd);

// Conjugate Z into an eigenbasis of X whose eigenvalues are grouped by
// nearest model eigenvalue, zero the diagonal blocks (the commutant/normal
// directions) and conjugate back. Throws NotOnManifold when the eigenvalue
// groups of X do not have the model multiplicities.
Matrix tangent_project(const Matrix& X, const SpectrumDesc& sd,
                       const Matrix& Z);

// Metric projection onto the family: eigendecompose the symmetric part of T
// and reassign the model eigenvalues by rank order (largest eigenvalue gets
// the largest b).
Matrix retract(const Matrix& T, const SpectrumDesc& sd);

// diag(bs expanded by sizes) as a vector, decreasing.
core::Vector expanded_spectrum(const SpectrumDesc& sd);

}  // namespace edd::models::detail
