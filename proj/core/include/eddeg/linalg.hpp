#pragma once

// Sorted symmetric eigendecomposition and full SVD with deterministic sign
// conventions, the substrate for every closed-form construction downstream.

#include "eddeg/matrix.hpp"

namespace edd::core {

// Eigendecomposition with eigenvalues sorted in decreasing order and each
// eigenvector column sign-fixed (first entry of significant magnitude made
// positive). Throws DegenerateSpectrum when the smallest consecutive gap is
// below gap_tol * (1 + ||S||_F); pass gap_tol = 0 to accept any spectrum
// (used when decomposing on-model points, whose spectra repeat by design).
EigenPair sym_eig(const SymmetricMatrix& S, double gap_tol);

// Full SVD A = U * [diag(sigmas); 0] * V^T (U is n-by-n, V is k-by-k,
// sigmas decreasing). Columns i < k of U are sign-fixed with the
// compensating flip applied to V's column i, so the product is preserved;
// the trailing null-space columns of U are sign-fixed independently.
SvdData full_svd(const RectMatrix& A);

// Symmetric square root of a positive semidefinite matrix (eigenvalue
// clamping at zero guards tiny negative round-off).
Matrix spd_sqrt(const SymmetricMatrix& S);

}  // namespace edd::core
