#pragma once

// The four matrix models and their intrinsic geometry.
//
//   flag      isospectral symmetric matrices: spectrum b_1..b_{p+1} with
//             multiplicities s_j = k_j - k_{j-1} fixed by the flag signature
//   grassmann two-eigenvalue specialization: spectrum {a (x k), b (x n-k)}
//   stiefel   n-by-k matrices X with X^T X = B for a fixed SPD B
//   schubert  symmetric matrices Q * diag(a I_k, b I_{n-m}, X_inner) * Q^T
//             with X_inner ranging over an (l-k, m-k) two-eigenvalue model
//             and Q an adapted frame for a nested subspace pair
//
// Each model knows its stationary-point count for a generic anchor
// (ed_degree), its manifold dimension, its defining-equation residual,
// a seeded on-model sampler and the orthogonal projection onto its tangent
// space.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eddeg/combinatorics.hpp"
#include "eddeg/matrix.hpp"

namespace edd::models {

using core::Matrix;
using core::SymmetricMatrix;

// Symmetric matrices with fixed spectrum b_1..b_{p+1}, multiplicity of b_j
// equal to k_j - k_{j-1} (k_0 = 0, k_{p+1} = n).
class FlagSpec {
 public:
  // ks strictly increasing in [1, n); bs pairwise distinct, one per block.
  FlagSpec(int n, std::vector<int> ks, std::vector<double> bs);
  // Default eigenvalue ladder bs = (p, p-1, ..., 0).
  FlagSpec(int n, std::vector<int> ks);

  int n() const { return n_; }
  const std::vector<int>& ks() const { return ks_; }
  const std::vector<double>& bs() const { return bs_; }
  // Block multiplicities (k_1, k_2 - k_1, ..., n - k_p).
  const std::vector<int>& block_sizes() const { return sizes_; }

 private:
  int n_;
  std::vector<int> ks_;
  std::vector<double> bs_;
  std::vector<int> sizes_;
};

// Symmetric matrices with eigenvalue a of multiplicity k and b of
// multiplicity n-k. (1, 0) is the orthogonal-projector model.
class GrassmannSpec {
 public:
  GrassmannSpec(int n, int k, double a = 1.0, double b = 0.0);

  int n() const { return n_; }
  int k() const { return k_; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  int n_;
  int k_;
  double a_;
  double b_;
};

// n-by-k matrices X with X^T X = B, B symmetric positive definite.
class StiefelSpec {
 public:
  StiefelSpec(int n, int k, SymmetricMatrix B);
  // B = I.
  StiefelSpec(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  const Matrix& B() const { return B_; }
  // Cached eigendecomposition of B (decreasing eigenvalues, all > 0).
  const core::EigenPair& B_eig() const { return B_eig_; }

 private:
  int n_;
  int k_;
  Matrix B_;
  core::EigenPair B_eig_;
};

// Block-structured two-eigenvalue model attached to a nested subspace pair
// U (dim k) inside W (dim m) in R^n, carried by an adapted frame Q whose
// first k columns span U and next n-m columns span the complement of W.
// Points are Q * diag(a I_k, b I_{n-m}, X_inner) * Q^T with X_inner on the
// (l-k, m-k) two-eigenvalue model. k = 0 and/or m = n give the trivial
// nesting, which reduces to the plain Grassmann model.
class SchubertSpec {
 public:
  SchubertSpec(int n, int k, int l, int m, Matrix Q, double a = 1.0,
               double b = 0.0);
  // Q = I (coordinate subspaces).
  SchubertSpec(int n, int k, int l, int m, double a = 1.0, double b = 0.0);

  int n() const { return n_; }
  int k() const { return k_; }
  int l() const { return l_; }
  int m() const { return m_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const Matrix& Q() const { return Q_; }
  // Side length of the free inner block.
  int inner_size() const { return m_ - k_; }
  // Multiplicity of `a` inside the inner block.
  int inner_rank() const { return l_ - k_; }

 private:
  int n_, k_, l_, m_;
  double a_, b_;
  Matrix Q_;
};

enum class ModelKind { flag, grassmann, stiefel, schubert };

// Tagged union over the four validated model records.
class ModelHandle {
 public:
  ModelHandle(FlagSpec spec);            // NOLINT(google-explicit-constructor)
  ModelHandle(GrassmannSpec spec);       // NOLINT(google-explicit-constructor)
  ModelHandle(StiefelSpec spec);         // NOLINT(google-explicit-constructor)
  ModelHandle(SchubertSpec spec);        // NOLINT(google-explicit-constructor)

  ModelKind kind() const { return kind_; }
  const FlagSpec& flag() const { return std::get<FlagSpec>(spec_); }
  const GrassmannSpec& grassmann() const { return std::get<GrassmannSpec>(spec_); }
  const StiefelSpec& stiefel() const { return std::get<StiefelSpec>(spec_); }
  const SchubertSpec& schubert() const { return std::get<SchubertSpec>(spec_); }

  // Ambient shape of points (and anchors) for this model.
  Eigen::Index rows() const;
  Eigen::Index cols() const;
  bool symmetric_ambient() const { return kind_ != ModelKind::stiefel; }
  std::string kind_name() const;

 private:
  ModelKind kind_;
  std::variant<FlagSpec, GrassmannSpec, StiefelSpec, SchubertSpec> spec_;
};

// Number of stationary points of the distance function to a generic anchor:
// multinomial(n; block sizes) / C(n,k) / 2^k / C(m-k, l-k). Independent of
// bs, (a,b), B and Q. Throws Overflow past `cap`.
std::uint64_t ed_degree(const ModelHandle& model,
                        std::uint64_t cap = core::kEnumerationCap);

// Manifold dimension: (n^2 - sum s_j^2)/2, k(n-k), nk - k(k+1)/2,
// (l-k)(m-l).
int dimension(const ModelHandle& model);

// Max over the defining equations of the Frobenius residual, each normalized
// by (1 + ||X||_F)^d with d the equation's polynomial degree. Throws
// ShapeMismatch when X is not shaped (or not symmetric) for the model.
double membership_residual(const ModelHandle& model, const Matrix& X);

// Seeded on-model sample: V diag V^T over a random orthogonal V for the
// symmetric-ambient models, a random orthonormal frame times B^{1/2} for
// stiefel. membership_residual stays at machine precision.
Matrix random_point(const ModelHandle& model, std::uint64_t seed);

// Orthogonal projection of the ambient direction Z onto the tangent space at
// the on-model point X. Symmetric-ambient models: conjugate into an
// eigenbasis of X grouping equal model eigenvalues and zero the diagonal
// blocks. Stiefel: Z - X S with B S + S B = X^T Z + Z^T X solved in the
// eigenbasis of B. Throws NotOnManifold when membership_residual(X) exceeds
// `membership_tol`.
Matrix tangent_project(const ModelHandle& model, const Matrix& X,
                       const Matrix& Z, double membership_tol = 1e-6);

// Orthogonal frame adapted to a nested pair: columns [0, k) span the column
// space of U_basis, columns [k, k+n-m) span the orthogonal complement of the
// column space of W_basis, and the trailing m-k columns complete the basis
// (they span W intersected with the complement of U). Throws NotNested when
// span(U) is not contained in span(W) within 1e-8, RankDeficient when a
// basis has dependent columns.
Matrix adapted_frame(const Matrix& U_basis, const Matrix& W_basis);

// Assemble Q * diag(a I_k, b I_{n-m}, X_inner) * Q^T. X_inner must lie on
// the inner two-eigenvalue model (NotOnManifold otherwise).
Matrix schubert_embed(const SchubertSpec& spec, const Matrix& X_inner);

// Inner block of the adapted-frame compression of an embedded point
// (inverse of schubert_embed on on-model points).
Matrix schubert_extract_inner(const SchubertSpec& spec, const Matrix& X);

}  // namespace edd::models
