#pragma once

// Dense matrix value types with shape/symmetry contracts checked at
// construction, plus the factorization records produced by linalg.hpp.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "eddeg/errors.hpp"

namespace edd::core {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Square real matrix, canonically symmetrized on construction. Inputs whose
// asymmetry exceeds 1e-12 * (1 + max|entry|) are rejected.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix m);

  const Matrix& mat() const { return m_; }
  Eigen::Index n() const { return m_.rows(); }

 private:
  Matrix m_;
};

// n-by-k real matrix with k <= n.
class RectMatrix {
 public:
  explicit RectMatrix(Matrix m);

  const Matrix& mat() const { return m_; }
  Eigen::Index n() const { return m_.rows(); }
  Eigen::Index k() const { return m_.cols(); }

 private:
  Matrix m_;
};

// Orthogonal eigendecomposition S = Q * diag(lambdas) * Q^T with eigenvalues
// sorted in decreasing order. `gap` is the smallest consecutive difference
// (+infinity for 1x1 inputs).
struct EigenPair {
  Matrix Q;
  Vector lambdas;
  double gap = 0.0;
};

// Full singular value decomposition A = U * [diag(sigmas); 0] * V^T with
// U n-by-n, V k-by-k and sigmas nonnegative decreasing.
struct SvdData {
  Matrix U;
  Matrix V;
  Vector sigmas;
};

// Length-n label vector assigning each position a block id in {1, ..., p+1};
// block id j occurs exactly block_sizes[j-1] times.
struct BlockAssignment {
  std::vector<int> labels;
  std::vector<int> block_sizes;

  // Canonical rendering, e.g. "1,2,1".
  std::string to_string() const;
};

}  // namespace edd::core
