#pragma once

// Seeded random matrix generation. Gaussian variates are produced by a
// hand-rolled Box-Muller transform over std::mt19937_64 so the streams do not
// depend on the standard library's distribution implementations; runs with
// equal seeds are bitwise identical.

#include <cstdint>
#include <random>

#include "eddeg/matrix.hpp"

namespace edd::core {

// Stateless 64-bit mix used to derive independent sub-seeds (resampling
// attempts, per-start descent seeds).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic Gaussian stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return gen_(); }
  // Uniform on (0, 1].
  double uniform();
  // Standard normal (Box-Muller, second variate cached).
  double gaussian();

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// I.i.d. standard normal entries, then symmetrized to (M + M^T) / 2.
SymmetricMatrix random_symmetric(int n, std::uint64_t seed);

// I.i.d. standard normal n-by-k matrix.
RectMatrix random_rect(int n, int k, std::uint64_t seed);

// Haar-like orthogonal matrix: QR of a Gaussian matrix with the R diagonal
// made positive. ||Q^T Q - I||_F stays at machine precision.
Matrix random_orthogonal(int n, std::uint64_t seed);

}  // namespace edd::core
