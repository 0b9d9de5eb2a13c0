#include "eddeg/rng.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "eddeg/errors.hpp"

namespace edd::core {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) {
  // Pre-mix the seed so adjacent user seeds land in unrelated mt19937_64
  // streams; single-value mt19937_64 seeding itself is fully standardized.
  std::uint64_t state = seed;
  gen_ = std::mt19937_64(splitmix64(state));
}

double Rng::uniform() {
  // 53-bit mantissa, shifted into (0, 1].
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

SymmetricMatrix random_symmetric(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("random_symmetric: need n >= 1");
  Rng rng(seed);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
  return SymmetricMatrix((m + m.transpose()) / 2.0);
}

RectMatrix random_rect(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1 || k > n)
    throw InvalidParameter("random_rect: need 1 <= k <= n");
  Rng rng(seed);
  Matrix m(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = rng.gaussian();
  return RectMatrix(std::move(m));
}

Matrix random_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("random_orthogonal: need n >= 1");
  Rng rng(seed);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Make the factorization unique (R diagonal positive) so the distribution
  // is Haar and the output deterministic.
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace edd::core
