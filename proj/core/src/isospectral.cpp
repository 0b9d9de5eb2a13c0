#include "isospectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "eddeg/errors.hpp"
#include "eddeg/linalg.hpp"

namespace edd::models::detail {

using core::SymmetricMatrix;
using core::Vector;

SpectrumDesc sorted_spectrum(const std::vector<double>& bs,
                             const std::vector<int>& sizes) {
  std::vector<std::size_t> order(bs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return bs[i] > bs[j]; });
  SpectrumDesc sd;
  sd.bs.reserve(bs.size());
  sd.sizes.reserve(bs.size());
  for (std::size_t idx : order) {
    sd.bs.push_back(bs[idx]);
    sd.sizes.push_back(sizes[idx]);
  }
  return sd;
}

Vector expanded_spectrum(const SpectrumDesc& sd) {
  const int n = std::accumulate(sd.sizes.begin(), sd.sizes.end(), 0);
  Vector d(n);
  int pos = 0;
  for (std::size_t j = 0; j < sd.bs.size(); ++j)
    for (int i = 0; i < sd.sizes[j]; ++i) d[pos++] = sd.bs[j];
  return d;
}

double membership(const Matrix& X, const SpectrumDesc& sd) {
  const double scale = 1.0 + X.norm();

  Matrix prod = Matrix::Identity(X.rows(), X.cols());
  double poly_scale = 1.0;
  for (double b : sd.bs) {
    prod = prod * (X - b * Matrix::Identity(X.rows(), X.cols()));
    poly_scale *= scale;
  }
  const double poly_residual = prod.norm() / poly_scale;

  double target_trace = 0.0;
  for (std::size_t j = 0; j < sd.bs.size(); ++j)
    target_trace += sd.bs[j] * sd.sizes[j];
  const double trace_residual = std::abs(X.trace() - target_trace) / scale;

  return std::max(poly_residual, trace_residual);
}

namespace {

// Eigendecompose X (descending) and report the group boundary offsets for
// the model spectrum: eigenvalue i belongs to the nearest b_j. Throws
// NotOnManifold if the resulting group sizes disagree with the model.
struct Grouped {
  core::EigenPair eig;
  std::vector<int> offsets;  // size p+2: group j spans [offsets[j], offsets[j+1])
};

Grouped group_by_spectrum(const Matrix& X, const SpectrumDesc& sd) {
  Grouped g{core::sym_eig(SymmetricMatrix(X), 0.0), {0}};
  const int n = static_cast<int>(g.eig.lambdas.size());
  int pos = 0;
  for (std::size_t j = 0; j < sd.bs.size(); ++j) {
    int count = 0;
    while (pos < n) {
      const double lambda = g.eig.lambdas[pos];
      // Nearest model eigenvalue wins; the spectrum is sorted decreasing on
      // both sides so groups are contiguous.
      double best = std::abs(lambda - sd.bs[j]);
      bool nearest_is_j = true;
      for (std::size_t jj = 0; jj < sd.bs.size(); ++jj) {
        if (std::abs(lambda - sd.bs[jj]) < best) {
          best = std::abs(lambda - sd.bs[jj]);
          nearest_is_j = (jj == j);
        }
      }
      if (!nearest_is_j) break;
      ++count;
      ++pos;
    }
    if (count != sd.sizes[j]) {
      std::ostringstream msg;
      msg << "point is not on the model: eigenvalue group near " << sd.bs[j]
          << " has size " << count << ", expected " << sd.sizes[j];
      throw core::NotOnManifold(msg.str());
    }
    g.offsets.push_back(pos);
  }
  if (pos != n)
    throw core::NotOnManifold(
        "point is not on the model: spectrum extends past the model range");
  return g;
}

}  // namespace

Matrix tangent_project(const Matrix& X, const SpectrumDesc& sd,
                       const Matrix& Z) {
  const Grouped g = group_by_spectrum(X, sd);
  const Matrix& V = g.eig.Q;
  Matrix W = V.transpose() * ((Z + Z.transpose()) / 2.0) * V;
  for (std::size_t j = 0; j + 1 < g.offsets.size(); ++j) {
    const int begin = g.offsets[j];
    const int size = g.offsets[j + 1] - begin;
    W.block(begin, begin, size, size).setZero();
  }
  return V * W * V.transpose();
}

Matrix retract(const Matrix& T, const SpectrumDesc& sd) {
  const core::EigenPair eig =
      core::sym_eig(SymmetricMatrix((T + T.transpose()) / 2.0), 0.0);
  return eig.Q * expanded_spectrum(sd).asDiagonal() * eig.Q.transpose();
}

}  // namespace edd::models::detail
