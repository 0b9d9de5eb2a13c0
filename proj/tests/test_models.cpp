#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <eddeg/errors.hpp>
#include <eddeg/linalg.hpp>
#include <eddeg/models.hpp>
#include <eddeg/rng.hpp>

using namespace edd;
using core::Matrix;
using core::SymmetricMatrix;

namespace {

Matrix spd(int k, std::uint64_t seed) {
  const Matrix M = core::random_rect(k + 2, k, seed).mat();
  return M.transpose() * M + 0.5 * Matrix::Identity(k, k);
}

const std::vector<models::ModelHandle>& sample_models() {
  static const std::vector<models::ModelHandle> handles = {
      models::FlagSpec(4, {1, 2}, {3.0, 1.5, 0.5}),
      models::FlagSpec(5, {2, 3}),
      models::GrassmannSpec(4, 2),
      models::GrassmannSpec(5, 2, 2.0, -1.0),
      models::StiefelSpec(4, 2, SymmetricMatrix(spd(2, 17))),
      models::StiefelSpec(3, 3),
      models::SchubertSpec(6, 1, 2, 4, core::random_orthogonal(6, 8), 2.0, 0.0),
      models::SchubertSpec(5, 0, 2, 5),
  };
  return handles;
}

}  // namespace

TEST_CASE("parameter validation rejects malformed specs") {
  CHECK_THROWS_AS(models::FlagSpec(4, {2, 1}, {2, 1, 0}), core::InvalidParameter);
  CHECK_THROWS_AS(models::FlagSpec(4, {1, 4}, {2, 1, 0}), core::InvalidParameter);
  CHECK_THROWS_AS(models::FlagSpec(4, {1, 2}, {2, 1}), core::InvalidParameter);
  CHECK_THROWS_AS(models::FlagSpec(4, {1, 2}, {1, 1, 0}), core::InvalidParameter);
  CHECK_THROWS_AS(models::GrassmannSpec(4, 0), core::InvalidParameter);
  CHECK_THROWS_AS(models::GrassmannSpec(4, 4), core::InvalidParameter);
  CHECK_THROWS_AS(models::GrassmannSpec(4, 2, 1.0, 1.0), core::InvalidParameter);
  CHECK_THROWS_AS(models::StiefelSpec(2, 3), core::InvalidParameter);
  // indefinite Gram target
  Matrix B = Matrix::Identity(2, 2);
  B(1, 1) = -1.0;
  CHECK_THROWS_AS(models::StiefelSpec(4, 2, SymmetricMatrix(B)),
                  core::InvalidParameter);
  CHECK_THROWS_AS(models::SchubertSpec(5, 2, 1, 4), core::InvalidParameter);
  CHECK_THROWS_AS(models::SchubertSpec(5, 1, 3, 2), core::InvalidParameter);
  CHECK_THROWS_AS(models::SchubertSpec(5, 1, 2, 6), core::InvalidParameter);
  CHECK_THROWS_AS(models::SchubertSpec(5, 1, 2, 4, Matrix::Ones(5, 5)),
                  core::InvalidParameter);
  CHECK_THROWS_AS(models::SchubertSpec(5, 1, 2, 4, 1.0, 1.0),
                  core::InvalidParameter);
}

TEST_CASE("default flag spectrum counts down from the number of blocks") {
  const models::FlagSpec f(5, {2, 3});
  REQUIRE(f.bs().size() == 3);
  CHECK(f.bs()[0] == 2.0);
  CHECK(f.bs()[1] == 1.0);
  CHECK(f.bs()[2] == 0.0);
  CHECK(f.block_sizes() == std::vector<int>{2, 1, 2});
}

TEST_CASE("stationary-point counts follow the product formulas") {
  CHECK(models::ed_degree(models::FlagSpec(4, {1, 2}), 1u << 20) == 12);
  CHECK(models::ed_degree(models::FlagSpec(6, {1, 3}), 1u << 20) == 60);
  CHECK(models::ed_degree(models::GrassmannSpec(8, 3), 1u << 20) == 56);
  CHECK(models::ed_degree(models::GrassmannSpec(5, 2), 1u << 20) == 10);
  CHECK(models::ed_degree(models::StiefelSpec(6, 4), 1u << 20) == 16);
  CHECK(models::ed_degree(models::StiefelSpec(2, 1), 1u << 20) == 2);
  CHECK(models::ed_degree(models::SchubertSpec(7, 1, 3, 5), 1u << 20) == 6);
  CHECK(models::ed_degree(models::SchubertSpec(6, 1, 2, 4), 1u << 20) == 3);
  // nesting with l = k pins the subspace completely
  CHECK(models::ed_degree(models::SchubertSpec(6, 2, 2, 4), 1u << 20) == 1);
  // the count ignores the model parameters, only the shape enters
  CHECK(models::ed_degree(models::GrassmannSpec(8, 3, 9.0, -2.0), 1u << 20) ==
        56);
  CHECK(models::ed_degree(models::StiefelSpec(6, 4, SymmetricMatrix(spd(4, 3))),
                          1u << 20) == 16);
}

TEST_CASE("count respects the enumeration cap") {
  CHECK_THROWS_AS(models::ed_degree(models::GrassmannSpec(8, 3), 10),
                  core::Overflow);
}

TEST_CASE("manifold dimensions") {
  CHECK(models::dimension(models::GrassmannSpec(4, 2)) == 4);
  CHECK(models::dimension(models::GrassmannSpec(5, 2)) == 6);
  CHECK(models::dimension(models::FlagSpec(4, {1, 2})) == 5);
  CHECK(models::dimension(models::StiefelSpec(5, 2)) == 7);
  CHECK(models::dimension(models::StiefelSpec(3, 3)) == 3);
  CHECK(models::dimension(models::SchubertSpec(6, 1, 2, 4)) == 2);
  // trivial nesting recovers the full-subspace dimension
  CHECK(models::dimension(models::SchubertSpec(5, 0, 2, 5)) ==
        models::dimension(models::GrassmannSpec(5, 2)));
}

TEST_CASE("random_point lands on the model and is reproducible") {
  for (const auto& model : sample_models()) {
    const Matrix X = models::random_point(model, 2024);
    CHECK(models::membership_residual(model, X) < 1e-10);
    CHECK((X - models::random_point(model, 2024)).norm() == 0.0);
    CHECK((X - models::random_point(model, 2025)).norm() > 1e-6);
  }
}

TEST_CASE("membership_residual flags off-model points") {
  const models::ModelHandle gr{models::GrassmannSpec(3, 1)};
  Matrix P = Matrix::Zero(3, 3);
  P(0, 0) = 1.0;
  CHECK(models::membership_residual(gr, P) < 1e-15);
  P(0, 0) = 0.9;  // no longer idempotent
  CHECK(models::membership_residual(gr, P) > 1e-3);

  const models::ModelHandle st{models::StiefelSpec(3, 2)};
  Matrix X = Matrix::Identity(3, 2);
  CHECK(models::membership_residual(st, X) < 1e-15);
  X(0, 0) = 1.1;
  CHECK(models::membership_residual(st, X) > 1e-3);
}

TEST_CASE("tangent_project is an orthogonal projector") {
  for (const auto& model : sample_models()) {
    const Matrix X = models::random_point(model, 11);
    Matrix Z, W;
    if (model.kind() == models::ModelKind::stiefel) {
      Z = core::random_rect(model.rows(), model.cols(), 1).mat();
      W = core::random_rect(model.rows(), model.cols(), 2).mat();
    } else {
      Z = core::random_symmetric(model.rows(), 1).mat();
      W = core::random_symmetric(model.rows(), 2).mat();
    }
    const Matrix PZ = models::tangent_project(model, X, Z);
    const Matrix PPZ = models::tangent_project(model, X, PZ);
    const Matrix PW = models::tangent_project(model, X, W);
    CHECK((PZ - PPZ).norm() < 1e-10 * (1.0 + Z.norm()));
    // self-adjoint projector: the rejected part is orthogonal to the range
    const double cross = ((Z - PZ).array() * PW.array()).sum();
    CHECK(std::abs(cross) < 1e-10 * (1.0 + Z.norm()) * (1.0 + W.norm()));
  }
}

TEST_CASE("symmetric-model tangents are orthogonal to the commutant") {
  // powers of X commute with X, hence span normal directions
  for (const auto& model : sample_models()) {
    if (model.kind() == models::ModelKind::stiefel) continue;
    const int n = model.rows();
    const Matrix X = models::random_point(model, 3);
    const Matrix Z = core::random_symmetric(n, 4).mat();
    const Matrix PZ = models::tangent_project(model, X, Z);
    Matrix power = Matrix::Identity(n, n);
    for (int j = 0; j < n; ++j) {
      CHECK(std::abs((PZ.array() * power.array()).sum()) <
            1e-8 * (1.0 + Z.norm()) * (1.0 + power.norm()));
      power = power * X;
    }
  }
}

TEST_CASE("stiefel tangents satisfy the differentiated Gram constraint") {
  const models::ModelHandle model{
      models::StiefelSpec(5, 3, SymmetricMatrix(spd(3, 23)))};
  const Matrix X = models::random_point(model, 6);
  const Matrix Z = core::random_rect(5, 3, 7).mat();
  const Matrix T = models::tangent_project(model, X, Z);
  CHECK((X.transpose() * T + T.transpose() * X).norm() < 1e-10 * (1.0 + Z.norm()));
}

TEST_CASE("tangent_project rejects points far from the model") {
  const models::ModelHandle gr{models::GrassmannSpec(3, 1)};
  CHECK_THROWS_AS(
      models::tangent_project(gr, Matrix::Identity(3, 3), Matrix::Zero(3, 3)),
      core::NotOnManifold);
}

TEST_CASE("adapted_frame aligns nested subspaces") {
  const Matrix Q = core::random_orthogonal(6, 15);
  const Matrix U = Q.leftCols(2);
  const Matrix W = Q.leftCols(4);
  const Matrix F = models::adapted_frame(U, W);
  REQUIRE(F.rows() == 6);
  REQUIRE(F.cols() == 6);
  CHECK((F.transpose() * F - Matrix::Identity(6, 6)).norm() < 1e-12);
  // leading block spans the inner subspace
  CHECK((F.leftCols(2) * F.leftCols(2).transpose() - U * U.transpose()).norm() <
        1e-12);
  // the next block spans the orthogonal complement of the outer subspace
  const Matrix Wp = F.middleCols(2, 2);
  CHECK((W.transpose() * Wp).norm() < 1e-12);

  CHECK_THROWS_AS(models::adapted_frame(core::random_rect(6, 2, 1).mat(),
                                        core::random_rect(6, 3, 2).mat()),
                  core::NotNested);
  Matrix dependent(6, 2);
  dependent.col(0) = U.col(0);
  dependent.col(1) = U.col(0);
  CHECK_THROWS_AS(models::adapted_frame(dependent, W), core::RankDeficient);
}

TEST_CASE("adapted_frame handles empty inner and full outer subspaces") {
  const Matrix none(5, 0);
  const Matrix all = Matrix::Identity(5, 5);
  const Matrix F = models::adapted_frame(none, all);
  CHECK((F.transpose() * F - Matrix::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("schubert embedding round-trips and validates the inner block") {
  const models::SchubertSpec spec(6, 1, 2, 4, core::random_orthogonal(6, 21),
                                  3.0, 1.0);
  const models::ModelHandle inner{
      models::GrassmannSpec(spec.inner_size(), spec.inner_rank(), 3.0, 1.0)};
  const Matrix Xi = models::random_point(inner, 77);
  const Matrix X = models::schubert_embed(spec, Xi);
  CHECK(models::membership_residual(models::ModelHandle(spec), X) < 1e-10);
  CHECK((models::schubert_extract_inner(spec, X) - Xi).norm() < 1e-12);
  CHECK_THROWS_AS(models::schubert_embed(spec, Matrix::Identity(3, 3)),
                  core::NotOnManifold);
}

TEST_CASE("schubert points are quadratic-model members of the big Grassmannian") {
  const models::SchubertSpec spec(6, 1, 3, 5, core::random_orthogonal(6, 33),
                                  1.0, 0.0);
  const models::ModelHandle handle{spec};
  const Matrix X = models::random_point(handle, 5);
  const models::ModelHandle big{models::GrassmannSpec(6, 3, 1.0, 0.0)};
  CHECK(models::membership_residual(big, X) < 1e-10);
}
