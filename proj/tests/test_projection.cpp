#include <doctest.h>

#include <cmath>

#include "herit/projection.hpp"
#include "test_util.hpp"

using namespace herit;

TEST_SUITE("projection") {

TEST_CASE("ones column: rank 1, projected norm equals centered norm") {
  const Index n = 4;
  Matrix x = Matrix::Ones(n, 1);
  Projector p = build_projector(x);
  CHECK(p.rank == 1);
  CHECK(p.basis.cols() == n - 1);
  Vector y(n);
  y << 2.0, -1.0, 0.5, 3.0;
  Matrix z = Matrix::Zero(n, 0);
  auto [yt, zt] = project(p, y, z);
  const Vector centered = y.array() - y.mean();
  CHECK(yt.squaredNorm() == doctest::Approx(centered.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("duplicate columns collapse to rank 1") {
  const Index n = 6;
  Matrix x(n, 2);
  x.col(0) = testutil::random_vector(n, 3);
  x.col(1) = x.col(0);
  Projector p = build_projector(x);
  CHECK(p.rank == 1);
  // Same projector as the single column: compare AA'.
  Projector single = build_projector(Matrix(x.col(0)));
  Matrix pa = p.basis * p.basis.transpose();
  Matrix pb = single.basis * single.basis.transpose();
  CHECK((pa - pb).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("projector annihilates the design: ||A'Xv|| tiny for random v") {
  const Index n = 10, pcols = 3;
  Matrix x = testutil::random_matrix(n, pcols, 17);
  Projector p = build_projector(x);
  CHECK(p.rank == pcols);
  auto stream = rng::substream(18, rng::Purpose::Generic, 3);
  for (int k = 0; k < 100; ++k) {
    Vector v(pcols);
    for (Index i = 0; i < pcols; ++i) v(i) = stream.normal();
    const Vector xv = x * v;
    CHECK((p.basis.transpose() * xv).norm() <= 1e-8 * std::max(xv.norm(), 1.0));
  }
}

TEST_CASE("projector basis is orthonormal and reproduces P_X") {
  const Index n = 12, pcols = 4;
  Matrix x = testutil::random_matrix(n, pcols, 23);
  Projector p = build_projector(x);
  Matrix gram = p.basis.transpose() * p.basis;
  CHECK((gram - Matrix::Identity(n - p.rank, n - p.rank)).cwiseAbs().maxCoeff() <= 1e-10);
  // AA' = I - X(X'X)^{-1}X' for full-rank X.
  Matrix px = Matrix::Identity(n, n) -
              x * (x.transpose() * x).ldlt().solve(x.transpose());
  CHECK((p.basis * p.basis.transpose() - px).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("Y in Im(X) projects to zero") {
  const Index n = 9, pcols = 2;
  Matrix x = testutil::random_matrix(n, pcols, 29);
  Vector beta(pcols);
  beta << 1.5, -0.3;
  Vector y = x * beta;
  Projector p = build_projector(x);
  Matrix z = testutil::random_matrix(n, 5, 30);
  auto [yt, zt] = project(p, y, z);
  CHECK(yt.norm() <= 1e-8 * y.norm());
  CHECK(zt.rows() == n - pcols);
  CHECK(zt.cols() == 5);
}

TEST_CASE("projected squared norm equals Y' P_X Y") {
  const Index n = 15, pcols = 3;
  Matrix x = testutil::random_matrix(n, pcols, 31);
  Vector y = testutil::random_vector(n, 32);
  Projector p = build_projector(x);
  Matrix z(n, 0);
  auto [yt, zt] = project(p, y, z);
  Matrix px = Matrix::Identity(n, n) -
              x * (x.transpose() * x).ldlt().solve(x.transpose());
  const double expected = y.dot(px * y);
  CHECK(yt.squaredNorm() == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("square full-rank design is rejected") {
  Matrix x = testutil::random_matrix(5, 5, 33);
  CHECK_THROWS_AS(build_projector(x), DegenerateDesign);
}

TEST_CASE("build_projector is deterministic") {
  Matrix x = testutil::random_matrix(8, 2, 34);
  Projector a = build_projector(x);
  Projector b = build_projector(x);
  CHECK((a.basis.array() == b.basis.array()).all());
}

}  // TEST_SUITE
