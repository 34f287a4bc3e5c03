#include <doctest.h>

#include "herit/screening.hpp"
#include "test_util.hpp"

using namespace herit;

TEST_SUITE("screening") {

TEST_CASE("a column equal to Y ranks first") {
  const Index n = 20;
  Matrix z = testutil::random_matrix(n, 6, 41);
  Vector y = testutil::random_vector(n, 42);
  z.col(3) = y;
  ScreenResult r = sis_screen(y, z, 6);
  REQUIRE(!r.kept.empty());
  CHECK(r.kept[0] == 3);
}

TEST_CASE("Y = 0: all scores zero, tie-break keeps first indices") {
  Matrix z = testutil::random_matrix(10, 5, 43);
  Vector y = Vector::Zero(10);
  ScreenResult r = sis_screen(y, z, 3);
  REQUIRE(r.kept.size() == 3);
  CHECK(r.kept[0] == 0);
  CHECK(r.kept[1] == 1);
  CHECK(r.kept[2] == 2);
  for (Index i = 0; i < 3; ++i) CHECK(r.scores(i) == 0.0);
}

TEST_CASE("hand instance: scores (4,0,0)") {
  Vector y(4);
  y << 1, -1, 1, -1;
  Matrix z(4, 3);
  z.col(0) << 1, -1, 1, -1;
  z.col(1) << 1, 1, -1, -1;
  z.col(2) << 1, -1, -1, 1;
  ScreenResult all = sis_screen(y, z, 3);
  REQUIRE(all.kept.size() == 3);
  CHECK(all.kept[0] == 0);
  CHECK(all.kept[1] == 1);
  CHECK(all.kept[2] == 2);
  CHECK(all.scores(0) == doctest::Approx(4.0));
  CHECK(all.scores(1) == doctest::Approx(0.0));
  CHECK(all.scores(2) == doctest::Approx(0.0));
  ScreenResult one = sis_screen(y, z, 1);
  REQUIRE(one.kept.size() == 1);
  CHECK(one.kept[0] == 0);
}

TEST_CASE("ranking is invariant to positive rescaling of Y") {
  const Index n = 30;
  Matrix z = testutil::random_matrix(n, 12, 44);
  Vector y = testutil::random_vector(n, 45);
  ScreenResult a = sis_screen(y, z, 7);
  ScreenResult b = sis_screen(Vector(3.7 * y), z, 7);
  CHECK(a.kept == b.kept);
}

TEST_CASE("keep-all returns a permutation of all column indices") {
  Matrix z = testutil::random_matrix(25, 9, 46);
  Vector y = testutil::random_vector(25, 47);
  ScreenResult r = sis_screen(y, z, 9);
  REQUIRE(r.kept.size() == 9);
  std::vector<Index> sorted = r.kept;
  std::sort(sorted.begin(), sorted.end());
  for (Index j = 0; j < 9; ++j) CHECK(sorted[static_cast<std::size_t>(j)] == j);
  // Scores sorted descending.
  for (Index i = 1; i < 9; ++i) CHECK(r.scores(i) <= r.scores(i - 1));
}

TEST_CASE("N_max larger than N keeps everything; dimension mismatch throws") {
  Matrix z = testutil::random_matrix(8, 4, 48);
  Vector y = testutil::random_vector(8, 49);
  CHECK(sis_screen(y, z, 10).kept.size() == 4);
  Vector bad = testutil::random_vector(7, 50);
  CHECK_THROWS_AS(sis_screen(bad, z, 2), DimensionMismatch);
}

}  // TEST_SUITE
