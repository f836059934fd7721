#include "doctest.h"
#include "ian/distance_matrix.hpp"
#include "ian/rng.hpp"

using namespace ian;

TEST_CASE("pairwise distances match the direct norm") {
  Rng rng(3);
  Matrix pts(20, 3);
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 3; ++j) pts(i, j) = rng.uniform(-1, 1);
  DistanceMatrix d = pairwise_distances(pts);
  REQUIRE(d.size() == 20);
  for (Index i = 0; i < 20; ++i) {
    CHECK(d(i, i) == 0);
    for (Index j = 0; j < 20; ++j) {
      CHECK(d(i, j) == d(j, i));
      CHECK(d(i, j) == doctest::Approx((pts.row(i) - pts.row(j)).norm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("construction validates shape and symmetry") {
  Matrix ok(2, 2);
  ok << 0, 1, 1, 0;
  CHECK_NOTHROW(DistanceMatrix{ok});

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(DistanceMatrix{rect}, std::invalid_argument);

  Matrix diag(2, 2);
  diag << 0.5, 1, 1, 0;
  CHECK_THROWS_AS(DistanceMatrix{diag}, std::invalid_argument);

  Matrix neg(2, 2);
  neg << 0, -1, -1, 0;
  CHECK_THROWS_AS(DistanceMatrix{neg}, std::invalid_argument);

  Matrix asym(3, 3);
  asym << 0, 1, 2, 1, 0, 3, 2, 3.5, 0;
  CHECK_THROWS_AS(DistanceMatrix{asym}, std::invalid_argument);

  Matrix nan(2, 2);
  nan << 0, std::numeric_limits<Scalar>::quiet_NaN(), 1, 0;
  CHECK_THROWS_AS(DistanceMatrix{nan}, std::invalid_argument);
}

TEST_CASE("tiny asymmetry is repaired exactly") {
  Matrix m(2, 2);
  m << 0, 1.0, 1.0 + 1e-15, 0;
  DistanceMatrix d(m);
  CHECK(d(0, 1) == d(1, 0));
}

TEST_CASE("neighbor order sorts each row by distance with index ties") {
  Matrix pts(5, 1);
  pts << 0, 10, 1, 1, 3;  // nodes 2 and 3 tie as seen from 0
  DistanceMatrix d = pairwise_distances(pts);
  NeighborOrder order(d);
  REQUIRE(order.size() == 5);
  const auto& row0 = order.row(0);
  REQUIRE(row0.size() == 4);
  CHECK(row0[0] == 2);  // tie broken by index
  CHECK(row0[1] == 3);
  CHECK(row0[2] == 4);
  CHECK(row0[3] == 1);
  for (Index i = 0; i < 5; ++i) {
    const auto& row = order.row(i);
    for (std::size_t k = 1; k < row.size(); ++k)
      CHECK(d(i, row[k - 1]) <= d(i, row[k]));
  }
}
