#include <set>

#include "doctest.h"
#include "ian/point_cloud.hpp"

using namespace ian;

namespace {

DatasetSpec spec_of(const std::string& kind,
                    std::initializer_list<std::pair<std::string, Scalar>> params = {}) {
  DatasetSpec s;
  s.kind = dataset_kind_from_string(kind);
  for (auto& kv : params) s.params[kv.first] = kv.second;
  return s;
}

}  // namespace

TEST_CASE("generation is deterministic in (spec, seed)") {
  for (const char* kind : {"grid", "jittered_grid", "ball", "stingray", "spiral", "bent_plane",
                           "gauss_clusters", "swiss_cheese", "horseshoe"}) {
    PointCloud a = generate(spec_of(kind), 7);
    PointCloud b = generate(spec_of(kind), 7);
    REQUIRE(a.points.rows() == b.points.rows());
    CHECK(a.points == b.points);
    CHECK(a.labels == b.labels);
    CHECK(a.position == b.position);
    PointCloud c = generate(spec_of(kind), 8);
    if (std::string(kind) != "grid" && std::string(kind) != "bent_plane")
      CHECK(a.points != c.points);  // seeded kinds actually use the seed
  }
}

TEST_CASE("grid covers the lattice with interior margin labels") {
  PointCloud pc = generate(spec_of("grid", {{"dim", 2}, {"side", 10}}), 0);
  REQUIRE(pc.size() == 100);
  CHECK(pc.dim() == 2);
  Index interior = 0;
  for (const auto& l : pc.labels) interior += l == "interior";
  CHECK(interior == 64);  // (10 - 2)^2
  PointCloud line = generate(spec_of("grid", {{"dim", 1}, {"n", 25}}), 0);
  CHECK(line.size() == 25);
  CHECK(line.dim() == 1);
}

TEST_CASE("triangular lattice keeps the row offset geometry") {
  PointCloud pc = generate(spec_of("grid", {{"dim", 2}, {"side", 6}, {"lattice", 1}}), 0);
  REQUIRE(pc.size() == 36);
  // all nearest-neighbor distances equal the spacing
  Scalar dy = pc.points(6, 1) - pc.points(0, 1);
  CHECK(dy == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK_THROWS_AS(generate(spec_of("grid", {{"dim", 3}, {"lattice", 1}}), 0),
                  std::invalid_argument);
}

TEST_CASE("jittered grid adds gaussian noise scaled by the jitter factor") {
  PointCloud pc =
      generate(spec_of("jittered_grid", {{"dim", 2}, {"side", 8}, {"jitter", 0.5}}), 3);
  PointCloud base = generate(spec_of("jittered_grid", {{"dim", 2}, {"side", 8}, {"jitter", 0.0}}), 3);
  PointCloud lattice = generate(spec_of("grid", {{"dim", 2}, {"side", 8}}), 3);
  REQUIRE(pc.size() == 64);
  // zero jitter reproduces the plain lattice exactly
  CHECK((base.points - lattice.points).cwiseAbs().maxCoeff() == 0.0);
  // per-coordinate displacements are N(0, jitter * spacing); with 128 samples
  // the empirical sd lands well within [0.35, 0.65]
  Matrix disp = pc.points - lattice.points;
  Scalar sd = std::sqrt(disp.array().square().sum() / static_cast<Scalar>(disp.size()));
  CHECK(sd > 0.35);
  CHECK(sd < 0.65);
}

TEST_CASE("ball samples inside the radius with interior label at 0.9 r") {
  PointCloud pc = generate(spec_of("ball", {{"dim", 3}, {"n", 200}, {"radius", 2.0}}), 5);
  REQUIRE(pc.size() == 200);
  for (Index p = 0; p < pc.size(); ++p) {
    Scalar r = pc.points.row(p).norm();
    CHECK(r <= 2.0 + 1e-12);
    CHECK((pc.labels[p] == "interior") == (r <= 1.8));
  }
}

TEST_CASE("stingray removes the requested fraction and labels parts") {
  PointCloud pc = generate(spec_of("stingray"), 5);
  Index body = 0, tail = 0;
  for (const auto& l : pc.labels) (l == "body" ? body : tail) += 1;
  CHECK(body > 0);
  CHECK(tail > 0);
  // tail positions are the arc length, increasing and positive
  for (Index p = 0; p < pc.size(); ++p)
    if (pc.labels[p] == "tail") CHECK(pc.position[p] > 0);
  PointCloud full = generate(spec_of("stingray", {{"delete_frac", 0.0}}), 5);
  CHECK(full.size() > pc.size());
}

TEST_CASE("spiral is near unit speed in arc length") {
  PointCloud pc = generate(spec_of("spiral", {{"n", 120}}), 2);
  REQUIRE(pc.size() == 120);
  for (Index p = 1; p < pc.size(); ++p) {
    Scalar chord = (pc.points.row(p) - pc.points.row(p - 1)).norm();
    Scalar darc = pc.position[p] - pc.position[p - 1];
    CHECK(darc > 0);
    CHECK(chord == doctest::Approx(darc).epsilon(0.01));  // curvature correction only
  }
}

TEST_CASE("bent plane aux flattening is isometric along rows") {
  PointCloud pc = generate(spec_of("bent_plane"), 0);
  REQUIRE(pc.aux.rows() == pc.size());
  // ambient distance between nearby points matches flat distance closely
  Index checked = 0;
  for (Index p = 1; p < pc.size() && checked < 200; ++p) {
    Scalar flat = (pc.aux.row(p) - pc.aux.row(p - 1)).norm();
    Scalar amb = (pc.points.row(p) - pc.points.row(p - 1)).norm();
    if (flat > 0.3) continue;  // row wrap
    CHECK(amb <= flat + 1e-9);  // chords through ambient space only shorten
    CHECK(amb >= flat * 0.98);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("cylinder factor has exact radius and stored axis position") {
  PointCloud pc = generate(spec_of("cylinder5d", {{"n", 150}, {"radius", 1.5}}), 9);
  REQUIRE(pc.size() == 150);
  REQUIRE(pc.dim() == 6);
  for (Index p = 0; p < pc.size(); ++p) {
    CHECK(pc.points.row(p).tail(5).norm() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(pc.position[p] == pc.points(p, 0));
  }
}

TEST_CASE("gauss clusters label points by component") {
  PointCloud pc = generate(spec_of("gauss_clusters", {{"n", 90}, {"k", 3}}), 1);
  std::set<std::string> labels(pc.labels.begin(), pc.labels.end());
  CHECK(labels == std::set<std::string>{"0", "1", "2"});
}

TEST_CASE("swiss cheese keeps holes empty and reports them in aux") {
  PointCloud pc = generate(spec_of("swiss_cheese", {{"n", 400}}), 4);
  REQUIRE(pc.aux.rows() == 5);
  for (Index p = 0; p < pc.size(); ++p)
    for (Index h = 0; h < pc.aux.rows(); ++h) {
      Scalar dx = pc.points(p, 0) - pc.aux(h, 0);
      Scalar dy = pc.points(p, 1) - pc.aux(h, 1);
      CHECK(dx * dx + dy * dy >= pc.aux(h, 2) * pc.aux(h, 2));
    }
}

TEST_CASE("parameter validation rejects junk") {
  CHECK_THROWS_AS(generate(spec_of("grid", {{"dim", 0}}), 0), std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_of("grid", {{"bogus", 1}}), 0), std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_of("ball", {{"dim", 17}}), 0), std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_of("stingray", {{"delete_frac", 0.95}}), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_of("spiral", {{"jitter", 1.0}}), 0), std::invalid_argument);
  CHECK_THROWS_AS(dataset_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("kind names round-trip") {
  for (const char* kind : {"grid", "jittered_grid", "ball", "stingray", "spiral", "bent_plane",
                           "cylinder5d", "gauss_clusters", "swiss_cheese", "horseshoe"})
    CHECK(to_string(dataset_kind_from_string(kind)) == kind);
}
