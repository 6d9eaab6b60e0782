#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "umbra/geometry.hpp"

using namespace umbra;
using umbra::testing::random_ball;
using umbra::testing::random_unit;
using umbra::testing::uniform;

namespace {

/// Independent hit oracle: walk the ray in small steps and test hull
/// membership at each point. `tol` expands the hull, so a loose pass that
/// comes back negative certifies a miss at that resolution.
bool dense_ray_hits(const Vector& dir, const Vector& vp, const ConvexBody& body, double tol,
                    int steps) {
  double reach = 0.0;
  for (const auto& v : body.vertices) reach = std::max(reach, v.norm());
  reach = 10.0 * std::max(reach, 1.0);
  for (int i = 0; i <= steps; ++i) {
    const double t = reach * i / steps;
    if (polytope_contains(body, vp + t * dir, tol)) return true;
  }
  return false;
}

ConvexBody random_body(std::mt19937& rng, int dim, bool allow_degenerate) {
  ConvexBody body;
  const Vector offset = uniform(rng, 0.6, 2.5) * random_unit(rng, dim);
  int count = 3 + static_cast<int>(uniform(rng, 0.0, 5.0));
  if (allow_degenerate && uniform(rng, 0.0, 1.0) < 0.25) count = 2;  // segment
  for (int i = 0; i < count; ++i) {
    body.vertices.push_back(offset + 0.35 * random_unit(rng, dim) * uniform(rng, 0.2, 1.0));
  }
  return body;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("occlusion caps: boundary viewpoint gives an open hemisphere") {
  const Ball ball{make_vec({0.0, 0.0, 1.0}), 1.0};
  const auto caps = occlusion_caps(ball, Vector::Zero(3), Mode::Ray, Topology::Open);
  REQUIRE(caps.size() == 1);
  CHECK(caps[0].axis.isApprox(make_vec({0.0, 0.0, 1.0}), 1e-15));
  CHECK(caps[0].half_angle == doctest::Approx(M_PI_2).epsilon(1e-12));
  CHECK(caps[0].boundary == Topology::Open);

  CHECK_THROWS_AS(occlusion_caps(ball, Vector::Zero(3), Mode::Ray, Topology::Closed), Error);
  const Ball big{make_vec({0.0, 0.0, 0.5}), 1.0};
  CHECK_THROWS_AS(occlusion_caps(big, Vector::Zero(3), Mode::Ray, Topology::Open), Error);
}

TEST_CASE("occlusion caps: half-angle is arcsin(r/d)") {
  const Ball ball{make_vec({1.0, 0.0, 0.0}), std::sqrt(2.0) - 1.0};
  const auto caps = occlusion_caps(ball, Vector::Zero(3), Mode::Ray, Topology::Closed);
  REQUIRE(caps.size() == 1);
  CHECK(caps[0].half_angle == doctest::Approx(0.42707858639247614).epsilon(1e-12));

  const Ball far_ball{make_vec({0.0, 0.0, 2.0}), 1.0};
  const auto pair = occlusion_caps(far_ball, Vector::Zero(3), Mode::Line, Topology::Closed);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].half_angle == doctest::Approx(M_PI / 6.0).epsilon(1e-12));
  CHECK(pair[1].axis.isApprox(-pair[0].axis, 1e-15));
  CHECK(pair[1].half_angle == doctest::Approx(M_PI / 6.0).epsilon(1e-12));
}

TEST_CASE("line and ray hit tests on the spec inputs") {
  const Vector origin2 = Vector::Zero(2);
  const Vector origin3 = Vector::Zero(3);

  CHECK_FALSE(line_hits_ball(make_vec({0.0, 1.0}), origin2, {make_vec({1.0, 0.0}), 0.5},
                             Topology::Closed));
  CHECK(line_hits_ball(make_vec({1.0, 0.0}), origin2, {make_vec({1.0, 0.0}), 0.3},
                       Topology::Closed));
  CHECK(line_hits_ball(make_vec({1.0, 0.0}), origin2, {make_vec({1.0, 0.0}), 0.3},
                       Topology::Open));

  // Tangency: the horizontal line touches the unit ball sitting at z = 1.
  const Ball pole{make_vec({0.0, 0.0, 1.0}), 1.0};
  CHECK_FALSE(line_hits_ball(make_vec({0.0, 1.0, 0.0}), origin3, pole, Topology::Open));
  CHECK(line_hits_ball(make_vec({0.0, 1.0, 0.0}), origin3, pole, Topology::Closed));

  const Ball right{make_vec({1.0, 0.0}), 0.5};
  CHECK_FALSE(ray_hits_ball(make_vec({-1.0, 0.0}), origin2, right, Topology::Closed));
  CHECK(line_hits_ball(make_vec({-1.0, 0.0}), origin2, right, Topology::Closed));
  CHECK(ray_hits_ball(make_vec({1.0, 0.0}), origin2, right, Topology::Closed));

  // Perpendicular distance sin(0.5) = 0.479... exceeds sqrt(2)-1 = 0.414...
  const Ball small{make_vec({1.0, 0.0, 0.0}), std::sqrt(2.0) - 1.0};
  CHECK_FALSE(ray_hits_ball(make_vec({std::cos(0.5), std::sin(0.5), 0.0}), origin3, small,
                            Topology::Closed));

  CHECK_THROWS_AS(line_hits_ball(make_vec({1.0, 1.0}), origin2, right, Topology::Closed), Error);
}

TEST_CASE("cap membership agrees with the metric hit tests") {
  std::mt19937 rng(20240901);
  const Tolerances tol;
  for (int dim : {2, 3, 4}) {
    for (int iter = 0; iter < 10000; ++iter) {
      const Ball ball = random_ball(rng, dim);
      const Vector u = random_unit(rng, dim);
      const Topology topo = iter % 2 == 0 ? Topology::Closed : Topology::Open;
      const Mode mode = iter % 4 < 2 ? Mode::Line : Mode::Ray;
      const auto caps = occlusion_caps(ball, Vector::Zero(dim), mode, topo);
      bool in_cap = false;
      bool near_boundary = false;
      for (const auto& cap : caps) {
        const double angle = angle_between(u, cap.axis);
        if (std::abs(angle - cap.half_angle) <= tol.angle) near_boundary = true;
        if (cap.contains(u)) in_cap = true;
      }
      if (near_boundary) continue;
      const bool hit = mode == Mode::Line ? line_hits_ball(u, Vector::Zero(dim), ball, topo)
                                          : ray_hits_ball(u, Vector::Zero(dim), ball, topo);
      CHECK(in_cap == hit);
    }
  }
}

TEST_CASE("antipodal symmetry, monotonicity, ray implies line") {
  std::mt19937 rng(77001);
  for (int iter = 0; iter < 3000; ++iter) {
    const int dim = 2 + iter % 3;
    const Ball ball = random_ball(rng, dim);
    const Vector u = random_unit(rng, dim);
    const Vector vp = 0.2 * random_unit(rng, dim);
    const Topology topo = iter % 2 == 0 ? Topology::Closed : Topology::Open;

    CHECK(line_hits_ball(u, vp, ball, topo) == line_hits_ball(-u, vp, ball, topo));
    if (ray_hits_ball(u, vp, ball, topo)) {
      CHECK(line_hits_ball(u, vp, ball, topo));
      Ball bigger = ball;
      bigger.radius *= 1.5;
      CHECK(ray_hits_ball(u, vp, bigger, topo));
    }
    if (line_hits_ball(u, vp, ball, topo)) {
      Ball bigger = ball;
      bigger.radius += 0.3;
      CHECK(line_hits_ball(u, vp, bigger, topo));
    }
  }
}

TEST_CASE("ray/polytope tests on the spec inputs") {
  const Vector origin2 = Vector::Zero(2);
  ConvexBody triangle;
  triangle.vertices = {make_vec({1.0, -1.0}), make_vec({1.0, 1.0}), make_vec({2.0, 0.0})};
  CHECK(ray_hits_polytope(make_vec({1.0, 0.0}), origin2, triangle, Topology::Closed));
  CHECK_FALSE(ray_hits_polytope(make_vec({0.0, 1.0}), origin2, triangle, Topology::Closed));

  ConvexBody tetra;
  tetra.vertices = {make_vec({1.0, 0.0, 0.0}), make_vec({0.0, 1.0, 0.0}),
                    make_vec({0.0, 0.0, 1.0}), make_vec({1.0, 1.0, 1.0})};
  const Vector diag = unit(make_vec({1.0, 1.0, 1.0}));
  CHECK(ray_hits_polytope(diag, Vector::Zero(3), tetra, Topology::Closed));
  CHECK(dense_ray_hits(diag, Vector::Zero(3), tetra, 1e-9, 4000));

  ConvexBody segment;
  segment.vertices = {make_vec({1.0, -1.0}), make_vec({1.0, 1.0})};
  CHECK(ray_hits_polytope(make_vec({1.0, 0.0}), origin2, segment, Topology::Closed));
  CHECK_FALSE(ray_hits_polytope(make_vec({1.0, 0.0}), origin2, segment, Topology::Open));
  CHECK_FALSE(ray_hits_polytope(make_vec({0.0, 1.0}), origin2, segment, Topology::Closed));

  ConvexBody point;
  point.vertices = {make_vec({1.0, 1.0, 1.0})};
  CHECK(ray_hits_polytope(unit(make_vec({1.0, 1.0, 1.0})), Vector::Zero(3), point,
                          Topology::Closed));

  ConvexBody bad;
  bad.vertices = {Vector::Zero(4)};
  CHECK_THROWS_AS(ray_hits_polytope(Vector::Zero(4), Vector::Zero(4), bad, Topology::Closed),
                  Error);
}

TEST_CASE("ray/polytope agrees with the dense-sample oracle") {
  std::mt19937 rng(555111);
  int checked = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const int dim = iter % 2 == 0 ? 2 : 3;
    const ConvexBody body = random_body(rng, dim, true);
    const Vector vp = Vector::Zero(dim);
    if (polytope_contains(body, vp, 1e-9)) continue;
    const Vector u = random_unit(rng, dim);
    const bool clip = ray_hits_polytope(u, vp, body, Topology::Closed);

    double reach = 0.0;
    for (const auto& v : body.vertices) reach = std::max(reach, v.norm());
    const double step = 10.0 * std::max(reach, 1.0) / 4000.0;
    if (dense_ray_hits(u, vp, body, 1e-12, 4000)) CHECK(clip);
    if (!dense_ray_hits(u, vp, body, 2.0 * step, 4000)) CHECK_FALSE(clip);
    ++checked;
  }
  CHECK(checked > 800);
}

TEST_CASE("configuration validation") {
  Configuration config;
  config.dimension = 2;
  config.topology = Topology::Closed;
  config.mode = Mode::Line;
  config.balls = {{make_vec({1.0, 0.0}), 0.3}, {make_vec({-1.0, 0.0}), 0.3}};
  auto report = validate_configuration(config);
  CHECK(report.all_ok());
  CHECK(report.pairwise_disjoint);
  CHECK(report.tangent_pairs.empty());

  // A closed ball with the sphere's own radius violates the radius bound.
  config.balls.push_back({make_vec({0.0, 1.0}), 1.0});
  report = validate_configuration(config);
  CHECK_FALSE(report.radii_ok);
  CHECK(report.oversized_indices == std::vector<int>{2});

  config.topology = Topology::Open;
  config.balls = {{make_vec({1.0, 0.0}), 1.0}, {make_vec({-1.0, 0.0}), 1.0}};
  report = validate_configuration(config);
  CHECK(report.radii_ok);
  CHECK(report.tangent_pairs.size() == 1);  // they touch at the origin
  CHECK(report.pairwise_disjoint);          // open balls may touch

  config.centers_free = false;
  config.balls[0].center = make_vec({1.5, 0.0});
  report = validate_configuration(config);
  CHECK_FALSE(report.centers_on_sphere);
  CHECK(report.off_sphere_indices == std::vector<int>{0});
  config.centers_free = true;
  report = validate_configuration(config);
  CHECK(report.centers_on_sphere);
}

TEST_SUITE_END();
