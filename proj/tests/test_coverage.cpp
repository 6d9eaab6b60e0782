#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "umbra/coverage.hpp"

using namespace umbra;
using umbra::testing::random_ball;
using umbra::testing::random_unit;
using umbra::testing::uniform;

namespace {

std::vector<SphericalCap> random_cap_set(std::mt19937& rng, int dim, int count) {
  std::vector<SphericalCap> caps;
  for (int i = 0; i < count; ++i) {
    caps.push_back({random_unit(rng, dim), uniform(rng, 0.3, 1.5),
                    rng() % 2 == 0 ? Topology::Closed : Topology::Open});
  }
  return caps;
}

AngularInterval arc(double center, double half, Topology boundary) {
  return {center - half, center + half, boundary};
}

}  // namespace

TEST_SUITE_BEGIN("coverage");

TEST_CASE("caps_to_intervals") {
  CHECK(caps_to_intervals({}).empty());

  std::vector<SphericalCap> caps{{make_vec({1.0, 0.0}), M_PI / 4.0, Topology::Closed}};
  auto intervals = caps_to_intervals(caps);
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].lo == doctest::Approx(-M_PI / 4.0).epsilon(1e-15));
  CHECK(intervals[0].hi == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
  CHECK(intervals[0].boundary == Topology::Closed);

  caps = {{make_vec({0.0, 1.0}), 0.427079, Topology::Open}};
  intervals = caps_to_intervals(caps);
  CHECK(intervals[0].lo == doctest::Approx(1.143717).epsilon(1e-6));
  CHECK(intervals[0].hi == doctest::Approx(1.997876).epsilon(1e-6));
  CHECK(intervals[0].boundary == Topology::Open);

  caps = {{make_vec({0.0, 0.0, 1.0}), 0.5, Topology::Closed}};
  CHECK_THROWS_AS(caps_to_intervals(caps), Error);
}

TEST_CASE("cover_s1 on abutting quarter arcs") {
  std::vector<AngularInterval> closed;
  for (int k = 0; k < 4; ++k) closed.push_back(arc(k * M_PI_2, M_PI / 4.0, Topology::Closed));
  CHECK(cover_s1(closed).status == CoverageStatus::Covered);

  std::vector<AngularInterval> open;
  for (int k = 0; k < 4; ++k) open.push_back(arc(k * M_PI_2, M_PI / 4.0, Topology::Open));
  const CoverageVerdict verdict = cover_s1(open);
  REQUIRE(verdict.status == CoverageStatus::Uncovered);
  REQUIRE(verdict.witness.has_value());
  const double angle = std::atan2((*verdict.witness)[1], (*verdict.witness)[0]);
  CHECK(angle == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  CHECK(*verdict.clearance == doctest::Approx(0.0));
}

TEST_CASE("cover_s1 on the printed equatorial arc family") {
  // Half-angles as printed: 0.427079 on the axes, 0.172420 on the bisectors.
  std::vector<AngularInterval> arcs;
  for (int k = 0; k < 4; ++k) arcs.push_back(arc(k * M_PI_2, 0.427079, Topology::Closed));
  for (int k = 0; k < 4; ++k) {
    arcs.push_back(arc(M_PI / 4.0 + k * M_PI_2, 0.172420, Topology::Closed));
  }
  const auto gaps = uncovered_arcs(arcs);
  CHECK(gaps.size() == 8);
  const double expected = (M_PI / 4.0 - 0.172420) - 0.427079;  // 0.185899
  for (const auto& gap : gaps) CHECK(gap.width() == doctest::Approx(expected).epsilon(1e-9));

  const CoverageVerdict verdict = cover_s1(arcs);
  REQUIRE(verdict.status == CoverageStatus::Uncovered);
  CHECK(*verdict.clearance == doctest::Approx(expected / 2.0).epsilon(1e-9));
}

TEST_CASE("cover_s1 edge cases") {
  CHECK(cover_s1({{0.0, 2.0 * M_PI, Topology::Closed}}).status == CoverageStatus::Covered);

  const auto none = cover_s1({});
  REQUIRE(none.status == CoverageStatus::Uncovered);
  CHECK(*none.clearance == doctest::Approx(M_PI));

  // A full-circle open interval misses exactly its endpoint.
  const auto almost = cover_s1({{0.25, 0.25 + 2.0 * M_PI, Topology::Open}});
  REQUIRE(almost.status == CoverageStatus::Uncovered);
  CHECK(*almost.clearance == doctest::Approx(0.0));
  const double angle = std::atan2((*almost.witness)[1], (*almost.witness)[0]);
  CHECK(angle == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(cover_s1({{1.0, 0.5, Topology::Closed}}), Error);
}

TEST_CASE("cover_s1 is invariant under rotation and under cap removal") {
  std::mt19937 rng(424242);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<AngularInterval> intervals;
    const int count = 2 + static_cast<int>(uniform(rng, 0.0, 4.0));
    for (int i = 0; i < count; ++i) {
      intervals.push_back(arc(uniform(rng, 0.0, 2.0 * M_PI), uniform(rng, 0.2, 1.2),
                              rng() % 2 == 0 ? Topology::Closed : Topology::Open));
    }
    const CoverageVerdict base = cover_s1(intervals);

    const double shift = uniform(rng, 0.0, 2.0 * M_PI);
    std::vector<AngularInterval> rotated;
    for (const auto& iv : intervals) rotated.push_back({iv.lo + shift, iv.hi + shift, iv.boundary});
    const CoverageVerdict turned = cover_s1(rotated);
    CHECK(base.status == turned.status);
    if (base.status == CoverageStatus::Uncovered) {
      CHECK(*base.clearance == doctest::Approx(*turned.clearance).epsilon(1e-9));
    }

    if (base.status == CoverageStatus::Uncovered && intervals.size() > 1) {
      std::vector<AngularInterval> fewer = intervals;
      fewer.erase(fewer.begin() + static_cast<long>(rng() % fewer.size()));
      CHECK(cover_s1(fewer).status == CoverageStatus::Uncovered);
    }
  }
}

TEST_CASE("cover_s2 basics") {
  std::vector<SphericalCap> full{{make_vec({0.0, 0.0, 1.0}), M_PI, Topology::Closed}};
  CHECK(cover_s2(full).status == CoverageStatus::Covered);

  std::vector<SphericalCap> nearly{
      {make_vec({0.0, 0.0, 1.0}), M_PI_2 - 0.01, Topology::Closed},
      {make_vec({0.0, 0.0, -1.0}), M_PI_2 - 0.01, Topology::Closed}};
  const CoverageVerdict verdict = cover_s2(nearly);
  REQUIRE(verdict.status == CoverageStatus::Uncovered);
  REQUIRE(verdict.witness.has_value());
  CHECK(std::abs((*verdict.witness)[2]) < 1e-6);  // on the equator
  CHECK(*verdict.clearance == doctest::Approx(0.01).epsilon(1e-4));

  // Two open hemispheres miss the whole equator, a measure-zero set.
  std::vector<SphericalCap> open_hemis{
      {make_vec({0.0, 0.0, 1.0}), M_PI_2, Topology::Open},
      {make_vec({0.0, 0.0, -1.0}), M_PI_2, Topology::Open}};
  const CoverageVerdict grazing = cover_s2(open_hemis);
  REQUIRE(grazing.status == CoverageStatus::Uncovered);
  CHECK(std::abs((*grazing.witness)[2]) < 1e-9);
  CHECK(*grazing.clearance == doctest::Approx(0.0));

  // Closing the same hemispheres covers the sphere.
  std::vector<SphericalCap> closed_hemis{
      {make_vec({0.0, 0.0, 1.0}), M_PI_2, Topology::Closed},
      {make_vec({0.0, 0.0, -1.0}), M_PI_2, Topology::Closed}};
  CHECK(cover_s2(closed_hemis).status == CoverageStatus::Covered);

  CHECK(cover_s2({}).status == CoverageStatus::Uncovered);
}

TEST_CASE("cover_sample estimates and promotes witnesses") {
  std::vector<SphericalCap> full{{make_vec({0.0, 0.0, 1.0}), M_PI, Topology::Closed}};
  const CoverageVerdict est = cover_sample(full, 10000);
  CHECK(est.status == CoverageStatus::Estimated);
  CHECK(*est.uncovered_fraction == doctest::Approx(0.0));

  // Uncovered band of angular half-width 0.1 around the equator: its area
  // fraction is sin(0.1).
  std::vector<SphericalCap> banded{
      {make_vec({0.0, 0.0, 1.0}), M_PI_2 - 0.1, Topology::Closed},
      {make_vec({0.0, 0.0, -1.0}), M_PI_2 - 0.1, Topology::Closed}};
  const CoverageVerdict band = cover_sample(banded, 100000);
  REQUIRE(band.status == CoverageStatus::Uncovered);
  CHECK(std::abs(*band.uncovered_fraction - std::sin(0.1)) < 0.01);
  REQUIRE(band.witness.has_value());
  CHECK(*band.clearance > 0.0);
  for (const auto& cap : banded) CHECK_FALSE(cap.contains(*band.witness));

  CHECK_THROWS_AS(cover_sample({}, 100), Error);  // dimension unknown
  CHECK(cover_sample({}, 100, {}, 4).status == CoverageStatus::Uncovered);
}

TEST_CASE("exact deciders agree with sampling on random cap sets") {
  std::mt19937 rng(20240902);
  for (int dim : {2, 3}) {
    for (int iter = 0; iter < 50; ++iter) {
      const auto caps = random_cap_set(rng, dim, 2 + iter % 5);
      const CoverageVerdict exact =
          dim == 2 ? cover_s1(caps_to_intervals(caps)) : cover_s2(caps);
      const CoverageVerdict sampled = cover_sample(caps, 100000);
      if (exact.status == CoverageStatus::Covered) {
        CHECK(*sampled.uncovered_fraction == 0.0);
      } else if (*exact.clearance >= 1e-3) {
        CHECK(*sampled.uncovered_fraction > 0.0);
      } else {
        CHECK(*sampled.uncovered_fraction < 1e-4);
      }
    }
  }
}

TEST_CASE("shadow_verdict dispatch, witnesses and errors") {
  Configuration single;
  single.dimension = 2;
  single.mode = Mode::Line;
  single.topology = Topology::Closed;
  single.balls = {{make_vec({1.0, 0.0}), 0.6}};
  const CoverageVerdict verdict = shadow_verdict(single);
  REQUIRE(verdict.status == CoverageStatus::Uncovered);
  for (const auto& ball : single.balls) {
    CHECK_FALSE(line_hits_ball(*verdict.witness, Vector::Zero(2), ball, single.topology));
  }

  Configuration engulfing = single;
  engulfing.balls[0].radius = 1.1;
  CHECK_THROWS_AS(shadow_verdict(engulfing), Error);

  // Ray-mode coverage implies Line-mode coverage on random families, and
  // every Uncovered witness must miss every ball under the exact tests.
  std::mt19937 rng(999101);
  for (int iter = 0; iter < 60; ++iter) {
    Configuration config;
    config.dimension = 2 + iter % 2;
    config.mode = Mode::Ray;
    config.topology = iter % 2 == 0 ? Topology::Closed : Topology::Open;
    config.centers_free = true;
    const int count = 1 + static_cast<int>(uniform(rng, 0.0, 5.0));
    for (int i = 0; i < count; ++i) config.balls.push_back(random_ball(rng, config.dimension));
    const CoverageVerdict ray = shadow_verdict(config);

    Configuration line_config = config;
    line_config.mode = Mode::Line;
    const CoverageVerdict line = shadow_verdict(line_config);
    if (ray.status == CoverageStatus::Covered) {
      CHECK(line.status == CoverageStatus::Covered);
    }
    if (ray.status == CoverageStatus::Uncovered) {
      for (const auto& ball : config.balls) {
        CHECK_FALSE(
            ray_hits_ball(*ray.witness, Vector::Zero(config.dimension), ball, config.topology));
      }
    }
    if (line.status == CoverageStatus::Uncovered) {
      for (const auto& ball : config.balls) {
        CHECK_FALSE(
            line_hits_ball(*line.witness, Vector::Zero(config.dimension), ball, config.topology));
      }
    }
  }
}

TEST_SUITE_END();
