#ifndef UMBRA_CONSTRUCTIONS_HPP
#define UMBRA_CONSTRUCTIONS_HPP

#include <utility>

#include "umbra/geometry.hpp"

namespace umbra {

struct SimplexParams {
  int dimension = 3;
  double epsilon = 1e-2;
  double shrink_delta = 1e-4;
};

/// Sides of the acute scalene triangle driving the three-circle family;
/// a > b > c > 0 with the strict triangle inequality.
struct TriangleSides {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double semiperimeter() const { return 0.5 * (a + b + c); }
};

struct ExtremalReport {
  double eta = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r2_root = 0.0;             // root of r^2 + 4r - 1 = 0
  double quadratic_residual = 0.0;  // r2^2 + 4 r2 - 1 at the root
  double max_offset = 0.0;          // (3 - sqrt 5)/2
  double tangent_segment = 0.0;     // 2 sqrt(r1 r2) at the configured radii
  double separating_offset = 0.0;   // (r1 - r2)/2 at the configured radii
};

enum class TenBallVariant { Printed, Tangent };

/// Length of the segment the tangency points cut out of the common outer
/// tangent line of two touching circles.
double tangent_segment_length(double r1, double r2);

/// Distance from the circle center to the inner tangent line through the
/// tangency point of the two circles.
double separating_line_offset(double r1, double r2);

/// n+1 pairwise tangent balls of radii a+eps, a-eps/2, ..., a-eps/2^n
/// (a = half-edge of the regular simplex inscribed in the unit sphere),
/// realized by distance-geometry embedding of the prescribed center
/// distances, then recentred on the circumcenter of the centers and rescaled
/// so the circumsphere is the unit sphere. A positive shrink_delta is
/// subtracted from every radius afterwards, making the closed family
/// pairwise disjoint. Line mode; Closed topology when shrunk, Open otherwise.
Configuration tangent_simplex_family(const SimplexParams& params, const Tolerances& tol = {});

/// Three pairwise tangent balls with centers on the unit sphere in R^3,
/// Line mode. Errors when the tangency triangle does not fit on the sphere.
Configuration tangent_triple(double r1, double r2, double r3,
                             Topology topology = Topology::Closed);

/// The planar two-ball family that pushes the separating line as far from
/// the center as possible: r1 = 1 - eta at the top of the circle, r2 =
/// sqrt(5)-2 rotated just far enough that the occlusion arcs overlap on both
/// ends. Closed topology, Line mode.
std::pair<Configuration, ExtremalReport> extremal_two_ball(double eta);

/// Closed circles of radii p-a, p-b, p-c at the triangle vertices, rescaled
/// so the circumcircle is the unit circle; Ray mode. The pairs are exactly
/// tangent since (p-a) + (p-b) = c.
Configuration triangle_family(const TriangleSides& sides);

/// The ten-ball ray-blocking family on S^2: open unit balls at both poles,
/// four balls of radius sqrt(2)-1 on the axes, and four bisector balls whose
/// radius is either the printed 3-2*sqrt(2) or the value 2*sin(pi/8) -
/// (sqrt(2)-1) that actually makes them tangent to their neighbors.
Configuration ten_ball_family(TenBallVariant variant);

/// Adds the image of the family under the origin-centered homothety with
/// negative ratio k. Image balls must be disjoint from all originals; the
/// result is a Ray-mode family with centers on two concentric spheres
/// (centers_free is set).
Configuration homothety_double(const Configuration& config, double k, const Tolerances& tol = {});

}  // namespace umbra

#endif  // UMBRA_CONSTRUCTIONS_HPP
