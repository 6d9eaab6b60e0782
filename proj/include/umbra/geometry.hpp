#ifndef UMBRA_GEOMETRY_HPP
#define UMBRA_GEOMETRY_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "umbra/error.hpp"

namespace umbra {

/// Points and directions in R^n. The reference sphere is centered at the
/// origin and has radius 1 unless a Configuration says otherwise.
using Vector = Eigen::VectorXd;

enum class Mode { Line, Ray };
enum class Topology { Open, Closed };

/// All boundary comparisons in hit tests use one signed tolerance (`geom`):
/// Closed resolves ties as hit, Open as miss. Cap membership itself is an
/// exact comparison; `angle` is the width of the band around a cap boundary
/// inside which cap membership and the metric hit tests may disagree.
struct Tolerances {
  double geom = 1e-9;
  double on_sphere = 1e-9;
  double tangency = 1e-9;
  double angle = 1e-10;
  double push = 1e-7;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

/// Set of unit directions within `half_angle` of `axis`; the occlusion image
/// of a ball on the direction sphere of some viewpoint.
struct SphericalCap {
  Vector axis;
  double half_angle = 0.0;
  Topology boundary = Topology::Closed;

  bool contains(const Vector& u) const;
};

struct Configuration {
  int dimension = 2;
  double sphere_radius = 1.0;
  Mode mode = Mode::Line;
  Topology topology = Topology::Closed;
  bool centers_free = false;
  std::vector<Ball> balls;
};

/// Compact convex polytope given by its vertices. Segments and single points
/// are allowed as degenerate cases. Only dimensions 2 and 3 are supported.
struct ConvexBody {
  std::vector<Vector> vertices;

  int dimension() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
};

struct ValidationReport {
  bool dimensions_ok = true;
  std::vector<int> bad_dimension_indices;
  bool centers_on_sphere = true;
  std::vector<int> off_sphere_indices;
  bool radii_ok = true;
  std::vector<int> oversized_indices;
  bool pairwise_disjoint = true;
  std::vector<std::pair<int, int>> overlapping_pairs;
  std::vector<std::pair<int, int>> tangent_pairs;

  bool all_ok() const { return dimensions_ok && centers_on_sphere && radii_ok && pairwise_disjoint; }
};

Vector make_vec(std::initializer_list<double> coords);
Vector unit(const Vector& v);

/// Angle in [0, pi] between two unit vectors, computed as 2 asin(|u-v|/2)
/// which stays accurate near 0 and pi.
double angle_between(const Vector& u, const Vector& v);

/// Occlusion caps of a ball seen from a viewpoint strictly outside it:
/// axis (center-viewpoint)/d, half-angle arcsin(radius/d). Ray mode yields
/// one cap, Line mode adds the antipodal cap. A viewpoint at distance exactly
/// d = radius is permitted only for Open topology and yields an open
/// hemisphere. Cap boundary follows the topology: a tangent line or ray
/// counts as a hit only for closed balls.
std::vector<SphericalCap> occlusion_caps(const Ball& ball, const Vector& viewpoint, Mode mode,
                                         Topology topology, const Tolerances& tol = {});

/// True iff the line {viewpoint + t*direction : t in R} meets the ball,
/// boundary inclusive per topology.
bool line_hits_ball(const Vector& direction, const Vector& viewpoint, const Ball& ball,
                    Topology topology, const Tolerances& tol = {});

/// Same with t >= 0 only. ray_hits_ball implies line_hits_ball.
bool ray_hits_ball(const Vector& direction, const Vector& viewpoint, const Ball& ball,
                   Topology topology, const Tolerances& tol = {});

/// Exact ray / convex-polytope intersection in dimensions 2 and 3. The hull
/// of the vertices is converted to half-spaces and the ray parameter interval
/// is clipped against them; degenerate bodies (point, segment, planar polygon
/// in 3-space) are reduced to their affine hull first. Open topology asks for
/// an interior crossing, so degenerate bodies are never hit in Open mode.
bool ray_hits_polytope(const Vector& direction, const Vector& viewpoint, const ConvexBody& body,
                       Topology topology, const Tolerances& tol = {});

/// Closed-hull membership test used by the ray finders and tests.
bool polytope_contains(const ConvexBody& body, const Vector& point, double tol = 1e-9);

/// Checks every Configuration invariant and reports all findings instead of
/// throwing: center-on-sphere distances (skipped when centers_free), radius
/// bounds per topology, pairwise disjointness (strict for Closed), and the
/// list of tangent pairs within tol.tangency.
ValidationReport validate_configuration(const Configuration& config, const Tolerances& tol = {});

}  // namespace umbra

#endif  // UMBRA_GEOMETRY_HPP
