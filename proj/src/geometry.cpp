#include "umbra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace umbra {

namespace {

void require_unit(const Vector& direction) {
  if (std::abs(1.0 - direction.norm()) > 1e-9) {
    throw Error(Errc::NonUnitDirection, "direction vector is not unit length");
  }
}

double scale_of(const std::vector<Vector>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, (p - pts.front()).norm());
  return s;
}

double cross2(const Vector& a, const Vector& b, const Vector& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Counterclockwise hull, collinear points dropped (monotone chain).
std::vector<Vector> hull_2d(std::vector<Vector> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [eps](const Vector& a, const Vector& b) { return (a - b).norm() <= eps; }),
            pts.end());
  const int m = static_cast<int>(pts.size());
  if (m <= 2) return pts;
  std::vector<Vector> hull(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = m - 2; i >= 0; --i) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct HalfSpace {
  Vector normal;   // unit
  double offset;   // inside: normal . x <= offset
};

std::vector<HalfSpace> faces_2d(const std::vector<Vector>& pts, double eps) {
  const auto hull = hull_2d(pts, eps);
  std::vector<HalfSpace> faces;
  const int m = static_cast<int>(hull.size());
  for (int i = 0; i < m; ++i) {
    const Vector& a = hull[i];
    const Vector& b = hull[(i + 1) % m];
    Vector edge = b - a;
    const double len = edge.norm();
    if (len <= eps) continue;
    Vector normal = make_vec({edge[1] / len, -edge[0] / len});  // outward for CCW
    faces.push_back({normal, normal.dot(a)});
  }
  return faces;
}

// Brute-force face enumeration; adequate at the handful-of-vertices scale
// these bodies have.
std::vector<HalfSpace> faces_3d(const std::vector<Vector>& pts, double eps) {
  std::vector<HalfSpace> faces;
  const int m = static_cast<int>(pts.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        Eigen::Vector3d u = (pts[j] - pts[i]).head<3>();
        Eigen::Vector3d v = (pts[k] - pts[i]).head<3>();
        Eigen::Vector3d n3 = u.cross(v);
        const double len = n3.norm();
        if (len <= eps * eps) continue;
        n3 /= len;
        double smin = 0.0, smax = 0.0;
        for (int l = 0; l < m; ++l) {
          const double s = n3.dot((pts[l] - pts[i]).head<3>());
          smin = std::min(smin, s);
          smax = std::max(smax, s);
        }
        Vector normal(3);
        if (smax <= eps) {
          normal << n3[0], n3[1], n3[2];
        } else if (smin >= -eps) {
          normal << -n3[0], -n3[1], -n3[2];
        } else {
          continue;
        }
        faces.push_back({normal, normal.dot(pts[i])});
      }
    }
  }
  return faces;
}

bool clip_ray(const std::vector<HalfSpace>& faces, const Vector& origin, const Vector& dir,
              Topology topology, double tol) {
  double tmin = 0.0;
  double tmax = std::numeric_limits<double>::infinity();
  for (const auto& f : faces) {
    const double a = f.normal.dot(dir);
    const double b = f.offset - f.normal.dot(origin);
    if (std::abs(a) <= 1e-14) {
      if (b < -tol) return false;
      continue;
    }
    const double t = b / a;
    if (a > 0.0) {
      tmax = std::min(tmax, t);
    } else {
      tmin = std::max(tmin, t);
    }
  }
  if (topology == Topology::Closed) return tmax >= tmin - tol;
  return tmax > tmin + tol;
}

// Orthonormal basis of the affine hull of pts (columns), via modified
// Gram-Schmidt; rank cut at 1e-9 * scale.
Eigen::MatrixXd affine_basis(const std::vector<Vector>& pts, double scale) {
  const int n = static_cast<int>(pts.front().size());
  Eigen::MatrixXd basis(n, 0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vector w = pts[i] - pts.front();
    for (int c = 0; c < basis.cols(); ++c) w -= basis.col(c).dot(w) * basis.col(c);
    const double len = w.norm();
    if (len > 1e-9 * scale) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = w / len;
      if (basis.cols() == n) break;
    }
  }
  return basis;
}

bool contains_kdim(const std::vector<Vector>& pts, const Vector& q, double tol, double scale) {
  const int k = static_cast<int>(q.size());
  if (k == 0) return true;
  if (k == 1) {
    double lo = pts.front()[0], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return q[0] >= lo - tol && q[0] <= hi + tol;
  }
  if (k == 2) {
    const auto hull = hull_2d(pts, 1e-12 * scale);
    if (hull.size() == 1) return (q - hull[0]).norm() <= tol;
    if (hull.size() == 2) {
      // segment: distance to it
      Vector d = hull[1] - hull[0];
      const double len2 = d.squaredNorm();
      double t = len2 > 0 ? std::clamp((q - hull[0]).dot(d) / len2, 0.0, 1.0) : 0.0;
      return (q - hull[0] - t * d).norm() <= tol;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (cross2(hull[i], hull[(i + 1) % hull.size()], q) < -tol * scale) return false;
    }
    return true;
  }
  for (const auto& f : faces_3d(pts, 1e-9 * scale)) {
    if (f.normal.dot(q) > f.offset + tol) return false;
  }
  return true;
}

}  // namespace

Vector make_vec(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

Vector unit(const Vector& v) {
  const double n = v.norm();
  if (n == 0.0) throw Error(Errc::InvalidArgument, "cannot normalize the zero vector");
  return v / n;
}

double angle_between(const Vector& u, const Vector& v) {
  const double chord = (u - v).norm();
  return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

bool SphericalCap::contains(const Vector& u) const {
  const double theta = angle_between(u, axis);
  return boundary == Topology::Closed ? theta <= half_angle : theta < half_angle;
}

std::vector<SphericalCap> occlusion_caps(const Ball& ball, const Vector& viewpoint, Mode mode,
                                         Topology topology, const Tolerances& tol) {
  if (ball.center.size() != viewpoint.size()) {
    throw Error(Errc::DimensionMismatch, "ball center and viewpoint dimensions differ");
  }
  const Vector delta = ball.center - viewpoint;
  const double d = delta.norm();
  if (d < ball.radius - tol.geom) {
    throw Error(Errc::ViewpointInsideBall, "viewpoint lies inside the ball");
  }
  SphericalCap cap;
  if (std::abs(d - ball.radius) <= tol.geom) {
    // Viewpoint on the boundary: only an open ball keeps it outside, and the
    // occlusion image is the open hemisphere toward the center.
    if (topology == Topology::Closed) {
      throw Error(Errc::ViewpointInsideBall, "viewpoint on the boundary of a closed ball");
    }
    cap = {delta / d, std::asin(1.0), Topology::Open};
  } else {
    cap = {delta / d, std::asin(ball.radius / d), topology};
  }
  std::vector<SphericalCap> caps{cap};
  if (mode == Mode::Line) caps.push_back({-cap.axis, cap.half_angle, cap.boundary});
  return caps;
}

bool line_hits_ball(const Vector& direction, const Vector& viewpoint, const Ball& ball,
                    Topology topology, const Tolerances& tol) {
  require_unit(direction);
  const Vector w = ball.center - viewpoint;
  const double t = w.dot(direction);
  const double dist2 = std::max(0.0, w.squaredNorm() - t * t);
  const double dist = std::sqrt(dist2);
  return topology == Topology::Closed ? dist <= ball.radius + tol.geom
                                      : dist < ball.radius - tol.geom;
}

bool ray_hits_ball(const Vector& direction, const Vector& viewpoint, const Ball& ball,
                   Topology topology, const Tolerances& tol) {
  require_unit(direction);
  const Vector w = ball.center - viewpoint;
  const double t = w.dot(direction);
  double dist;
  if (t > 0.0) {
    dist = std::sqrt(std::max(0.0, w.squaredNorm() - t * t));
  } else {
    dist = w.norm();
  }
  return topology == Topology::Closed ? dist <= ball.radius + tol.geom
                                      : dist < ball.radius - tol.geom;
}

bool ray_hits_polytope(const Vector& direction, const Vector& viewpoint, const ConvexBody& body,
                       Topology topology, const Tolerances& tol) {
  if (body.vertices.empty()) throw Error(Errc::InvalidArgument, "polytope has no vertices");
  const int n = body.dimension();
  if (n != 2 && n != 3) {
    throw Error(Errc::UnsupportedDimension, "ray/polytope tests support dimensions 2 and 3 only");
  }
  if (direction.size() != n || viewpoint.size() != n) {
    throw Error(Errc::DimensionMismatch, "direction/viewpoint dimension differs from the body's");
  }
  require_unit(direction);

  const double scale = scale_of(body.vertices);
  const Eigen::MatrixXd basis = affine_basis(body.vertices, scale);
  const int k = static_cast<int>(basis.cols());

  if (k == n) {
    const auto faces = n == 2 ? faces_2d(body.vertices, 1e-12 * scale)
                              : faces_3d(body.vertices, 1e-9 * scale);
    return clip_ray(faces, viewpoint, direction, topology, tol.geom);
  }

  // Degenerate body: it has no interior, so Open never hits; for Closed,
  // reduce to coordinates of the affine hull.
  if (topology == Topology::Open) return false;

  std::vector<Vector> reduced;
  reduced.reserve(body.vertices.size());
  for (const auto& v : body.vertices) reduced.push_back(basis.transpose() * (v - body.vertices.front()));

  const Vector w = viewpoint - body.vertices.front();
  const Vector wpar = basis.transpose() * w;
  const Vector wperp = w - basis * wpar;
  const Vector dpar = basis.transpose() * direction;
  const Vector dperp = direction - basis * dpar;
  const double dp = dperp.norm();

  if (dp <= 1e-12) {
    // Ray parallel to the affine hull.
    if (wperp.norm() > tol.geom) return false;
    if (k == 0) return w.norm() <= tol.geom;
    if (k == 1) {
      double lo = reduced.front()[0], hi = lo;
      for (const auto& p : reduced) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      const double s = dpar[0];
      if (std::abs(s) <= 1e-12) return wpar[0] >= lo - tol.geom && wpar[0] <= hi + tol.geom;
      return s > 0 ? wpar[0] <= hi + tol.geom : wpar[0] >= lo - tol.geom;
    }
    const auto faces = faces_2d(reduced, 1e-12 * scale);
    return clip_ray(faces, wpar, dpar / dpar.norm(), Topology::Closed, tol.geom);
  }

  // The ray meets the affine hull in (at most) one point.
  const double tstar = std::max(0.0, -wperp.dot(dperp) / (dp * dp));
  if ((wperp + tstar * dperp).norm() > tol.geom) return false;
  const Vector q = wpar + tstar * dpar;
  return contains_kdim(reduced, q, tol.geom, scale);
}

bool polytope_contains(const ConvexBody& body, const Vector& point, double tol) {
  if (body.vertices.empty()) return false;
  const double scale = scale_of(body.vertices);
  const Eigen::MatrixXd basis = affine_basis(body.vertices, scale);
  const Vector w = point - body.vertices.front();
  const Vector wpar = basis.transpose() * w;
  if ((w - basis * wpar).norm() > tol) return false;
  std::vector<Vector> reduced;
  reduced.reserve(body.vertices.size());
  for (const auto& v : body.vertices) reduced.push_back(basis.transpose() * (v - body.vertices.front()));
  return contains_kdim(reduced, wpar, tol, scale);
}

ValidationReport validate_configuration(const Configuration& config, const Tolerances& tol) {
  ValidationReport report;
  const int n = config.dimension;
  const int count = static_cast<int>(config.balls.size());

  for (int i = 0; i < count; ++i) {
    const Ball& b = config.balls[i];
    if (b.center.size() != n || n < 2 || !b.center.allFinite() || !(b.radius > 0.0)) {
      report.dimensions_ok = false;
      report.bad_dimension_indices.push_back(i);
      continue;
    }
    if (!config.centers_free &&
        std::abs(b.center.norm() - config.sphere_radius) > tol.on_sphere) {
      report.centers_on_sphere = false;
      report.off_sphere_indices.push_back(i);
    }
    const bool oversized = config.topology == Topology::Closed
                               ? b.radius >= config.sphere_radius - tol.geom
                               : b.radius > config.sphere_radius + tol.geom;
    if (oversized) {
      report.radii_ok = false;
      report.oversized_indices.push_back(i);
    }
  }

  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (config.balls[i].center.size() != config.balls[j].center.size()) continue;
      const double gap = (config.balls[i].center - config.balls[j].center).norm() -
                         (config.balls[i].radius + config.balls[j].radius);
      if (std::abs(gap) <= tol.tangency) report.tangent_pairs.emplace_back(i, j);
      const bool disjoint = config.topology == Topology::Closed ? gap > tol.geom : gap >= -tol.geom;
      if (!disjoint) {
        report.pairwise_disjoint = false;
        report.overlapping_pairs.emplace_back(i, j);
      }
    }
  }
  return report;
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ViewpointInsideBall: return "ViewpointInsideBall";
    case Errc::OriginInsideBall: return "OriginInsideBall";
    case Errc::NonUnitDirection: return "NonUnitDirection";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmbeddingFailed: return "EmbeddingFailed";
    case Errc::InvalidTriangle: return "InvalidTriangle";
    case Errc::ImagesOverlap: return "ImagesOverlap";
    case Errc::DomainError: return "DomainError";
    case Errc::TooManyBalls: return "TooManyBalls";
    case Errc::PointInsideBall: return "PointInsideBall";
    case Errc::PointInsideBody: return "PointInsideBody";
    case Errc::PredicateFailed: return "PredicateFailed";
    case Errc::NoRayFound: return "NoRayFound";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace umbra
