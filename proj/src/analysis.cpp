#include "umbra/analysis.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "umbra/coverage.hpp"

namespace umbra {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double heron_circumradius(double a, double b, double c) {
  const double prod = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
  if (!(prod > 0.0)) throw Error(Errc::DomainError, "degenerate triangle");
  return a * b * c / std::sqrt(prod);
}

}  // namespace

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double xtol, int max_iter) {
  if (hi < lo) std::swap(lo, hi);
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double formula_ob(double r1, double r2) {
  if (!(r2 > 0.0 && r2 <= r1 && r1 < 1.0 && r1 + r2 < 2.0)) {
    throw Error(Errc::DomainError, "formula_ob needs 0 < r2 <= r1 < 1");
  }
  const double theta = 2.0 * std::asin(0.5 * (r1 + r2));
  const double sin_theta = std::sin(theta);
  if (sin_theta <= 1e-12) throw Error(Errc::DomainError, "sin(theta) vanishes");
  const double radicand = 2.0 - r1 * r1 - r2 * r2 -
                          2.0 * std::sqrt(1.0 - r1 * r1) * std::sqrt(1.0 - r2 * r2) *
                              std::cos(theta);
  return std::sqrt(std::max(0.0, radicand)) / sin_theta;
}

ScanRecord min_r3_scan(double r2, int r1_grid) {
  if (!(r2 > 0.0 && r2 < 1.0)) throw Error(Errc::DomainError, "r2 must lie in (0, 1)");
  if (r1_grid < 1) throw Error(Errc::DomainError, "r1_grid must be positive");

  const double step = (1.0 - r2) / r1_grid;
  double best_r1 = r2;
  double best_ob = formula_ob(r2, r2);
  int best_k = 0;
  for (int k = 1; k < r1_grid; ++k) {
    const double r1 = r2 + k * step;
    const double ob = formula_ob(r1, r2);
    if (ob < best_ob) {
      best_ob = ob;
      best_r1 = r1;
      best_k = k;
    }
  }
  if (r1_grid > 1) {
    const double lo = r2 + std::max(0, best_k - 1) * step;
    const double hi = std::min(r2 + (best_k + 1) * step, 1.0 - 1e-12);
    best_r1 = golden_section_minimize([r2](double r1) { return formula_ob(r1, r2); }, lo, hi, 1e-9);
    best_ob = formula_ob(best_r1, r2);
  }

  ScanRecord rec;
  rec.r1 = best_r1;
  rec.r2 = r2;
  rec.ob = best_ob;
  rec.sum_with_min_r3 = best_r1 + r2 + best_ob;
  rec.theta = 2.0 * std::asin(0.5 * (best_r1 + r2));
  return rec;
}

ClaimsReport derive_claims(double r2_start, double r2_stop, double step, int r1_grid) {
  if (!(step > 0.0 && r2_start < r2_stop)) throw Error(Errc::DomainError, "bad sweep range");
  ClaimsReport report;
  report.sum_bound = 1.5 * std::sqrt(3.0);
  report.small_r2_margin = std::numeric_limits<double>::infinity();
  report.large_r2_margin = std::numeric_limits<double>::infinity();

  std::vector<double> sweep;
  const long long steps = static_cast<long long>(std::floor((r2_stop - r2_start) / step));
  for (long long k = 0; k < steps; ++k) sweep.push_back(r2_start + k * step);
  sweep.push_back(r2_stop);

  bool any_small = false, any_large = false;
  for (double r2 : sweep) {
    const ScanRecord rec = min_r3_scan(r2, r1_grid);
    report.records.push_back(rec);
    if (r2 < 0.77) {
      any_small = true;
      const double margin = rec.ob - 0.77;
      if (margin < report.small_r2_margin) {
        report.small_r2_margin = margin;
        report.small_r2_argmin = r2;
      }
    }
    if (r2 > 0.85) {
      any_large = true;
      const double margin = rec.sum_with_min_r3 - 2.6;
      if (margin < report.large_r2_margin) {
        report.large_r2_margin = margin;
        report.large_r2_argmin = r2;
      }
    }
  }
  report.small_r2_pass = any_small && report.small_r2_margin > 0.0;
  report.large_r2_pass = any_large && report.large_r2_margin > 0.0;
  return report;
}

Fig2Quantities fig2_quantities(double r1, double r2) {
  Fig2Quantities q;
  q.r1 = r1;
  q.r2 = r2;
  q.s = r1 + r2;
  const double s2 = q.s * q.s;
  if (s2 > 4.0) throw Error(Errc::DomainError, "radius sum exceeds the diameter");
  q.o1k = 0.5 * s2;
  q.ko2 = q.s * std::sqrt(1.0 - 0.25 * s2);
  q.ok = q.o1k - 1.0;
  const double nl2 = r2 * r2 - q.ok * q.ok;
  if (nl2 < 0.0) throw Error(Errc::DomainError, "negative radicand for |NL|");
  q.nl = std::sqrt(nl2);
  if (!(q.ko2 > 0.0) || q.nl > q.ko2) {
    throw Error(Errc::DomainError, "sin(alpha/2) = |NL|/|OL| leaves [0, 1]");
  }
  q.sin_half_alpha = q.nl / q.ko2;
  q.alpha = 2.0 * std::asin(q.sin_half_alpha);
  return q;
}

Fig2ChainReport fig2_chain_report() {
  Fig2ChainReport report;
  report.at_s_low = fig2_quantities(0.77, 0.77);
  report.at_s_high = fig2_quantities(1.0, 0.85);
  report.at_nl_high = fig2_quantities(1.0, 0.77);

  // The admissible window pins r2 to [0.77, 0.85]; the angle chain attains
  // its extremes on the r1 = 1 edge, which is where the printed bounds are
  // evaluated as well.
  const int grid = 800;
  for (int k = 0; k <= grid; ++k) {
    const double r2 = 0.77 + (0.85 - 0.77) * k / grid;
    const Fig2Quantities q = fig2_quantities(1.0, r2);
    report.max_sin_half_alpha = std::max(report.max_sin_half_alpha, q.sin_half_alpha);
  }
  report.max_half_alpha = std::asin(report.max_sin_half_alpha);
  report.max_alpha = 2.0 * report.max_half_alpha;
  report.double_max_alpha = 2.0 * report.max_alpha;
  report.double_alpha_below_pi = report.double_max_alpha < M_PI;
  return report;
}

RegionReport semiconvex_region_predicate(double x, double y) {
  RegionReport rep;
  rep.ordered = x > y && y > 1.0;
  rep.triangle_ok = (x < y + 1.0) && (y < x + 1.0) && (x + y > 1.0);
  rep.acute = (y * y + 1.0 - x * x > 0.0) && (x * x + 1.0 - y * y > 0.0) &&
              (x * x + y * y - 1.0 > 0.0);
  rep.p_minus_c = 0.5 * (x + y - 1.0);
  const double prod = (x + y + 1.0) * (-x + y + 1.0) * (x - y + 1.0) * (x + y - 1.0);
  if (prod > 0.0) {
    rep.circumradius = x * y / std::sqrt(prod);
    rep.residual = (x + y - 1.0) - 2.0 * x * y / std::sqrt(prod);
    rep.inside = rep.ordered && rep.triangle_ok && rep.acute &&
                 rep.circumradius > rep.p_minus_c;
  } else {
    rep.circumradius = std::numeric_limits<double>::quiet_NaN();
    rep.residual = std::numeric_limits<double>::quiet_NaN();
    rep.inside = false;
  }
  return rep;
}

HullReport verify_triangle_hull(const TriangleSides& sides, int sample_count) {
  HullReport report;
  report.region = semiconvex_region_predicate(sides.a / sides.c, sides.b / sides.c);
  if (!report.region.inside) {
    throw Error(Errc::PredicateFailed, "sides fail the semiconvex region predicate");
  }
  report.family = triangle_family(sides);
  const auto& balls = report.family.balls;

  report.max_tangency_error = 0.0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const double err = std::abs((balls[i].center - balls[j].center).norm() -
                                  (balls[i].radius + balls[j].radius));
      report.max_tangency_error = std::max(report.max_tangency_error, err);
    }
  }
  report.tangency_ok = report.max_tangency_error <= 1e-12;

  const double p = sides.semiperimeter();
  report.side_identity_ok = std::abs((p - sides.a) + (p - sides.b) - sides.c) <= 1e-12 &&
                            std::abs((p - sides.b) + (p - sides.c) - sides.a) <= 1e-12 &&
                            std::abs((p - sides.a) + (p - sides.c) - sides.b) <= 1e-12;

  const double circumradius = heron_circumradius(sides.a, sides.b, sides.c);
  report.circumcenter_clearance = circumradius - (p - sides.c);
  report.circumcenter_clearance_scaled = report.circumcenter_clearance / circumradius;
  double min_gap = 1.0;
  for (const auto& b : balls) min_gap = std::min(min_gap, b.center.norm() - b.radius);
  report.circumcenter_outside_circles = min_gap > 0.0;

  // The scaled circle centers are the triangle vertices; the circumcenter
  // sits at the origin and must be strictly interior (acuteness).
  auto cross = [](const Vector& a, const Vector& b, const Vector& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  };
  const Vector origin2 = Vector::Zero(2);
  const double s0 = cross(balls[0].center, balls[1].center, origin2);
  const double s1 = cross(balls[1].center, balls[2].center, origin2);
  const double s2 = cross(balls[2].center, balls[0].center, origin2);
  report.circumcenter_interior = (s0 > 0 && s1 > 0 && s2 > 0) || (s0 < 0 && s1 < 0 && s2 < 0);

  // Deterministic strictly interior barycentric lattice.
  int m = 3;
  while ((m - 1) * (m - 2) / 2 < sample_count) ++m;
  report.all_rays_blocked = true;
  int checked = 0;
  for (int i = 1; i < m - 1 && checked < sample_count; ++i) {
    for (int j = 1; i + j < m && checked < sample_count; ++j) {
      const int k = m - i - j;
      Vector q = (i * balls[0].center + j * balls[1].center + k * balls[2].center) / m;
      std::vector<SphericalCap> caps;
      for (const auto& ball : balls) {
        for (auto& cap : occlusion_caps(ball, q, Mode::Ray, Topology::Closed)) {
          caps.push_back(std::move(cap));
        }
      }
      const CoverageVerdict verdict = cover_s1(caps_to_intervals(caps));
      if (verdict.status != CoverageStatus::Covered) report.all_rays_blocked = false;
      ++checked;
    }
  }
  report.samples_checked = checked;
  return report;
}

Vector find_avoiding_line(const Vector& x, const std::vector<Ball>& balls) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw Error(Errc::UnsupportedDimension, "need dimension >= 2");
  if (static_cast<int>(balls.size()) > n - 1) {
    throw Error(Errc::TooManyBalls, "at most n-1 balls are supported in R^n");
  }
  Eigen::MatrixXd normals(balls.size(), n);
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].center.size() != n) {
      throw Error(Errc::DimensionMismatch, "ball dimension differs from the point's");
    }
    const Vector delta = balls[i].center - x;
    const double d = delta.norm();
    if (d <= balls[i].radius) {
      throw Error(Errc::PointInsideBall, "point is not strictly outside ball " + std::to_string(i));
    }
    normals.row(i) = (delta / d).transpose();
  }

  Vector u;
  if (balls.empty()) {
    u = Vector::Zero(n);
    u[0] = 1.0;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(normals, Eigen::ComputeFullV);
    u = svd.matrixV().col(n - 1);
    u.normalize();
  }

  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (std::abs(normals.row(i).dot(u)) > 1e-12 ||
        line_hits_ball(u, x, balls[i], Topology::Closed)) {
      throw Error(Errc::Internal, "avoiding line failed verification");
    }
  }
  return u;
}

Vector find_avoiding_ray(const Vector& x, const std::vector<ConvexBody>& bodies,
                         long long max_samples) {
  const int n = static_cast<int>(x.size());
  if (n != 2 && n != 3) {
    throw Error(Errc::UnsupportedDimension, "avoiding rays are found in dimensions 2 and 3 only");
  }
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].dimension() != n) {
      throw Error(Errc::DimensionMismatch, "body dimension differs from the point's");
    }
    if (polytope_contains(bodies[i], x, 1e-12)) {
      throw Error(Errc::PointInsideBody, "point lies in body " + std::to_string(i));
    }
  }

  auto avoids_all = [&](const Vector& u) {
    for (const auto& body : bodies) {
      if (ray_hits_polytope(u, x, body, Topology::Closed)) return false;
    }
    return true;
  };

  if (bodies.empty()) {
    Vector u = Vector::Zero(n);
    u[0] = 1.0;
    return u;
  }

  if (n == 2) {
    // Each projection is an arc shorter than pi; the complement is exact.
    std::vector<AngularInterval> arcs;
    for (const auto& body : bodies) {
      const double theta0 = std::atan2(body.vertices[0][1] - x[1], body.vertices[0][0] - x[0]);
      double lo = 0.0, hi = 0.0;
      for (const auto& v : body.vertices) {
        const double theta = std::atan2(v[1] - x[1], v[0] - x[0]);
        const double off = std::remainder(theta - theta0, kTwoPi);
        lo = std::min(lo, off);
        hi = std::max(hi, off);
      }
      if (hi - lo >= M_PI - 1e-12) {
        throw Error(Errc::Internal, "projected arc spans a half-turn");
      }
      arcs.push_back({theta0 + lo, theta0 + hi, Topology::Closed});
    }
    const CoverageVerdict verdict = cover_s1(arcs, avoids_all);
    if (verdict.status == CoverageStatus::Uncovered) return *verdict.witness;
    throw Error(Errc::NoRayFound,
                "inconclusive: the projected arcs cover the direction circle");
  }

  // Dimension 3: verified candidate search. Projected vertex directions give
  // the hull boundary circles; their pairwise intersections are the
  // arrangement vertices of the union boundary.
  std::vector<Vector> dirs;
  std::vector<Eigen::Vector3d> poles;
  for (const auto& body : bodies) {
    std::vector<Eigen::Vector3d> local;
    for (const auto& v : body.vertices) {
      Vector d = v - x;
      const double len = d.norm();
      if (len < 1e-12) continue;
      d /= len;
      dirs.push_back(d);
      local.emplace_back(d[0], d[1], d[2]);
    }
    for (std::size_t a = 0; a < local.size() && poles.size() < 2000; ++a) {
      for (std::size_t b = a + 1; b < local.size(); ++b) {
        Eigen::Vector3d p = local[a].cross(local[b]);
        if (p.norm() > 1e-9) poles.push_back(p.normalized());
      }
    }
  }

  std::vector<Vector> candidates;
  auto add_with_jitter = [&candidates](const Eigen::Vector3d& w) {
    Eigen::Vector3d ref = std::abs(w[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d t1 = w.cross(ref).normalized();
    const Eigen::Vector3d t2 = w.cross(t1);
    for (const auto& c : {w, (w + 1e-4 * t1).normalized(), (w - 1e-4 * t1).normalized(),
                          (w + 1e-4 * t2).normalized(), (w - 1e-4 * t2).normalized()}) {
      candidates.push_back(make_vec({c[0], c[1], c[2]}));
    }
  };
  for (std::size_t a = 0; a < poles.size(); ++a) {
    for (std::size_t b = a + 1; b < poles.size(); ++b) {
      Eigen::Vector3d v = poles[a].cross(poles[b]);
      const double len = v.norm();
      if (len < 1e-9) continue;
      add_with_jitter(v / len);
      add_with_jitter(-v / len);
    }
  }
  for (const auto& d : dirs) candidates.push_back(-d);

  for (const auto& c : candidates) {
    if (avoids_all(c)) return c;
  }
  for (long long count = 1024;; count *= 8) {
    count = std::min(count, max_samples);
    for (const auto& u : deterministic_directions(3, count)) {
      if (avoids_all(u)) return u;
    }
    if (count >= max_samples) break;
  }
  throw Error(Errc::NoRayFound, "inconclusive: no avoiding ray found at maximum sample density (" +
                                    std::to_string(max_samples) + " directions)");
}

}  // namespace umbra
