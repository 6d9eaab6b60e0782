#include "umbra/constructions.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace umbra {

namespace {

/// Circumcenter of m affinely independent points in R^n (m = n+1): the
/// unique solution of |x_i - c|^2 = |x_0 - c|^2.
Vector circumcenter(const std::vector<Vector>& pts) {
  const int n = static_cast<int>(pts.front().size());
  const int m = static_cast<int>(pts.size());
  Eigen::MatrixXd A(m - 1, n);
  Eigen::VectorXd b(m - 1);
  for (int i = 1; i < m; ++i) {
    A.row(i - 1) = 2.0 * (pts[i] - pts[0]).transpose();
    b[i - 1] = pts[i].squaredNorm() - pts[0].squaredNorm();
  }
  return A.colPivHouseholderQr().solve(b);
}

/// In-plane vertices of a triangle with side lengths (s12, s13, s23) and its
/// circumcenter; vertex 1 at the origin, vertex 2 on the +x axis.
struct PlanarTriangle {
  Eigen::Vector2d p1, p2, p3, center;
  double circumradius;
};

PlanarTriangle embed_triangle(double s12, double s13, double s23) {
  PlanarTriangle t;
  t.p1 = {0.0, 0.0};
  t.p2 = {s12, 0.0};
  const double x = (s12 * s12 + s13 * s13 - s23 * s23) / (2.0 * s12);
  const double y2 = s13 * s13 - x * x;
  if (!(y2 > 0.0)) throw Error(Errc::InvalidTriangle, "degenerate tangency triangle");
  t.p3 = {x, std::sqrt(y2)};
  const double oy = (x * x + y2 - s12 * x) / (2.0 * t.p3[1]);
  t.center = {0.5 * s12, oy};
  t.circumradius = (t.p1 - t.center).norm();
  return t;
}

}  // namespace

double tangent_segment_length(double r1, double r2) { return 2.0 * std::sqrt(r1 * r2); }

double separating_line_offset(double r1, double r2) { return 0.5 * (r1 - r2); }

Configuration tangent_simplex_family(const SimplexParams& params, const Tolerances& tol) {
  const int n = params.dimension;
  if (n < 2) throw Error(Errc::UnsupportedDimension, "simplex family needs dimension >= 2");
  if (params.epsilon < 0.0 || params.shrink_delta < 0.0) {
    throw Error(Errc::InvalidArgument, "epsilon and shrink_delta must be nonnegative");
  }
  const int m = n + 1;
  const double a = std::sqrt(static_cast<double>(n + 1) / (2.0 * n));

  std::vector<double> radii(m);
  radii[0] = a + params.epsilon;
  double pow2 = 1.0;
  for (int i = 1; i < m; ++i) {
    pow2 *= 2.0;
    radii[i] = a - params.epsilon / pow2;
    if (!(radii[i] > 0.0)) throw Error(Errc::InvalidArgument, "epsilon leaves a nonpositive radius");
  }

  // Classical multidimensional scaling of the prescribed center distances
  // d_ij = r_i + r_j: double-center the squared distances and factor.
  Eigen::MatrixXd d2(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double d = i == j ? 0.0 : radii[i] + radii[j];
      d2(i, j) = d * d;
    }
  }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
  const Eigen::MatrixXd gram = -0.5 * centering * d2 * centering;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double lambda_scale = std::max(std::abs(lambda[0]), std::abs(lambda[m - 1]));
  if (lambda[0] < -1e-9 * std::max(1.0, lambda_scale)) {
    throw Error(Errc::EmbeddingFailed, "distance matrix is not realizable (Gram matrix indefinite)");
  }

  std::vector<Vector> centers(m, Vector::Zero(n));
  for (int k = 0; k < n; ++k) {
    const int col = m - 1 - k;
    const double s = std::sqrt(std::max(0.0, lambda[col]));
    for (int i = 0; i < m; ++i) centers[i][k] = s * eig.eigenvectors()(i, col);
  }

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::abs((centers[i] - centers[j]).norm() - (radii[i] + radii[j])) > 1e-9) {
        throw Error(Errc::EmbeddingFailed, "embedded centers do not realize the tangency distances");
      }
    }
  }

  const Vector cc = circumcenter(centers);
  double rho = 0.0;
  for (const auto& c : centers) rho += (c - cc).norm();
  rho /= m;
  for (const auto& c : centers) {
    if (std::abs((c - cc).norm() - rho) > 1e-9) {
      throw Error(Errc::EmbeddingFailed, "circumcenter residual exceeds 1e-9");
    }
  }

  Configuration config;
  config.dimension = n;
  config.sphere_radius = 1.0;
  config.mode = Mode::Line;
  config.topology = params.shrink_delta > 0.0 ? Topology::Closed : Topology::Open;
  config.balls.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double r = radii[i] / rho - params.shrink_delta;
    if (!(r > 0.0)) throw Error(Errc::InvalidArgument, "shrink_delta leaves a nonpositive radius");
    config.balls.push_back({(centers[i] - cc) / rho, r});
  }
  (void)tol;
  return config;
}

Configuration tangent_triple(double r1, double r2, double r3, Topology topology) {
  if (!(r1 > 0.0 && r2 > 0.0 && r3 > 0.0)) {
    throw Error(Errc::InvalidArgument, "radii must be positive");
  }
  const PlanarTriangle t = embed_triangle(r1 + r2, r1 + r3, r2 + r3);
  if (t.circumradius > 1.0 - 1e-12) {
    throw Error(Errc::InvalidArgument, "tangency triangle does not fit on the unit sphere");
  }
  const double h = std::sqrt(1.0 - t.circumradius * t.circumradius);
  auto lift = [&](const Eigen::Vector2d& p) {
    return make_vec({p[0] - t.center[0], p[1] - t.center[1], h});
  };
  Configuration config;
  config.dimension = 3;
  config.mode = Mode::Line;
  config.topology = topology;
  config.balls = {{lift(t.p1), r1}, {lift(t.p2), r2}, {lift(t.p3), r3}};
  return config;
}

std::pair<Configuration, ExtremalReport> extremal_two_ball(double eta) {
  if (!(eta > 0.0 && eta < 0.1)) {
    throw Error(Errc::InvalidArgument, "eta must lie in (0, 0.1)");
  }
  const double r2 = std::sqrt(5.0) - 2.0;
  const double r1 = 1.0 - eta;

  // In the limiting picture the big ball touches the through-center tangent
  // line exactly at the center, which puts its center at the top of the
  // circle and the small one at polar angle asin(r2). Shrinking r1 opens a
  // gap of half-width acos(1 - eta) around the tangent direction; rotating
  // the small ball down by twice that re-covers it with margin on both ends.
  const double gap = std::acos(1.0 - eta);
  const double psi2 = std::asin(r2) - 2.0 * gap;

  Configuration config;
  config.dimension = 2;
  config.mode = Mode::Line;
  config.topology = Topology::Closed;
  config.balls = {{make_vec({0.0, 1.0}), r1},
                  {make_vec({std::cos(psi2), std::sin(psi2)}), r2}};

  ExtremalReport report;
  report.eta = eta;
  report.r1 = r1;
  report.r2 = r2;
  report.r2_root = r2;
  report.quadratic_residual = r2 * r2 + 4.0 * r2 - 1.0;
  report.max_offset = 0.5 * (3.0 - std::sqrt(5.0));
  report.tangent_segment = tangent_segment_length(r1, r2);
  report.separating_offset = separating_line_offset(r1, r2);
  return {config, report};
}

Configuration triangle_family(const TriangleSides& sides) {
  const double a = sides.a, b = sides.b, c = sides.c;
  if (!(a > b && b > c && c > 0.0)) {
    throw Error(Errc::InvalidTriangle, "sides must satisfy a > b > c > 0");
  }
  if (!(a < b + c)) throw Error(Errc::InvalidTriangle, "strict triangle inequality violated");
  const double p = sides.semiperimeter();

  // Vertices: A opposite side a, etc. Side BC = a goes on the x axis.
  const PlanarTriangle t = [&] {
    PlanarTriangle tri;
    tri.p1 = {0.0, 0.0};  // B
    tri.p2 = {a, 0.0};    // C
    const double x = (a * a + c * c - b * b) / (2.0 * a);
    const double y2 = c * c - x * x;
    if (!(y2 > 0.0)) throw Error(Errc::InvalidTriangle, "degenerate triangle");
    tri.p3 = {x, std::sqrt(y2)};  // A
    const double oy = (x * x + y2 - a * x) / (2.0 * tri.p3[1]);
    tri.center = {0.5 * a, oy};
    tri.circumradius = (tri.p1 - tri.center).norm();
    return tri;
  }();

  auto place = [&](const Eigen::Vector2d& v, double r) {
    return Ball{make_vec({(v[0] - t.center[0]) / t.circumradius,
                          (v[1] - t.center[1]) / t.circumradius}),
                r / t.circumradius};
  };
  Configuration config;
  config.dimension = 2;
  config.mode = Mode::Ray;
  config.topology = Topology::Closed;
  config.balls = {place(t.p3, p - a), place(t.p1, p - b), place(t.p2, p - c)};
  return config;
}

Configuration ten_ball_family(TenBallVariant variant) {
  const double big = std::sqrt(2.0) - 1.0;
  const double small = variant == TenBallVariant::Printed
                           ? 3.0 - 2.0 * std::sqrt(2.0)
                           : 2.0 * std::sin(M_PI / 8.0) - (std::sqrt(2.0) - 1.0);
  const double q = std::sqrt(0.5);

  Configuration config;
  config.dimension = 3;
  config.mode = Mode::Ray;
  config.topology = Topology::Open;
  config.balls = {
      {make_vec({0.0, 0.0, 1.0}), 1.0},   {make_vec({0.0, 0.0, -1.0}), 1.0},
      {make_vec({1.0, 0.0, 0.0}), big},   {make_vec({0.0, 1.0, 0.0}), big},
      {make_vec({-1.0, 0.0, 0.0}), big},  {make_vec({0.0, -1.0, 0.0}), big},
      {make_vec({q, q, 0.0}), small},     {make_vec({-q, q, 0.0}), small},
      {make_vec({-q, -q, 0.0}), small},   {make_vec({q, -q, 0.0}), small},
  };
  return config;
}

Configuration homothety_double(const Configuration& config, double k, const Tolerances& tol) {
  if (config.mode != Mode::Line) {
    throw Error(Errc::InvalidArgument, "homothety doubling expects a Line-mode configuration");
  }
  if (!(k < 0.0)) throw Error(Errc::InvalidArgument, "homothety ratio must be negative");

  Configuration out = config;
  out.mode = Mode::Ray;
  out.centers_free = true;
  const double mag = std::abs(k);
  for (const auto& ball : config.balls) {
    Ball image{k * ball.center, mag * ball.radius};
    for (std::size_t j = 0; j < config.balls.size(); ++j) {
      const double gap = (image.center - config.balls[j].center).norm() -
                         (image.radius + config.balls[j].radius);
      const bool disjoint =
          config.topology == Topology::Closed ? gap > tol.geom : gap >= -tol.geom;
      if (!disjoint) {
        throw Error(Errc::ImagesOverlap,
                    "homothety image overlaps original ball " + std::to_string(j));
      }
    }
    out.balls.push_back(std::move(image));
  }
  return out;
}

}  // namespace umbra
