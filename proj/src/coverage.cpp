#include "umbra/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace umbra {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

/// Position of angle e inside interval I, as an offset in [0, 2*pi) from
/// I.lo; offsets within tol of 2*pi are folded back to the lo endpoint.
double interval_offset(double e, const AngularInterval& iv, double tol) {
  double p = wrap_angle(e - iv.lo);
  if (p >= kTwoPi - tol) p = 0.0;
  return p;
}

bool interval_covers(double e, const AngularInterval& iv, double tol) {
  const double p = interval_offset(e, iv, tol);
  const double w = iv.width();
  if (p > tol && p < w - tol) return true;                         // interior
  if (p <= tol || std::abs(p - w) <= tol) return iv.boundary == Topology::Closed;
  return false;
}

void check_interval(const AngularInterval& iv) {
  if (!(iv.width() > 0.0) || iv.width() > kTwoPi + 1e-9) {
    throw Error(Errc::InvalidArgument, "angular interval must have width in (0, 2*pi]");
  }
}

double clearance_to_caps(const Vector& w, const std::vector<SphericalCap>& caps) {
  double c = M_PI;
  for (const auto& cap : caps) {
    c = std::min(c, angle_between(w, cap.axis) - cap.half_angle);
  }
  return c;
}

bool in_any_cap(const Vector& w, const std::vector<SphericalCap>& caps) {
  for (const auto& cap : caps) {
    if (cap.contains(w)) return true;
  }
  return false;
}

Vector vec_from_angle(double theta) { return make_vec({std::cos(theta), std::sin(theta)}); }

/// Orthonormal pair spanning the plane orthogonal to a unit 3-vector.
void orthonormal_frame(const Vector& axis, Vector& e1, Vector& e2) {
  Eigen::Vector3d a(axis[0], axis[1], axis[2]);
  int least = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(a[i]) < std::abs(a[least])) least = i;
  }
  Eigen::Vector3d ref = Eigen::Vector3d::Zero();
  ref[least] = 1.0;
  Eigen::Vector3d u = a.cross(ref).normalized();
  Eigen::Vector3d v = a.cross(u);
  e1 = make_vec({u[0], u[1], u[2]});
  e2 = make_vec({v[0], v[1], v[2]});
}

/// Hill-climb on the sphere maximizing the signed margin
/// min_k(angle(w, axis_k) - h_k); keeps the witness verified at every step.
Vector improve_witness(Vector w, const std::vector<SphericalCap>& caps,
                       const WitnessFilter& filter) {
  if (caps.empty()) return w;
  auto margin = [&caps](const Vector& v) { return clearance_to_caps(v, caps); };
  Vector best = w;
  double best_margin = margin(w);
  double step = 0.2;
  int evals = 0;
  while (step > 1e-9 && evals < 4000) {
    bool improved = false;
    Vector e1, e2;
    orthonormal_frame(best, e1, e2);
    for (int l = 0; l < 8; ++l) {
      const double phi = kTwoPi * l / 8.0;
      Vector cand = std::cos(step) * best + std::sin(step) * (std::cos(phi) * e1 + std::sin(phi) * e2);
      cand.normalize();
      ++evals;
      const double m = margin(cand);
      if (m > best_margin + 1e-15) {
        best = cand;
        best_margin = m;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  if (best_margin >= margin(w) && !in_any_cap(best, caps) && (!filter || filter(best))) return best;
  return w;
}

double phi_d(int d) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

double inv_normal_cdf(double p) {
  // Acklam's rational approximation, |relative error| < 1.15e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

std::vector<AngularInterval> caps_to_intervals(const std::vector<SphericalCap>& caps) {
  std::vector<AngularInterval> intervals;
  intervals.reserve(caps.size());
  for (const auto& cap : caps) {
    if (cap.axis.size() != 2) {
      throw Error(Errc::DimensionMismatch, "caps_to_intervals expects axes on S^1");
    }
    const double theta = std::atan2(cap.axis[1], cap.axis[0]);
    intervals.push_back({theta - cap.half_angle, theta + cap.half_angle, cap.boundary});
  }
  return intervals;
}

std::vector<AngularInterval> uncovered_arcs(const std::vector<AngularInterval>& intervals,
                                            double tol_merge) {
  if (intervals.empty()) return {AngularInterval{0.0, kTwoPi, Topology::Closed}};
  for (const auto& iv : intervals) check_interval(iv);

  // Normalize, unroll one extra turn, merge in the closed sense.
  struct Run {
    double lo, hi;
  };
  std::vector<Run> events;
  events.reserve(2 * intervals.size());
  for (const auto& iv : intervals) {
    const double lo = wrap_angle(iv.lo);
    const double w = std::min(iv.width(), kTwoPi);
    events.push_back({lo, lo + w});
    events.push_back({lo + kTwoPi, lo + w + kTwoPi});
  }
  std::sort(events.begin(), events.end(), [](const Run& a, const Run& b) { return a.lo < b.lo; });

  std::vector<Run> runs;
  for (const auto& ev : events) {
    if (runs.empty() || ev.lo > runs.back().hi + tol_merge) {
      runs.push_back(ev);
    } else {
      runs.back().hi = std::max(runs.back().hi, ev.hi);
    }
  }

  const double start = runs.front().lo;
  const double limit = start + kTwoPi;
  std::vector<AngularInterval> gaps;
  if (runs.front().hi < limit - tol_merge) {
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      if (runs[i].hi >= limit - tol_merge) break;
      gaps.push_back({runs[i].hi, std::min(runs[i + 1].lo, limit), Topology::Closed});
    }
    return gaps;
  }

  // Closed merge covers the circle; only interval endpoints can remain
  // uncovered (they do when open intervals merely abut).
  std::vector<double> endpoints;
  for (const auto& iv : intervals) {
    endpoints.push_back(wrap_angle(iv.lo));
    endpoints.push_back(wrap_angle(iv.hi));
  }
  std::sort(endpoints.begin(), endpoints.end());
  double last = std::numeric_limits<double>::quiet_NaN();
  for (double e : endpoints) {
    if (!std::isnan(last) && std::abs(e - last) <= tol_merge) continue;
    last = e;
    bool covered = false;
    for (const auto& iv : intervals) {
      if (interval_covers(e, iv, tol_merge)) {
        covered = true;
        break;
      }
    }
    if (!covered) gaps.push_back({e, e, Topology::Closed});
  }
  return gaps;
}

CoverageVerdict cover_s1(const std::vector<AngularInterval>& intervals,
                         const WitnessFilter& filter) {
  auto gaps = uncovered_arcs(intervals);
  if (gaps.empty()) return {CoverageStatus::Covered, std::nullopt, std::nullopt, std::nullopt};

  std::stable_sort(gaps.begin(), gaps.end(), [](const AngularInterval& a, const AngularInterval& b) {
    return a.width() > b.width();
  });
  for (const auto& gap : gaps) {
    const double mid = wrap_angle(0.5 * (gap.lo + gap.hi));
    const Vector w = vec_from_angle(mid);
    if (filter && !filter(w)) continue;
    return {CoverageStatus::Uncovered, w, 0.5 * gap.width(), std::nullopt};
  }
  // Every candidate was rejected by the exact filter. Hairline gaps are
  // tolerance noise the filter is entitled to overrule; anything wider means
  // the cap set and the filter genuinely disagree.
  for (const auto& gap : gaps) {
    if (gap.width() > 2e-8) {
      throw Error(Errc::Internal, "uncovered gap witness rejected by exact verification");
    }
  }
  return {CoverageStatus::Covered, std::nullopt, std::nullopt, std::nullopt};
}

CoverageVerdict cover_s2(const std::vector<SphericalCap>& caps, const Tolerances& tol,
                         const WitnessFilter& filter) {
  for (const auto& cap : caps) {
    if (cap.axis.size() != 3) throw Error(Errc::DimensionMismatch, "cover_s2 expects axes on S^2");
  }
  for (const auto& cap : caps) {
    if (cap.boundary == Topology::Closed && cap.half_angle >= M_PI - 1e-15) {
      return {CoverageStatus::Covered, std::nullopt, std::nullopt, std::nullopt};
    }
  }

  auto accept = [&](const Vector& w) { return !in_any_cap(w, caps) && (!filter || filter(w)); };
  auto verdict_for = [&](Vector w) {
    w = improve_witness(w, caps, filter);
    const double clearance = std::max(0.0, clearance_to_caps(w, caps));
    return CoverageVerdict{CoverageStatus::Uncovered, w, clearance, std::nullopt};
  };

  if (caps.empty()) return verdict_for(make_vec({0.0, 0.0, 1.0}));

  for (std::size_t i = 0; i < caps.size(); ++i) {
    const auto& cap = caps[i];
    const double sin_h = std::sin(cap.half_angle);
    if (sin_h <= 1e-12) continue;  // degenerate boundary circle
    Vector e1, e2;
    orthonormal_frame(cap.axis, e1, e2);
    auto circle_point = [&](double phi) {
      Vector p = std::cos(cap.half_angle) * cap.axis +
                 sin_h * (std::cos(phi) * e1 + std::sin(phi) * e2);
      p.normalize();
      return p;
    };
    auto pushed_out = [&](double phi) {
      const double h = std::min(M_PI, cap.half_angle + tol.push);
      Vector p = std::cos(h) * cap.axis + std::sin(h) * (std::cos(phi) * e1 + std::sin(phi) * e2);
      p.normalize();
      return p;
    };

    // Arcs of this boundary circle covered by every other cap, in closed form:
    // the dot of the circle point with the other axis is A + R cos(phi-phi0).
    std::vector<AngularInterval> covered;
    bool fully_covered = false;
    for (std::size_t j = 0; j < caps.size() && !fully_covered; ++j) {
      if (j == i) continue;
      const auto& other = caps[j];
      const double A = std::cos(cap.half_angle) * cap.axis.dot(other.axis);
      const double B = sin_h * e1.dot(other.axis);
      const double C = sin_h * e2.dot(other.axis);
      const double R = std::hypot(B, C);
      const double target = std::cos(other.half_angle);
      if (R <= 1e-15) {
        if (A > target || (A >= target && other.boundary == Topology::Closed)) fully_covered = true;
        continue;
      }
      const double q = (target - A) / R;
      if (q <= -1.0) {
        fully_covered = true;
        continue;
      }
      if (q >= 1.0) continue;
      const double delta = std::acos(q);
      const double phi0 = std::atan2(C, B);
      covered.push_back({phi0 - delta, phi0 + delta, other.boundary});
    }
    if (fully_covered) continue;

    for (const auto& arc : uncovered_arcs(covered)) {
      const double mid = wrap_angle(0.5 * (arc.lo + arc.hi));
      const Vector pushed = pushed_out(mid);
      if (accept(pushed)) return verdict_for(pushed);
      const Vector raw = circle_point(mid);
      if (accept(raw)) return verdict_for(raw);
    }
  }

  for (const auto& cap : caps) {
    const Vector anti = -cap.axis;
    if (accept(anti)) return verdict_for(anti);
  }
  return {CoverageStatus::Covered, std::nullopt, std::nullopt, std::nullopt};
}

std::vector<Vector> deterministic_directions(int dimension, long long count) {
  if (dimension < 2) throw Error(Errc::UnsupportedDimension, "direction sets need dimension >= 2");
  if (count < 1) throw Error(Errc::InvalidArgument, "sample count must be positive");
  std::vector<Vector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (dimension == 2) {
    const double golden = 0.6180339887498949;
    for (long long i = 0; i < count; ++i) {
      double f = 0.5 + static_cast<double>(i) * golden;
      f -= std::floor(f);
      dirs.push_back(vec_from_angle(kTwoPi * f));
    }
    return dirs;
  }
  if (dimension == 3) {
    const double dz = 2.0 / static_cast<double>(count);
    const double dtheta = M_PI * (std::sqrt(5.0) + 1.0);
    for (long long i = 0; i < count; ++i) {
      const double z = -1.0 + dz * (0.5 + static_cast<double>(i));
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double theta = dtheta * static_cast<double>(i);
      dirs.push_back(make_vec({r * std::cos(theta), r * std::sin(theta), z}));
    }
    return dirs;
  }
  // Kronecker sequence in the unit cube mapped through the inverse normal
  // CDF, then normalized; rotation constants from the generalized golden
  // ratio keep the sequence low-discrepancy in any dimension.
  const double g = phi_d(dimension);
  std::vector<double> alpha(dimension);
  double g_pow = 1.0;
  for (int j = 0; j < dimension; ++j) {
    g_pow /= g;
    alpha[j] = g_pow;
  }
  long long i = 0;
  while (static_cast<long long>(dirs.size()) < count) {
    ++i;
    Vector v(dimension);
    for (int j = 0; j < dimension; ++j) {
      double f = 0.5 + static_cast<double>(i) * alpha[j];
      f -= std::floor(f);
      f = std::min(std::max(f, 1e-12), 1.0 - 1e-12);
      v[j] = inv_normal_cdf(f);
    }
    const double n = v.norm();
    if (n < 1e-8) continue;
    dirs.push_back(v / n);
  }
  return dirs;
}

std::vector<Vector> random_directions(int dimension, long long count, std::uint64_t seed) {
  if (dimension < 2) throw Error(Errc::UnsupportedDimension, "direction sets need dimension >= 2");
  std::vector<Vector> dirs;
  if (count <= 0) return dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // (0,1)
  };
  auto gauss_pair = [&uniform](double& g1, double& g2) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    g1 = r * std::cos(kTwoPi * u2);
    g2 = r * std::sin(kTwoPi * u2);
  };
  while (static_cast<long long>(dirs.size()) < count) {
    Vector v(dimension);
    for (int j = 0; j < dimension; j += 2) {
      double g1, g2;
      gauss_pair(g1, g2);
      v[j] = g1;
      if (j + 1 < dimension) v[j + 1] = g2;
    }
    const double n = v.norm();
    if (n < 1e-8) continue;
    dirs.push_back(v / n);
  }
  return dirs;
}

CoverageVerdict cover_sample(const std::vector<SphericalCap>& caps, long long samples,
                             const WitnessFilter& filter, int dimension, std::uint64_t seed,
                             long long random_batch) {
  if (samples < 1) throw Error(Errc::InvalidArgument, "cover_sample needs samples >= 1");
  int dim = dimension;
  if (dim == 0) {
    if (caps.empty()) {
      throw Error(Errc::InvalidArgument, "cover_sample needs a dimension when no caps are given");
    }
    dim = static_cast<int>(caps.front().axis.size());
  }
  for (const auto& cap : caps) {
    if (cap.axis.size() != dim) throw Error(Errc::DimensionMismatch, "cap dimensions differ");
  }

  long long uncovered = 0;
  std::optional<Vector> witness;
  auto scan = [&](const std::vector<Vector>& dirs) {
    for (const auto& u : dirs) {
      if (in_any_cap(u, caps)) continue;
      ++uncovered;
      if (!witness && (!filter || filter(u))) witness = u;
    }
  };
  scan(deterministic_directions(dim, samples));
  if (random_batch > 0) scan(random_directions(dim, random_batch, seed));

  const double fraction =
      static_cast<double>(uncovered) / static_cast<double>(samples + std::max(random_batch, 0LL));
  if (witness) {
    const double clearance = std::max(0.0, clearance_to_caps(*witness, caps));
    return {CoverageStatus::Uncovered, witness, clearance, fraction};
  }
  return {CoverageStatus::Estimated, std::nullopt, std::nullopt, fraction};
}

CoverageVerdict shadow_verdict(const Configuration& config, const VerdictOptions& options) {
  const int n = config.dimension;
  if (n < 2) throw Error(Errc::UnsupportedDimension, "configurations need dimension >= 2");
  const Vector origin = Vector::Zero(n);
  const Tolerances& tol = options.tol;

  for (const auto& ball : config.balls) {
    if (ball.center.size() != n) {
      throw Error(Errc::DimensionMismatch, "ball dimension differs from the configuration's");
    }
    const double d = ball.center.norm();
    const bool inside = config.topology == Topology::Closed ? d <= ball.radius + tol.geom
                                                            : d < ball.radius - tol.geom;
    if (inside) throw Error(Errc::OriginInsideBall, "the origin lies inside a ball");
  }

  std::vector<SphericalCap> caps;
  caps.reserve(config.balls.size() * (config.mode == Mode::Line ? 2 : 1));
  for (const auto& ball : config.balls) {
    for (auto& cap : occlusion_caps(ball, origin, config.mode, config.topology, tol)) {
      caps.push_back(std::move(cap));
    }
  }

  WitnessFilter misses_every_ball = [&config, &origin, &tol](const Vector& u) {
    for (const auto& ball : config.balls) {
      const bool hit = config.mode == Mode::Line
                           ? line_hits_ball(u, origin, ball, config.topology, tol)
                           : ray_hits_ball(u, origin, ball, config.topology, tol);
      if (hit) return false;
    }
    return true;
  };

  if (n == 2) return cover_s1(caps_to_intervals(caps), misses_every_ball);
  if (n == 3) return cover_s2(caps, tol, misses_every_ball);
  return cover_sample(caps, options.samples, misses_every_ball, n, options.seed,
                      options.random_batch);
}

}  // namespace umbra
