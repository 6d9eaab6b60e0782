#ifndef UMBRA_COVERAGE_HPP
#define UMBRA_COVERAGE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "umbra/geometry.hpp"

namespace umbra {

/// Arc on S^1, measured counterclockwise; may be stored unwrapped (lo can be
/// negative, hi up to lo + 2*pi).
struct AngularInterval {
  double lo = 0.0;
  double hi = 0.0;
  Topology boundary = Topology::Closed;

  double width() const { return hi - lo; }
};

enum class CoverageStatus { Covered, Uncovered, Estimated };

struct CoverageVerdict {
  CoverageStatus status = CoverageStatus::Covered;
  std::optional<Vector> witness;            // unit direction missing every cap
  std::optional<double> clearance;          // angular distance to the nearest cap
  std::optional<double> uncovered_fraction; // sampling estimate (Estimated/Uncovered via sampling)
};

/// Optional extra acceptance test a witness candidate must pass before being
/// returned (shadow_verdict plugs the exact per-ball miss test in here).
using WitnessFilter = std::function<bool(const Vector&)>;

/// Caps on S^1 become arcs [theta - h, theta + h]; boundary inherited.
std::vector<AngularInterval> caps_to_intervals(const std::vector<SphericalCap>& caps);

/// Maximal uncovered arcs of the circle. Positive-width entries are genuine
/// gaps of the closed-merge; zero-width entries (lo == hi) are single
/// uncovered endpoints left by abutting open intervals. Endpoint coincidence
/// is decided at tol_merge resolution.
std::vector<AngularInterval> uncovered_arcs(const std::vector<AngularInterval>& intervals,
                                            double tol_merge = 1e-12);

/// Exact S^1 coverage decision by endpoint sort/merge. On failure the witness
/// is the midpoint of the largest uncovered gap and the clearance is half its
/// width; abutting open intervals yield an Uncovered verdict with clearance 0.
CoverageVerdict cover_s1(const std::vector<AngularInterval>& intervals,
                         const WitnessFilter& filter = {});

/// Exact-up-to-tolerance S^2 coverage decision by the boundary-witness
/// method: every cap boundary circle is checked for sub-arcs uncovered by the
/// other caps (closed-form circle/circle intersection + the S^1 decider);
/// midpoints of such arcs, pushed outward by tol.push, are verified witness
/// candidates, as are all cap-axis antipodes. A verified witness is locally
/// clearance-maximized before being returned. When the true uncovered region
/// has angular inradius above tol.push this finds a witness.
CoverageVerdict cover_s2(const std::vector<SphericalCap>& caps, const Tolerances& tol = {},
                         const WitnessFilter& filter = {});

/// Deterministic low-discrepancy unit directions: golden-angle sequence on
/// S^1, Fibonacci spiral on S^2, Kronecker sequence mapped through the
/// inverse normal CDF for higher dimensions.
std::vector<Vector> deterministic_directions(int dimension, long long count);

/// Seeded pseudorandom unit directions (xorshift-free: mt19937_64 bits mapped
/// through an explicit Box-Muller, so streams are reproducible everywhere).
std::vector<Vector> random_directions(int dimension, long long count, std::uint64_t seed);

/// Sampling estimate of cap coverage over the deterministic direction set
/// plus an optional seeded pseudorandom batch. Any uncovered sample is
/// promoted to a verified witness (first in fixed point order); otherwise the
/// verdict is Estimated with uncovered_fraction.
CoverageVerdict cover_sample(const std::vector<SphericalCap>& caps, long long samples,
                             const WitnessFilter& filter = {}, int dimension = 0,
                             std::uint64_t seed = 0, long long random_batch = 0);

struct VerdictOptions {
  long long samples = 1000000;  // used when dimension > 3
  std::uint64_t seed = 0;
  long long random_batch = 0;
  Tolerances tol{};
};

/// Full shadow decision for a configuration: builds the occlusion caps of
/// every ball around the origin (Line mode doubles caps), then dispatches to
/// cover_s1 (n = 2), cover_s2 (n = 3) or cover_sample (n > 3). Every
/// Uncovered witness is re-verified against every ball with the exact
/// line/ray tests before being returned.
CoverageVerdict shadow_verdict(const Configuration& config, const VerdictOptions& options = {});

}  // namespace umbra

#endif  // UMBRA_COVERAGE_HPP
