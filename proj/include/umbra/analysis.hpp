#ifndef UMBRA_ANALYSIS_HPP
#define UMBRA_ANALYSIS_HPP

#include <functional>
#include <vector>

#include "umbra/constructions.hpp"
#include "umbra/geometry.hpp"

namespace umbra {

/// One row of the minimum-|OB| scan: the r1 minimizer for a given r2, the
/// minimum itself (the lower bound for the third radius), the radius sum it
/// forces, and the center angle 2 asin((r1+r2)/2).
struct ScanRecord {
  double r1 = 0.0;
  double r2 = 0.0;
  double ob = 0.0;
  double sum_with_min_r3 = 0.0;
  double theta = 0.0;
};

struct ClaimsReport {
  // (i) every swept r2 below 0.77 forces min |OB| > 0.77
  bool small_r2_pass = false;
  double small_r2_margin = 0.0;  // tightest ob - 0.77
  double small_r2_argmin = 0.0;
  // (ii) every swept r2 above 0.85 forces r1 + r2 + |OB| > 2.6
  bool large_r2_pass = false;
  double large_r2_margin = 0.0;  // tightest sum - 2.6
  double large_r2_argmin = 0.0;
  double sum_bound = 0.0;  // 1.5 sqrt(3)
  std::vector<ScanRecord> records;
};

struct Fig2Quantities {
  double r1 = 0.0, r2 = 0.0, s = 0.0;
  double o1k = 0.0;             // s^2/2
  double ko2 = 0.0;             // s sqrt(1 - s^2/4)
  double ok = 0.0;              // o1k - 1
  double nl = 0.0;              // sqrt(r2^2 - ok^2)
  double sin_half_alpha = 0.0;  // nl / ko2
  double alpha = 0.0;           // 2 asin(nl / ko2)
};

/// The quantity chain evaluated at its interval endpoints. The s-only
/// quantities are pinned by s = 1.54 and s = 1.85; the |NL| and angle bounds
/// come from the r1 = 1 edge with r2 at 0.77 and 0.85, which is where the
/// admissible region attains them.
struct Fig2ChainReport {
  Fig2Quantities at_s_low;    // r1 = r2 = 0.77  (s = 1.54)
  Fig2Quantities at_s_high;   // r1 = 1, r2 = 0.85  (s = 1.85)
  Fig2Quantities at_nl_high;  // r1 = 1, r2 = 0.77  (|NL| upper endpoint)
  double max_sin_half_alpha = 0.0;
  double max_half_alpha = 0.0;
  double max_alpha = 0.0;
  double double_max_alpha = 0.0;
  bool double_alpha_below_pi = false;
};

struct RegionReport {
  bool inside = false;
  bool ordered = false;      // x > y > 1
  bool triangle_ok = false;  // strict triangle inequality with c = 1
  bool acute = false;
  double circumradius = 0.0;
  double p_minus_c = 0.0;
  double residual = 0.0;  // (x + y - 1) - 2xy/sqrt(product); 0 on the curve
};

struct HullReport {
  RegionReport region;
  Configuration family;
  bool tangency_ok = false;
  double max_tangency_error = 0.0;
  bool side_identity_ok = false;  // (p-a) + (p-b) = c and cyclic
  bool circumcenter_interior = false;
  bool circumcenter_outside_circles = false;
  double circumcenter_clearance = 0.0;         // R - (p - c), side units
  double circumcenter_clearance_scaled = 0.0;  // same over R (unit-circle model)
  int samples_checked = 0;
  bool all_rays_blocked = false;
};

/// Golden-section minimizer of a unimodal scalar function on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double xtol, int max_iter = 200);

/// |OB| of the strip-intersection parallelogram:
/// sqrt(2 - r1^2 - r2^2 - 2 sqrt(1-r1^2) sqrt(1-r2^2) cos t) / sin t
/// with t = 2 asin((r1+r2)/2). Requires 0 < r2 <= r1 < 1 and sin t > 1e-12.
double formula_ob(double r1, double r2);

/// Minimizes formula_ob over r1 on a uniform grid of r1_grid points spanning
/// [r2, 1), then refines by golden section to 1e-9 around the grid minimum.
ScanRecord min_r3_scan(double r2, int r1_grid);

/// Sweeps r2 in steps of `step` and checks both scan claims; failures are
/// report entries, never exceptions. The sweep endpoint is included exactly.
ClaimsReport derive_claims(double r2_start = 0.7071067811865476, double r2_stop = 0.999,
                           double step = 1e-3, int r1_grid = 1000);

Fig2Quantities fig2_quantities(double r1, double r2);

Fig2ChainReport fig2_chain_report();

/// With c = 1, a = x, b = y: true iff x > y > 1, the strict triangle
/// inequality holds, the triangle is acute and its circumradius exceeds
/// p - c = (x + y - 1)/2. The report carries the circumradius, p - c and the
/// residual of the boundary-curve equation.
RegionReport semiconvex_region_predicate(double x, double y);

/// Builds the triangle family and discharges the hull obligations at desk
/// scale: exact tangency, the side-covering identity, circumcenter placement,
/// and full ray coverage from a deterministic grid of interior sample points.
HullReport verify_triangle_hull(const TriangleSides& sides, int sample_count);

/// Direction of a line through x missing every ball (at most n-1 balls in
/// R^n): the kernel of the separating-hyperplane normals, verified against
/// the exact line tests before being returned.
Vector find_avoiding_line(const Vector& x, const std::vector<Ball>& balls);

/// Direction of a ray from x missing every convex body, dimensions 2 and 3.
/// On S^1 the projections are arcs and the complement is exact; on S^2 the
/// finder tries arrangement vertices of the projected boundaries, antipodes
/// of projected vertices, and escalating deterministic samples, verifying
/// every candidate with the exact ray tests. Exhaustion throws NoRayFound,
/// which is inconclusive rather than a disproof.
Vector find_avoiding_ray(const Vector& x, const std::vector<ConvexBody>& bodies,
                         long long max_samples = 262144);

}  // namespace umbra

#endif  // UMBRA_ANALYSIS_HPP
