#ifndef UMBRA_SVG_HPP
#define UMBRA_SVG_HPP

#include <string>
#include <vector>

#include "umbra/config_io.hpp"
#include "umbra/coverage.hpp"
#include "umbra/geometry.hpp"

namespace umbra {

/// Minimal deterministic SVG writer: fixed 4-decimal coordinates, no
/// timestamps, output depends on input and tool version only.
class SvgCanvas {
 public:
  SvgCanvas(double width, double height, double xmin, double ymin, double xmax, double ymax);

  void line(double x1, double y1, double x2, double y2, const std::string& style);
  void circle(double cx, double cy, double r, const std::string& style);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style);
  void rect(double x, double y, double w, double h, const std::string& style);
  void text(double x, double y, const std::string& content, const std::string& style);

  std::string str() const;

 private:
  double tx(double x) const;
  double ty(double y) const;
  double sx(double len) const;

  double width_, height_, xmin_, ymin_, xmax_, ymax_;
  std::string body_;
};

/// Planar configurations: reference circle, ball circles, witness line/ray.
std::string plot_configuration_2d(const Configuration& config, const CoverageVerdict& verdict);

/// Dimension-3 configurations: equirectangular projection of the occlusion
/// cap boundaries with the witness direction marked.
std::string plot_caps_equirect(const Configuration& config, const CoverageVerdict& verdict);

/// Region scans: shaded admissible cells over the (x, y) plane.
std::string plot_region(const std::vector<RegionSample>& samples);

}  // namespace umbra

#endif  // UMBRA_SVG_HPP
