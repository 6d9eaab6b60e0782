#include "umbra/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace umbra {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(double width, double height, double xmin, double ymin, double xmax,
                     double ymax)
    : width_(width), height_(height), xmin_(xmin), ymin_(ymin), xmax_(xmax), ymax_(ymax) {}

double SvgCanvas::tx(double x) const { return (x - xmin_) / (xmax_ - xmin_) * width_; }
double SvgCanvas::ty(double y) const { return height_ - (y - ymin_) / (ymax_ - ymin_) * height_; }
double SvgCanvas::sx(double len) const { return len / (xmax_ - xmin_) * width_; }

void SvgCanvas::line(double x1, double y1, double x2, double y2, const std::string& style) {
  body_ += "<line x1=\"" + num(tx(x1)) + "\" y1=\"" + num(ty(y1)) + "\" x2=\"" + num(tx(x2)) +
           "\" y2=\"" + num(ty(y2)) + "\" style=\"" + style + "\"/>\n";
}

void SvgCanvas::circle(double cx, double cy, double r, const std::string& style) {
  body_ += "<circle cx=\"" + num(tx(cx)) + "\" cy=\"" + num(ty(cy)) + "\" r=\"" + num(sx(r)) +
           "\" style=\"" + style + "\"/>\n";
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& style) {
  if (pts.empty()) return;
  body_ += "<polyline points=\"";
  for (const auto& [x, y] : pts) body_ += num(tx(x)) + "," + num(ty(y)) + " ";
  body_ += "\" style=\"" + style + "\"/>\n";
}

void SvgCanvas::rect(double x, double y, double w, double h, const std::string& style) {
  body_ += "<rect x=\"" + num(tx(x)) + "\" y=\"" + num(ty(y + h)) + "\" width=\"" + num(sx(w)) +
           "\" height=\"" + num(sx(h)) + "\" style=\"" + style + "\"/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& content, const std::string& style) {
  body_ += "<text x=\"" + num(tx(x)) + "\" y=\"" + num(ty(y)) + "\" style=\"" + style + "\">" +
           content + "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" + body_ +
         "</svg>\n";
}

std::string plot_configuration_2d(const Configuration& config, const CoverageVerdict& verdict) {
  if (config.dimension != 2) {
    throw Error(Errc::UnsupportedDimension, "2-D plots need a dimension-2 configuration");
  }
  double extent = 1.3 * config.sphere_radius;
  for (const auto& ball : config.balls) {
    extent = std::max(extent, ball.center.norm() + ball.radius + 0.15);
  }
  SvgCanvas canvas(640, 640, -extent, -extent, extent, extent);
  canvas.rect(-extent, -extent, 2 * extent, 2 * extent, "fill:white");
  canvas.circle(0, 0, config.sphere_radius,
                "fill:none;stroke:#888888;stroke-width:1;stroke-dasharray:4 3");
  for (const auto& ball : config.balls) {
    canvas.circle(ball.center[0], ball.center[1], ball.radius,
                  "fill:#cfe2f3;fill-opacity:0.55;stroke:#1f4e79;stroke-width:1.5");
  }
  canvas.circle(0, 0, 0.01 * extent, "fill:#000000");
  if (verdict.witness) {
    const Vector& w = *verdict.witness;
    const double x = w[0] * extent, y = w[1] * extent;
    if (config.mode == Mode::Line) {
      canvas.line(-x, -y, x, y, "stroke:#cc0000;stroke-width:1.5");
    } else {
      canvas.line(0, 0, x, y, "stroke:#cc0000;stroke-width:1.5");
    }
    canvas.text(-extent * 0.95, -extent * 0.92,
                "uncovered witness direction", "font-size:16px;fill:#cc0000");
  }
  return canvas.str();
}

std::string plot_caps_equirect(const Configuration& config, const CoverageVerdict& verdict) {
  if (config.dimension != 3) {
    throw Error(Errc::UnsupportedDimension, "cap maps need a dimension-3 configuration");
  }
  SvgCanvas canvas(720, 360, -M_PI, -M_PI_2, M_PI, M_PI_2);
  canvas.rect(-M_PI, -M_PI_2, 2 * M_PI, M_PI, "fill:white");
  canvas.line(-M_PI, 0, M_PI, 0, "stroke:#bbbbbb;stroke-width:0.5");

  const Vector origin = Vector::Zero(3);
  for (const auto& ball : config.balls) {
    for (const auto& cap : occlusion_caps(ball, origin, config.mode, config.topology)) {
      Eigen::Vector3d a(cap.axis[0], cap.axis[1], cap.axis[2]);
      Eigen::Vector3d ref =
          std::abs(a[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
      const Eigen::Vector3d e1 = a.cross(ref).normalized();
      const Eigen::Vector3d e2 = a.cross(e1);
      std::vector<std::pair<double, double>> run;
      double prev_lon = 0.0;
      const int segments = 256;
      for (int i = 0; i <= segments; ++i) {
        const double phi = 2.0 * M_PI * i / segments;
        const Eigen::Vector3d p = std::cos(cap.half_angle) * a +
                                  std::sin(cap.half_angle) * (std::cos(phi) * e1 + std::sin(phi) * e2);
        const double lon = std::atan2(p[1], p[0]);
        const double lat = std::asin(std::clamp(p[2], -1.0, 1.0));
        if (!run.empty() && std::abs(lon - prev_lon) > M_PI) {
          canvas.polyline(run, "fill:none;stroke:#1f4e79;stroke-width:1.2");
          run.clear();
        }
        run.emplace_back(lon, lat);
        prev_lon = lon;
      }
      canvas.polyline(run, "fill:none;stroke:#1f4e79;stroke-width:1.2");
    }
  }
  if (verdict.witness) {
    const Vector& w = *verdict.witness;
    const double lon = std::atan2(w[1], w[0]);
    const double lat = std::asin(std::clamp(w[2], -1.0, 1.0));
    canvas.circle(lon, lat, 0.03, "fill:#cc0000");
    canvas.text(-M_PI * 0.97, -M_PI_2 * 0.9, "uncovered witness direction",
                "font-size:14px;fill:#cc0000");
  }
  return canvas.str();
}

std::string plot_region(const std::vector<RegionSample>& samples) {
  if (samples.empty()) throw Error(Errc::InvalidArgument, "region plot needs samples");
  double lo = samples.front().x, hi = samples.front().x;
  for (const auto& s : samples) {
    lo = std::min({lo, s.x, s.y});
    hi = std::max({hi, s.x, s.y});
  }
  int grid = 2;
  while (static_cast<std::size_t>(grid) * grid < samples.size()) ++grid;
  const double cell = (hi - lo) / (grid - 1);

  const double margin = 0.08 * (hi - lo);
  SvgCanvas canvas(560, 560, lo - margin, lo - margin, hi + margin, hi + margin);
  canvas.rect(lo - margin, lo - margin, hi - lo + 2 * margin, hi - lo + 2 * margin, "fill:white");
  for (const auto& s : samples) {
    if (!s.inside) continue;
    canvas.rect(s.x - 0.5 * cell, s.y - 0.5 * cell, cell, cell, "fill:#74a9cf;stroke:none");
  }
  canvas.rect(lo, lo, hi - lo, hi - lo, "fill:none;stroke:#333333;stroke-width:1");
  canvas.line(lo, lo, hi, hi, "stroke:#888888;stroke-width:0.7;stroke-dasharray:3 3");
  canvas.text(lo + 0.02 * (hi - lo), hi - 0.04 * (hi - lo), "admissible side ratios",
              "font-size:14px;fill:#333333");
  return canvas.str();
}

}  // namespace umbra
