#include "umbra/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace umbra {

namespace {

using nlohmann::json;

std::string mode_name(Mode mode) { return mode == Mode::Line ? "line" : "ray"; }
std::string topology_name(Topology t) { return t == Topology::Closed ? "closed" : "open"; }

Mode parse_mode(const std::string& s) {
  if (s == "line") return Mode::Line;
  if (s == "ray") return Mode::Ray;
  throw Error(Errc::ParseError, "mode must be \"line\" or \"ray\", got \"" + s + "\"");
}

Topology parse_topology(const std::string& s) {
  if (s == "closed") return Topology::Closed;
  if (s == "open") return Topology::Open;
  throw Error(Errc::ParseError, "topology must be \"open\" or \"closed\", got \"" + s + "\"");
}

std::string status_name(CoverageStatus s) {
  switch (s) {
    case CoverageStatus::Covered: return "covered";
    case CoverageStatus::Uncovered: return "uncovered";
    case CoverageStatus::Estimated: return "estimated";
  }
  return "unknown";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const json& a, int expected_dim) {
  if (!a.is_array() || static_cast<int>(a.size()) != expected_dim) {
    throw Error(Errc::ParseError, "center must be an array of length equal to the dimension");
  }
  Vector v(expected_dim);
  for (int i = 0; i < expected_dim; ++i) {
    if (!a[i].is_number()) throw Error(Errc::ParseError, "center coordinates must be numbers");
    v[i] = a[i].get<double>();
  }
  return v;
}

}  // namespace

Configuration parse_configuration(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    Configuration config;
    config.dimension = j.at("dimension").get<int>();
    if (config.dimension < 2) throw Error(Errc::ParseError, "dimension must be >= 2");
    config.sphere_radius = j.value("sphere_radius", 1.0);
    if (!(config.sphere_radius > 0.0)) throw Error(Errc::ParseError, "sphere_radius must be positive");
    config.mode = parse_mode(j.at("mode").get<std::string>());
    config.topology = parse_topology(j.at("topology").get<std::string>());
    config.centers_free = j.value("centers_free", false);
    for (const auto& jb : j.at("balls")) {
      Ball ball;
      ball.center = vector_from_json(jb.at("center"), config.dimension);
      ball.radius = jb.at("radius").get<double>();
      if (!(ball.radius > 0.0)) throw Error(Errc::ParseError, "ball radius must be positive");
      config.balls.push_back(std::move(ball));
    }
    return config;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed configuration: ") + e.what());
  }
}

std::string serialize_configuration(const Configuration& config) {
  json j;
  j["dimension"] = config.dimension;
  j["sphere_radius"] = config.sphere_radius;
  j["mode"] = mode_name(config.mode);
  j["topology"] = topology_name(config.topology);
  j["centers_free"] = config.centers_free;
  j["balls"] = json::array();
  for (const auto& ball : config.balls) {
    j["balls"].push_back({{"center", vector_to_json(ball.center)}, {"radius", ball.radius}});
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << content;
}

Configuration load_configuration(const std::string& path) {
  return parse_configuration(read_file(path));
}

void save_configuration(const Configuration& config, const std::string& path) {
  write_file(path, serialize_configuration(config));
}

VerifyReport make_verify_report(const Configuration& config, const VerdictOptions& options) {
  VerifyReport report;
  report.validation = validate_configuration(config, options.tol);
  report.verdict = shadow_verdict(config, options);
  report.seed = options.seed;
  report.samples = config.dimension > 3 ? options.samples : 0;
  report.tol = options.tol;
  if (report.verdict.witness) {
    const Vector origin = Vector::Zero(config.dimension);
    for (const auto& ball : config.balls) {
      const Vector& u = *report.verdict.witness;
      const Vector w = ball.center - origin;
      const double t = w.dot(u);
      double dist;
      if (config.mode == Mode::Line) {
        dist = std::sqrt(std::max(0.0, w.squaredNorm() - t * t));
      } else {
        dist = t > 0.0 ? std::sqrt(std::max(0.0, w.squaredNorm() - t * t)) : w.norm();
      }
      report.witness_miss_margins.push_back(dist - ball.radius);
    }
  }
  return report;
}

namespace {

json verdict_to_json(const CoverageVerdict& verdict) {
  json jv;
  jv["status"] = status_name(verdict.status);
  if (verdict.witness) jv["witness"] = vector_to_json(*verdict.witness);
  if (verdict.clearance) jv["clearance"] = *verdict.clearance;
  if (verdict.uncovered_fraction) jv["uncovered_fraction"] = *verdict.uncovered_fraction;
  return jv;
}

json validation_to_json(const ValidationReport& v) {
  json jv;
  jv["all_ok"] = v.all_ok();
  jv["dimensions_ok"] = v.dimensions_ok;
  jv["centers_on_sphere"] = v.centers_on_sphere;
  jv["off_sphere_indices"] = v.off_sphere_indices;
  jv["radii_ok"] = v.radii_ok;
  jv["oversized_indices"] = v.oversized_indices;
  jv["pairwise_disjoint"] = v.pairwise_disjoint;
  json pairs = json::array();
  for (const auto& [i, j] : v.overlapping_pairs) pairs.push_back({i, j});
  jv["overlapping_pairs"] = pairs;
  json tangent = json::array();
  for (const auto& [i, j] : v.tangent_pairs) tangent.push_back({i, j});
  jv["tangent_pairs"] = tangent;
  return jv;
}

}  // namespace

std::string verify_report_json(const Configuration& config, const VerifyReport& report) {
  json j;
  j["configuration"] = {{"dimension", config.dimension},
                        {"mode", mode_name(config.mode)},
                        {"topology", topology_name(config.topology)},
                        {"balls", config.balls.size()}};
  j["verdict"] = verdict_to_json(report.verdict);
  j["validation"] = validation_to_json(report.validation);
  if (!report.witness_miss_margins.empty()) {
    j["witness_miss_margins"] = report.witness_miss_margins;
  }
  j["provenance"] = {{"version", kVersion},
                     {"seed", report.seed},
                     {"samples", report.samples},
                     {"tolerances",
                      {{"geom", report.tol.geom},
                       {"on_sphere", report.tol.on_sphere},
                       {"tangency", report.tol.tangency},
                       {"angle", report.tol.angle},
                       {"push", report.tol.push}}}};
  return j.dump(2) + "\n";
}

std::string verify_report_text(const Configuration& config, const VerifyReport& report) {
  std::ostringstream out;
  out << "configuration: n=" << config.dimension << " mode=" << mode_name(config.mode)
      << " topology=" << topology_name(config.topology) << " balls=" << config.balls.size()
      << "\n";
  const auto& v = report.validation;
  out << "validation: " << (v.all_ok() ? "ok" : "violations found")
      << " (on_sphere=" << (v.centers_on_sphere ? "yes" : "no")
      << " radii=" << (v.radii_ok ? "ok" : "violated")
      << " disjoint=" << (v.pairwise_disjoint ? "yes" : "no")
      << " tangent_pairs=" << v.tangent_pairs.size() << ")\n";
  out << "verdict: " << status_name(report.verdict.status) << "\n";
  if (report.verdict.witness) {
    out << "witness:";
    for (Eigen::Index i = 0; i < report.verdict.witness->size(); ++i) {
      out << " " << fmt((*report.verdict.witness)[i]);
    }
    out << "\n";
  }
  if (report.verdict.clearance) out << "clearance: " << fmt(*report.verdict.clearance) << "\n";
  if (report.verdict.uncovered_fraction) {
    out << "uncovered_fraction: " << fmt(*report.verdict.uncovered_fraction) << "\n";
  }
  for (std::size_t i = 0; i < report.witness_miss_margins.size(); ++i) {
    out << "  miss margin ball " << i << ": " << fmt(report.witness_miss_margins[i]) << "\n";
  }
  out << "provenance: version=" << kVersion << " seed=" << report.seed
      << " samples=" << report.samples << " tol_geom=" << fmt(report.tol.geom)
      << " tol_push=" << fmt(report.tol.push) << "\n";
  return out.str();
}

std::string minr3_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream out;
  out << "r2,r1_min,ob,sum,theta\n";
  for (const auto& r : records) {
    out << fmt(r.r2) << "," << fmt(r.r1) << "," << fmt(r.ob) << "," << fmt(r.sum_with_min_r3)
        << "," << fmt(r.theta) << "\n";
  }
  return out.str();
}

std::string claims_text(const ClaimsReport& report) {
  std::ostringstream out;
  out << "claim r2<0.77 => min|OB|>0.77: " << (report.small_r2_pass ? "pass" : "FAIL")
      << " (margin " << fmt(report.small_r2_margin) << " at r2=" << fmt(report.small_r2_argmin)
      << ")\n";
  out << "claim r2>0.85 => r1+r2+|OB|>2.6: " << (report.large_r2_pass ? "pass" : "FAIL")
      << " (margin " << fmt(report.large_r2_margin) << " at r2=" << fmt(report.large_r2_argmin)
      << ", radius-sum bound 1.5*sqrt(3)=" << fmt(report.sum_bound) << ")\n";
  return out.str();
}

std::string fig2_csv(const std::vector<Fig2Quantities>& rows) {
  std::ostringstream out;
  out << "r1,r2,s,o1k,ko2,ok,nl,sin_half_alpha,alpha\n";
  for (const auto& q : rows) {
    out << fmt(q.r1) << "," << fmt(q.r2) << "," << fmt(q.s) << "," << fmt(q.o1k) << ","
        << fmt(q.ko2) << "," << fmt(q.ok) << "," << fmt(q.nl) << "," << fmt(q.sin_half_alpha)
        << "," << fmt(q.alpha) << "\n";
  }
  return out.str();
}

std::string fig2_chain_text(const Fig2ChainReport& r) {
  std::ostringstream out;
  out << "s=1.54: o1k=" << fmt(r.at_s_low.o1k) << " ko2=" << fmt(r.at_s_low.ko2)
      << " ok=" << fmt(r.at_s_low.ok) << "\n";
  out << "s=1.85: o1k=" << fmt(r.at_s_high.o1k) << " ko2=" << fmt(r.at_s_high.ko2)
      << " ok=" << fmt(r.at_s_high.ok) << "\n";
  out << "nl range: " << fmt(r.at_s_high.nl) << " (r2=0.85) to " << fmt(r.at_nl_high.nl)
      << " (r2=0.77)\n";
  out << "max sin(alpha/2)=" << fmt(r.max_sin_half_alpha)
      << " arcsin=" << fmt(r.max_half_alpha) << " alpha=" << fmt(r.max_alpha)
      << " 2*alpha=" << fmt(r.double_max_alpha)
      << (r.double_alpha_below_pi ? " < pi" : " >= pi") << "\n";
  return out.str();
}

std::vector<RegionSample> region_scan(int grid, double lo, double hi) {
  if (grid < 2) throw Error(Errc::InvalidArgument, "region scan needs a grid of at least 2");
  std::vector<RegionSample> samples;
  samples.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      RegionSample s;
      s.x = lo + (hi - lo) * i / (grid - 1);
      s.y = lo + (hi - lo) * j / (grid - 1);
      const RegionReport rep = semiconvex_region_predicate(s.x, s.y);
      s.inside = rep.inside;
      s.residual = rep.residual;
      samples.push_back(s);
    }
  }
  return samples;
}

std::string region_csv(const std::vector<RegionSample>& samples) {
  std::ostringstream out;
  out << "x,y,inside,residual\n";
  for (const auto& s : samples) {
    out << fmt(s.x) << "," << fmt(s.y) << "," << (s.inside ? 1 : 0) << ","
        << (std::isnan(s.residual) ? "nan" : fmt(s.residual)) << "\n";
  }
  return out.str();
}

std::vector<RegionSample> parse_region_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,inside", 0) != 0) {
    throw Error(Errc::ParseError, "not a region CSV (missing x,y,inside header)");
  }
  std::vector<RegionSample> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RegionSample s;
    char residual[32] = {0};
    int inside = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%d,%31s", &s.x, &s.y, &inside, residual) < 3) {
      throw Error(Errc::ParseError, "malformed region CSV row: " + line);
    }
    s.inside = inside != 0;
    s.residual = std::strtod(residual, nullptr);
    samples.push_back(s);
  }
  return samples;
}

}  // namespace umbra
