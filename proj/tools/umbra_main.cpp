#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "umbra/analysis.hpp"
#include "umbra/config_io.hpp"
#include "umbra/constructions.hpp"
#include "umbra/coverage.hpp"
#include "umbra/svg.hpp"

namespace {

using namespace umbra;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

void print_tangency_table(const Configuration& config) {
  std::cout << "tangency table (center gap minus radius sum):\n";
  for (std::size_t i = 0; i < config.balls.size(); ++i) {
    for (std::size_t j = i + 1; j < config.balls.size(); ++j) {
      const double gap = (config.balls[i].center - config.balls[j].center).norm() -
                         (config.balls[i].radius + config.balls[j].radius);
      std::cout << "  (" << i << "," << j << "): " << fmt(gap)
                << (std::abs(gap) <= 1e-9 ? "  [tangent]" : "") << "\n";
    }
  }
}

int run_verify(const std::string& path, bool as_json, const std::string& out_path,
               const VerdictOptions& options) {
  const Configuration config = load_configuration(path);
  const VerifyReport report = make_verify_report(config, options);
  const std::string rendered =
      as_json ? verify_report_json(config, report) : verify_report_text(config, report);
  emit(rendered, out_path);
  if (!out_path.empty()) std::cout << rendered;
  if (report.verdict.status == CoverageStatus::Uncovered) return 1;
  if (report.verdict.status == CoverageStatus::Estimated &&
      report.verdict.uncovered_fraction.value_or(0.0) > 0.0) {
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"umbra: does a family of balls on a sphere block every line (or ray) "
               "through the center?"};
  app.require_subcommand(1);

  std::uint64_t env_seed = 0;
  if (const char* s = std::getenv("UMBRA_SEED")) env_seed = std::strtoull(s, nullptr, 10);

  // verify
  auto* verify = app.add_subcommand("verify", "decide coverage for a configuration file");
  std::string verify_path, verify_out;
  bool verify_json = false;
  VerdictOptions options;
  options.seed = env_seed;
  verify->add_option("config", verify_path, "configuration file")->required();
  verify->add_flag("--json", verify_json, "machine-readable report");
  verify->add_option("--out", verify_out, "also write the report to this path");
  verify->add_option("--samples", options.samples, "sample count for dimensions above 3");
  verify->add_option("--seed", options.seed, "seed for the optional pseudorandom batch");
  verify->add_option("--random-batch", options.random_batch,
                     "extra seeded pseudorandom samples on top of the deterministic set");
  verify->add_option("--tol-geom", options.tol.geom, "signed boundary tolerance");
  verify->add_option("--tol-push", options.tol.push, "witness push-out distance on S^2");

  // construct
  auto* construct = app.add_subcommand("construct", "generate a configuration");
  construct->require_subcommand(1);
  std::string out_path;

  auto* simplex = construct->add_subcommand("simplex", "n+1 pairwise tangent balls");
  SimplexParams simplex_params;
  simplex->add_option("--dim", simplex_params.dimension, "ambient dimension")->required();
  simplex->add_option("--epsilon", simplex_params.epsilon, "radius perturbation");
  simplex->add_option("--shrink", simplex_params.shrink_delta, "radius shrink after scaling");
  simplex->add_option("--out", out_path, "output configuration path")->required();

  auto* extremal = construct->add_subcommand("extremal2", "extremal planar two-ball family");
  double eta = 1e-2;
  extremal->add_option("--eta", eta, "radius reduction of the big ball");
  extremal->add_option("--out", out_path, "output configuration path")->required();

  auto* triangle = construct->add_subcommand("triangle", "three tangent circles at triangle vertices");
  TriangleSides sides{1.1, 1.05, 1.0};
  triangle->add_option("--a", sides.a, "longest side");
  triangle->add_option("--b", sides.b, "middle side");
  triangle->add_option("--c", sides.c, "shortest side");
  triangle->add_option("--out", out_path, "output configuration path")->required();

  auto* tenball = construct->add_subcommand("tenball", "ten-ball ray-blocking family on S^2");
  std::string variant = "printed";
  tenball->add_option("--variant", variant, "printed | tangent")
      ->check(CLI::IsMember({"printed", "tangent"}));
  tenball->add_option("--out", out_path, "output configuration path")->required();

  auto* homothety = construct->add_subcommand("homothety", "double a family by negative homothety");
  std::string homothety_input;
  double ratio = -0.4;
  homothety->add_option("--input", homothety_input, "line-mode configuration")->required();
  homothety->add_option("--k", ratio, "negative homothety ratio");
  homothety->add_option("--out", out_path, "output configuration path")->required();

  // scan
  auto* scan = app.add_subcommand("scan", "numeric scans and tables");
  scan->require_subcommand(1);
  std::string scan_out;

  auto* minr3 = scan->add_subcommand("minr3", "minimum |OB| over r1 for given r2");
  std::optional<double> minr3_r2;
  double minr3_lo = 0.7071067811865476, minr3_hi = 0.999, minr3_step = 1e-3;
  int minr3_grid = 1000;
  minr3->add_option("--r2", minr3_r2, "single r2 value");
  minr3->add_option("--r2-min", minr3_lo, "sweep start");
  minr3->add_option("--r2-max", minr3_hi, "sweep stop (included)");
  minr3->add_option("--step", minr3_step, "sweep step");
  minr3->add_option("--grid", minr3_grid, "r1 grid points");
  minr3->add_option("--out", scan_out, "CSV output path (stdout otherwise)");

  auto* claims = scan->add_subcommand("claims", "check both scan claims with margins");
  int claims_grid = 1000;
  claims->add_option("--grid", claims_grid, "r1 grid points");
  claims->add_option("--out", scan_out, "CSV of all sweep records");

  auto* fig2 = scan->add_subcommand("fig2", "quantity chain rows");
  std::optional<double> fig2_s, fig2_r2;
  fig2->add_option("--s", fig2_s, "radius sum (single row)");
  fig2->add_option("--r2", fig2_r2, "small radius for the |NL| column");
  fig2->add_option("--out", scan_out, "CSV output path");

  auto* region = scan->add_subcommand("region", "admissible side-ratio region over [1,3]^2");
  int region_grid = 400;
  region->add_option("--grid", region_grid, "grid points per axis");
  region->add_option("--out", scan_out, "CSV output path (stdout otherwise)");

  // plot
  auto* plot = app.add_subcommand("plot", "render a configuration or region CSV to SVG");
  std::string plot_input, plot_out;
  plot->add_option("input", plot_input, "configuration JSON or region CSV")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return run_verify(verify_path, verify_json, verify_out, options);

    if (*simplex) {
      const Configuration config = tangent_simplex_family(simplex_params);
      save_configuration(config, out_path);
      std::cout << "simplex family: n=" << simplex_params.dimension << " balls="
                << config.balls.size() << " epsilon=" << fmt(simplex_params.epsilon)
                << " shrink=" << fmt(simplex_params.shrink_delta) << "\n";
      print_tangency_table(config);
      return 0;
    }
    if (*extremal) {
      const auto [config, report] = extremal_two_ball(eta);
      save_configuration(config, out_path);
      std::cout << "extremal two-ball family: eta=" << fmt(report.eta) << "\n"
                << "  r2 root of r^2+4r-1: " << fmt(report.r2_root)
                << " (residual " << fmt(report.quadratic_residual) << ")\n"
                << "  max separating-line offset (3-sqrt5)/2: " << fmt(report.max_offset) << "\n"
                << "  tangent segment 2*sqrt(r1*r2): " << fmt(report.tangent_segment) << "\n"
                << "  separating-line offset (r1-r2)/2: " << fmt(report.separating_offset) << "\n";
      print_tangency_table(config);
      return 0;
    }
    if (*triangle) {
      const Configuration config = triangle_family(sides);
      save_configuration(config, out_path);
      std::cout << "triangle family: sides " << fmt(sides.a) << " " << fmt(sides.b) << " "
                << fmt(sides.c) << "\n";
      print_tangency_table(config);
      return 0;
    }
    if (*tenball) {
      const Configuration config = ten_ball_family(variant == "printed" ? TenBallVariant::Printed
                                                                        : TenBallVariant::Tangent);
      save_configuration(config, out_path);
      std::cout << "ten-ball family (" << variant << " bisector radius "
                << fmt(config.balls.back().radius) << ")\n";
      print_tangency_table(config);
      if (variant == "printed") {
        const double gap = (config.balls[2].center - config.balls[6].center).norm() -
                           (config.balls[2].radius + config.balls[6].radius);
        std::cout << "note: bisector balls are NOT tangent to their neighbors; gap "
                  << fmt(gap) << "\n";
      }
      return 0;
    }
    if (*homothety) {
      const Configuration input = load_configuration(homothety_input);
      const Configuration config = homothety_double(input, ratio);
      save_configuration(config, out_path);
      std::cout << "homothety doubling: k=" << fmt(ratio) << " balls=" << config.balls.size()
                << "\n";
      return 0;
    }

    if (*minr3) {
      std::vector<ScanRecord> records;
      if (minr3_r2) {
        records.push_back(min_r3_scan(*minr3_r2, minr3_grid));
      } else {
        const long long steps = static_cast<long long>((minr3_hi - minr3_lo) / minr3_step);
        for (long long k = 0; k < steps; ++k) {
          records.push_back(min_r3_scan(minr3_lo + k * minr3_step, minr3_grid));
        }
        records.push_back(min_r3_scan(minr3_hi, minr3_grid));
      }
      emit(minr3_csv(records), scan_out);
      return 0;
    }
    if (*claims) {
      const ClaimsReport report = derive_claims(0.7071067811865476, 0.999, 1e-3, claims_grid);
      std::cout << claims_text(report);
      if (!scan_out.empty()) write_file(scan_out, minr3_csv(report.records));
      return report.small_r2_pass && report.large_r2_pass ? 0 : 1;
    }
    if (*fig2) {
      if (fig2_s) {
        const double r2 = fig2_r2 ? *fig2_r2 : 0.5 * *fig2_s;
        const Fig2Quantities q = fig2_quantities(*fig2_s - r2, r2);
        std::cout << "s=" << fmt(q.s) << " o1k=" << fmt(q.o1k) << " ko2=" << fmt(q.ko2)
                  << " ok=" << fmt(q.ok) << " nl=" << fmt(q.nl)
                  << " sin_half_alpha=" << fmt(q.sin_half_alpha) << " alpha=" << fmt(q.alpha)
                  << "\n";
        if (!scan_out.empty()) write_file(scan_out, fig2_csv({q}));
        return 0;
      }
      const Fig2ChainReport report = fig2_chain_report();
      std::cout << fig2_chain_text(report);
      if (!scan_out.empty()) {
        std::vector<Fig2Quantities> rows;
        for (int k = 0; k <= 800; ++k) {
          rows.push_back(fig2_quantities(1.0, 0.77 + (0.85 - 0.77) * k / 800));
        }
        write_file(scan_out, fig2_csv(rows));
      }
      return 0;
    }
    if (*region) {
      emit(region_csv(region_scan(region_grid)), scan_out);
      return 0;
    }

    if (*plot) {
      const std::string content = read_file(plot_input);
      std::string svg;
      const auto first = content.find_first_not_of(" \t\r\n");
      if (first != std::string::npos && content[first] == '{') {
        const Configuration config = parse_configuration(content);
        const CoverageVerdict verdict = shadow_verdict(config, options);
        svg = config.dimension == 2 ? plot_configuration_2d(config, verdict)
                                    : plot_caps_equirect(config, verdict);
      } else {
        svg = plot_region(parse_region_csv(content));
      }
      write_file(plot_out, svg);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
