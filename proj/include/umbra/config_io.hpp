#ifndef UMBRA_CONFIG_IO_HPP
#define UMBRA_CONFIG_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "umbra/analysis.hpp"
#include "umbra/coverage.hpp"
#include "umbra/geometry.hpp"

namespace umbra {

inline constexpr char kVersion[] = "0.1.0";

/// JSON-shaped configuration files; parse/serialize round-trips losslessly.
Configuration parse_configuration(const std::string& json_text);
std::string serialize_configuration(const Configuration& config);
Configuration load_configuration(const std::string& path);
void save_configuration(const Configuration& config, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Everything cmd_verify reports: the verdict, the validation findings and
/// the provenance needed to reproduce the run. Uncovered reports carry the
/// per-ball miss margins of the witness.
struct VerifyReport {
  CoverageVerdict verdict;
  ValidationReport validation;
  std::vector<double> witness_miss_margins;  // distance-to-line/ray minus radius, per ball
  std::uint64_t seed = 0;
  long long samples = 0;
  Tolerances tol{};
};

VerifyReport make_verify_report(const Configuration& config, const VerdictOptions& options);
std::string verify_report_json(const Configuration& config, const VerifyReport& report);
std::string verify_report_text(const Configuration& config, const VerifyReport& report);

/// CSV emission for the scan subcommands; '.' decimal separator, LF endings,
/// deterministic formatting.
std::string minr3_csv(const std::vector<ScanRecord>& records);
std::string claims_text(const ClaimsReport& report);
std::string fig2_csv(const std::vector<Fig2Quantities>& rows);
std::string fig2_chain_text(const Fig2ChainReport& report);

struct RegionSample {
  double x = 0.0, y = 0.0;
  bool inside = false;
  double residual = 0.0;
};

std::vector<RegionSample> region_scan(int grid, double lo = 1.0, double hi = 3.0);
std::string region_csv(const std::vector<RegionSample>& samples);
std::vector<RegionSample> parse_region_csv(const std::string& text);

}  // namespace umbra

#endif  // UMBRA_CONFIG_IO_HPP
