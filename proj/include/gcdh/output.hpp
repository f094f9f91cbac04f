#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "gcdh/dhlab.hpp"

namespace gcdh {

struct ExperimentConfig;

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// CSV: "# columns: x1, ..., xd, density, stderr, count" then one row per bin
/// (bin center coordinates first). LF line endings.
void write_csv(const DensityEstimate& est, std::ostream& os);
/// Writes the CSV to `path`; throws std::runtime_error when it cannot be written.
void emit_plot_data(const DensityEstimate& est, const std::string& path);

nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const StrongDatumReport& report);
nlohmann::ordered_json to_json(const RegionReport& report);
/// Echo of the configuration; omits `threads` and `out`, which never change results.
nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

} // namespace gcdh
