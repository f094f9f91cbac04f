#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcdh/dhlab.hpp"

namespace gcdh {

enum class Target { dh_big, dh_chamber, verify, verify_corollary, verify_main, check_strong, gc_volume, region };

std::string_view target_name(Target t);
/// Accepts hyphenated or underscored names ("dh-big", "dh_big", "verify-main", ...).
std::optional<Target> parse_target(std::string_view name);

/// Everything a run needs. Serialized as flat key=value text whose keys are
/// the long flag names; command-line flags override file values.
struct ExperimentConfig {
    Target target = Target::verify;
    std::string group;
    /// "orbits", "cpn" or "wishart:K".
    std::string space = "orbits";
    /// Chamber coordinates per orbit; "1,0.5" for rank one, "2,0,-2;1,0,-1" otherwise.
    std::vector<std::vector<double>> orbits;
    std::vector<double> lambda;
    std::uint64_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> bins;
    std::vector<std::pair<double, double>> range;
    std::vector<std::vector<double>> points;
    double radius = 0.05;
    double tolerance = 0.05;
    double sigmas = 3.0;
    unsigned threads = 0;
    std::string out;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Sets one field from its text form; throws ValidationError naming the key.
void set_field(ExperimentConfig& cfg, std::string_view key, std::string_view value);
ExperimentConfig parse_config_text(std::string_view text);
std::string to_config_text(const ExperimentConfig& cfg);

/// Cross-field checks: required fields per target, grid shape versus codomain.
void validate(const ExperimentConfig& cfg);

SpaceModel build_space(const ExperimentConfig& cfg);
/// Orbit chamber points after rank-one normalization ("1,0.5" means two su2 orbits).
std::vector<ChamberPoint> orbit_points(const ExperimentConfig& cfg, const GroupSpec& group);

} // namespace gcdh
