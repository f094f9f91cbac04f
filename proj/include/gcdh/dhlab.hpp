#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gcdh/measure.hpp"

namespace gcdh {

/// gc_map o moment, dimension b.
Observable gc_observable(const SpaceModel& space);
/// sweep o moment, dimension rank.
Observable chamber_observable(const SpaceModel& space);
/// Interior GC coordinates of the moment, dimension u.
Observable interior_observable(const SpaceModel& space);

/// Pushforward of Liouville measure to R^b along gc_map o moment.
DensityEstimate dh_big(const SpaceModel& space, const Grid& grid, std::uint64_t n, std::uint64_t seed,
                       unsigned threads = 0);
/// Pushforward of Liouville measure to the Weyl chamber along sweep o moment.
DensityEstimate dh_chamber(const SpaceModel& space, const Grid& grid, std::uint64_t n, std::uint64_t seed,
                           unsigned threads = 0);

struct VerifyOptions {
    double radius = 0.05;
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 0;
    /// A row passes when |lhs - rhs| <= max(sigmas * pooled stderr, tolerance * |rhs|).
    double tolerance = 0.05;
    double sigmas = 3.0;
    /// Negative-control switch: replace vol(O_xi) by 1 in the chamber identity.
    bool use_orbit_volume = true;
    unsigned threads = 0;
};

struct VerificationRow {
    std::string family;
    std::vector<double> point;
    double lhs = 0.0;
    double rhs = 0.0;
    double standard_error = 0.0; ///< pooled
    std::uint64_t hits_lhs = 0;
    std::uint64_t hits_rhs = 0;
    bool low_statistics = false;
    bool pass = false;
    std::uint64_t seed_lhs = 0;
    std::uint64_t seed_rhs = 0;
    std::uint64_t n = 0;
};

struct VerificationReport {
    std::string label;
    std::vector<VerificationRow> rows;
    bool pass = false;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    double radius = 0.0;
    double tolerance = 0.0;
    double sigmas = 0.0;
};

/// Checks rho_chamber(sweep xi) = vol(O_xi) * rho_big(gc_map xi) at each test point.
VerificationReport verify_corollary(const SpaceModel& space, const std::vector<LiePoint>& points,
                                    const VerifyOptions& options);

/// Checks that rho_big is constant on GC fibers and along the interior
/// directions over a fixed orbit (for tori: that it equals rho_chamber).
VerificationReport verify_main_theorem(const SpaceModel& space, const std::vector<LiePoint>& points,
                                       const VerifyOptions& options);

struct RegionReport {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<double, double>> big_box;
    std::vector<std::pair<double, double>> chamber_box;
    double sreg_fraction = 0.0;
    /// Fraction of sampled moment values with regular chamber image; 0 when dim M < dim G.
    double regular_fraction = 0.0;
    bool hypotheses_met = false;
    std::string note;
};

/// Empirical extent of U_big and U_t+* over n samples.
RegionReport sreg_region_report(const SpaceModel& space, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

/// Deterministic strongly regular test points well inside the sampled chamber image.
std::vector<LiePoint> default_test_points(const SpaceModel& space, const RegionReport& region, double radius,
                                          std::uint64_t seed, std::size_t count = 5);

} // namespace gcdh
