#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gcdh/spaces.hpp"

namespace gcdh {

/// Map from sample points to R^dim.
struct Observable {
    std::size_t dim = 0;
    std::function<void(std::span<const double> point, std::span<double> out)> fn;
};

/// Observable built from a function of the moment map value.
Observable moment_observable(const SpaceModel& space, std::size_t dim,
                             std::function<void(const LiePoint&, std::span<double>)> fn);

/// Regular grid on a box in R^d. Bins are half-open [lo, hi) except that the
/// global upper face is closed. Bin indices are row-major (last axis fastest).
struct Grid {
    static constexpr std::size_t kMaxBins = 10'000'000;

    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<std::size_t> bins;

    /// Validates lo < hi, bins >= 1 and the total bin count.
    static Grid make(std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> bins);

    std::size_t dim() const { return lo.size(); }
    std::size_t total_bins() const;
    double bin_volume() const;
    double width(std::size_t axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(bins[axis]); }
    std::optional<std::size_t> locate(std::span<const double> x) const;
    std::vector<double> bin_lower(std::size_t index) const;
    std::vector<double> bin_upper(std::size_t index) const;
    std::vector<double> bin_center(std::size_t index) const;
};

/// Weighted bin tallies for samples in an index range.
struct Histogram {
    std::vector<std::uint64_t> counts;
    std::vector<double> sum_w;
    std::vector<double> sum_w2;
    std::uint64_t overflow_count = 0;
    double overflow_w = 0.0;
    double overflow_w2 = 0.0;
    std::uint64_t n_samples = 0;

    explicit Histogram(std::size_t bins = 0) : counts(bins, 0), sum_w(bins, 0.0), sum_w2(bins, 0.0) {}
    /// Adds `other` bin by bin; callers merge shards in index order.
    void merge(const Histogram& other);
};

struct DensityEstimate {
    Grid grid;
    std::vector<double> density;
    std::vector<double> standard_error;
    std::vector<std::uint64_t> counts;
    std::uint64_t n_samples = 0;
    double scale = 1.0; ///< weight_scale of the sampled space
    double total_mass_estimate = 0.0;
    double overflow_mass = 0.0;
    std::uint64_t overflow_count = 0;
};

/// Calls `consumer(value, weight)` for samples [begin, end) in index order.
/// Sampling and mapping run on `threads` workers over fixed-size shards; the
/// consumer always sees the serial order, so results never depend on the
/// thread count. threads == 0 selects the hardware concurrency.
void for_each_value(const SpaceModel& space, const Observable& map, std::uint64_t begin, std::uint64_t end,
                    std::uint64_t seed, unsigned threads,
                    const std::function<void(std::span<const double>, double)>& consumer);

Histogram accumulate(const SpaceModel& space, const Observable& map, const Grid& grid, std::uint64_t begin,
                     std::uint64_t end, std::uint64_t seed, unsigned threads = 0);

/// density[b] = weight_scale * (sum of weights in b) / (n * vol(b)).
DensityEstimate finalize(const Histogram& h, const Grid& grid, double scale);

/// Pushforward of the space's Liouville measure along `map`, binned on `grid`.
/// Throws ValidationError on a dimension mismatch or when no sample lands in the grid.
DensityEstimate push_forward(const SpaceModel& space, const Observable& map, const Grid& grid, std::uint64_t n,
                             std::uint64_t seed, unsigned threads = 0);

struct PointDensity {
    double value = 0.0;
    double standard_error = 0.0;
    std::uint64_t hits = 0;
    bool low_statistics = false;
};

/// Fewer hits than this mark an estimate as low-statistics.
inline constexpr std::uint64_t kMinHits = 25;

/// Box estimates of the pushforward density at each x, using the l-infinity
/// ball of the given radius. All points share one sampling pass.
std::vector<PointDensity> density_at(const SpaceModel& space, const Observable& map,
                                     const std::vector<std::vector<double>>& points, double radius,
                                     std::uint64_t n, std::uint64_t seed, unsigned threads = 0);
PointDensity density_at(const SpaceModel& space, const Observable& map, const std::vector<double>& x,
                        double radius, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

struct CompareOptions {
    /// Bins with fewer expected samples are ignored.
    double min_count = 0.0;
    double tolerance = 0.05;
    /// Optional bin filter on (lower corner, upper corner).
    std::function<bool(std::span<const double>, std::span<const double>)> include;
};

struct CompareReport {
    std::size_t bins_used = 0;
    double max_rel_error = 0.0;
    double mean_rel_error = 0.0;
    double chi_square = 0.0;
    std::size_t dof = 0;
    /// Upper tail probability of chi_square under a chi-square(dof) law.
    double p_value = 1.0;
    bool pass = false;
};

/// Compares an estimate with a reference density evaluated at bin centers.
CompareReport compare(const DensityEstimate& est, const std::function<double(std::span<const double>)>& reference,
                      const CompareOptions& options);

} // namespace gcdh
