#include "gcdh/measure.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

namespace gcdh {

Observable moment_observable(const SpaceModel& space, std::size_t dim,
                             std::function<void(const LiePoint&, std::span<double>)> fn)
{
    return Observable{dim, [space, fn = std::move(fn)](std::span<const double> p, std::span<double> out) {
                          fn(space.moment(p), out);
                      }};
}

// ---------------------------------------------------------------- grid

Grid Grid::make(std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> bins)
{
    if (lo.size() != hi.size() || lo.size() != bins.size())
        throw ValidationError("grid: lo, hi and bins must have the same length");
    std::size_t total = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw ValidationError("grid: axis " + std::to_string(i) + " needs finite lo < hi (zero-volume bins)");
        if (bins[i] < 1)
            throw ValidationError("grid: axis " + std::to_string(i) + " needs at least one bin");
        if (total > kMaxBins / bins[i])
            throw ValidationError("grid: more than 10^7 bins");
        total *= bins[i];
    }
    return Grid{std::move(lo), std::move(hi), std::move(bins)};
}

std::size_t Grid::total_bins() const
{
    std::size_t total = 1;
    for (std::size_t b : bins)
        total *= b;
    return total;
}

double Grid::bin_volume() const
{
    double v = 1.0;
    for (std::size_t i = 0; i < dim(); ++i)
        v *= width(i);
    return v;
}

std::optional<std::size_t> Grid::locate(std::span<const double> x) const
{
    std::size_t index = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(x[i] >= lo[i] && x[i] <= hi[i]))
            return std::nullopt;
        auto k = static_cast<std::size_t>((x[i] - lo[i]) / width(i));
        if (k >= bins[i])
            k = bins[i] - 1;
        index = index * bins[i] + k;
    }
    return index;
}

namespace {

std::vector<std::size_t> unravel(const Grid& g, std::size_t index)
{
    std::vector<std::size_t> k(g.dim());
    for (std::size_t i = g.dim(); i-- > 0;) {
        k[i] = index % g.bins[i];
        index /= g.bins[i];
    }
    return k;
}

} // namespace

std::vector<double> Grid::bin_lower(std::size_t index) const
{
    const auto k = unravel(*this, index);
    std::vector<double> x(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        x[i] = lo[i] + width(i) * static_cast<double>(k[i]);
    return x;
}

std::vector<double> Grid::bin_upper(std::size_t index) const
{
    const auto k = unravel(*this, index);
    std::vector<double> x(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        x[i] = (k[i] + 1 == bins[i]) ? hi[i] : lo[i] + width(i) * static_cast<double>(k[i] + 1);
    return x;
}

std::vector<double> Grid::bin_center(std::size_t index) const
{
    const auto k = unravel(*this, index);
    std::vector<double> x(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        x[i] = lo[i] + width(i) * (static_cast<double>(k[i]) + 0.5);
    return x;
}

void Histogram::merge(const Histogram& other)
{
    if (other.counts.size() != counts.size())
        throw ValidationError("Histogram::merge: bin counts differ");
    for (std::size_t b = 0; b < counts.size(); ++b) {
        counts[b] += other.counts[b];
        sum_w[b] += other.sum_w[b];
        sum_w2[b] += other.sum_w2[b];
    }
    overflow_count += other.overflow_count;
    overflow_w += other.overflow_w;
    overflow_w2 += other.overflow_w2;
    n_samples += other.n_samples;
}

// ---------------------------------------------------------------- sampling engine

namespace {

constexpr std::uint64_t kShardSize = 4096;
constexpr std::size_t kShardsPerThread = 4;

struct ShardBuffer {
    std::vector<double> values;
    std::vector<double> weights;
    std::uint64_t size = 0;
};

void fill_shard(const SpaceModel& space, const Observable& map, std::uint64_t first, std::uint64_t count,
                std::uint64_t seed, ShardBuffer& buf)
{
    buf.values.resize(count * map.dim);
    buf.weights.resize(count);
    buf.size = count;
    std::vector<double> point(space.point_size());
    for (std::uint64_t i = 0; i < count; ++i) {
        buf.weights[i] = space.sample(seed, first + i, point);
        map.fn(point, std::span<double>(buf.values).subspan(i * map.dim, map.dim));
    }
}

} // namespace

void for_each_value(const SpaceModel& space, const Observable& map, std::uint64_t begin, std::uint64_t end,
                    std::uint64_t seed, unsigned threads,
                    const std::function<void(std::span<const double>, double)>& consumer)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    if (end <= begin)
        return;

    if (threads == 1) {
        std::vector<double> point(space.point_size());
        std::vector<double> value(map.dim);
        for (std::uint64_t i = begin; i < end; ++i) {
            const double w = space.sample(seed, i, point);
            map.fn(point, value);
            consumer(value, w);
        }
        return;
    }

    const std::size_t batch_shards = threads * kShardsPerThread;
    std::vector<ShardBuffer> buffers(batch_shards);
    for (std::uint64_t start = begin; start < end; start += batch_shards * kShardSize) {
        const std::uint64_t remaining = end - start;
        const std::size_t shards =
            static_cast<std::size_t>(std::min<std::uint64_t>(batch_shards, (remaining + kShardSize - 1) / kShardSize));
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(threads);
        auto work = [&](unsigned worker) {
            try {
                for (std::size_t j; (j = next.fetch_add(1)) < shards;) {
                    const std::uint64_t first = start + j * kShardSize;
                    fill_shard(space, map, first, std::min(kShardSize, end - first), seed, buffers[j]);
                }
            } catch (...) {
                errors[worker] = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < threads; ++t)
            pool.emplace_back(work, t);
        work(0);
        for (auto& t : pool)
            t.join();
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);

        for (std::size_t j = 0; j < shards; ++j) {
            const ShardBuffer& buf = buffers[j];
            for (std::uint64_t i = 0; i < buf.size; ++i)
                consumer(std::span<const double>(buf.values).subspan(i * map.dim, map.dim), buf.weights[i]);
        }
    }
}

Histogram accumulate(const SpaceModel& space, const Observable& map, const Grid& grid, std::uint64_t begin,
                     std::uint64_t end, std::uint64_t seed, unsigned threads)
{
    if (map.dim != grid.dim())
        throw ValidationError("push_forward: map has dimension " + std::to_string(map.dim) + " but grid has "
                              + std::to_string(grid.dim()));
    if (!(grid.bin_volume() > 0.0))
        throw ValidationError("push_forward: grid has zero-volume bins");
    Histogram h(grid.total_bins());
    for_each_value(space, map, begin, end, seed, threads, [&](std::span<const double> y, double w) {
        if (const auto b = grid.locate(y)) {
            ++h.counts[*b];
            h.sum_w[*b] += w;
            h.sum_w2[*b] += w * w;
        } else {
            ++h.overflow_count;
            h.overflow_w += w;
            h.overflow_w2 += w * w;
        }
    });
    h.n_samples = end > begin ? end - begin : 0;
    return h;
}

DensityEstimate finalize(const Histogram& h, const Grid& grid, double scale)
{
    DensityEstimate est;
    est.grid = grid;
    est.n_samples = h.n_samples;
    est.scale = scale;
    est.counts = h.counts;
    const std::size_t bins = h.counts.size();
    est.density.assign(bins, 0.0);
    est.standard_error.assign(bins, 0.0);
    if (h.n_samples == 0)
        return est;
    const double n = static_cast<double>(h.n_samples);
    const double vol = grid.bin_volume();
    const double factor = scale / (n * vol);
    double total_w = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        est.density[b] = factor * h.sum_w[b];
        est.standard_error[b] = factor * std::sqrt(std::max(0.0, h.sum_w2[b] - h.sum_w[b] * h.sum_w[b] / n));
        total_w += h.sum_w[b];
    }
    est.total_mass_estimate = scale * total_w / n;
    est.overflow_mass = scale * h.overflow_w / n;
    est.overflow_count = h.overflow_count;
    return est;
}

DensityEstimate push_forward(const SpaceModel& space, const Observable& map, const Grid& grid, std::uint64_t n,
                             std::uint64_t seed, unsigned threads)
{
    if (n < 1)
        throw ValidationError("push_forward: n_samples must be >= 1");
    const Histogram h = accumulate(space, map, grid, 0, n, seed, threads);
    if (h.overflow_count == h.n_samples)
        throw ValidationError("push_forward: all " + std::to_string(n)
                              + " samples fell outside the grid (is the range misplaced?)");
    return finalize(h, grid, space.weight_scale());
}

// ---------------------------------------------------------------- point densities

std::vector<PointDensity> density_at(const SpaceModel& space, const Observable& map,
                                     const std::vector<std::vector<double>>& points, double radius,
                                     std::uint64_t n, std::uint64_t seed, unsigned threads)
{
    if (!(radius > 0.0))
        throw ValidationError("density_at: radius must be > 0");
    if (n < 1)
        throw ValidationError("density_at: n_samples must be >= 1");
    for (const auto& x : points)
        if (x.size() != map.dim)
            throw ValidationError("density_at: point has dimension " + std::to_string(x.size()) + ", map has "
                                  + std::to_string(map.dim));

    const std::size_t m = points.size();
    std::vector<std::uint64_t> hits(m, 0);
    std::vector<double> sw(m, 0.0), sw2(m, 0.0);
    for_each_value(space, map, 0, n, seed, threads, [&](std::span<const double> y, double w) {
        for (std::size_t p = 0; p < m; ++p) {
            bool inside = true;
            for (std::size_t j = 0; j < y.size() && inside; ++j)
                inside = std::abs(y[j] - points[p][j]) <= radius;
            if (inside) {
                ++hits[p];
                sw[p] += w;
                sw2[p] += w * w;
            }
        }
    });

    const double nd = static_cast<double>(n);
    const double vol = std::pow(2.0 * radius, static_cast<double>(map.dim));
    const double factor = space.weight_scale() / (nd * vol);
    std::vector<PointDensity> out(m);
    for (std::size_t p = 0; p < m; ++p) {
        out[p].hits = hits[p];
        out[p].low_statistics = hits[p] < kMinHits;
        out[p].value = factor * sw[p];
        out[p].standard_error =
            hits[p] == 0 ? factor : factor * std::sqrt(std::max(0.0, sw2[p] - sw[p] * sw[p] / nd));
    }
    return out;
}

PointDensity density_at(const SpaceModel& space, const Observable& map, const std::vector<double>& x,
                        double radius, std::uint64_t n, std::uint64_t seed, unsigned threads)
{
    return density_at(space, map, std::vector<std::vector<double>>{x}, radius, n, seed, threads).front();
}

// ---------------------------------------------------------------- comparison

CompareReport compare(const DensityEstimate& est, const std::function<double(std::span<const double>)>& reference,
                      const CompareOptions& options)
{
    CompareReport r;
    const double n = static_cast<double>(est.n_samples);
    const double vol = est.grid.bin_volume();
    double rel_sum = 0.0;
    for (std::size_t b = 0; b < est.density.size(); ++b) {
        if (options.include && !options.include(est.grid.bin_lower(b), est.grid.bin_upper(b)))
            continue;
        const double ref = reference(est.grid.bin_center(b));
        if (!(ref > 0.0))
            continue;
        const double expected = n * ref * vol / est.scale;
        if (expected < options.min_count)
            continue;
        const double observed = n * est.density[b] * vol / est.scale;
        const double rel = std::abs(est.density[b] - ref) / ref;
        r.max_rel_error = std::max(r.max_rel_error, rel);
        rel_sum += rel;
        r.chi_square += (observed - expected) * (observed - expected) / expected;
        ++r.bins_used;
    }
    r.dof = r.bins_used;
    if (r.bins_used > 0) {
        r.mean_rel_error = rel_sum / static_cast<double>(r.bins_used);
        r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(r.dof), 0.5 * r.chi_square);
    }
    r.pass = r.bins_used > 0 && r.max_rel_error <= options.tolerance;
    return r;
}

} // namespace gcdh
