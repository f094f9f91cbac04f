#include "gcdh/dhlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcdh {

Observable gc_observable(const SpaceModel& space)
{
    return moment_observable(space, space.group().b(), [](const LiePoint& mu, std::span<double> out) {
        const auto v = gc_map(mu).concat();
        std::copy(v.begin(), v.end(), out.begin());
    });
}

Observable chamber_observable(const SpaceModel& space)
{
    return moment_observable(space, space.group().rank(), [](const LiePoint& mu, std::span<double> out) {
        const auto c = sweep(mu);
        std::copy(c.coords.begin(), c.coords.end(), out.begin());
    });
}

Observable interior_observable(const SpaceModel& space)
{
    return moment_observable(space, space.group().u(), [](const LiePoint& mu, std::span<double> out) {
        const auto v = gc_map(mu);
        std::copy(v.interior.begin(), v.interior.end(), out.begin());
    });
}

DensityEstimate dh_big(const SpaceModel& space, const Grid& grid, std::uint64_t n, std::uint64_t seed,
                       unsigned threads)
{
    if (static_cast<int>(grid.dim()) != space.group().b())
        throw ValidationError("dh_big: grid dimension " + std::to_string(grid.dim()) + " differs from b = "
                              + std::to_string(space.group().b()));
    return push_forward(space, gc_observable(space), grid, n, seed, threads);
}

DensityEstimate dh_chamber(const SpaceModel& space, const Grid& grid, std::uint64_t n, std::uint64_t seed,
                           unsigned threads)
{
    if (static_cast<int>(grid.dim()) != space.group().rank())
        throw ValidationError("dh_chamber: grid dimension " + std::to_string(grid.dim())
                              + " differs from the rank " + std::to_string(space.group().rank()));
    return push_forward(space, chamber_observable(space), grid, n, seed, threads);
}

namespace {

// Stream salts, one per sampling pass.
enum Pass : std::uint64_t {
    kCorollaryChamber = 1,
    kCorollaryBig = 2,
    kMainBase = 3,
    kMainFiber = 4,
    kMainPartner = 5,
    kMainInterior = 6,
    kRegion = 7,
    kTestPoints = 8,
};

VerificationRow make_row(std::string family, std::vector<double> point, const PointDensity& lhs,
                         const PointDensity& rhs, double rhs_factor, const VerifyOptions& opt,
                         std::uint64_t seed_lhs, std::uint64_t seed_rhs)
{
    VerificationRow row;
    row.family = std::move(family);
    row.point = std::move(point);
    row.lhs = lhs.value;
    row.rhs = rhs_factor * rhs.value;
    row.standard_error = std::hypot(lhs.standard_error, rhs_factor * rhs.standard_error);
    row.hits_lhs = lhs.hits;
    row.hits_rhs = rhs.hits;
    row.low_statistics = lhs.low_statistics || rhs.low_statistics;
    row.seed_lhs = seed_lhs;
    row.seed_rhs = seed_rhs;
    row.n = opt.n;
    const double allowed = std::max(opt.sigmas * row.standard_error, opt.tolerance * std::abs(row.rhs));
    row.pass = !row.low_statistics && std::abs(row.lhs - row.rhs) <= allowed;
    return row;
}

VerificationReport start_report(std::string label, const VerifyOptions& opt)
{
    VerificationReport r;
    r.label = std::move(label);
    r.seed = opt.seed;
    r.n = opt.n;
    r.radius = opt.radius;
    r.tolerance = opt.tolerance;
    r.sigmas = opt.sigmas;
    return r;
}

void finish_report(VerificationReport& r)
{
    r.pass = !r.rows.empty()
             && std::all_of(r.rows.begin(), r.rows.end(), [](const VerificationRow& row) { return row.pass; });
}

void require_test_points(const SpaceModel& space, const std::vector<LiePoint>& points, const char* who)
{
    if (points.empty())
        throw ValidationError(std::string(who) + ": no test points");
    for (const auto& xi : points) {
        if (!(xi.group() == space.group()))
            throw ValidationError(std::string(who) + ": test point belongs to " + xi.group().name());
        if (!is_sreg(xi))
            throw ValidationError(std::string(who) + ": test point is not strongly regular");
    }
}

} // namespace

VerificationReport verify_corollary(const SpaceModel& space, const std::vector<LiePoint>& points,
                                    const VerifyOptions& opt)
{
    require_test_points(space, points, "verify_corollary");
    std::vector<std::vector<double>> chamber_pts, big_pts;
    std::vector<double> volumes;
    for (const auto& xi : points) {
        const ChamberPoint c = sweep(xi);
        chamber_pts.push_back(c.coords);
        big_pts.push_back(gc_map(xi).concat());
        volumes.push_back(opt.use_orbit_volume ? orbit_volume(space.group(), c) : 1.0);
    }
    const std::uint64_t seed_c = mix_seed(opt.seed, kCorollaryChamber);
    const std::uint64_t seed_b = mix_seed(opt.seed, kCorollaryBig);
    const auto chamber = density_at(space, chamber_observable(space), chamber_pts, opt.radius, opt.n, seed_c, opt.threads);
    const auto big = density_at(space, gc_observable(space), big_pts, opt.radius, opt.n, seed_b, opt.threads);

    VerificationReport report = start_report("corollary: rho_chamber = vol(O) * rho_big on " + space.name(), opt);
    for (std::size_t i = 0; i < points.size(); ++i)
        report.rows.push_back(make_row("corollary", chamber_pts[i], chamber[i], big[i], volumes[i], opt, seed_c, seed_b));
    finish_report(report);
    return report;
}

VerificationReport verify_main_theorem(const SpaceModel& space, const std::vector<LiePoint>& points,
                                       const VerifyOptions& opt)
{
    require_test_points(space, points, "verify_main_theorem");
    constexpr double kFiberTolerance = 1e-9;
    const Observable big_map = gc_observable(space);

    std::vector<std::vector<double>> base_pts, partner_pts;
    std::vector<bool> fiber_ok;
    const std::uint64_t seed_partner = mix_seed(opt.seed, kMainPartner);
    for (std::size_t i = 0; i < points.size(); ++i) {
        RandomStream rng(seed_partner, i);
        const LiePoint eta = fiber_partner(points[i], rng);
        const auto gx = gc_map(points[i]).concat();
        const auto ge = gc_map(eta).concat();
        const auto sx = sweep(points[i]).coords;
        const auto se = sweep(eta).coords;
        bool ok = is_sreg(eta);
        for (std::size_t j = 0; j < gx.size(); ++j)
            ok = ok && std::abs(gx[j] - ge[j]) <= kFiberTolerance;
        for (std::size_t j = 0; j < sx.size(); ++j)
            ok = ok && std::abs(sx[j] - se[j]) <= kFiberTolerance;
        fiber_ok.push_back(ok);
        base_pts.push_back(gx);
        partner_pts.push_back(ge);
    }

    const std::uint64_t seed_base = mix_seed(opt.seed, kMainBase);
    const std::uint64_t seed_fiber = mix_seed(opt.seed, kMainFiber);
    const auto base = density_at(space, big_map, base_pts, opt.radius, opt.n, seed_base, opt.threads);
    const auto partner = density_at(space, big_map, partner_pts, opt.radius, opt.n, seed_fiber, opt.threads);

    VerificationReport report = start_report("main theorem: rho_big depends only on the orbit, " + space.name(), opt);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto row = make_row("fiber", partner_pts[i], partner[i], base[i], 1.0, opt, seed_fiber, seed_base);
        row.pass = row.pass && fiber_ok[i];
        report.rows.push_back(std::move(row));
    }

    const std::uint64_t seed_int = mix_seed(opt.seed, kMainInterior);
    if (space.group().u() > 0) {
        static constexpr double kWeights[] = {0.3, 0.5, 0.7};
        std::vector<std::vector<double>> int_pts;
        std::vector<std::size_t> owner;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (double s : kWeights) {
                int_pts.push_back(interior_gc_point(sweep(points[i]), s).concat());
                owner.push_back(i);
            }
        const auto interior = density_at(space, big_map, int_pts, opt.radius, opt.n, seed_int, opt.threads);
        for (std::size_t j = 0; j < int_pts.size(); ++j)
            report.rows.push_back(
                make_row("interior", int_pts[j], interior[j], base[owner[j]], 1.0, opt, seed_int, seed_base));
    } else {
        // Abelian case: the big and chamber pushforwards are the same measure.
        std::vector<std::vector<double>> chamber_pts;
        for (const auto& xi : points)
            chamber_pts.push_back(sweep(xi).coords);
        const auto chamber =
            density_at(space, chamber_observable(space), chamber_pts, opt.radius, opt.n, seed_int, opt.threads);
        for (std::size_t i = 0; i < points.size(); ++i)
            report.rows.push_back(make_row("abelian", chamber_pts[i], chamber[i], base[i], 1.0, opt, seed_int, seed_base));
    }
    finish_report(report);
    return report;
}

RegionReport sreg_region_report(const SpaceModel& space, std::uint64_t n, std::uint64_t seed, unsigned threads)
{
    if (n < 1)
        throw ValidationError("sreg_region_report: n_samples must be >= 1");
    const std::size_t b = space.group().b();
    const std::size_t l = space.group().rank();
    // Output layout: gc value (b), chamber value (l), s-reg flag, regular flag.
    const Observable probe = moment_observable(space, b + l + 2, [b, l](const LiePoint& mu, std::span<double> out) {
        const auto g = gc_map(mu).concat();
        const ChamberPoint c = sweep(mu);
        std::copy(g.begin(), g.end(), out.begin());
        std::copy(c.coords.begin(), c.coords.end(), out.begin() + b);
        out[b + l] = is_sreg(mu) ? 1.0 : 0.0;
        out[b + l + 1] = c.is_regular() ? 1.0 : 0.0;
    });

    RegionReport r;
    r.n = n;
    r.seed = seed;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    r.big_box.assign(b, {kInf, -kInf});
    r.chamber_box.assign(l, {kInf, -kInf});
    std::uint64_t sreg = 0, regular = 0;
    for_each_value(space, probe, 0, n, mix_seed(seed, kRegion), threads, [&](std::span<const double> y, double) {
        for (std::size_t j = 0; j < b; ++j) {
            r.big_box[j].first = std::min(r.big_box[j].first, y[j]);
            r.big_box[j].second = std::max(r.big_box[j].second, y[j]);
        }
        for (std::size_t j = 0; j < l; ++j) {
            r.chamber_box[j].first = std::min(r.chamber_box[j].first, y[b + j]);
            r.chamber_box[j].second = std::max(r.chamber_box[j].second, y[b + j]);
        }
        sreg += y[b + l] != 0.0;
        regular += y[b + l + 1] != 0.0;
    });
    const double nd = static_cast<double>(n);
    r.sreg_fraction = static_cast<double>(sreg) / nd;
    r.hypotheses_met = 2 * space.half_dim() >= space.group().dim();
    r.regular_fraction = r.hypotheses_met ? static_cast<double>(regular) / nd : 0.0;
    if (!r.hypotheses_met)
        r.note = "theorem hypotheses not met: dim M < dim G, so the moment map has no regular values";
    return r;
}

std::vector<LiePoint> default_test_points(const SpaceModel& space, const RegionReport& region, double radius,
                                          std::uint64_t seed, std::size_t count)
{
    std::vector<LiePoint> points;
    const GroupSpec& group = space.group();
    if (group.rank() == 1) {
        const auto [a, b] = region.chamber_box.at(0);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.5 : 0.15 + 0.7 * static_cast<double>(i) / static_cast<double>(count - 1);
            const double t = a + f * (b - a);
            if (group.kind() == GroupKind::torus)
                points.push_back(LiePoint::torus({t}));
            else
                points.push_back(lift_chamber_point(ChamberPoint::make(group, {t})));
        }
        return points;
    }

    // Higher rank: take sampled moment values well inside the chamber box.
    const std::uint64_t s = mix_seed(seed, kTestPoints);
    std::vector<double> buf(space.point_size());
    for (std::uint64_t i = 0; i < 100'000 && points.size() < count; ++i) {
        space.sample(s, i, buf);
        LiePoint xi = space.moment(buf);
        if (!is_sreg(xi))
            continue;
        const auto c = sweep(xi).coords;
        bool inside = true;
        for (std::size_t j = 0; j < c.size() && inside; ++j)
            inside = c[j] - region.chamber_box[j].first >= 3 * radius
                     && region.chamber_box[j].second - c[j] >= 3 * radius;
        if (inside)
            points.push_back(std::move(xi));
    }
    return points;
}

} // namespace gcdh
