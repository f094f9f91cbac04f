#include <doctest.h>

#include <cmath>

#include "gcdh/dhlab.hpp"

using namespace gcdh;

namespace {

SpaceModel su2_orbit(double r)
{
    return orbit_space(GroupSpec::su2(), ChamberPoint::make(GroupSpec::su2(), {r}));
}

SpaceModel horn_pair(double c = 1.0)
{
    return product_space({su2_orbit(c), su2_orbit(0.5 * c)});
}

std::vector<LiePoint> su2_points(const std::vector<double>& ts)
{
    std::vector<LiePoint> pts;
    for (double t : ts)
        pts.push_back(lift_chamber_point(ChamberPoint::make(GroupSpec::su2(), {t})));
    return pts;
}

VerifyOptions options(std::uint64_t seed, std::uint64_t n = 400000)
{
    VerifyOptions o;
    o.seed = seed;
    o.n = n;
    o.threads = 2;
    return o;
}

} // namespace

TEST_CASE("dh_big of a single un(2) orbit is uniform along the interior coordinate")
{
    const auto g = GroupSpec::un(2);
    const auto m = orbit_space(g, ChamberPoint::make(g, {1.0, -1.0}));
    const Grid grid = Grid::make({0.99, -1.01, -1.0}, {1.01, -0.99, 1.0}, {1, 1, 20});
    const auto est = dh_big(m, grid, 200000, 1, 2);
    CHECK(est.overflow_count == 0);
    // The first two axes carry a point mass; divide out their width.
    const double w = grid.width(0) * grid.width(1);
    for (std::size_t b = 0; b < 20; ++b)
        CHECK(std::abs(est.density[b] * w - 1.0) < 0.05);
    CHECK(est.total_mass_estimate == doctest::Approx(2.0));
}

TEST_CASE("dh_big of an su2 orbit and of CP1")
{
    const auto m = su2_orbit(1.0);
    const Grid grid = Grid::make({0.999, -1.0}, {1.001, 1.0}, {1, 10});
    const auto est = dh_big(m, grid, 100000, 2, 2);
    for (std::size_t b = 0; b < 10; ++b)
        CHECK(std::abs(est.density[b] * grid.width(0) - 1.0) < 0.05);

    const auto cp1 = cpn_space(1);
    const Grid g1 = Grid::make({0.0}, {1.0}, {10});
    const auto big = dh_big(cp1, g1, 100000, 3, 2);
    const auto chamber = dh_chamber(cp1, g1, 100000, 3, 2);
    CHECK(big.density == chamber.density);
    for (double d : big.density)
        CHECK(std::abs(d - 1.0) < 0.05);
}

TEST_CASE("abelian big and chamber estimates coincide bin for bin")
{
    const auto cp2 = cpn_space(2);
    const Grid g = Grid::make({0.0, 0.0}, {1.0, 1.0}, {8, 8});
    const auto big = dh_big(cp2, g, 50000, 4, 3);
    const auto chamber = dh_chamber(cp2, g, 50000, 4, 1);
    CHECK(big.density == chamber.density);
    CHECK(big.counts == chamber.counts);
}

TEST_CASE("grid dimension must match the codomain")
{
    const auto m = horn_pair();
    CHECK_THROWS_AS(dh_big(m, Grid::make({0.0}, {1.0}, {5}), 100, 1, 1), ValidationError);
    CHECK_THROWS_AS(dh_chamber(m, Grid::make({0.0, 0.0}, {1.0, 1.0}, {5, 5}), 100, 1, 1), ValidationError);
}

TEST_CASE("Horn density 2t for a pair of su2 orbits")
{
    const auto m = horn_pair();
    const auto est = dh_chamber(m, Grid::make({0.5}, {1.5}, {20}), 400000, 5, 2);
    for (std::size_t b = 0; b < 20; ++b) {
        const double t = est.grid.bin_center(b)[0];
        CHECK(std::abs(est.density[b] - 2.0 * t) < 5.0 * est.standard_error[b]);
    }
    CHECK(est.total_mass_estimate == doctest::Approx(2.0));

    const auto single = dh_chamber(su2_orbit(1.0), Grid::make({0.05}, {2.05}, {20}), 10000, 6, 2);
    CHECK(single.counts[9] == 10000);
}

TEST_CASE("corollary holds for su2 orbit pairs and fails without the orbit volume")
{
    const auto m = horn_pair();
    const auto pts = su2_points({0.7, 1.0, 1.3});
    const auto rep = verify_corollary(m, pts, options(7));
    CHECK(rep.pass);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[1].lhs == doctest::Approx(2.0).epsilon(0.05));
    CHECK(rep.rows[1].rhs == doctest::Approx(2.0).epsilon(0.05));
    for (const auto& row : rep.rows) {
        CHECK(row.n == 400000);
        CHECK(row.seed_lhs != row.seed_rhs);
    }

    auto neg = options(7);
    neg.use_orbit_volume = false;
    const auto control = verify_corollary(m, pts, neg);
    CHECK_FALSE(control.pass);
    for (const auto& row : control.rows)
        CHECK_FALSE(row.pass);
}

TEST_CASE("corollary is covariant under scaling the orbits")
{
    const auto small = verify_corollary(horn_pair(1.0), su2_points({0.8, 1.2}), options(8));
    const auto large = verify_corollary(horn_pair(2.0), su2_points({1.6, 2.4}), options(8));
    CHECK(small.pass);
    CHECK(large.pass);
    REQUIRE(small.rows.size() == large.rows.size());
    for (std::size_t i = 0; i < small.rows.size(); ++i) {
        CHECK(large.rows[i].point[0] == 2.0 * small.rows[i].point[0]);
        CHECK(large.rows[i].pass == small.rows[i].pass);
    }
}

TEST_CASE("main theorem rows for su2 pairs")
{
    const auto m = horn_pair();
    const auto rep = verify_main_theorem(m, su2_points({1.0}), options(9));
    CHECK(rep.pass);
    std::size_t fiber = 0, interior = 0;
    for (const auto& row : rep.rows) {
        fiber += row.family == "fiber";
        interior += row.family == "interior";
        // The quotient is a point of unit volume.
        CHECK(row.lhs == doctest::Approx(1.0).epsilon(0.1));
    }
    CHECK(fiber == 1);
    CHECK(interior == 3);
}

TEST_CASE("main theorem reduces to equality of measures on tori")
{
    const auto m = cpn_space(2);
    std::vector<LiePoint> pts{LiePoint::torus({0.2, 0.3}), LiePoint::torus({0.5, 0.2})};
    const auto rep = verify_main_theorem(m, pts, options(10, 200000));
    CHECK(rep.pass);
    for (const auto& row : rep.rows) {
        if (row.family == "abelian")
            CHECK(row.lhs == doctest::Approx(1.0).epsilon(0.1));
    }
}

TEST_CASE("verification rows are reproducible")
{
    const auto m = horn_pair();
    const auto pts = su2_points({0.9});
    auto a = options(11, 50000), b = options(11, 50000);
    b.threads = 1;
    const auto r1 = verify_corollary(m, pts, a);
    const auto r2 = verify_corollary(m, pts, b);
    CHECK(r1.rows[0].lhs == r2.rows[0].lhs);
    CHECK(r1.rows[0].rhs == r2.rows[0].rhs);
    CHECK(r1.rows[0].standard_error == r2.rows[0].standard_error);
}

TEST_CASE("points outside the image are flagged as low statistics")
{
    const auto rep = verify_corollary(horn_pair(), su2_points({2.0}), options(12, 20000));
    CHECK(rep.rows[0].low_statistics);
    CHECK_FALSE(rep.rows[0].pass);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("test points must be strongly regular")
{
    const auto m = horn_pair();
    CHECK_THROWS_AS(verify_corollary(m, {LiePoint::su2(0.0, 0.0, 1.0)}, options(1)), ValidationError);
    CHECK_THROWS_AS(verify_main_theorem(m, {}, options(1)), ValidationError);
}

TEST_CASE("region reports")
{
    const auto pair = sreg_region_report(horn_pair(), 100000, 13, 2);
    CHECK(pair.chamber_box[0].first == doctest::Approx(0.5).epsilon(0.01));
    CHECK(pair.chamber_box[0].second == doctest::Approx(1.5).epsilon(0.01));
    CHECK(pair.sreg_fraction == 1.0);
    CHECK(pair.hypotheses_met);
    CHECK(pair.regular_fraction == 1.0);

    const auto single = sreg_region_report(su2_orbit(1.0), 10000, 14, 2);
    CHECK(single.sreg_fraction == 1.0);
    CHECK(single.regular_fraction == 0.0);
    CHECK_FALSE(single.hypotheses_met);
    CHECK(single.note.find("theorem hypotheses not met") != std::string::npos);

    const auto cp2 = sreg_region_report(cpn_space(2), 100000, 15, 2);
    for (const auto& [lo, hi] : cp2.chamber_box) {
        CHECK(lo >= 0.0);
        CHECK(lo < 0.01);
        CHECK(hi <= 1.0);
        CHECK(hi > 0.95);
    }
}

TEST_CASE("default test points are strongly regular and inside the image")
{
    const auto m = horn_pair();
    const auto region = sreg_region_report(m, 20000, 16, 2);
    const auto pts = default_test_points(m, region, 0.05, 16);
    REQUIRE(pts.size() == 5);
    for (const auto& xi : pts) {
        CHECK(is_sreg(xi));
        const double t = sweep(xi).coords[0];
        CHECK(t > 0.6);
        CHECK(t < 1.4);
    }

    const auto g = GroupSpec::un(3);
    const auto u3 = product_space({orbit_space(g, ChamberPoint::make(g, {2.0, 0.0, -2.0})),
                                   orbit_space(g, ChamberPoint::make(g, {1.0, 0.0, -1.0})),
                                   orbit_space(g, ChamberPoint::make(g, {1.0, 0.5, -1.5}))});
    const auto r3 = sreg_region_report(u3, 20000, 17, 2);
    const auto p3 = default_test_points(u3, r3, 0.1, 17);
    CHECK(p3.size() == 5);
    for (const auto& xi : p3)
        CHECK(is_sreg(xi));
}
