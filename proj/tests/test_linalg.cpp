#include <doctest.h>

#include <cmath>

#include "gcdh/liegc.hpp"
#include "oracles.hpp"

using namespace gcdh;

namespace {

HermitianMatrix random_hermitian(std::size_t n, RandomStream& rng)
{
    return random_lie_point(GroupSpec::un(static_cast<int>(n)), rng).matrix();
}

} // namespace

TEST_CASE("eig_h on hand-diagonalizable matrices")
{
    const auto swap = HermitianMatrix::from_entries(2, {0.0, 1.0, 1.0, 0.0});
    const auto s = eig_h(swap).values;
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s[1] == doctest::Approx(-1.0).epsilon(1e-14));

    const std::vector<double> d{3.0, 1.0, 2.0};
    CHECK(eig_h(HermitianMatrix::diagonal(d)).values == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("eig_h matches the characteristic-polynomial oracle")
{
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
        RandomStream rng(11, i);
        const auto h = random_hermitian(5, rng);
        const auto got = eig_h(h).values;
        const auto want = oracle::charpoly_eigenvalues(h);
        for (std::size_t k = 0; k < 5; ++k)
            worst = std::max(worst, std::abs(got[k] - want[k]));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("eigenvector residuals")
{
    for (std::size_t i = 0; i < 200; ++i) {
        RandomStream rng(12, i);
        const std::size_t n = 1 + i % 8;
        const auto h = random_hermitian(n, rng);
        const auto dec = eig_h_vectors(h);
        const double norm = h.frobenius_norm();
        for (std::size_t j = 0; j < n; ++j) {
            double res = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                Complex s = -dec.spectrum.values[j] * dec.vectors(r, j);
                for (std::size_t c = 0; c < n; ++c)
                    s += h(r, c) * dec.vectors(c, j);
                res += std::norm(s);
            }
            CHECK(std::sqrt(res) <= 1e-10 * norm);
        }
    }
}

TEST_CASE("spectrum is sorted descending and preserves trace and Frobenius norm")
{
    for (std::size_t i = 0; i < 500; ++i) {
        RandomStream rng(13, i);
        const auto h = random_hermitian(1 + i % 7, rng);
        const auto v = eig_h(h).values;
        double sum = 0, sq = 0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k + 1 < v.size())
                CHECK(v[k] >= v[k + 1]);
            sum += v[k];
            sq += v[k] * v[k];
        }
        CHECK(std::abs(sum - h.trace()) < 1e-10);
        CHECK(std::abs(sq - h.frobenius_norm() * h.frobenius_norm()) < 1e-10);
    }
}

TEST_CASE("conjugation invariance of the spectrum")
{
    for (std::size_t i = 0; i < 300; ++i) {
        RandomStream rng(14, i);
        const std::size_t n = 2 + i % 5;
        const auto h = random_hermitian(n, rng);
        const auto u = haar_unitary(n, rng);
        const auto a = eig_h(h).values;
        const auto b = eig_h(h.conjugated(u)).values;
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(a[k] - b[k]) < 1e-9);
    }
}

TEST_CASE("non-Hermitian input is rejected")
{
    CHECK_THROWS_AS(HermitianMatrix::from_entries(2, {0.0, 1.0, 2.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(HermitianMatrix::from_entries(2, {Complex(0, 1), 0.0, 0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(HermitianMatrix::from_entries(2, {0.0, 1.0, 1.0}), ValidationError);
    CHECK_NOTHROW(HermitianMatrix::from_entries(2, {1.0, Complex(0, 1), Complex(0, -1), 2.0}));
}

TEST_CASE("haar_unitary is unitary")
{
    {
        RandomStream rng(15, 0);
        const auto u = haar_unitary(1, rng);
        CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-14);
    }
    for (std::size_t i = 0; i < 200; ++i) {
        RandomStream rng(15, i + 1);
        const std::size_t n = 1 + i % 10;
        const auto u = haar_unitary(n, rng);
        CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(n)) < 1e-12);
    }
    RandomStream rng(15, 9999);
    CHECK_THROWS_AS(haar_unitary(0, rng), ValidationError);
}

TEST_CASE("haar_unitary is left invariant and has Beta(1, n-1) corner modulus")
{
    constexpr std::size_t n = 3;
    constexpr std::size_t draws = 100000;
    RandomStream vrng(16, 0);
    const auto v = haar_unitary(n, vrng);

    std::vector<double> plain, shifted, modulus;
    for (std::size_t i = 0; i < draws; ++i) {
        RandomStream a(17, i), b(18, i);
        const auto u = haar_unitary(n, a);
        plain.push_back(u(0, 0).real());
        modulus.push_back(std::norm(u(0, 0)));
        shifted.push_back((v * haar_unitary(n, b))(0, 0).real());
    }
    CHECK(oracle::ks_statistic(plain, shifted) < oracle::ks_critical_001(draws, draws));
    CHECK(oracle::ks_statistic(modulus, [](double x) { return 1.0 - std::pow(1.0 - x, double(n - 1)); })
          < oracle::ks_critical_001(draws));
}

TEST_CASE("principal_submatrix")
{
    const auto h = HermitianMatrix::from_entries(2, {1.0, Complex(0, 1), Complex(0, -1), 2.0});
    const auto one = principal_submatrix(h, 1);
    REQUIRE(one.size() == 1);
    CHECK(one(0, 0) == Complex(1.0));
    CHECK(max_abs_diff(principal_submatrix(h, 2).matrix(), h.matrix()) == 0.0);
    CHECK_THROWS_AS(principal_submatrix(h, 0), ValidationError);
    CHECK_THROWS_AS(principal_submatrix(h, 3), ValidationError);
}

TEST_CASE("Cauchy interlacing of leading blocks")
{
    std::size_t violations = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        RandomStream rng(19, i);
        const std::size_t n = 2 + i % 6;
        const auto h = random_hermitian(n, rng);
        auto top = eig_h(h).values;
        for (std::size_t k = n - 1; k >= 1; --k) {
            const auto low = eig_h(principal_submatrix(h, k)).values;
            violations += !oracle::interlaces(top, low, 1e-10);
            top = low;
        }
    }
    CHECK(violations == 0);
}
