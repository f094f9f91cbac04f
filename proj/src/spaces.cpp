#include "gcdh/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace gcdh {

SpaceModel::SpaceModel(std::string name, GroupSpec group, int half_dim, double mass, double weight_scale,
                       std::size_t point_size, Drawer drawer, Moment moment)
    : name_(std::move(name)), group_(group), half_dim_(half_dim), mass_(mass), weight_scale_(weight_scale),
      point_size_(point_size), drawer_(std::move(drawer)), moment_(std::move(moment))
{
}

double SpaceModel::sample(std::uint64_t seed, std::uint64_t index, std::span<double> point) const
{
    if (point.size() != point_size_)
        throw ValidationError("SpaceModel::sample: point buffer has wrong size");
    RandomStream rng(seed, index);
    return drawer_(rng, point);
}

namespace {

// Packs a Hermitian matrix as (re, im) pairs, row-major.
void pack(const HermitianMatrix& h, std::span<double> out)
{
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out[2 * (i * n + j)] = h(i, j).real();
            out[2 * (i * n + j) + 1] = h(i, j).imag();
        }
}

HermitianMatrix unpack(std::size_t n, std::span<const double> in)
{
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = Complex(in[2 * (i * n + j)], in[2 * (i * n + j) + 1]);
    return HermitianMatrix::hermitian_part(a);
}

std::string format_coords(const std::vector<double>& c)
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", c[i]);
        s += buf;
    }
    return s;
}

} // namespace

SpaceModel orbit_space(const GroupSpec& group, const ChamberPoint& c)
{
    if (!(c.group == group))
        throw ValidationError("orbit_space: chamber point belongs to " + c.group.name() + ", not " + group.name());
    if (!c.is_regular())
        throw ValidationError("orbit_space: chamber point (" + format_coords(c.coords)
                              + ") is not regular; degenerate orbits are not supported");
    const std::string name = "O(" + format_coords(c.coords) + ")";
    const double mass = orbit_volume(group, c);

    switch (group.kind()) {
    case GroupKind::torus: {
        const auto coords = c.coords;
        return SpaceModel(
            name, group, 0, mass, mass, coords.size(),
            [coords](RandomStream&, std::span<double> p) {
                std::copy(coords.begin(), coords.end(), p.begin());
                return 1.0;
            },
            [](std::span<const double> p) { return LiePoint::torus({p.begin(), p.end()}); });
    }
    case GroupKind::su2: {
        const double r = c.coords[0];
        // Archimedes: x3 uniform on [-r, r], azimuth uniform.
        return SpaceModel(
            name, group, 1, mass, mass, 3,
            [r](RandomStream& rng, std::span<double> p) {
                const double z = 2.0 * rng.uniform() - 1.0;
                const double phi = 2.0 * std::numbers::pi * rng.uniform();
                const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
                p[0] = r * rho * std::cos(phi);
                p[1] = r * rho * std::sin(phi);
                p[2] = r * z;
                return 1.0;
            },
            [](std::span<const double> p) { return LiePoint::su2(p[0], p[1], p[2]); });
    }
    case GroupKind::un: {
        const std::size_t n = group.parameter();
        const HermitianMatrix d = HermitianMatrix::diagonal(c.coords);
        return SpaceModel(
            name, group, group.u(), mass, mass, 2 * n * n,
            [n, d](RandomStream& rng, std::span<double> p) {
                pack(d.conjugated(haar_unitary(n, rng)), p);
                return 1.0;
            },
            [n](std::span<const double> p) { return LiePoint::un(unpack(n, p)); });
    }
    }
    throw ValidationError("orbit_space: unsupported group");
}

SpaceModel product_space(const std::vector<SpaceModel>& factors)
{
    if (factors.empty())
        throw ValidationError("product_space: needs at least one factor");
    const GroupSpec group = factors.front().group();
    std::string name;
    int half_dim = 0;
    double mass = 1.0;
    double scale = 1.0;
    std::size_t size = 0;
    std::vector<std::size_t> offsets;
    for (const auto& f : factors) {
        if (!(f.group() == group))
            throw ValidationError("product_space: factor " + f.name() + " acts by " + f.group().name()
                                  + ", expected " + group.name());
        name += (name.empty() ? "" : "x") + f.name();
        half_dim += f.half_dim();
        mass *= f.mass();
        scale *= f.weight_scale();
        offsets.push_back(size);
        size += f.point_size();
    }
    return SpaceModel(
        name, group, half_dim, mass, scale, size,
        [factors, offsets](RandomStream& rng, std::span<double> p) {
            double w = 1.0;
            for (std::size_t i = 0; i < factors.size(); ++i)
                w *= factors[i].draw(rng, p.subspan(offsets[i], factors[i].point_size()));
            return w;
        },
        [factors, offsets](std::span<const double> p) {
            LiePoint total = factors[0].moment(p.subspan(offsets[0], factors[0].point_size()));
            for (std::size_t i = 1; i < factors.size(); ++i)
                total += factors[i].moment(p.subspan(offsets[i], factors[i].point_size()));
            return total;
        });
}

SpaceModel cpn_space(int n)
{
    if (n < 1)
        throw ValidationError("cpn_space: n must be >= 1, got " + std::to_string(n));
    const double mass = 1.0 / std::tgamma(n + 1.0);
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    return SpaceModel(
        "CP" + std::to_string(n), GroupSpec::torus(n), n, mass, mass, 2 * m,
        [m](RandomStream& rng, std::span<double> p) {
            double s = 0.0;
            for (std::size_t i = 0; i < 2 * m; ++i) {
                p[i] = rng.gaussian();
                s += p[i] * p[i];
            }
            const double inv = 1.0 / std::sqrt(s);
            for (std::size_t i = 0; i < 2 * m; ++i)
                p[i] *= inv;
            return 1.0;
        },
        [n](std::span<const double> p) {
            std::vector<double> mu(n);
            for (int i = 0; i < n; ++i)
                mu[i] = p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1];
            return LiePoint::torus(std::move(mu));
        });
}

SpaceModel wishart_space(int n, int k)
{
    if (n < 1)
        throw ValidationError("wishart_space: n must be >= 1, got " + std::to_string(n));
    if (k < n)
        throw ValidationError("wishart_space: k must be >= n (got k=" + std::to_string(k)
                              + ", n=" + std::to_string(n) + ")");
    const std::size_t nn = n, kk = k;
    return SpaceModel(
        "W(" + std::to_string(n) + "," + std::to_string(k) + ")", GroupSpec::un(n), n * k, INFINITY, 1.0,
        2 * nn * kk,
        [nn, kk](RandomStream& rng, std::span<double> p) {
            // log of Lebesgue/(2 pi)^{nk} over the standard complex Gaussian density.
            double log_w = 0.0;
            for (std::size_t i = 0; i < 2 * nn * kk; ++i) {
                p[i] = rng.gaussian();
                log_w += 0.5 * p[i] * p[i];
            }
            return std::exp(log_w);
        },
        [nn, kk](std::span<const double> p) {
            ComplexMatrix a(nn);
            for (std::size_t j = 0; j < kk; ++j)
                for (std::size_t r = 0; r < nn; ++r) {
                    const Complex zr(p[2 * (j * nn + r)], p[2 * (j * nn + r) + 1]);
                    for (std::size_t c = 0; c < nn; ++c) {
                        const Complex zc(p[2 * (j * nn + c)], p[2 * (j * nn + c) + 1]);
                        a(r, c) += 0.5 * zr * std::conj(zc);
                    }
                }
            return LiePoint::un(HermitianMatrix::hermitian_part(a));
        });
}

} // namespace gcdh
