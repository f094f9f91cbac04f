#include "gcdh/liegc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gcdh {

// ---------------------------------------------------------------- groups

GroupSpec GroupSpec::torus(int k)
{
    if (k < 1)
        throw ValidationError("group: torus rank must be >= 1, got " + std::to_string(k));
    return GroupSpec(GroupKind::torus, k);
}

GroupSpec GroupSpec::su2()
{
    return GroupSpec(GroupKind::su2, 2);
}

GroupSpec GroupSpec::un(int n)
{
    if (n < 1)
        throw ValidationError("group: U(n) needs n >= 1, got " + std::to_string(n));
    return GroupSpec(GroupKind::un, n);
}

GroupSpec GroupSpec::parse(std::string_view name)
{
    auto number = [&](std::string_view digits) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ValidationError("group: cannot parse '" + std::string(name) + "' (expected torusK, su2 or unN)");
        return std::stoi(std::string(digits));
    };
    if (name == "su2")
        return su2();
    if (name.starts_with("torus"))
        return torus(number(name.substr(5)));
    if (name.starts_with("un"))
        return un(number(name.substr(2)));
    throw ValidationError("group: unknown group '" + std::string(name) + "' (expected torusK, su2 or unN)");
}

int GroupSpec::rank() const
{
    switch (kind_) {
    case GroupKind::torus: return param_;
    case GroupKind::su2: return 1;
    case GroupKind::un: return param_;
    }
    return 0;
}

int GroupSpec::u() const
{
    switch (kind_) {
    case GroupKind::torus: return 0;
    case GroupKind::su2: return 1;
    case GroupKind::un: return param_ * (param_ - 1) / 2;
    }
    return 0;
}

int GroupSpec::dim() const
{
    return rank() + 2 * u();
}

std::string GroupSpec::name() const
{
    switch (kind_) {
    case GroupKind::torus: return "torus" + std::to_string(param_);
    case GroupKind::su2: return "su2";
    case GroupKind::un: return "un" + std::to_string(param_);
    }
    return {};
}

Dims dims(const GroupSpec& group)
{
    return {group.rank(), group.u(), group.b()};
}

// ---------------------------------------------------------------- points

LiePoint LiePoint::torus(std::vector<double> coords)
{
    const int k = static_cast<int>(coords.size());
    return LiePoint(GroupSpec::torus(k), std::move(coords));
}

LiePoint LiePoint::su2(double x, double y, double z)
{
    return LiePoint(GroupSpec::su2(), std::vector<double>{x, y, z});
}

LiePoint LiePoint::un(HermitianMatrix h)
{
    const int n = static_cast<int>(h.size());
    return LiePoint(GroupSpec::un(n), std::move(h));
}

const std::vector<double>& LiePoint::vector() const
{
    if (const auto* v = std::get_if<std::vector<double>>(&payload_))
        return *v;
    throw ValidationError("LiePoint: " + group_.name() + " point has no coordinate vector");
}

const HermitianMatrix& LiePoint::matrix() const
{
    if (const auto* m = std::get_if<HermitianMatrix>(&payload_))
        return *m;
    throw ValidationError("LiePoint: " + group_.name() + " point has no matrix");
}

double LiePoint::norm() const
{
    if (is_matrix())
        return matrix().frobenius_norm();
    double s = 0.0;
    for (double x : vector())
        s += x * x;
    return std::sqrt(s);
}

LiePoint& LiePoint::operator+=(const LiePoint& other)
{
    if (!(group_ == other.group_))
        throw ValidationError("LiePoint sum: groups " + group_.name() + " and " + other.group_.name() + " differ");
    if (is_matrix()) {
        std::get<HermitianMatrix>(payload_) += other.matrix();
    } else {
        auto& v = std::get<std::vector<double>>(payload_);
        const auto& w = other.vector();
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += w[i];
    }
    return *this;
}

ChamberPoint ChamberPoint::make(const GroupSpec& group, std::vector<double> coords)
{
    if (static_cast<int>(coords.size()) != group.rank())
        throw ValidationError("chamber point for " + group.name() + " needs " + std::to_string(group.rank())
                              + " coordinates, got " + std::to_string(coords.size()));
    if (group.kind() == GroupKind::su2 && !(coords[0] >= 0.0))
        throw ValidationError("chamber point for su2 must be a nonnegative radius");
    if (group.kind() == GroupKind::un)
        for (std::size_t i = 0; i + 1 < coords.size(); ++i)
            if (!(coords[i] >= coords[i + 1]))
                throw ValidationError("chamber point for " + group.name() + " must be descending");
    return ChamberPoint{group, std::move(coords)};
}

bool ChamberPoint::is_regular() const
{
    switch (group.kind()) {
    case GroupKind::torus: return true;
    case GroupKind::su2: return coords[0] > 0.0;
    case GroupKind::un:
        for (std::size_t i = 0; i + 1 < coords.size(); ++i)
            if (!(coords[i] > coords[i + 1]))
                return false;
        return true;
    }
    return false;
}

std::vector<double> GCVector::concat() const
{
    std::vector<double> out(small);
    out.insert(out.end(), interior.begin(), interior.end());
    return out;
}

// ---------------------------------------------------------------- maps

ChamberPoint sweep(const LiePoint& xi)
{
    const GroupSpec& g = xi.group();
    switch (g.kind()) {
    case GroupKind::torus: return ChamberPoint{g, xi.vector()};
    case GroupKind::su2: return ChamberPoint{g, {xi.norm()}};
    case GroupKind::un: return ChamberPoint{g, eig_h(xi.matrix()).values};
    }
    throw ValidationError("sweep: unsupported group");
}

LiePoint embed(const ChamberPoint& c)
{
    switch (c.group.kind()) {
    case GroupKind::torus: return LiePoint::torus(c.coords);
    case GroupKind::su2: return LiePoint::su2(0.0, 0.0, c.coords[0]);
    case GroupKind::un: return LiePoint::un(HermitianMatrix::diagonal(c.coords));
    }
    throw ValidationError("embed: unsupported group");
}

GCVector gc_map(const LiePoint& xi)
{
    const GroupSpec& g = xi.group();
    GCVector out;
    switch (g.kind()) {
    case GroupKind::torus:
        out.small = xi.vector();
        break;
    case GroupKind::su2:
        out.small = {xi.norm()};
        out.interior = {xi.vector()[2]};
        break;
    case GroupKind::un: {
        const HermitianMatrix& h = xi.matrix();
        out.small = eig_h(h).values;
        for (std::size_t k = h.size() - 1; k >= 1; --k) {
            const auto row = eig_h(principal_submatrix(h, k)).values;
            out.interior.insert(out.interior.end(), row.begin(), row.end());
        }
        break;
    }
    }
    return out;
}

std::vector<std::vector<double>> gc_rows(const GroupSpec& group, const GCVector& v)
{
    std::vector<std::vector<double>> rows{v.small};
    if (group.kind() == GroupKind::un) {
        std::size_t offset = 0;
        for (int k = group.parameter() - 1; k >= 1; --k) {
            rows.emplace_back(v.interior.begin() + offset, v.interior.begin() + offset + k);
            offset += k;
        }
    } else if (group.kind() == GroupKind::su2) {
        rows.push_back(v.interior);
    }
    return rows;
}

namespace {

constexpr double kStrictSlack = 1e-12;

bool strictly_interlaced(const std::vector<double>& top, const std::vector<double>& low)
{
    double scale = 1.0;
    for (double x : top)
        scale = std::max(scale, std::abs(x));
    const double tol = kStrictSlack * scale;
    for (std::size_t i = 0; i < low.size(); ++i)
        if (!(top[i] - low[i] > tol) || !(low[i] - top[i + 1] > tol))
            return false;
    return true;
}

} // namespace

bool is_sreg(const LiePoint& xi)
{
    const GroupSpec& g = xi.group();
    switch (g.kind()) {
    case GroupKind::torus: return true;
    case GroupKind::su2: {
        const double r = xi.norm();
        return r - std::abs(xi.vector()[2]) > kStrictSlack * std::max(1.0, r);
    }
    case GroupKind::un: {
        const auto rows = gc_rows(g, gc_map(xi));
        for (std::size_t k = 0; k + 1 < rows.size(); ++k)
            if (!strictly_interlaced(rows[k], rows[k + 1]))
                return false;
        return true;
    }
    }
    return false;
}

// ---------------------------------------------------------------- volumes

double orbit_volume(const GroupSpec& group, const ChamberPoint& c)
{
    if (!(c.group == group))
        throw ValidationError("orbit_volume: chamber point belongs to " + c.group.name());
    switch (group.kind()) {
    case GroupKind::torus: return 1.0;
    case GroupKind::su2: return 2.0 * c.coords[0];
    case GroupKind::un: {
        if (!c.is_regular())
            return 0.0;
        const auto& l = c.coords;
        double v = 1.0;
        for (std::size_t i = 0; i < l.size(); ++i)
            for (std::size_t j = i + 1; j < l.size(); ++j)
                v *= (l[i] - l[j]) / static_cast<double>(j - i);
        return v;
    }
    }
    return 0.0;
}

GCPolytope gc_polytope(const GroupSpec& group, const ChamberPoint& c)
{
    if (!(c.group == group))
        throw ValidationError("gc_polytope: chamber point belongs to " + c.group.name());
    GCPolytope p{group, c, group.u(), {}};
    switch (group.kind()) {
    case GroupKind::torus: break;
    case GroupKind::su2:
        p.constraints.push_back({{1.0}, c.coords[0]});
        p.constraints.push_back({{-1.0}, c.coords[0]});
        break;
    case GroupKind::un: {
        const int n = group.parameter();
        const int d = p.dimension;
        // Row k (length k) occupies [offset(k), offset(k) + k); rows n-1 .. 1 in order.
        auto offset = [n](int k) { return (n - 1 - k) * (n + k) / 2; };
        for (int k = n - 1; k >= 1; --k) {
            for (int i = 0; i < k; ++i) {
                const int var = offset(k) + i;
                AffineConstraint upper{std::vector<double>(d, 0.0), 0.0};
                AffineConstraint lower{std::vector<double>(d, 0.0), 0.0};
                upper.a[var] = 1.0;
                lower.a[var] = -1.0;
                if (k + 1 == n) {
                    upper.bound = c.coords[i];
                    lower.bound = -c.coords[i + 1];
                } else {
                    upper.a[offset(k + 1) + i] = -1.0;
                    lower.a[offset(k + 1) + i + 1] = 1.0;
                }
                p.constraints.push_back(std::move(upper));
                p.constraints.push_back(std::move(lower));
            }
        }
        break;
    }
    }
    return p;
}

bool GCPolytope::contains(std::span<const double> x, double tol) const
{
    for (const auto& con : constraints) {
        double s = 0.0;
        for (std::size_t j = 0; j < con.a.size(); ++j)
            s += con.a[j] * x[j];
        if (s > con.bound + tol)
            return false;
    }
    return true;
}

bool GCPolytope::contains_box(std::span<const double> lo, std::span<const double> hi) const
{
    for (const auto& con : constraints) {
        double worst = 0.0;
        for (std::size_t j = 0; j < con.a.size(); ++j)
            worst += std::max(con.a[j] * lo[j], con.a[j] * hi[j]);
        if (worst > con.bound)
            return false;
    }
    return true;
}

std::vector<std::pair<double, double>> GCPolytope::bounding_box() const
{
    std::vector<std::pair<double, double>> box;
    switch (group.kind()) {
    case GroupKind::torus: break;
    case GroupKind::su2: box.emplace_back(-base.coords[0], base.coords[0]); break;
    case GroupKind::un: {
        const int n = group.parameter();
        for (int k = n - 1; k >= 1; --k)
            for (int i = 0; i < k; ++i)
                box.emplace_back(base.coords[i + n - k], base.coords[i]);
        break;
    }
    }
    return box;
}

namespace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_m.
GaussRule gauss_legendre(int m)
{
    GaussRule rule{std::vector<double>(m), std::vector<double>(m)};
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Volume of the interlacing patterns below `top`. The next row ranges over
// the box prod [top[i+1], top[i]], and the slice volume is a polynomial of
// degree <= k-2 in each coordinate, so a tensor Gauss rule with
// k/2 + 1 nodes per axis integrates it exactly.
double pattern_volume(const std::vector<double>& top)
{
    const std::size_t k = top.size();
    if (k <= 1)
        return 1.0;
    const std::size_t dim = k - 1;
    const GaussRule rule = gauss_legendre(static_cast<int>(k / 2 + 1));
    const std::size_t m = rule.nodes.size();

    std::vector<double> half(dim), mid(dim);
    double jac = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        half[i] = 0.5 * (top[i] - top[i + 1]);
        mid[i] = 0.5 * (top[i] + top[i + 1]);
        jac *= half[i];
    }
    if (jac == 0.0)
        return 0.0;

    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> row(dim);
    double total = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t i = 0; i < dim; ++i) {
            row[i] = mid[i] + half[i] * rule.nodes[idx[i]];
            w *= rule.weights[idx[i]];
        }
        total += w * pattern_volume(row);
        std::size_t axis = 0;
        while (axis < dim && ++idx[axis] == m)
            idx[axis++] = 0;
        if (axis == dim)
            break;
    }
    return jac * total;
}

} // namespace

double gc_polytope_volume(const GCPolytope& p)
{
    switch (p.group.kind()) {
    case GroupKind::torus: return 1.0;
    case GroupKind::su2: return pattern_volume({p.base.coords[0], -p.base.coords[0]});
    case GroupKind::un: return pattern_volume(p.base.coords);
    }
    return 0.0;
}

// ---------------------------------------------------------------- group actions

LiePoint haar_conjugate(const LiePoint& xi, RandomStream& rng)
{
    switch (xi.group().kind()) {
    case GroupKind::torus: return xi;
    case GroupKind::su2: {
        double q[4];
        double s = 0.0;
        for (double& qi : q) {
            qi = rng.gaussian();
            s += qi * qi;
        }
        s = std::sqrt(s);
        const double a = q[0] / s, b = q[1] / s, c = q[2] / s, d = q[3] / s;
        const double r[3][3] = {
            {1 - 2 * (c * c + d * d), 2 * (b * c - a * d), 2 * (b * d + a * c)},
            {2 * (b * c + a * d), 1 - 2 * (b * b + d * d), 2 * (c * d - a * b)},
            {2 * (b * d - a * c), 2 * (c * d + a * b), 1 - 2 * (b * b + c * c)},
        };
        const auto& x = xi.vector();
        double y[3];
        for (int i = 0; i < 3; ++i)
            y[i] = r[i][0] * x[0] + r[i][1] * x[1] + r[i][2] * x[2];
        return LiePoint::su2(y[0], y[1], y[2]);
    }
    case GroupKind::un: {
        const auto u = haar_unitary(xi.matrix().size(), rng);
        return LiePoint::un(xi.matrix().conjugated(u));
    }
    }
    return xi;
}

LiePoint fiber_partner(const LiePoint& xi, RandomStream& rng)
{
    switch (xi.group().kind()) {
    case GroupKind::torus: return xi;
    case GroupKind::su2: {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const auto& x = xi.vector();
        return LiePoint::su2(x[0] * std::cos(phi) - x[1] * std::sin(phi), x[0] * std::sin(phi) + x[1] * std::cos(phi),
                             x[2]);
    }
    case GroupKind::un: {
        const std::size_t n = xi.matrix().size();
        ComplexMatrix d(n);
        for (std::size_t i = 0; i < n; ++i)
            d(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        return LiePoint::un(xi.matrix().conjugated(d));
    }
    }
    return xi;
}

LiePoint random_lie_point(const GroupSpec& group, RandomStream& rng)
{
    switch (group.kind()) {
    case GroupKind::torus: {
        std::vector<double> v(group.parameter());
        for (double& x : v)
            x = rng.gaussian();
        return LiePoint::torus(std::move(v));
    }
    case GroupKind::su2: {
        const double x = rng.gaussian(), y = rng.gaussian(), z = rng.gaussian();
        return LiePoint::su2(x, y, z);
    }
    case GroupKind::un: {
        const std::size_t n = group.parameter();
        ComplexMatrix a(n);
        for (std::size_t i = 0; i < n; ++i) {
            a(i, i) = rng.gaussian();
            for (std::size_t j = i + 1; j < n; ++j) {
                const double re = rng.gaussian(), im = rng.gaussian();
                a(i, j) = Complex(re, im) * std::sqrt(0.5);
                a(j, i) = std::conj(a(i, j));
            }
        }
        return LiePoint::un(HermitianMatrix::hermitian_part(a));
    }
    }
    throw ValidationError("random_lie_point: unsupported group");
}

LiePoint lift_chamber_point(const ChamberPoint& c, double axial_fraction)
{
    switch (c.group.kind()) {
    case GroupKind::torus: return LiePoint::torus(c.coords);
    case GroupKind::su2: {
        const double t = c.coords[0];
        return LiePoint::su2(t * std::sqrt(1.0 - axial_fraction * axial_fraction), 0.0, t * axial_fraction);
    }
    case GroupKind::un: {
        constexpr std::uint64_t kLiftSeed = 0x6763646c6966745ull;
        RandomStream rng(kLiftSeed, c.coords.size());
        const auto u = haar_unitary(c.coords.size(), rng);
        return LiePoint::un(HermitianMatrix::diagonal(c.coords).conjugated(u));
    }
    }
    throw ValidationError("lift_chamber_point: unsupported group");
}

GCVector interior_gc_point(const ChamberPoint& c, double s)
{
    if (!(s > 0.0 && s < 1.0))
        throw ValidationError("interior_gc_point: interpolation weight must lie in (0, 1)");
    GCVector v{c.coords, {}};
    switch (c.group.kind()) {
    case GroupKind::torus: break;
    case GroupKind::su2: v.interior = {c.coords[0] * (1.0 - 2.0 * s)}; break;
    case GroupKind::un: {
        std::vector<double> parent = c.coords;
        while (parent.size() > 1) {
            std::vector<double> row(parent.size() - 1);
            for (std::size_t i = 0; i < row.size(); ++i)
                row[i] = (1.0 - s) * parent[i] + s * parent[i + 1];
            v.interior.insert(v.interior.end(), row.begin(), row.end());
            parent = std::move(row);
        }
        break;
    }
    }
    return v;
}

// ---------------------------------------------------------------- strong datum

bool StrongDatumReport::all_pass() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size())
        return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double euclid(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

// Points on a degenerate GC fiber: the leading (n-1) block shares its
// spectrum with the whole matrix (un), or the point sits on the x3 axis (su2).
LiePoint degenerate_point(const GroupSpec& group, RandomStream& rng)
{
    switch (group.kind()) {
    case GroupKind::torus: return random_lie_point(group, rng);
    case GroupKind::su2: return LiePoint::su2(0.0, 0.0, rng.gaussian());
    case GroupKind::un: {
        const std::size_t n = group.parameter();
        std::vector<double> d(n);
        for (double& x : d)
            x = rng.gaussian();
        ComplexMatrix u = ComplexMatrix::identity(n);
        if (n > 1) {
            const auto v = haar_unitary(n - 1, rng);
            for (std::size_t i = 0; i + 1 < n; ++i)
                for (std::size_t j = 0; j + 1 < n; ++j)
                    u(i, j) = v(i, j);
        }
        return LiePoint::un(HermitianMatrix::diagonal(d).conjugated(u));
    }
    }
    return random_lie_point(group, rng);
}

constexpr double kFiberTolerance = 1e-9;
constexpr double kNormTolerance = 1e-10;

} // namespace

StrongDatumReport check_strong_datum(const GroupSpec& group, std::uint64_t seed, std::size_t n_samples)
{
    if (n_samples < 1)
        throw ValidationError("check_strong_datum: n_samples must be >= 1");
    StrongDatumReport report{group, seed, n_samples, {}};

    {
        // (vi) equal invariant part => same orbit. Conjugate pairs share an
        // orbit; the invariant part must also coincide with the sweep itself.
        ConditionResult r{"vi", "nu_small(xi) = nu_small(eta) implies sweep(xi) = sweep(eta)", true, 0.0, 0};
        const std::uint64_t s = mix_seed(seed, 6);
        for (std::size_t i = 0; i < n_samples; ++i) {
            RandomStream rng(s, i);
            const LiePoint xi = random_lie_point(group, rng);
            const LiePoint eta = haar_conjugate(xi, rng);
            const auto gx = gc_map(xi), ge = gc_map(eta);
            const auto sx = sweep(xi), se = sweep(eta);
            if (gx.small != sx.coords || ge.small != se.coords) {
                r.pass = false;
                r.worst = INFINITY;
            }
            const double dsmall = max_abs_diff(gx.small, ge.small);
            const double dsweep = max_abs_diff(sx.coords, se.coords);
            if (dsmall <= kFiberTolerance) {
                r.worst = std::max(r.worst, dsweep);
                if (dsweep > kFiberTolerance)
                    r.pass = false;
            } else {
                r.pass = false;
                r.worst = std::max(r.worst, dsmall);
            }
            ++r.checked;
        }
        report.conditions.push_back(r);
    }
    {
        // (vii) ||xi|| = ||nu_small(xi)||, so preimages of bounded sets are bounded.
        ConditionResult r{"vii", "nu_big is proper: ||xi|| = ||nu_small(xi)||_2", true, 0.0, 0};
        const std::uint64_t s = mix_seed(seed, 7);
        for (std::size_t i = 0; i < n_samples; ++i) {
            RandomStream rng(s, i);
            const LiePoint xi = random_lie_point(group, rng);
            const double err = std::abs(xi.norm() - euclid(gc_map(xi).small));
            r.worst = std::max(r.worst, err);
            if (!(err <= kNormTolerance))
                r.pass = false;
            ++r.checked;
        }
        report.conditions.push_back(r);
    }
    {
        // (viii) s-reg is saturated: points on one GC fiber agree on is_sreg.
        ConditionResult r{"viii", "s-reg locus is a union of fibers of nu_big", true, 0.0, 0};
        const std::uint64_t s = mix_seed(seed, 8);
        for (std::size_t i = 0; i < n_samples; ++i) {
            RandomStream rng(s, i);
            const LiePoint xi = (i % 10 == 9) ? degenerate_point(group, rng) : random_lie_point(group, rng);
            const LiePoint eta = fiber_partner(xi, rng);
            const double d = max_abs_diff(gc_map(xi).concat(), gc_map(eta).concat());
            r.worst = std::max(r.worst, d);
            if (d > kFiberTolerance || is_sreg(xi) != is_sreg(eta))
                r.pass = false;
            ++r.checked;
        }
        report.conditions.push_back(r);
    }
    {
        // (ix) orbits of s-reg points are almost entirely s-reg.
        ConditionResult r{"ix", "O_xi intersect s-reg is dense in O_xi for s-reg xi", true, 0.0, 0};
        const std::uint64_t s = mix_seed(seed, 9);
        std::size_t hits = 0;
        constexpr std::size_t kPerBase = 100;
        std::vector<LiePoint> bases;
        for (std::size_t b = 0; bases.size() < (n_samples + kPerBase - 1) / kPerBase; ++b) {
            RandomStream rng(mix_seed(s, 1), b);
            LiePoint xi = random_lie_point(group, rng);
            if (is_sreg(xi))
                bases.push_back(std::move(xi));
        }
        for (std::size_t i = 0; i < n_samples; ++i) {
            RandomStream rng(s, i);
            if (is_sreg(haar_conjugate(bases[i / kPerBase], rng)))
                ++hits;
            ++r.checked;
        }
        const double fraction = static_cast<double>(hits) / static_cast<double>(n_samples);
        r.worst = 1.0 - fraction;
        r.pass = hits == n_samples;
        report.conditions.push_back(r);
    }
    return report;
}

} // namespace gcdh
