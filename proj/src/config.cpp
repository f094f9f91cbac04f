#include "gcdh/config.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "gcdh/output.hpp"

namespace gcdh {

namespace {

constexpr std::array<std::pair<Target, std::string_view>, 8> kTargets{{
    {Target::dh_big, "dh-big"},
    {Target::dh_chamber, "dh-chamber"},
    {Target::verify, "verify"},
    {Target::verify_corollary, "verify-corollary"},
    {Target::verify_main, "verify-main"},
    {Target::check_strong, "check-strong"},
    {Target::gc_volume, "gc-volume"},
    {Target::region, "region"},
}};

[[noreturn]] void field_error(std::string_view key, const std::string& what)
{
    throw ValidationError("config field '" + std::string(key) + "': " + what);
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view key, std::string_view s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        field_error(key, "cannot parse '" + std::string(s) + "' as a number");
    return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view s)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        field_error(key, "cannot parse '" + std::string(s) + "' as a nonnegative integer");
    return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view s)
{
    std::vector<double> v;
    if (trim(s).empty())
        return v;
    for (auto part : split(s, ','))
        v.push_back(parse_double(key, part));
    return v;
}

std::vector<std::vector<double>> parse_nested(std::string_view key, std::string_view s)
{
    std::vector<std::vector<double>> v;
    if (trim(s).empty())
        return v;
    for (auto part : split(s, ';'))
        v.push_back(parse_list(key, part));
    return v;
}

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_double(v[i]);
    return s;
}

std::string join(const std::vector<std::vector<double>>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ";" : "") + join(v[i]);
    return s;
}

} // namespace

std::string_view target_name(Target t)
{
    for (const auto& [target, name] : kTargets)
        if (target == t)
            return name;
    return "unknown";
}

std::optional<Target> parse_target(std::string_view name)
{
    std::string normalized(name);
    for (char& c : normalized)
        if (c == '_')
            c = '-';
    for (const auto& [target, n] : kTargets)
        if (n == normalized)
            return target;
    return std::nullopt;
}

void set_field(ExperimentConfig& cfg, std::string_view key, std::string_view raw)
{
    const std::string_view value = trim(raw);
    if (key == "command" || key == "target") {
        const auto t = parse_target(value);
        if (!t)
            field_error(key, "unknown command '" + std::string(value) + "'");
        cfg.target = *t;
    } else if (key == "group") {
        if (!value.empty()) {
            try {
                GroupSpec::parse(value);
            } catch (const ValidationError& e) {
                field_error(key, e.what());
            }
        }
        cfg.group = std::string(value);
    } else if (key == "space") {
        if (value != "orbits" && value != "cpn" && !value.starts_with("wishart:"))
            field_error(key, "expected orbits, cpn or wishart:K, got '" + std::string(value) + "'");
        if (value.starts_with("wishart:"))
            parse_uint(key, value.substr(8));
        cfg.space = std::string(value);
    } else if (key == "orbits") {
        cfg.orbits = parse_nested(key, value);
    } else if (key == "lambda") {
        cfg.lambda = parse_list(key, value);
    } else if (key == "samples") {
        cfg.samples = parse_uint(key, value);
        if (cfg.samples < 1)
            field_error(key, "must be >= 1");
    } else if (key == "seed") {
        cfg.seed = parse_uint(key, value);
    } else if (key == "bins") {
        cfg.bins.clear();
        if (!value.empty())
            for (auto part : split(value, ','))
                cfg.bins.push_back(static_cast<std::size_t>(parse_uint(key, part)));
    } else if (key == "range") {
        cfg.range.clear();
        if (!value.empty())
            for (auto part : split(value, ',')) {
                const auto ends = split(part, ':');
                if (ends.size() != 2)
                    field_error(key, "expected lo:hi per axis, got '" + std::string(part) + "'");
                cfg.range.emplace_back(parse_double(key, ends[0]), parse_double(key, ends[1]));
            }
    } else if (key == "points") {
        cfg.points = parse_nested(key, value);
    } else if (key == "radius") {
        cfg.radius = parse_double(key, value);
        if (!(cfg.radius > 0.0))
            field_error(key, "must be > 0");
    } else if (key == "tolerance") {
        cfg.tolerance = parse_double(key, value);
        if (!(cfg.tolerance >= 0.0))
            field_error(key, "must be >= 0");
    } else if (key == "sigmas") {
        cfg.sigmas = parse_double(key, value);
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_uint(key, value));
    } else if (key == "out") {
        cfg.out = std::string(value);
    } else {
        field_error(key, "unknown key");
    }
}

ExperimentConfig parse_config_text(std::string_view text)
{
    ExperimentConfig cfg;
    std::size_t lineno = 0;
    for (auto line : split(text, '\n')) {
        ++lineno;
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
        set_field(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg)
{
    std::ostringstream os;
    os << "command=" << target_name(cfg.target) << '\n';
    os << "group=" << cfg.group << '\n';
    os << "space=" << cfg.space << '\n';
    os << "orbits=" << join(cfg.orbits) << '\n';
    os << "lambda=" << join(cfg.lambda) << '\n';
    os << "samples=" << cfg.samples << '\n';
    if (cfg.seed)
        os << "seed=" << *cfg.seed << '\n';
    os << "bins=";
    for (std::size_t i = 0; i < cfg.bins.size(); ++i)
        os << (i ? "," : "") << cfg.bins[i];
    os << '\n';
    os << "range=";
    for (std::size_t i = 0; i < cfg.range.size(); ++i)
        os << (i ? "," : "") << format_double(cfg.range[i].first) << ':' << format_double(cfg.range[i].second);
    os << '\n';
    os << "points=" << join(cfg.points) << '\n';
    os << "radius=" << format_double(cfg.radius) << '\n';
    os << "tolerance=" << format_double(cfg.tolerance) << '\n';
    os << "sigmas=" << format_double(cfg.sigmas) << '\n';
    os << "threads=" << cfg.threads << '\n';
    os << "out=" << cfg.out << '\n';
    return os.str();
}

std::vector<ChamberPoint> orbit_points(const ExperimentConfig& cfg, const GroupSpec& group)
{
    std::vector<std::vector<double>> raw = cfg.orbits;
    if (group.rank() == 1 && raw.size() == 1 && raw[0].size() > 1) {
        std::vector<std::vector<double>> split_up;
        for (double r : raw[0])
            split_up.push_back({r});
        raw = std::move(split_up);
    }
    std::vector<ChamberPoint> out;
    for (auto& c : raw) {
        try {
            out.push_back(ChamberPoint::make(group, std::move(c)));
        } catch (const ValidationError& e) {
            field_error("orbits", e.what());
        }
    }
    return out;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.group.empty())
        field_error("group", "required");
    const GroupSpec group = GroupSpec::parse(cfg.group);
    if (cfg.target == Target::gc_volume) {
        if (cfg.lambda.empty())
            field_error("lambda", "required for gc-volume");
        try {
            ChamberPoint::make(group, cfg.lambda);
        } catch (const ValidationError& e) {
            field_error("lambda", e.what());
        }
        return;
    }
    if (!cfg.seed)
        field_error("seed", "required (there is no nondeterministic default)");
    if (cfg.target == Target::check_strong)
        return;

    if (cfg.space == "orbits") {
        if (cfg.orbits.empty())
            field_error("orbits", "required for space=orbits");
        orbit_points(cfg, group);
    } else if (cfg.space == "cpn") {
        if (group.kind() != GroupKind::torus)
            field_error("space", "cpn needs a torus group");
    } else if (cfg.space.starts_with("wishart:")) {
        if (group.kind() != GroupKind::un)
            field_error("space", "wishart needs a unN group");
    }

    std::size_t dim = 0;
    if (cfg.target == Target::dh_big)
        dim = group.b();
    else if (cfg.target == Target::dh_chamber)
        dim = group.rank();
    if (dim > 0) {
        if (!cfg.range.empty() && cfg.range.size() != dim)
            field_error("range", "has " + std::to_string(cfg.range.size()) + " axes but the target codomain has "
                                     + std::to_string(dim));
        if (cfg.bins.size() > 1 && cfg.bins.size() != dim)
            field_error("bins", "has " + std::to_string(cfg.bins.size()) + " axes but the target codomain has "
                                    + std::to_string(dim));
    }
    for (const auto& p : cfg.points)
        if (static_cast<int>(p.size()) != group.rank())
            field_error("points", "each test point needs " + std::to_string(group.rank()) + " chamber coordinates");
}

SpaceModel build_space(const ExperimentConfig& cfg)
{
    const GroupSpec group = GroupSpec::parse(cfg.group);
    if (cfg.space == "cpn")
        return cpn_space(group.parameter());
    if (cfg.space.starts_with("wishart:")) {
        const auto k = static_cast<int>(parse_uint("space", std::string_view(cfg.space).substr(8)));
        return wishart_space(group.parameter(), k);
    }
    std::vector<SpaceModel> factors;
    for (const auto& c : orbit_points(cfg, group)) {
        try {
            factors.push_back(orbit_space(group, c));
        } catch (const ValidationError& e) {
            field_error("orbits", e.what());
        }
    }
    if (factors.size() == 1)
        return factors.front();
    return product_space(factors);
}

} // namespace gcdh
