#include "gcdh/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "gcdh/config.hpp"

namespace gcdh {

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_csv(const DensityEstimate& est, std::ostream& os)
{
    const std::size_t d = est.grid.dim();
    os << "# columns: ";
    for (std::size_t i = 0; i < d; ++i)
        os << 'x' << (i + 1) << ", ";
    os << "density, stderr, count\n";
    for (std::size_t b = 0; b < est.density.size(); ++b) {
        for (double c : est.grid.bin_center(b))
            os << format_double(c) << ',';
        os << format_double(est.density[b]) << ',' << format_double(est.standard_error[b]) << ',' << est.counts[b]
           << '\n';
    }
}

void emit_plot_data(const DensityEstimate& est, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(est, f);
    f.flush();
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

nlohmann::ordered_json to_json(const VerificationReport& report)
{
    nlohmann::ordered_json j;
    j["label"] = report.label;
    j["pass"] = report.pass;
    j["seed"] = report.seed;
    j["n_samples"] = report.n;
    j["radius"] = report.radius;
    j["tolerance"] = report.tolerance;
    j["sigmas"] = report.sigmas;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["family"] = row.family;
        r["point"] = row.point;
        r["lhs"] = row.lhs;
        r["rhs"] = row.rhs;
        r["stderr"] = row.standard_error;
        r["hits_lhs"] = row.hits_lhs;
        r["hits_rhs"] = row.hits_rhs;
        r["low_statistics"] = row.low_statistics;
        r["pass"] = row.pass;
        r["seed_lhs"] = row.seed_lhs;
        r["seed_rhs"] = row.seed_rhs;
        r["n_samples"] = row.n;
        j["rows"].push_back(std::move(r));
    }
    return j;
}

nlohmann::ordered_json to_json(const StrongDatumReport& report)
{
    nlohmann::ordered_json j;
    j["group"] = report.group.name();
    j["pass"] = report.all_pass();
    j["seed"] = report.seed;
    j["n_samples"] = report.n_samples;
    j["conditions"] = nlohmann::ordered_json::array();
    for (const auto& c : report.conditions) {
        nlohmann::ordered_json r;
        r["id"] = c.id;
        r["description"] = c.description;
        r["pass"] = c.pass;
        r["worst"] = c.worst;
        r["checked"] = c.checked;
        j["conditions"].push_back(std::move(r));
    }
    return j;
}

nlohmann::ordered_json to_json(const RegionReport& report)
{
    auto boxes = [](const std::vector<std::pair<double, double>>& box) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& [lo, hi] : box)
            a.push_back({lo, hi});
        return a;
    };
    nlohmann::ordered_json j;
    j["seed"] = report.seed;
    j["n_samples"] = report.n;
    j["big_box"] = boxes(report.big_box);
    j["chamber_box"] = boxes(report.chamber_box);
    j["sreg_fraction"] = report.sreg_fraction;
    j["regular_fraction"] = report.regular_fraction;
    j["hypotheses_met"] = report.hypotheses_met;
    j["note"] = report.note;
    return j;
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg)
{
    nlohmann::ordered_json j;
    j["command"] = std::string(target_name(cfg.target));
    j["group"] = cfg.group;
    j["space"] = cfg.space;
    j["orbits"] = cfg.orbits;
    j["lambda"] = cfg.lambda;
    j["samples"] = cfg.samples;
    if (cfg.seed)
        j["seed"] = *cfg.seed;
    j["bins"] = cfg.bins;
    nlohmann::ordered_json range = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : cfg.range)
        range.push_back({lo, hi});
    j["range"] = range;
    j["points"] = cfg.points;
    j["radius"] = cfg.radius;
    j["tolerance"] = cfg.tolerance;
    j["sigmas"] = cfg.sigmas;
    return j;
}

} // namespace gcdh
