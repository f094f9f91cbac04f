#include "gcdh/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "gcdh/output.hpp"

namespace gcdh {

namespace {

constexpr std::uint64_t kPilotSamples = 100'000;
constexpr std::size_t kDefaultBins = 50;
constexpr double kDefaultTotalBins = 1e6;

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

Grid make_grid(const ExperimentConfig& cfg, std::size_t dim, const std::vector<std::pair<double, double>>& box)
{
    // Default resolution: 50 per axis, fewer in high dimension to keep the grid near 10^6 bins.
    const auto per_axis = static_cast<std::size_t>(std::pow(kDefaultTotalBins, 1.0 / static_cast<double>(dim)) + 1e-9);
    std::vector<std::size_t> bins(dim, std::clamp<std::size_t>(per_axis, 2, kDefaultBins));
    if (cfg.bins.size() == 1)
        bins.assign(dim, cfg.bins[0]);
    else if (!cfg.bins.empty())
        bins = cfg.bins;

    std::vector<double> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!cfg.range.empty()) {
            lo[i] = cfg.range[i].first;
            hi[i] = cfg.range[i].second;
        } else {
            const auto [a, b] = box[i];
            const double pad = std::max(0.02 * (b - a), 1e-3 * std::max({1.0, std::abs(a), std::abs(b)}));
            lo[i] = a - pad;
            hi[i] = b + pad;
        }
    }
    try {
        return Grid::make(std::move(lo), std::move(hi), std::move(bins));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("config field 'range'/'bins': ") + e.what());
    }
}

VerifyOptions verify_options(const ExperimentConfig& cfg)
{
    VerifyOptions opt;
    opt.radius = cfg.radius;
    opt.n = cfg.samples;
    opt.seed = *cfg.seed;
    opt.tolerance = cfg.tolerance;
    opt.sigmas = cfg.sigmas;
    opt.threads = cfg.threads;
    return opt;
}

int run_checked(const ExperimentConfig& cfg, std::ostream& out)
{
    const GroupSpec group = GroupSpec::parse(cfg.group);

    if (cfg.target == Target::gc_volume) {
        const ChamberPoint c = ChamberPoint::make(group, cfg.lambda);
        const double integrated = gc_polytope_volume(gc_polytope(group, c));
        const double formula = orbit_volume(group, c);
        const bool agree = std::abs(integrated - formula) <= 1e-9 * std::max(1.0, std::abs(formula));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g\n", integrated);
        out << buf;
        if (!cfg.out.empty()) {
            nlohmann::ordered_json j;
            j["config"] = to_json(cfg);
            j["volume_integrated"] = integrated;
            j["volume_formula"] = formula;
            j["pass"] = agree;
            write_output(cfg.out, j.dump(2) + "\n", out);
        }
        return agree ? 0 : 2;
    }

    if (cfg.target == Target::check_strong) {
        const StrongDatumReport report = check_strong_datum(group, *cfg.seed, cfg.samples);
        nlohmann::ordered_json j;
        j["config"] = to_json(cfg);
        j["report"] = to_json(report);
        write_output(cfg.out, j.dump(2) + "\n", out);
        return report.all_pass() ? 0 : 2;
    }

    const SpaceModel space = build_space(cfg);
    const std::uint64_t seed = *cfg.seed;
    const RegionReport region =
        sreg_region_report(space, std::min(cfg.samples, kPilotSamples), seed, cfg.threads);

    switch (cfg.target) {
    case Target::region: {
        nlohmann::ordered_json j;
        j["config"] = to_json(cfg);
        j["space"] = space.name();
        j["region"] = to_json(region);
        write_output(cfg.out, j.dump(2) + "\n", out);
        return 0;
    }
    case Target::dh_big:
    case Target::dh_chamber: {
        const bool big = cfg.target == Target::dh_big;
        const Grid grid = make_grid(cfg, big ? group.b() : group.rank(), big ? region.big_box : region.chamber_box);
        const DensityEstimate est = big ? dh_big(space, grid, cfg.samples, seed, cfg.threads)
                                        : dh_chamber(space, grid, cfg.samples, seed, cfg.threads);
        if (cfg.out.empty())
            write_csv(est, out);
        else
            emit_plot_data(est, cfg.out);
        return 0;
    }
    case Target::verify:
    case Target::verify_corollary:
    case Target::verify_main: {
        std::vector<LiePoint> points;
        for (const auto& p : cfg.points) {
            const ChamberPoint c = ChamberPoint::make(group, p);
            if (!c.is_regular())
                throw ValidationError("config field 'points': test points must be regular");
            points.push_back(lift_chamber_point(c));
        }
        if (points.empty())
            points = default_test_points(space, region, cfg.radius, seed);
        if (points.empty())
            throw ValidationError("config field 'points': no strongly regular test points found in the moment image");

        const VerifyOptions opt = verify_options(cfg);
        std::vector<VerificationReport> reports;
        if (cfg.target != Target::verify_main)
            reports.push_back(verify_corollary(space, points, opt));
        if (cfg.target != Target::verify_corollary)
            reports.push_back(verify_main_theorem(space, points, opt));

        bool pass = true;
        nlohmann::ordered_json j;
        j["config"] = to_json(cfg);
        j["space"] = space.name();
        j["region"] = to_json(region);
        j["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            pass = pass && r.pass;
            j["reports"].push_back(to_json(r));
        }
        j["pass"] = pass;
        write_output(cfg.out, j.dump(2) + "\n", out);
        return pass ? 0 : 2;
    }
    default: break;
    }
    throw ValidationError("config field 'command': unsupported");
}

} // namespace

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        validate(cfg);
        return run_checked(cfg, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Gelfand-Cetlin Duistermaat-Heckman toolkit"};
    std::string command, config_path;
    app.add_option("command", command,
                   "dh-big | dh-chamber | verify | verify-corollary | verify-main | check-strong | gc-volume | region");
    app.add_option("--config", config_path, "key=value configuration file");

    // Flag name -> raw text; applied after the config file so flags win.
    const std::vector<std::pair<std::string, std::string>> flags{
        {"group", "torusK, su2 or unN"},
        {"orbits", "orbit chamber points: 1,0.5 (rank one) or 2,0,-2;1,0,-1"},
        {"lambda", "chamber point for gc-volume"},
        {"space", "orbits | cpn | wishart:K"},
        {"samples", "number of Monte Carlo samples"},
        {"seed", "random seed (required for sampling commands)"},
        {"bins", "bins per axis: 200 or 20,20"},
        {"range", "grid box per axis: lo:hi[,lo:hi...]"},
        {"threads", "worker threads (results do not depend on it)"},
        {"out", "output path (stdout when omitted)"},
        {"tolerance", "relative tolerance for verification rows"},
        {"radius", "box radius for point density estimates"},
        {"points", "chamber test points, ';'-separated"},
        {"sigmas", "standard-error multiple for verification rows"},
    };
    std::vector<std::string> values(flags.size());
    std::vector<CLI::Option*> options;
    for (std::size_t i = 0; i < flags.size(); ++i)
        options.push_back(app.add_option("--" + flags[i].first, values[i], flags[i].second));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f)
                throw ValidationError("config field 'config': cannot read '" + config_path + "'");
            std::stringstream ss;
            ss << f.rdbuf();
            cfg = parse_config_text(ss.str());
        }
        if (const char* env = std::getenv("MM_THREADS"); env && cfg.threads == 0)
            set_field(cfg, "threads", env);
        for (std::size_t i = 0; i < flags.size(); ++i)
            if (options[i]->count() > 0)
                set_field(cfg, flags[i].first, values[i]);
        if (!command.empty())
            set_field(cfg, "command", command);
        else if (config_path.empty())
            throw ValidationError("config field 'command': required");
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return run(cfg, out, err);
}

} // namespace gcdh
