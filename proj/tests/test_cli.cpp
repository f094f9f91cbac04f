#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcdh/output.hpp"
#include "gcdh/run.hpp"

using namespace gcdh;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "gcdh");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("target names")
{
    for (Target t : {Target::dh_big, Target::dh_chamber, Target::verify, Target::verify_corollary, Target::verify_main,
                     Target::check_strong, Target::gc_volume, Target::region})
        CHECK(parse_target(target_name(t)) == t);
    CHECK(parse_target("dh_big") == Target::dh_big);
    CHECK_FALSE(parse_target("plot"));
}

TEST_CASE("config text round-trips")
{
    ExperimentConfig cfg;
    cfg.target = Target::dh_chamber;
    cfg.group = "un3";
    cfg.orbits = {{2.0, 0.0, -2.0}, {1.0, 0.1, -0.7}};
    cfg.samples = 12345;
    cfg.seed = 99;
    cfg.bins = {10, 20, 30};
    cfg.range = {{-1.5, 2.0}, {0.1, 0.3}, {-3.0, 3.0}};
    cfg.points = {{1.0, 0.0, -1.0}};
    cfg.radius = 0.1;
    cfg.tolerance = 0.07;
    cfg.sigmas = 2.5;
    cfg.threads = 3;
    cfg.out = "x.csv";
    CHECK(parse_config_text(to_config_text(cfg)) == cfg);

    ExperimentConfig plain;
    CHECK(parse_config_text(to_config_text(plain)) == plain);
}

TEST_CASE("config parsing errors name the field")
{
    auto message = [](std::string_view text) {
        try {
            parse_config_text(text);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("samples=abc").find("samples") != std::string::npos);
    CHECK(message("seed=-3").find("seed") != std::string::npos);
    CHECK(message("radius=0").find("radius") != std::string::npos);
    CHECK(message("range=1").find("range") != std::string::npos);
    CHECK(message("colour=red").find("colour") != std::string::npos);
    CHECK(message("space=sphere").find("space") != std::string::npos);
    CHECK(message("group=sl2").find("group") != std::string::npos);
    CHECK(message("just text").find("line 1") != std::string::npos);
    CHECK(message("# comment\n\ngroup = su2 \n").empty());
}

TEST_CASE("validation of cross-field constraints")
{
    ExperimentConfig cfg;
    cfg.target = Target::verify;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("group"), ValidationError);
    cfg.group = "su2";
    cfg.orbits = {{1.0, 0.5}};
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("seed"), ValidationError);
    cfg.seed = 1;
    CHECK_NOTHROW(validate(cfg));
    cfg.target = Target::dh_big;
    cfg.range = {{0.0, 1.0}};
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("range"), ValidationError);
    cfg.range = {{0.0, 2.0}, {-2.0, 2.0}};
    CHECK_NOTHROW(validate(cfg));
    cfg.bins = {1, 2, 3};
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("bins"), ValidationError);

    ExperimentConfig vol;
    vol.target = Target::gc_volume;
    vol.group = "un3";
    CHECK_THROWS_WITH_AS(validate(vol), doctest::Contains("lambda"), ValidationError);
    vol.lambda = {2.0, 0.0, -2.0};
    CHECK_NOTHROW(validate(vol));

    ExperimentConfig cp;
    cp.target = Target::region;
    cp.group = "su2";
    cp.space = "cpn";
    cp.seed = 1;
    CHECK_THROWS_WITH_AS(validate(cp), doctest::Contains("space"), ValidationError);
}

TEST_CASE("rank-one orbit lists")
{
    ExperimentConfig cfg;
    cfg.group = "su2";
    set_field(cfg, "orbits", "1,0.5");
    const auto pts = orbit_points(cfg, GroupSpec::su2());
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].coords == std::vector<double>{1.0});
    CHECK(pts[1].coords == std::vector<double>{0.5});
    CHECK(build_space(cfg).mass() == 2.0);
}

TEST_CASE("gc-volume prints the volume")
{
    const auto r = cli({"gc-volume", "--group", "un3", "--lambda", "2,0,-2"});
    CHECK(r.code == 0);
    CHECK(r.out == "8\n");
    const auto d = cli({"gc-volume", "--group", "un3", "--lambda", "1,1,0"});
    CHECK(d.code == 0);
    CHECK(d.out == "0\n");
}

TEST_CASE("usage errors exit with 1")
{
    auto r = cli({"verify", "--group", "su2", "--orbits", "1,0.5", "--samples", "1000"});
    CHECK(r.code == 1);
    CHECK(r.err.find("seed") != std::string::npos);
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate", "--group", "su2"}).code == 1);
    CHECK(cli({"verify", "--bogus", "1"}).code == 1);
    CHECK(cli({"gc-volume", "--group", "un3", "--lambda", "0,1,2"}).code == 1);
    CHECK(cli({"verify", "--group", "su2", "--orbits", "0", "--seed", "1"}).code == 1);
    CHECK(cli({"region", "--group", "su2", "--orbits", "1", "--seed", "1", "--config", "/nonexistent/cfg"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("verify passes on the Horn pair and the output is JSON")
{
    const auto r = cli({"verify", "--group", "su2", "--orbits", "1,0.5", "--samples", "200000", "--seed", "7",
                        "--threads", "2"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["reports"].size() == 2);
    CHECK(j["config"]["seed"] == 7);
    CHECK_FALSE(j["config"].contains("threads"));
    for (const auto& rep : j["reports"])
        for (const auto& row : rep["rows"])
            CHECK(row["pass"] == true);
}

TEST_CASE("failed verification exits with 2")
{
    // A test point outside the moment image has no statistics and cannot pass.
    const auto r = cli({"verify-corollary", "--group", "su2", "--orbits", "1,0.5", "--samples", "20000", "--seed", "7",
                        "--points", "1.9"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["pass"] == false);
}

TEST_CASE("dh-chamber writes a CSV")
{
    const auto r = cli({"dh-chamber", "--group", "su2", "--orbits", "1,0.5", "--samples", "20000", "--seed", "3",
                        "--bins", "10", "--range", "0.5:1.5"});
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# columns: x1, density, stderr, count");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(line.find('\r') == std::string::npos);
    }
    CHECK(rows == 10);

    const auto big = cli({"dh-big", "--group", "un2", "--orbits", "1,-1", "--samples", "5000", "--seed", "3",
                          "--bins", "2,2,4", "--range", "0.9:1.1,-1.1:-0.9,-1:1"});
    CHECK(big.code == 0);
    CHECK(big.out.rfind("# columns: x1, x2, x3, density, stderr, count\n", 0) == 0);
}

TEST_CASE("CSV floats round-trip")
{
    for (double x : {0.1, 1.0 / 3.0, 2.0, -1e-300, 6.02214076e23, 0.0})
        CHECK(std::stod(format_double(x)) == x);
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("output files and unwritable paths")
{
    const auto dir = std::filesystem::temp_directory_path() / "gcdh_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "est.csv").string();
    const auto r = cli({"dh-chamber", "--group", "su2", "--orbits", "1,0.5", "--samples", "5000", "--seed", "3",
                        "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::file_size(path) > 0);

    const auto bad = cli({"dh-chamber", "--group", "su2", "--orbits", "1,0.5", "--samples", "5000", "--seed", "3",
                          "--out", "/nonexistent/dir/est.csv"});
    CHECK(bad.code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("config files are read and flags override them")
{
    const auto dir = std::filesystem::temp_directory_path() / "gcdh_cli_cfg";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "run.cfg").string();
    {
        std::ofstream f(path);
        f << "# Horn pair\ncommand=gc-volume\ngroup=un2\nlambda=1,-1\n";
    }
    auto r = cli({"--config", path});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");
    r = cli({"--config", path, "--lambda", "3,-1"});
    CHECK(r.out == "4\n");
    std::filesystem::remove_all(dir);
}

TEST_CASE("check-strong and region reports")
{
    auto r = cli({"check-strong", "--group", "un3", "--samples", "2000", "--seed", "1"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["pass"] == true);

    r = cli({"region", "--group", "torus2", "--space", "cpn", "--samples", "20000", "--seed", "2"});
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["region"]["sreg_fraction"] == 1.0);

    r = cli({"region", "--group", "un2", "--space", "wishart:2", "--samples", "20000", "--seed", "2"});
    CHECK(r.code == 0);
}

TEST_CASE("output does not depend on the thread count")
{
    std::vector<std::string> base{"verify", "--group", "su2", "--orbits", "1,0.5,0.8", "--samples", "60000", "--seed", "4"};
    auto one = base, eight = base;
    one.insert(one.end(), {"--threads", "1"});
    eight.insert(eight.end(), {"--threads", "8"});
    CHECK(cli(one).out == cli(eight).out);
}

TEST_CASE("CSV row counts")
{
    const auto cp1 = cpn_space(1);
    const auto est = dh_chamber(cp1, Grid::make({0.0}, {1.0}, {200}), 10000, 1, 1);
    std::ostringstream os;
    write_csv(est, os);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 201);

    std::ostringstream empty;
    write_csv(DensityEstimate{}, empty);
    CHECK(empty.str() == "# columns: density, stderr, count\n");
}
