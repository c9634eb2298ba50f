#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "logpot/jobs.hpp"

using namespace logpot;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_report(const fs::path& dir) {
    std::ifstream in(dir / "report.json");
    REQUIRE(in.good());
    json doc;
    in >> doc;
    return doc;
}

std::string report_without_timestamp(const fs::path& dir) {
    json doc = read_report(dir);
    doc.erase("timestamp");
    return doc.dump(2);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("job parsing") {
    SUBCASE("rejects malformed documents") {
        CHECK_THROWS_AS(parse_job("not json at all"), JobError);
        CHECK_THROWS_AS(parse_job("{}"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "launch"})"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "solve"})"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "solve", "potential": [0, "x"]})"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "deficit", "potential": [0,0,0.5]})"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "perturb", "potential": [0,0,0.5]})"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "deficit", "potential": [0,0,0.5],
            "nu": {"support": [0,1], "coeffs": [1]}, "kind": "sobolev"})"), JobError);
        CHECK_THROWS_AS(parse_job(R"({"command": "solve", "potential": [0,0,0.5], "tol": -1})"), JobError);
    }
    SUBCASE("accepts a full document") {
        const JobSpec spec = parse_job(R"({
            "command": "deficit",
            "potential": [0, 0, 0.5],
            "nu": {"support": [0.2, 1.0], "coeffs": [1.0]},
            "rho": 0.5,
            "kind": "transport",
            "K": 96,
            "grid": 150
        })");
        CHECK(spec.command == "deficit");
        CHECK(spec.nu.has_value());
        CHECK(spec.truncation == 96);
    }
}

TEST_CASE("solve job produces the quadratic closed form and tables") {
    TempDir dir("logpot_job_solve");
    JobSpec spec = parse_job(R"({"command": "solve", "potential": [0, 0, 0.5], "grid": 64})");
    spec.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run_job(spec, log) == 0);
    const json doc = read_report(dir.path);
    CHECK(doc.at("results").at("solution").at("b").get<double>() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(doc.at("results").at("solution").at("c").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(doc.at("results").at("energy").at("variational").get<double>() == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(fs::exists(dir.path / "density.csv"));
    CHECK(fs::exists(dir.path / "quantiles.csv"));

    std::ifstream csv(dir.path / "density.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,density,cdf");
}

TEST_CASE("solve job: quartic scale") {
    TempDir dir("logpot_job_quartic");
    JobSpec spec = parse_job(R"({"command": "energy", "potential": [0, 0, 0, 0, 0.25]})");
    spec.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run_job(spec, log) == 0);
    const json doc = read_report(dir.path);
    CHECK(doc.at("results").at("solution").at("c").get<double>() == doctest::Approx(0.7598356856515925).epsilon(1e-9));
    CHECK(doc.at("results").at("energy").at("route_spread").get<double>() < 1e-8);
}

TEST_CASE("poincare job reports the semicircle constant") {
    TempDir dir("logpot_job_poincare");
    JobSpec spec = parse_job(R"({"command": "poincare", "potential": [0, 0, 0.5], "K": 64})");
    spec.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run_job(spec, log) == 0);
    const json doc = read_report(dir.path);
    CHECK(doc.at("results").at("poincare").at("rho_p").get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(fs::exists(dir.path / "spectrum.csv"));

    SUBCASE("direct weight input") {
        TempDir dir2("logpot_job_poincare_w");
        JobSpec direct = parse_job(R"({"command": "poincare",
            "w": {"support": [0, 1], "coeffs": [1.0, 0.25]}, "K": 32})");
        direct.out_dir = dir2.path.string();
        std::ostringstream log2;
        CHECK(run_job(direct, log2) == 0);
        const json doc2 = read_report(dir2.path);
        CHECK(doc2.at("results").at("poincare").at("rho_p").get<double>() < 0.5);
    }
}

TEST_CASE("solver failures exit with code 3") {
    TempDir dir("logpot_job_fail");
    JobSpec spec = parse_job(R"({"command": "solve", "potential": [0, 0, -1.5, 0, 0.25]})");
    spec.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run_job(spec, log) == 3);
    const json doc = read_report(dir.path);
    CHECK(doc.contains("error"));
}

TEST_CASE("sample job is reproducible byte for byte") {
    auto run_into = [&](const std::string& name) {
        TempDir dir(name);
        JobSpec spec = parse_job(R"({"command": "sample", "potential": [0, 0, 0.5],
            "gas": {"n": 60, "sweeps": 60000, "burn_in": 20000, "step": 0.3, "seed": 11}})");
        spec.out_dir = dir.path.string();
        std::ostringstream log;
        REQUIRE(run_job(spec, log) == 0);
        std::ifstream pos(dir.path / "positions.csv");
        std::stringstream positions;
        positions << pos.rdbuf();
        return std::pair<std::string, std::string>(report_without_timestamp(dir.path), positions.str());
    };
    const auto first = run_into("logpot_job_sample_a");
    const auto second = run_into("logpot_job_sample_b");
    CHECK(first.first == second.first);
    CHECK(first.second == second.second);
    CHECK(first.second.find('\n') != std::string::npos);
}

TEST_CASE("selftest command") {
    TempDir dir("logpot_job_selftest");
    JobSpec spec;
    spec.command = "selftest";
    spec.out_dir = dir.path.string();
    std::ostringstream log;
    CHECK(run_job(spec, log) == 0);
    CHECK(log.str().find("selftest:") != std::string::npos);
    CHECK(log.str().find("FAIL") == std::string::npos);
}

#ifdef LOGPOT_CLI
TEST_CASE("command-line binary end to end") {
    TempDir dir("logpot_cli_e2e");
    const fs::path job = dir.path / "job.json";
    {
        std::ofstream out(job);
        out << R"({"command": "solve", "potential": [0, 0, 0.5], "grid": 32})";
    }
    const std::string base = std::string(LOGPOT_CLI);
    auto run = [&](const std::string& args) {
        const std::string cmd = base + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    CHECK(run("solve --job " + job.string() + " --out " + (dir.path / "out").string()) == 0);
    CHECK(fs::exists(dir.path / "out" / "report.json"));
    CHECK(run("solve --job /nonexistent.json") == 2);
    // mismatched subcommand vs document
    CHECK(run("energy --job " + job.string()) == 2);
    const fs::path bad = dir.path / "bad.json";
    {
        std::ofstream out(bad);
        out << R"({"command": "solve", "potential": [0, 0, -1.5, 0, 0.25]})";
    }
    CHECK(run("solve --job " + bad.string() + " --out " + (dir.path / "out2").string()) == 3);
}
#endif
