#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <algorithm>

#include "logpot/loggas.hpp"
#include "logpot/measures.hpp"

using namespace logpot;

namespace {
const Potential kQuadratic({0.0, 0.0, 0.5});

GasConfig quick_config(std::uint64_t seed) {
    GasConfig cfg;
    cfg.n = 120;
    cfg.sweeps = 150000;
    cfg.burn_in = 50000;
    cfg.step = 0.25;
    cfg.seed = seed;
    return cfg;
}
}  // namespace

TEST_CASE("determinism and configuration checks") {
    const GasConfig cfg = quick_config(42);
    const GasResult a = sample_gas(kQuadratic, cfg);
    const GasResult b = sample_gas(kQuadratic, cfg);
    REQUIRE(a.positions.size() == b.positions.size());
    for (std::size_t i = 0; i < a.positions.size(); ++i)
        CHECK(a.positions[i] == b.positions[i]);
    CHECK(a.acceptance_rate == b.acceptance_rate);

    GasConfig bad = cfg;
    bad.n = 1;
    CHECK_THROWS_AS(sample_gas(kQuadratic, bad), std::invalid_argument);
    bad = cfg;
    bad.burn_in = bad.sweeps;
    CHECK_THROWS_AS(sample_gas(kQuadratic, bad), std::invalid_argument);
    bad = cfg;
    bad.step = 0.0;
    CHECK_THROWS_AS(sample_gas(kQuadratic, bad), std::invalid_argument);
}

TEST_CASE("chain equilibrates for the quadratic field") {
    GasConfig cfg = quick_config(7);
    cfg.n = 200;
    cfg.sweeps = 500000;
    cfg.burn_in = 200000;
    const GasResult r = sample_gas(kQuadratic, cfg);

    SUBCASE("empirical mean is centered") {
        const double mean = std::accumulate(r.positions.begin(), r.positions.end(), 0.0) / cfg.n;
        CHECK(std::abs(mean) < 0.05);
    }
    SUBCASE("support stays within the fluctuation margin") {
        CHECK(r.positions.front() > -2.3);
        CHECK(r.positions.back() < 2.3);
    }
    SUBCASE("acceptance rate is in the tuned band") {
        CHECK(r.step_well_tuned);
    }
    SUBCASE("chain energy stabilizes") {
        // last quartile of the trace within two standard deviations of the
        // third quartile
        const std::size_t m = r.energy_trace.size();
        REQUIRE(m >= 16);
        auto stats = [&](std::size_t lo, std::size_t hi) {
            double mean = 0.0;
            for (std::size_t i = lo; i < hi; ++i)
                mean += r.energy_trace[i];
            mean /= static_cast<double>(hi - lo);
            double var = 0.0;
            for (std::size_t i = lo; i < hi; ++i)
                var += (r.energy_trace[i] - mean) * (r.energy_trace[i] - mean);
            var /= static_cast<double>(hi - lo);
            return std::pair<double, double>(mean, std::sqrt(var));
        };
        const auto [m3, s3] = stats(m / 2, 3 * m / 4);
        const auto [m4, s4] = stats(3 * m / 4, m);
        CHECK(std::abs(m4 - m3) < 2.0 * std::max(s3, s4) + 1e-9);
    }
    SUBCASE("empirical distribution approaches the semicircle") {
        const EquilibriumSolution sol = solve_equilibrium(kQuadratic);
        CHECK(ks_distance(r.positions, sol) < 0.05);
    }
}

TEST_CASE("Kolmogorov-Smirnov distance") {
    const EquilibriumSolution sol = solve_equilibrium(kQuadratic);
    SUBCASE("stratified quantile sample sits at the lattice floor") {
        const int n = 64;
        std::vector<double> positions;
        for (int i = 1; i <= n; ++i)
            positions.push_back(quantile(sol.measure(), (i - 0.5) / n));
        CHECK(ks_distance(positions, sol) <= 0.5 / n + 1e-9);
    }
    SUBCASE("empty sample is rejected") {
        CHECK_THROWS_AS(ks_distance({}, sol), std::invalid_argument);
    }
    SUBCASE("distance decreases with the particle count (median over seeds)") {
        auto median_ks = [&](int n) {
            std::vector<double> values;
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                GasConfig cfg;
                cfg.n = n;
                cfg.sweeps = 120000;
                cfg.burn_in = 40000;
                cfg.step = 0.3;
                cfg.seed = seed;
                values.push_back(ks_distance(sample_gas(kQuadratic, cfg).positions, sol));
            }
            std::sort(values.begin(), values.end());
            return values[2];
        };
        const double k50 = median_ks(50), k100 = median_ks(100), k200 = median_ks(200);
        CHECK(k100 < k50);
        CHECK(k200 < k100);
    }
}

TEST_CASE("positions export") {
    const std::string path = "positions_test.csv";
    write_positions_csv(path, {1.0, -0.25, 3.5e-3});
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "1");
    std::getline(in, line);
    CHECK(line == "-0.25");
    std::getline(in, line);
    CHECK(line == "0.0035000000000000001");
    in.close();
    std::remove(path.c_str());
}
