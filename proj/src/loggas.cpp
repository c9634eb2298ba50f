#include "logpot/loggas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "logpot/measures.hpp"

namespace logpot {

namespace {

const double PI = 3.14159265358979323846;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double total_energy(const Potential& V, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    double e = 0.0;
    for (double xi : x)
        e += n * V(xi);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e -= 2.0 * std::log(std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]));
    return e;
}

}  // namespace

GasResult sample_gas(const Potential& V, const GasConfig& cfg) {
    if (cfg.n < 2)
        throw std::invalid_argument("sample_gas: need at least two particles");
    if (!(cfg.step > 0.0))
        throw std::invalid_argument("sample_gas: proposal width must be positive");
    if (cfg.burn_in < 0 || cfg.sweeps <= cfg.burn_in)
        throw std::invalid_argument("sample_gas: sweeps must exceed burn-in");
    if (!V.admissible())
        throw std::invalid_argument("sample_gas: potential is not admissible");

    std::mt19937_64 rng(cfg.seed);
    const int n = cfg.n;
    const Support init = default_initial(V);
    std::vector<double> x(static_cast<std::size_t>(n));
    // Spread the initial configuration like an arcsine cloud around the
    // potential well; the chain contracts it to the equilibrium support.
    for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = init.center + 2.0 * std::cos(PI * (i + 0.5) / n);

    GasResult result;
    const long long trace_stride = std::max<long long>(cfg.sweeps / 256, 1);
    long long accepted = 0, proposals_counted = 0;
    for (long long sweep = 0; sweep < cfg.sweeps; ++sweep) {
        const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        const double xi = x[static_cast<std::size_t>(i)];
        const double xp = xi + cfg.step * (2.0 * uniform01(rng) - 1.0);
        // Energy difference of the single-site move, O(n).
        double delta = n * (V(xp) - V(xi));
        bool collision = false;
        for (int j = 0; j < n && !collision; ++j) {
            if (j == i)
                continue;
            const double dn = std::abs(xp - x[static_cast<std::size_t>(j)]);
            const double dd = std::abs(xi - x[static_cast<std::size_t>(j)]);
            if (dn == 0.0) {
                collision = true;
                break;
            }
            delta -= 2.0 * (std::log(dn) - std::log(dd));
        }
        const bool accept = !collision && (delta <= 0.0 || uniform01(rng) < std::exp(-delta));
        if (accept)
            x[static_cast<std::size_t>(i)] = xp;
        if (sweep >= cfg.burn_in) {
            ++proposals_counted;
            if (accept)
                ++accepted;
        }
        if (sweep % trace_stride == 0)
            result.energy_trace.push_back(total_energy(V, x));
    }
    result.acceptance_rate =
        proposals_counted > 0 ? static_cast<double>(accepted) / static_cast<double>(proposals_counted) : 0.0;
    result.step_well_tuned = result.acceptance_rate > 0.1 && result.acceptance_rate < 0.9;
    result.positions = std::move(x);
    std::sort(result.positions.begin(), result.positions.end());
    return result;
}

double ks_distance(const std::vector<double>& positions, const EquilibriumSolution& sol) {
    if (positions.empty())
        throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    const DensityMeasure mu = sol.measure();
    const double n = static_cast<double>(sorted.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = cdf(mu, sorted[i]);
        sup = std::max(sup, std::abs((static_cast<double>(i) + 1.0) / n - F));
        sup = std::max(sup, std::abs(F - static_cast<double>(i) / n));
    }
    return sup;
}

void write_positions_csv(const std::string& path, const std::vector<double>& positions) {
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (out == nullptr)
        throw std::runtime_error("write_positions_csv: cannot open " + path);
    for (double p : positions)
        std::fprintf(out, "%.17g\n", p);
    std::fclose(out);
}

}  // namespace logpot
