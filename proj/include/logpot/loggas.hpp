/// Metropolis sampler for the n-particle log-gas with confinement n V and
/// pairwise logarithmic repulsion at inverse temperature 2, plus an empirical
/// distance to the solved equilibrium measure.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logpot/equilibrium.hpp"

namespace logpot {

struct GasConfig {
    int n = 200;
    long long sweeps = 500000;  // single-site update attempts in total
    double step = 0.2;          // half-width of the uniform proposal
    std::uint64_t seed = 1;
    long long burn_in = 100000;
};

struct GasResult {
    std::vector<double> positions;  // sorted final configuration
    double acceptance_rate = 0.0;   // over post-burn-in proposals
    bool step_well_tuned = true;    // acceptance rate inside (0.1, 0.9)
    std::vector<double> energy_trace;  // subsampled total energy along the chain
};

/// Run the chain; deterministic for a fixed seed (mt19937_64 with an explicit
/// 53-bit uniform mapping, so results are identical across platforms).
GasResult sample_gas(const Potential& V, const GasConfig& cfg);

/// Sup distance between the empirical distribution of the positions and the
/// distribution function of the solved equilibrium measure.
double ks_distance(const std::vector<double>& positions, const EquilibriumSolution& sol);

/// One position per line, 17 significant digits.
void write_positions_csv(const std::string& path, const std::vector<double>& positions);

}  // namespace logpot
