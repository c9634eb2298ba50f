/// Second-order behavior of the minimal energy, first-order behavior of the
/// equilibrium measure, and the linearized transport map, with a
/// finite-difference harness that validates the expansions against full
/// re-solves.

#pragma once

#include "logpot/equilibrium.hpp"
#include "logpot/measures.hpp"

namespace logpot {

struct EnergyExpansion {
    double e0 = 0.0;  // minimal energy of the unperturbed field
    double a1 = 0.0;  // coefficient of t
    double a2 = 0.0;  // coefficient of t^2
};

/// Expansion of the minimal energy of V + t f + t^2 g around t = 0.
EnergyExpansion energy_expansion(const Potential& V, const Potential& f, const Potential& g);

struct FirstOrderMeasure {
    DensityMeasure nu;       // signed density over the arcsine base, total mass 0
    ChebSeries psi_factor;   // polynomial factor of the primitive
    /// Primitive of the measure: vanishes at both endpoints.
    double psi(double x) const;
};

/// Derivative of the equilibrium measure in the direction f at fixed support.
FirstOrderMeasure first_order_measure(const Potential& f, Support s);

struct TransportLinearization {
    ChebSeries zeta;                 // first-order displacement field
    double w2_second_derivative;     // int zeta^2 d mu_V; the t^2 coefficient of W_2^2
};

/// Linearization of the optimal transport map from the equilibrium measure
/// of V to the one of V + t f.  The displacement is the quotient of two
/// averaged difference quotients, re-analyzed with a guard band.
TransportLinearization transport_linearization(const Potential& V, const Potential& f);

struct FiniteDifferenceReport {
    double step = 0.0;
    double a1_fd = 0.0, a1_fd_half = 0.0, a1_richardson = 0.0;
    double a2_fd = 0.0, a2_fd_half = 0.0, a2_richardson = 0.0;
    double a1_error = 0.0;  // |a1_richardson - expansion a1|
    double a2_error = 0.0;  // |a2_richardson - expansion a2|
    EnergyExpansion expansion;
};

/// Symmetric finite differences of fully re-solved energies at +-t and
/// +-t/2, with Richardson extrapolation, compared against the expansion.
FiniteDifferenceReport finite_difference_check(const Potential& V, const Potential& f,
                                               const Potential& g, double t);

}  // namespace logpot
