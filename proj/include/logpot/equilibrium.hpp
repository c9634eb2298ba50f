/// Equilibrium problem for a polynomial external field: locate the single
/// interval supporting the minimizer, build its density relative to the
/// semicircle law, and evaluate the minimal energy by three routes.

#pragma once

#include <array>
#include <vector>

#include "logpot/cheb.hpp"
#include "logpot/measures.hpp"

namespace logpot {

/// Polynomial external field V(x) = sum_k v_k x^k with exact derivative and
/// exact expansion on any interval.
class Potential {
  public:
    Potential() : monomials_{0.0} {}
    explicit Potential(std::vector<double> monomial_coeffs);

    double operator()(double x) const;
    int degree() const { return static_cast<int>(monomials_.size()) - 1; }
    const std::vector<double>& monomials() const { return monomials_; }

    Potential derivative() const;
    /// Confinement check: degree >= 2, even, with positive leading term.
    bool admissible() const;
    /// Exact first-kind expansion on the interval.
    ChebSeries to_series(Support s) const;

    Potential& add_scaled(const Potential& other, double factor);

  private:
    std::vector<double> monomials_;
};

/// V + t f + t^2 g.
Potential perturbed(const Potential& V, const Potential& f, const Potential& g, double t);

struct EquilibriumSolution {
    Support support;
    ChebSeries w;  // density of the equilibrium measure relative to the semicircle law
    double energy = 0.0;
    double positivity_margin = 0.0;
    std::array<double, 2> residuals{0.0, 0.0};

    DensityMeasure measure() const { return DensityMeasure{MeasureKind{MeasureBase::Semicircle, support}, w}; }
};

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 50;
};

/// Coarse initial guess: center at the grid argmin of V, unit scale.
Support default_initial(const Potential& V);

/// Damped Newton on the two endpoint moment conditions with the exact 2x2
/// Jacobian (arcsine moments in closed form), followed by a concavity check
/// of the endpoint objective.  Throws on divergence or an indefinite Hessian
/// (a sign of a multi-interval or non-unique regime).
Support solve_support(const Potential& V, Support initial, const SolveOptions& opts = {});

/// Density of the equilibrium measure relative to the semicircle law of s:
/// the scale-corrected averaged difference quotient of V'.  Throws if the
/// mass deviates from 1 beyond tolerance or the density is negative.
ChebSeries equilibrium_density(const Potential& V, Support s);

/// Full solve: support, density, energy, diagnostics.
EquilibriumSolution solve_equilibrium(const Potential& V, const SolveOptions& opts = {});
EquilibriumSolution solve_equilibrium(const Potential& V, Support initial, const SolveOptions& opts = {});

enum class EnergyRoute { Spectral, Quadrature, Variational };

/// Minimal energy by the chosen route.  Spectral and Variational work in
/// coefficients of the rescaled field; Quadrature integrates V against the
/// solved measure and sums the log-energy moment series.
double energy(const Potential& V, const EquilibriumSolution& sol, EnergyRoute route);

struct VariationalReport {
    double equality_residual = 0.0;   // max |2 U_mu - V - C| on an interior grid
    double exterior_violation = 0.0;  // max (2 U_mu - V - C)_+ on an exterior grid
    double hilbert_residual = 0.0;    // max |H mu - V'| on an interior grid
};

/// Residuals of the variational characterization of the solved measure.
VariationalReport verify_variational(const Potential& V, const EquilibriumSolution& sol, int grid);

}  // namespace logpot
