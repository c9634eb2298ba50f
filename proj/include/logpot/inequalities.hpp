/// Functional-inequality toolbox: the Poincare constant of a weighted
/// semicircle measure in three numerically independent forms, the 1-D
/// quadratic Wasserstein distance via quantile coupling, transportation /
/// Log-Sobolev / HWI deficits, and the infimum convolution.

#pragma once

#include <vector>

#include "logpot/equilibrium.hpp"
#include "logpot/measures.hpp"

namespace logpot {

struct PoincareReport {
    double rho_p = 0.0;   // primal route: Dirichlet matrix against the counting weights
    double rho_p2 = 0.0;  // dual route: inverse-weight operator composition
    double rho_p4 = 0.0;  // second-kind route: inverse-weight Gram matrix
    int truncation = 0;
    std::vector<double> eigen_profile;  // lambda_n / (2n) for the Dirichlet spectrum
    double cross_form_spread = 0.0;     // max pairwise disagreement of the three constants
};

/// Poincare constant of the measure w d(semicircle) on s at truncation K.
/// All three values carry the 1/(2 c^2) normalization of the defining
/// inequality, so rho_p <= 1/(2 c^2) with equality only at w = 1.
PoincareReport poincare_constant(const ChebSeries& w, Support s, int K);

/// Quadratic Wasserstein distance between two probability densities by the
/// quantile-coupling integral on a Gauss-Legendre grid in (0, 1).
double wasserstein2(const DensityMeasure& mu, const DensityMeasure& nu, int grid = 512);

enum class DeficitKind { Transport, LSI, HWI };

struct DeficitReport {
    DeficitKind kind = DeficitKind::Transport;
    double lhs = 0.0;
    double rhs = 0.0;
    double deficit = 0.0;  // rhs - lhs; nonnegative when the inequality holds
};

/// Deficit of the named inequality at parameter rho for a test measure nu
/// (a probability density over a semicircle base) against the equilibrium
/// measure of V.
DeficitReport deficit(const Potential& V, const DensityMeasure& nu, double rho, DeficitKind kind,
                      int w2_grid = 512);

struct GridFunction {
    std::vector<double> xs;      // strictly increasing
    std::vector<double> values;  // same length
};

/// Infimum convolution (Q_t f)(x) = min_y f(y) + (x - y)^2 / t computed over
/// the sample grid with a local parabolic refinement.  Throws if the infimum
/// lands on the grid boundary (the grid must be widened).
GridFunction inf_convolution(const GridFunction& f, double t, const std::vector<double>& x_grid);

}  // namespace logpot
