/// The canonical measures of an interval: the arcsine law, the semicircle
/// law, and the two-variable kernel measure behind the omega pairing.
/// Integration against arcsine and semicircle is closed-form in coefficients;
/// the omega pairing is evaluated spectrally (the 2-D quadrature route exists
/// only as a test oracle).

#pragma once

#include "logpot/cheb.hpp"

namespace logpot {

enum class MeasureBase { Arcsine, Semicircle };

struct MeasureKind {
    MeasureBase base = MeasureBase::Arcsine;
    Support support;
};

/// An absolutely continuous measure u(x) d(base).  The density is a series
/// on the same support as the base measure.
struct DensityMeasure {
    MeasureKind base;
    ChebSeries density;
};

DensityMeasure arcsine_measure(Support s);
DensityMeasure semicircle_measure(Support s);

/// Exact integral of a series against the base measure.
double integrate(const ChebSeries& f, const MeasureKind& m);

/// Total mass of a density measure (exact).
double total_mass(const DensityMeasure& mu);

/// Moment of the first-kind basis element against mu, taken in the frame of
/// mu's own support: integral of T_n((x-b)/(2c)) dmu.
double basis_moment(const DensityMeasure& mu, int n);

/// Inner product in L^2 of the arcsine law of the shared support.
double inner_arcsine(const ChebSeries& f, const ChebSeries& g);

/// Inner product in L^2 of the semicircle law of the shared support.
double inner_semicircle(const ChebSeries& f, const ChebSeries& g);

/// The omega pairing of difference quotients,
///   omega_form(f, g) = sum_n n a_n b_n / 4
/// in shared-support coefficients.  On a support of scale c the genuine
/// kernel-measure integral of the difference quotients equals
/// omega_form / c^2.
double omega_form(const ChebSeries& f, const ChebSeries& g);

double variance_arcsine(const ChebSeries& f);
double variance_semicircle(const ChebSeries& f);

/// Distribution function of a density measure; exact for polynomial
/// densities via trigonometric antiderivatives in x = b - 2c cos(theta).
double cdf(const DensityMeasure& mu, double x);

/// Inverse distribution function for a probability measure with nonnegative
/// density; monotone bracketing root-find on the exact CDF.
double quantile(const DensityMeasure& mu, double p);

/// Smallest density value over a fine grid (diagnostic for positivity).
double density_floor(const DensityMeasure& mu, int grid = 512);

}  // namespace logpot
