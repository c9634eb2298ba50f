#include "logpot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace logpot {

namespace {

const double PI = 3.14159265358979323846;
const double MASS_TOL = 1e-8;

void require_shared_support(const Support& a, const Support& b, const char* what) {
    if (!a.same_as(b))
        throw std::invalid_argument(std::string("support mismatch in ") + what);
}

// integral of sin-type primitive: S(k) = int_0^theta cos(k u) du
double primitive(int k, double theta) {
    if (k == 0)
        return theta;
    const int a = std::abs(k);
    return std::sin(a * theta) / a;
}

// theta coordinate of x on [left, right]; x = b - 2c cos(theta)
double theta_of(const Support& s, double x) {
    const double t = std::clamp((s.center - x) / (2.0 * s.scale), -1.0, 1.0);
    return std::acos(t);
}

double cdf_at_theta(const DensityMeasure& mu, double theta) {
    const auto& a = mu.density.coeffs();
    double sum = 0.0;
    if (mu.base.base == MeasureBase::Arcsine) {
        for (std::size_t n = 0; n < a.size(); ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            sum += a[n] * sign * primitive(static_cast<int>(n), theta);
        }
        return sum / PI;
    }
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const int k = static_cast<int>(n);
        const double term = 0.5 * primitive(k, theta) - 0.25 * (primitive(k - 2, theta) + primitive(k + 2, theta));
        sum += a[n] * sign * term;
    }
    return 2.0 * sum / PI;
}

}  // namespace

DensityMeasure arcsine_measure(Support s) {
    return DensityMeasure{MeasureKind{MeasureBase::Arcsine, s}, ChebSeries::constant(s, 1.0)};
}

DensityMeasure semicircle_measure(Support s) {
    return DensityMeasure{MeasureKind{MeasureBase::Semicircle, s}, ChebSeries::constant(s, 1.0)};
}

double integrate(const ChebSeries& f, const MeasureKind& m) {
    require_shared_support(f.support(), m.support, "integrate");
    if (m.base == MeasureBase::Arcsine)
        return f.coeff(0);
    // semicircle moments of the first-kind basis: 1, 0, -1/2, 0, 0, ...
    return f.coeff(0) - 0.5 * f.coeff(2);
}

double total_mass(const DensityMeasure& mu) {
    return integrate(mu.density, mu.base);
}

double basis_moment(const DensityMeasure& mu, int n) {
    const ChebSeries phin = ChebSeries::basis(mu.base.support, n);
    return integrate(multiply(phin, mu.density), mu.base);
}

double inner_arcsine(const ChebSeries& f, const ChebSeries& g) {
    require_shared_support(f.support(), g.support(), "inner_arcsine");
    double sum = f.coeff(0) * g.coeff(0);
    const std::size_t n = std::min(f.coeffs().size(), g.coeffs().size());
    for (std::size_t i = 1; i < n; ++i)
        sum += 0.5 * f.coeff(i) * g.coeff(i);
    return sum;
}

double inner_semicircle(const ChebSeries& f, const ChebSeries& g) {
    require_shared_support(f.support(), g.support(), "inner_semicircle");
    const auto cf = first_to_second_kind(f.coeffs());
    const auto cg = first_to_second_kind(g.coeffs());
    double sum = 0.0;
    const std::size_t n = std::min(cf.size(), cg.size());
    for (std::size_t i = 0; i < n; ++i)
        sum += cf[i] * cg[i];
    return sum;
}

double omega_form(const ChebSeries& f, const ChebSeries& g) {
    require_shared_support(f.support(), g.support(), "omega_form");
    double sum = 0.0;
    const std::size_t n = std::min(f.coeffs().size(), g.coeffs().size());
    for (std::size_t i = 1; i < n; ++i)
        sum += 0.25 * static_cast<double>(i) * f.coeff(i) * g.coeff(i);
    return sum;
}

double variance_arcsine(const ChebSeries& f) {
    double sum = 0.0;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i)
        sum += 0.5 * f.coeff(i) * f.coeff(i);
    return sum;
}

double variance_semicircle(const ChebSeries& f) {
    const double mean = integrate(f, MeasureKind{MeasureBase::Semicircle, f.support()});
    return inner_semicircle(f, f) - mean * mean;
}

double cdf(const DensityMeasure& mu, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("cdf: non-finite point");
    if (x <= mu.base.support.left())
        return 0.0;
    if (x >= mu.base.support.right())
        return cdf_at_theta(mu, PI);
    return cdf_at_theta(mu, theta_of(mu.base.support, x));
}

double quantile(const DensityMeasure& mu, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("quantile: p must lie in (0, 1)");
    if (std::abs(total_mass(mu) - 1.0) > MASS_TOL)
        throw std::invalid_argument("quantile: measure is not a probability");
    // dips above -1e-10 are treated as zero; anything deeper is an error
    if (density_floor(mu) < -1e-10)
        throw std::invalid_argument("quantile: density is negative beyond tolerance");
    double lo = 0.0, hi = PI;
    for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (cdf_at_theta(mu, mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    const double theta = 0.5 * (lo + hi);
    return mu.base.support.center - 2.0 * mu.base.support.scale * std::cos(theta);
}

double density_floor(const DensityMeasure& mu, int grid) {
    const Support s = mu.base.support;
    double floor_val = mu.density(s.left());
    for (int i = 0; i <= grid; ++i) {
        const double theta = PI * i / grid;
        floor_val = std::min(floor_val, mu.density(s.center - 2.0 * s.scale * std::cos(theta)));
    }
    return floor_val;
}

}  // namespace logpot
