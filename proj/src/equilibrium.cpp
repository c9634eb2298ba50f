#include "logpot/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "logpot/operators.hpp"

namespace logpot {

namespace {

const double PI = 3.14159265358979323846;
const double MASS_TOL = 1e-8;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string(what) + " is not finite");
}

// Central binomial moments of the arcsine law: odd moments vanish,
// int x^{2m} d(beta) = C(2m, m).
double arcsine_moment(int j) {
    if (j % 2 == 1)
        return 0.0;
    double value = 1.0;
    for (int i = 1; i <= j / 2; ++i)
        value = value * (j / 2 + i) / i;
    return value;
}

// Coefficients of p(c x + b) given the monomial coefficients of p.
std::vector<double> shifted_monomials(const std::vector<double>& p, double c, double b) {
    std::vector<double> out(p.size(), 0.0);
    std::vector<double> cpow{1.0}, bpow{1.0};
    for (std::size_t k = 1; k < p.size(); ++k) {
        cpow.push_back(cpow.back() * c);
        bpow.push_back(bpow.back() * b);
    }
    std::vector<double> binom{1.0};  // row k of Pascal's triangle
    for (std::size_t k = 0; k < p.size(); ++k) {
        for (std::size_t j = 0; j <= k; ++j)
            out[j] += p[k] * binom[j] * cpow[j] * bpow[k - j];
        std::vector<double> next(binom.size() + 1, 0.0);
        for (std::size_t j = 0; j < binom.size(); ++j) {
            next[j] += binom[j];
            next[j + 1] += binom[j];
        }
        binom = std::move(next);
    }
    return out;
}

double arcsine_integral(const std::vector<double>& p, int shift) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        sum += p[j] * arcsine_moment(static_cast<int>(j) + shift);
    return sum;
}

struct EndpointSystem {
    double g1, g2;          // residuals of the two moment conditions
    double d11, d12, d21, d22;  // Jacobian d(g1,g2)/d(b,c)
};

EndpointSystem endpoint_system(const Potential& V, double b, double c) {
    const Potential Vp = V.derivative();
    const Potential Vpp = Vp.derivative();
    const auto p1 = shifted_monomials(Vp.monomials(), c, b);
    const auto p2 = shifted_monomials(Vpp.monomials(), c, b);
    EndpointSystem sys;
    sys.g1 = c * arcsine_integral(p1, 1) - 2.0;
    sys.g2 = arcsine_integral(p1, 0);
    sys.d11 = c * arcsine_integral(p2, 1);                              // d g1 / d b
    sys.d12 = arcsine_integral(p1, 1) + c * arcsine_integral(p2, 2);    // d g1 / d c
    sys.d21 = arcsine_integral(p2, 0);                                  // d g2 / d b
    sys.d22 = arcsine_integral(p2, 1);                                  // d g2 / d c
    return sys;
}

}  // namespace

Potential::Potential(std::vector<double> monomial_coeffs) : monomials_(std::move(monomial_coeffs)) {
    if (monomials_.empty())
        monomials_.push_back(0.0);
    for (double v : monomials_)
        require_finite(v, "potential coefficient");
    while (monomials_.size() > 1 && monomials_.back() == 0.0)
        monomials_.pop_back();
}

double Potential::operator()(double x) const {
    double value = 0.0;
    for (std::size_t k = monomials_.size(); k-- > 0;)
        value = value * x + monomials_[k];
    return value;
}

Potential Potential::derivative() const {
    if (monomials_.size() <= 1)
        return Potential({0.0});
    std::vector<double> d(monomials_.size() - 1);
    for (std::size_t k = 1; k < monomials_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * monomials_[k];
    return Potential(std::move(d));
}

bool Potential::admissible() const {
    const int deg = degree();
    return deg >= 2 && deg % 2 == 0 && monomials_.back() > 0.0;
}

ChebSeries Potential::to_series(Support s) const {
    // Horner in series arithmetic; exact.
    const ChebSeries x = ChebSeries::identity(s);
    ChebSeries acc = ChebSeries::constant(s, monomials_.back());
    for (std::size_t k = monomials_.size() - 1; k-- > 0;) {
        acc = multiply(acc, x);
        acc += ChebSeries::constant(s, monomials_[k]);
    }
    return acc;
}

Potential& Potential::add_scaled(const Potential& other, double factor) {
    if (other.monomials_.size() > monomials_.size())
        monomials_.resize(other.monomials_.size(), 0.0);
    for (std::size_t k = 0; k < other.monomials_.size(); ++k)
        monomials_[k] += factor * other.monomials_[k];
    while (monomials_.size() > 1 && monomials_.back() == 0.0)
        monomials_.pop_back();
    return *this;
}

Potential perturbed(const Potential& V, const Potential& f, const Potential& g, double t) {
    Potential out = V;
    out.add_scaled(f, t);
    out.add_scaled(g, t * t);
    return out;
}

Support default_initial(const Potential& V) {
    double best_x = 0.0;
    double best_v = std::numeric_limits<double>::infinity();
    for (int i = -200; i <= 200; ++i) {
        const double x = 0.05 * i;
        const double v = V(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    return Support{best_x, 1.0};
}

Support solve_support(const Potential& V, Support initial, const SolveOptions& opts) {
    // Globally confining fields are always accepted; odd-degree fields arise
    // as perturbations of confining ones and admit the same local
    // single-interval solve, so only clearly hopeless inputs are rejected.
    if (V.degree() < 2 || (V.degree() % 2 == 0 && V.monomials().back() <= 0.0))
        throw std::invalid_argument("solve_support: potential cannot confine a single interval");
    if (!(opts.tol > 0.0))
        throw std::invalid_argument("solve_support: tolerance must be positive");
    double b = initial.center;
    double c = initial.scale > 0.0 ? initial.scale : 1.0;

    auto residual_norm = [&V](double bb, double cc) {
        const EndpointSystem s = endpoint_system(V, bb, cc);
        return std::max(std::abs(s.g1), std::abs(s.g2));
    };

    double norm = residual_norm(b, c);
    for (int iter = 0; iter < opts.max_iter && norm >= opts.tol; ++iter) {
        const EndpointSystem s = endpoint_system(V, b, c);
        const double det = s.d11 * s.d22 - s.d12 * s.d21;
        if (std::abs(det) < 1e-300)
            throw std::runtime_error("solve_support: singular Jacobian");
        const double db = (-s.g1 * s.d22 + s.g2 * s.d12) / det;
        const double dc = (-s.g2 * s.d11 + s.g1 * s.d21) / det;
        // Damping: halve the step until the residual decreases and c stays positive.
        double lambda = 1.0;
        bool moved = false;
        for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
            const double bn = b + lambda * db;
            const double cn = c + lambda * dc;
            if (cn <= 0.0)
                continue;
            const double nn = residual_norm(bn, cn);
            if (nn < norm || nn < opts.tol) {
                b = bn;
                c = cn;
                norm = nn;
                moved = true;
                break;
            }
        }
        if (!moved)
            throw std::runtime_error("solve_support: damped Newton stalled");
    }
    if (!(norm < opts.tol))
        throw std::runtime_error("solve_support: Newton did not converge within the iteration cap");

    // The located critical point must be a local maximum of the endpoint
    // objective; an indefinite Hessian signals a multi-interval or
    // non-unique regime.
    const Potential Vpp = V.derivative().derivative();
    const auto p2 = shifted_monomials(Vpp.monomials(), c, b);
    const double hcc = -1.0 / (c * c) - 0.5 * arcsine_integral(p2, 2);
    const double hcb = -0.5 * arcsine_integral(p2, 1);
    const double hbb = -0.5 * arcsine_integral(p2, 0);
    if (!(hcc < 0.0 && hcc * hbb - hcb * hcb > 0.0))
        throw std::runtime_error("solve_support: endpoint objective is not locally concave at the solution");
    return Support{b, c};
}

ChebSeries equilibrium_density(const Potential& V, Support s) {
    const ChebSeries vprime = V.derivative().to_series(s);
    ChebSeries w = apply(Op::DiffMean, vprime);
    w *= s.scale * s.scale;
    const DensityMeasure mu{MeasureKind{MeasureBase::Semicircle, s}, w};
    const double mass = total_mass(mu);
    if (std::abs(mass - 1.0) > MASS_TOL)
        throw std::runtime_error("equilibrium_density: mass deviates from 1 (support does not solve the endpoint system)");
    if (density_floor(mu) < -1e-10)
        throw std::runtime_error("equilibrium_density: density is negative (single-interval positivity fails)");
    return w;
}

EquilibriumSolution solve_equilibrium(const Potential& V, const SolveOptions& opts) {
    return solve_equilibrium(V, default_initial(V), opts);
}

EquilibriumSolution solve_equilibrium(const Potential& V, Support initial, const SolveOptions& opts) {
    EquilibriumSolution sol;
    sol.support = solve_support(V, initial, opts);
    sol.w = equilibrium_density(V, sol.support);
    const EndpointSystem sys = endpoint_system(V, sol.support.center, sol.support.scale);
    sol.residuals = {sys.g1, sys.g2};
    sol.positivity_margin = density_floor(sol.measure());
    sol.energy = energy(V, sol, EnergyRoute::Variational);
    return sol;
}

double energy(const Potential& V, const EquilibriumSolution& sol, EnergyRoute route) {
    const Support s = sol.support;
    const ChebSeries vs = V.to_series(s);
    const MeasureKind beta{MeasureBase::Arcsine, s};
    const double logc = std::log(s.scale);
    switch (route) {
        case EnergyRoute::Variational:
            return integrate(vs, beta) - 0.25 * inner_arcsine(apply(Op::Counting, vs), vs) - logc;
        case EnergyRoute::Spectral:
            return integrate(vs, beta) - 0.5 * omega_form(vs, vs) - logc;
        case EnergyRoute::Quadrature: {
            const DensityMeasure mu = sol.measure();
            const double field_term = integrate(multiply(vs, sol.w), mu.base);
            double series = 0.0;
            const int nmax = sol.w.degree() + 2;
            for (int n = 1; n <= nmax; ++n) {
                const double mn = basis_moment(mu, n);
                series += 2.0 / n * mn * mn;
            }
            return field_term - logc + series;
        }
    }
    throw std::logic_error("energy: unknown route");
}

VariationalReport verify_variational(const Potential& V, const EquilibriumSolution& sol, int grid) {
    if (grid < 2)
        throw std::invalid_argument("verify_variational: grid too small");
    const Support s = sol.support;
    const DensityMeasure mu = sol.measure();
    const ChebSeries vs = V.to_series(s);
    const Potential Vp = V.derivative();
    // On the support 2 U_mu = V + C with C = 2 log c - mean of the rescaled field.
    const double C = 2.0 * std::log(s.scale) - integrate(vs, MeasureKind{MeasureBase::Arcsine, s});

    VariationalReport report;
    for (int i = 1; i <= grid; ++i) {
        const double theta = PI * i / (grid + 1);
        const double x = s.center - 2.0 * s.scale * std::cos(theta);
        report.equality_residual =
            std::max(report.equality_residual, std::abs(2.0 * log_potential(mu, x) - V(x) - C));
        report.hilbert_residual =
            std::max(report.hilbert_residual, std::abs(hilbert_transform(mu, x) - Vp(x)));
    }
    for (int i = 1; i <= grid; ++i) {
        const double offset = 3.0 * s.scale * i / grid;
        for (const double x : {s.right() + offset, s.left() - offset}) {
            const double slack = 2.0 * log_potential(mu, x) - V(x) - C;
            report.exterior_violation = std::max(report.exterior_violation, slack);
        }
    }
    report.exterior_violation = std::max(report.exterior_violation, 0.0);
    return report;
}

}  // namespace logpot
