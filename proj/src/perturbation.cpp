#include "logpot/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "logpot/operators.hpp"

namespace logpot {

namespace {
const double PI = 3.14159265358979323846;
}

EnergyExpansion energy_expansion(const Potential& V, const Potential& f, const Potential& g) {
    const EquilibriumSolution sol = solve_equilibrium(V);
    const Support s = sol.support;
    const ChebSeries fs = f.to_series(s);
    const ChebSeries gs = g.to_series(s);
    const MeasureKind alpha{MeasureBase::Semicircle, s};
    EnergyExpansion exp;
    exp.e0 = sol.energy;
    exp.a1 = integrate(multiply(fs, sol.w), alpha);
    exp.a2 = integrate(multiply(gs, sol.w), alpha) - 0.5 * omega_form(fs, fs);
    return exp;
}

double FirstOrderMeasure::psi(double x) const {
    const Support s = psi_factor.support();
    const double xb = x - s.center;
    const double rad = 4.0 * s.scale * s.scale - xb * xb;
    if (rad <= 0.0)
        return 0.0;
    return std::sqrt(rad) * psi_factor(x);
}

FirstOrderMeasure first_order_measure(const Potential& f, Support s) {
    const ChebSeries fs = f.to_series(s);
    ChebSeries density = apply(Op::Counting, fs);
    density *= -0.5;
    FirstOrderMeasure out{
        DensityMeasure{MeasureKind{MeasureBase::Arcsine, s}, density},
        apply(Op::DiffMean, fs) * (1.0 / (2.0 * PI)),
    };
    return out;
}

TransportLinearization transport_linearization(const Potential& V, const Potential& f) {
    const EquilibriumSolution sol = solve_equilibrium(V);
    const Support s = sol.support;
    const ChebSeries numer = apply(Op::DiffMean, f.to_series(s));
    const ChebSeries denom = apply(Op::DiffMean, V.derivative().to_series(s));

    // The quotient is smooth but not polynomial; grow the expansion degree
    // until the tail of the re-analyzed series has decayed.
    ChebSeries zeta = ChebSeries::zero(s);
    bool resolved = false;
    for (int q = f.degree() + V.degree() + 8; q <= 512; q = 2 * q) {
        const auto nodes = lobatto_nodes(s, q);
        std::vector<double> values(nodes.size());
        double denom_floor = std::abs(denom(nodes[0]));
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double d = denom(nodes[j]);
            denom_floor = std::min(denom_floor, std::abs(d));
            values[j] = -numer(nodes[j]) / d;
        }
        if (denom_floor < 1e-10)
            throw std::runtime_error("transport_linearization: denominator margin below tolerance");
        zeta = analyze(values, s);
        const double cap = 1e-8 * std::max(zeta.max_abs_coeff(), 1e-30);
        if (std::abs(zeta.coeff(static_cast<std::size_t>(q))) <= cap &&
            std::abs(zeta.coeff(static_cast<std::size_t>(q - 1))) <= cap) {
            resolved = true;
            zeta = zeta.trimmed(1e-14);
            break;
        }
    }
    if (!resolved)
        throw std::runtime_error("transport_linearization: quotient tail did not decay");

    TransportLinearization out{zeta, 0.0};
    out.w2_second_derivative =
        integrate(multiply(multiply(zeta, zeta), sol.w), MeasureKind{MeasureBase::Semicircle, s});
    return out;
}

FiniteDifferenceReport finite_difference_check(const Potential& V, const Potential& f,
                                               const Potential& g, double t) {
    if (t == 0.0 || !std::isfinite(t))
        throw std::invalid_argument("finite_difference_check: degenerate step");
    FiniteDifferenceReport report;
    report.step = t;
    report.expansion = energy_expansion(V, f, g);

    auto resolved_energy = [&](double tt) {
        return solve_equilibrium(perturbed(V, f, g, tt)).energy;
    };
    const double e0 = report.expansion.e0;
    const double ep = resolved_energy(t), em = resolved_energy(-t);
    const double ep2 = resolved_energy(0.5 * t), em2 = resolved_energy(-0.5 * t);

    report.a1_fd = (ep - em) / (2.0 * t);
    report.a1_fd_half = (ep2 - em2) / t;
    report.a1_richardson = (4.0 * report.a1_fd_half - report.a1_fd) / 3.0;
    report.a2_fd = (ep - 2.0 * e0 + em) / (2.0 * t * t);
    report.a2_fd_half = (ep2 - 2.0 * e0 + em2) / (0.5 * t * t);
    report.a2_richardson = (4.0 * report.a2_fd_half - report.a2_fd) / 3.0;
    report.a1_error = std::abs(report.a1_richardson - report.expansion.a1);
    report.a2_error = std::abs(report.a2_richardson - report.expansion.a2);
    return report;
}

}  // namespace logpot
