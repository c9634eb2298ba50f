#include <cmath>
#include <ostream>
#include <random>

#include "logpot/inequalities.hpp"
#include "logpot/jobs.hpp"
#include "logpot/operators.hpp"
#include "logpot/perturbation.hpp"

namespace logpot {

namespace {

struct Tally {
    std::ostream& log;
    int passed = 0;
    int failed = 0;
    void check(const char* name, bool ok) {
        (ok ? ++passed : ++failed);
        log << (ok ? "ok   " : "FAIL ") << name << "\n";
    }
};

double max_coeff_diff(const ChebSeries& a, const ChebSeries& b) {
    double m = 0.0;
    const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    for (std::size_t i = 0; i < n; ++i)
        m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
    return m;
}

ChebSeries random_series(std::mt19937_64& rng, Support s, int degree) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(degree) + 1);
    for (double& v : a)
        v = unif(rng);
    return ChebSeries(s, std::move(a));
}

}  // namespace

int selftest(std::ostream& log) {
    Tally t{log};
    const Support frame{0.0, 1.0};
    std::mt19937_64 rng(20240901);

    {
        double err = 0.0;
        for (int n = 1; n <= 40; ++n) {
            const ChebSeries phin = ChebSeries::basis(frame, n);
            err = std::max(err, max_coeff_diff(apply(Op::Counting, phin), phin * static_cast<double>(n)));
            err = std::max(err, max_coeff_diff(apply(Op::CountingInverse, phin), phin * (1.0 / n)));
            err = std::max(err, max_coeff_diff(apply(Op::Jacobi, phin), phin * static_cast<double>(n * n)));
        }
        t.check("counting operator eigen-identities", err < 1e-10);
    }
    {
        double err = 0.0;
        for (int n = 1; n <= 40; ++n) {
            const ChebSeries phin = ChebSeries::basis(frame, n);
            std::vector<double> psi(static_cast<std::size_t>(n), 0.0);
            psi.back() = 0.5;  // psi_{n-1} / 2
            const ChebSeries expected(frame, second_to_first_kind(psi));
            err = std::max(err, max_coeff_diff(apply(Op::DiffMean, phin), expected));
        }
        t.check("averaged difference quotient eigen-identities", err < 1e-10);
    }
    {
        const ChebSeries f = random_series(rng, frame, 9);
        const ChebSeries uv = apply(Op::DiffMean, apply(Op::DiffMeanInverse, f));
        ChebSeries vu = apply(Op::DiffMeanInverse, apply(Op::DiffMean, f));
        vu += ChebSeries::constant(frame, f.coeff(0));
        t.check("inverse relations of the difference-quotient pair",
                max_coeff_diff(uv, f) < 1e-12 && max_coeff_diff(vu, f) < 1e-12);
    }
    {
        const ChebSeries f = random_series(rng, frame, 12);
        const auto nodes = lobatto_nodes(frame, 12);
        std::vector<double> values(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            values[i] = f(nodes[i]);
        t.check("analyze inverts nodal evaluation", max_coeff_diff(analyze(values, frame), f) < 1e-12);
    }
    {
        const ChebSeries f = random_series(rng, frame, 6);
        const ChebSeries g = random_series(rng, frame, 7);
        const ChebSeries lhs = multiply(f, g).derivative();
        const ChebSeries rhs = multiply(f.derivative(), g) + multiply(f, g.derivative());
        t.check("derivative product rule", max_coeff_diff(lhs, rhs) < 1e-10);
    }
    {
        const ChebSeries f = random_series(rng, frame, 10);
        ChebSeries centered = f;
        centered -= ChebSeries::constant(frame, f.coeff(0));
        const double e1 = max_coeff_diff(apply(Op::CountingInverse, apply(Op::Counting, f)), centered);
        const double e2 = max_coeff_diff(apply(Op::Counting, apply(Op::CountingInverse, f)), centered);
        t.check("log-kernel inverse pairs with the counting operator", e1 < 1e-12 && e2 < 1e-12);
    }
    {
        // Integration by parts of the counting operator against derivatives.
        const ChebSeries phi = random_series(rng, frame, 8);
        const ChebSeries psi = random_series(rng, frame, 8);
        const ChebSeries x = ChebSeries::identity(frame);
        const MeasureKind beta{MeasureBase::Arcsine, frame};
        auto Pi = [&](const ChebSeries& h) { return integrate(h, beta); };
        const ChebSeries pd = phi.derivative(), qd = psi.derivative();
        const double lhs = inner_arcsine(apply(Op::Counting, phi), qd) +
                           inner_arcsine(apply(Op::Counting, psi), pd);
        const double rhs = Pi(pd) * Pi(multiply(x, qd)) + Pi(multiply(x, pd)) * Pi(qd);
        t.check("integration by parts identity", std::abs(lhs - rhs) < 1e-10);
    }
    {
        const ChebSeries f = random_series(rng, frame, 9);
        const ChebSeries u = apply(Op::DiffMean, f);
        const ChebSeries ud = u.derivative();
        double err = 0.0;
        for (int i = 1; i <= 12; ++i) {
            const double xx = -1.9 + 0.3 * i;
            const double lhs = apply(Op::Counting, f)(xx);
            const double rhs = xx * u(xx) - (4.0 - xx * xx) * ud(xx);
            err = std::max(err, std::abs(lhs - rhs));
        }
        t.check("counting operator matches its difference-quotient form", err < 1e-10);
    }
    {
        const DensityMeasure alpha = semicircle_measure(frame);
        double series = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const double mn = basis_moment(alpha, n);
            series -= 2.0 / n * mn * mn;
        }
        t.check("semicircle log-energy equals -1/4", std::abs(series + 0.25) < 1e-12);
    }
    {
        const DensityMeasure beta = arcsine_measure(frame);
        const double inside = log_potential(beta, 0.73);
        const double outside = log_potential(beta, 3.0);
        const double expected = std::log(0.5 * (3.0 + std::sqrt(5.0)));
        t.check("arcsine log-potential branches", std::abs(inside) < 1e-12 && std::abs(outside - expected) < 1e-12);
    }
    {
        const Potential V({0.0, 0.0, 0.5});
        const EquilibriumSolution sol = solve_equilibrium(V);
        const bool ok = std::abs(sol.support.center) < 1e-10 && std::abs(sol.support.scale - 1.0) < 1e-10 &&
                        std::abs(sol.energy - 0.75) < 1e-10;
        t.check("quadratic equilibrium closed form", ok);
    }
    {
        const Potential V({0.0, 0.0, 0.0, 0.0, 0.25});
        const EquilibriumSolution sol = solve_equilibrium(V);
        const double c = std::pow(3.0, -0.25);
        const bool ok = std::abs(sol.support.scale - c) < 1e-10 &&
                        std::abs(total_mass(sol.measure()) - 1.0) < 1e-10 &&
                        std::abs(energy(V, sol, EnergyRoute::Quadrature) - sol.energy) < 1e-10;
        t.check("quartic equilibrium closed form", ok);
    }
    {
        double err = 0.0;
        const DensityMeasure alpha = semicircle_measure(frame);
        for (int i = 1; i <= 9; ++i) {
            const double xx = -1.8 + 0.4 * i;
            err = std::max(err, std::abs(hilbert_transform(alpha, xx) - xx));
        }
        t.check("Hilbert transform of the semicircle", err < 1e-12);
    }
    {
        const PoincareReport pr = poincare_constant(ChebSeries::constant(frame, 1.0), frame, 32);
        t.check("Poincare constant of the semicircle", std::abs(pr.rho_p - 0.5) < 1e-10 &&
                                                           pr.cross_form_spread < 1e-8);
    }
    {
        const ChebSeries f = random_series(rng, frame, 10);
        const double gap = omega_form(f, f) - 0.5 * variance_arcsine(f);
        t.check("arcsine spectral gap", gap > -1e-12);
    }
    {
        GridFunction f;
        for (int i = 0; i <= 4000; ++i) {
            const double y = -8.0 + 16.0 * i / 4000;
            f.xs.push_back(y);
            f.values.push_back(y * y);
        }
        const std::vector<double> xs{-1.0, -0.3, 0.4, 1.2};
        const GridFunction q = inf_convolution(f, 0.7, xs);
        double err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            err = std::max(err, std::abs(q.values[i] - xs[i] * xs[i] / 1.7));
        t.check("inf-convolution of the parabola", err < 1e-8);
    }
    {
        const Potential V({0.0, 0.0, 0.5});
        const Potential f({0.0, 1.0});
        const EnergyExpansion e = energy_expansion(V, f, Potential({0.0}));
        t.check("energy expansion of the shifted quadratic",
                std::abs(e.e0 - 0.75) < 1e-12 && std::abs(e.a1) < 1e-12 && std::abs(e.a2 + 0.5) < 1e-12);
    }

    log << "selftest: " << t.passed << " passed, " << t.failed << " failed\n";
    return t.failed;
}

}  // namespace logpot
