#include "logpot/inequalities.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logpot/operators.hpp"
#include "logpot/quadrature.hpp"

namespace logpot {

namespace {

const double MASS_TOL = 1e-8;

void require_probability(const DensityMeasure& mu, const char* what) {
    if (std::abs(total_mass(mu) - 1.0) > MASS_TOL)
        throw std::invalid_argument(std::string(what) + ": measure is not a probability");
    if (density_floor(mu) < -1e-10)
        throw std::invalid_argument(std::string(what) + ": density is negative beyond tolerance");
}

// Gram matrix of the inverse weight in the second-kind basis,
// R_jk = int psi_j psi_k / w d(semicircle), j,k = 0..K-1, standard frame.
Eigen::MatrixXd inverse_weight_gram(const ChebSeries& w, int K) {
    const Support frame{0.0, 1.0};
    const int nodes = 2 * K + 64;
    const QuadRule rule = semicircle_rule(frame, nodes);
    Eigen::MatrixXd psi(nodes, K);
    Eigen::VectorXd wv(nodes);
    for (int j = 0; j < nodes; ++j) {
        const double x = rule.nodes[static_cast<std::size_t>(j)];
        const double t = 0.5 * x;
        double u0 = 1.0, u1 = 2.0 * t;
        for (int k = 0; k < K; ++k) {
            psi(j, k) = (k == 0) ? u0 : u1;
            if (k >= 1) {
                const double next = 2.0 * t * u1 - u0;
                u0 = u1;
                u1 = next;
            }
        }
        wv(j) = rule.weights[static_cast<std::size_t>(j)] / w(x);
    }
    Eigen::MatrixXd R(K, K);
    for (int m = 0; m < K; ++m)
        for (int n = m; n < K; ++n) {
            double sum = 0.0;
            for (int j = 0; j < nodes; ++j)
                sum += psi(j, m) * psi(j, n) * wv(j);
            R(m, n) = sum;
            R(n, m) = sum;
        }
    return R;
}

// Matrix of the composed inverse-weight operator in the orthonormal
// mean-zero first-kind basis, assembled by applying the operators to each
// basis element: averaged difference quotient, pointwise division by w
// (re-analyzed on a guard-band grid), then the inverse map.
Eigen::MatrixXd dual_operator_matrix(const ChebSeries& w, int K) {
    const Support frame{0.0, 1.0};
    const int q = 2 * K + 32 + w.degree();
    const auto nodes = lobatto_nodes(frame, q);
    std::vector<double> inv_w(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
        inv_w[j] = 1.0 / w(nodes[j]);

    Eigen::MatrixXd A(K, K);
    std::vector<double> values(nodes.size());
    const double sqrt2 = std::sqrt(2.0);
    for (int m = 1; m <= K; ++m) {
        const ChebSeries um = apply(Op::DiffMean, ChebSeries::basis(frame, m));
        for (std::size_t j = 0; j < nodes.size(); ++j)
            values[j] = sqrt2 * um(nodes[j]) * inv_w[j];
        const ChebSeries quotient = analyze(values, frame);
        const ChebSeries vm = apply(Op::DiffMeanInverse, quotient);
        for (int n = 1; n <= K; ++n)
            A(n - 1, m - 1) = vm.coeff(static_cast<std::size_t>(n)) / sqrt2;
    }
    return 0.5 * (A + A.transpose());
}

}  // namespace

PoincareReport poincare_constant(const ChebSeries& w, Support s, int K) {
    if (!w.support().same_as(s))
        throw std::invalid_argument("poincare_constant: weight support mismatch");
    if (K < 8)
        throw std::invalid_argument("poincare_constant: truncation must be at least 8");
    const DensityMeasure mu{MeasureKind{MeasureBase::Semicircle, s}, w};
    if (density_floor(mu) <= 0.0)
        throw std::invalid_argument("poincare_constant: weight must be positive on the support");

    const ChebSeries wf = w.rescaled(Support{0.0, 1.0});
    const double inv_c2 = 1.0 / (s.scale * s.scale);
    PoincareReport report;
    report.truncation = K;

    // Primal: Dirichlet matrix scaled by the counting weights.
    const Eigen::MatrixXd L = assemble_dirichlet_matrix(wf, K).entries;
    Eigen::MatrixXd S = L;
    for (int m = 0; m < K; ++m)
        for (int n = 0; n < K; ++n)
            S(m, n) /= std::sqrt((m + 1.0) * (n + 1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> primal(S);
    if (primal.info() != Eigen::Success)
        throw std::runtime_error("poincare_constant: eigensolve failed");
    report.rho_p = 0.5 * primal.eigenvalues()(0) * inv_c2;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dirichlet(L);
    if (dirichlet.info() != Eigen::Success)
        throw std::runtime_error("poincare_constant: eigensolve failed");
    report.eigen_profile.resize(static_cast<std::size_t>(K));
    for (int n = 0; n < K; ++n)
        report.eigen_profile[static_cast<std::size_t>(n)] = dirichlet.eigenvalues()(n) / (2.0 * (n + 1.0));

    Eigen::MatrixXd counting = Eigen::MatrixXd::Zero(K, K);
    for (int n = 0; n < K; ++n)
        counting(n, n) = n + 1.0;

    // Dual: counting weights against the composed inverse-weight operator.
    const Eigen::MatrixXd A = dual_operator_matrix(wf, K);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dual(counting, A);
    if (dual.info() != Eigen::Success)
        throw std::runtime_error("poincare_constant: generalized eigensolve failed");
    report.rho_p2 = 0.5 * dual.eigenvalues()(0) * inv_c2;

    // Second-kind route: counting weights against the inverse-weight Gram matrix.
    const Eigen::MatrixXd R = inverse_weight_gram(wf, K);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> second(counting, R);
    if (second.info() != Eigen::Success)
        throw std::runtime_error("poincare_constant: generalized eigensolve failed");
    report.rho_p4 = 0.5 * second.eigenvalues()(0) * inv_c2;

    report.cross_form_spread = std::max({std::abs(report.rho_p - report.rho_p2),
                                         std::abs(report.rho_p - report.rho_p4),
                                         std::abs(report.rho_p2 - report.rho_p4)});
    return report;
}

double wasserstein2(const DensityMeasure& mu, const DensityMeasure& nu, int grid) {
    require_probability(mu, "wasserstein2");
    require_probability(nu, "wasserstein2");
    const QuadRule rule = legendre01_rule(grid);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double p = rule.nodes[i];
        const double d = quantile(mu, p) - quantile(nu, p);
        sum += rule.weights[i] * d * d;
    }
    return std::sqrt(std::max(sum, 0.0));
}

DeficitReport deficit(const Potential& V, const DensityMeasure& nu, double rho, DeficitKind kind,
                      int w2_grid) {
    if (nu.base.base != MeasureBase::Semicircle)
        throw std::invalid_argument("deficit: test measure must be over a semicircle base");
    require_probability(nu, "deficit");

    const EquilibriumSolution sol = solve_equilibrium(V);
    const Support sn = nu.base.support;

    // Energy of the test measure: exact field term plus the log-energy
    // moment series in the frame of its own support.
    const ChebSeries vs = V.to_series(sn);
    double e_nu = integrate(multiply(vs, nu.density), nu.base) - std::log(sn.scale);
    for (int n = 1; n <= nu.density.degree() + 2; ++n) {
        const double mn = basis_moment(nu, n);
        e_nu += 2.0 / n * mn * mn;
    }
    const double gap = e_nu - sol.energy;

    DeficitReport report;
    report.kind = kind;
    if (kind == DeficitKind::Transport) {
        const double w2 = wasserstein2(nu, sol.measure(), w2_grid);
        report.lhs = rho * w2 * w2;
        report.rhs = gap;
    } else {
        // Relative Fisher information: the Hilbert transform of nu is a
        // polynomial on its support, so the integral is exact.
        ChebSeries h = apply(Op::DiffMeanInverse, nu.density);
        h *= 1.0 / (sn.scale * sn.scale);
        const ChebSeries diff = h - V.derivative().to_series(sn);
        const double fisher = integrate(multiply(multiply(diff, diff), nu.density), nu.base);
        if (kind == DeficitKind::LSI) {
            report.lhs = 4.0 * rho * gap;
            report.rhs = fisher;
        } else {
            const double w2 = wasserstein2(nu, sol.measure(), w2_grid);
            report.lhs = gap;
            report.rhs = std::sqrt(std::max(fisher, 0.0)) * w2 - rho * w2 * w2;
        }
    }
    report.deficit = report.rhs - report.lhs;
    return report;
}

GridFunction inf_convolution(const GridFunction& f, double t, const std::vector<double>& x_grid) {
    if (!(t > 0.0))
        throw std::invalid_argument("inf_convolution: t must be positive");
    if (f.xs.size() < 3 || f.xs.size() != f.values.size())
        throw std::invalid_argument("inf_convolution: need at least three grid samples");
    for (std::size_t i = 1; i < f.xs.size(); ++i)
        if (!(f.xs[i] > f.xs[i - 1]))
            throw std::invalid_argument("inf_convolution: grid must be strictly increasing");

    GridFunction out;
    out.xs = x_grid;
    out.values.resize(x_grid.size());
    const std::size_t m = f.xs.size();
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
        const double x = x_grid[ix];
        std::size_t best = 0;
        double best_val = f.values[0] + (x - f.xs[0]) * (x - f.xs[0]) / t;
        for (std::size_t j = 1; j < m; ++j) {
            const double d = x - f.xs[j];
            const double v = f.values[j] + d * d / t;
            if (v < best_val) {
                best_val = v;
                best = j;
            }
        }
        if (best == 0 || best == m - 1)
            throw std::runtime_error("inf_convolution: infimum attained at the grid boundary; widen the grid");
        // Parabolic refinement through the three neighbors; exact whenever
        // the objective is locally quadratic.
        const double y0 = f.xs[best - 1], y1 = f.xs[best], y2 = f.xs[best + 1];
        const double h0 = f.values[best - 1] + (x - y0) * (x - y0) / t;
        const double h1 = best_val;
        const double h2 = f.values[best + 1] + (x - y2) * (x - y2) / t;
        // Quadratic through (y_i, h_i) in Newton form.
        const double d10 = (h1 - h0) / (y1 - y0);
        const double d21 = (h2 - h1) / (y2 - y1);
        const double curv = (d21 - d10) / (y2 - y0);
        if (curv > 0.0) {
            const double vertex = 0.5 * (y0 + y1 - d10 / curv);
            const double value = h0 + d10 * (vertex - y0) + curv * (vertex - y0) * (vertex - y1);
            out.values[ix] = std::min(value, h1);
        } else {
            out.values[ix] = h1;
        }
    }
    return out;
}

}  // namespace logpot
