#include "logpot/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "logpot/quadrature.hpp"

namespace logpot {

namespace {

// First-kind values T_0..T_n at half-argument t = (x - b)/(2c).
std::vector<double> first_kind_values(const Support& s, double x, int n) {
    const double t = (x - s.center) / (2.0 * s.scale);
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    v[0] = 1.0;
    if (n >= 1)
        v[1] = t;
    for (int k = 2; k <= n; ++k)
        v[static_cast<std::size_t>(k)] = 2.0 * t * v[static_cast<std::size_t>(k - 1)] - v[static_cast<std::size_t>(k - 2)];
    return v;
}

ChebSeries diff_mean(const ChebSeries& f) {
    const auto& a = f.coeffs();
    if (a.size() <= 1)
        return ChebSeries::zero(f.support());
    std::vector<double> second(a.size() - 1, 0.0);
    const double inv_c = 1.0 / f.support().scale;
    for (std::size_t n = 1; n < a.size(); ++n)
        second[n - 1] = 0.5 * a[n] * inv_c;
    return ChebSeries(f.support(), second_to_first_kind(second));
}

ChebSeries diff_mean_inverse(const ChebSeries& f) {
    const auto second = first_to_second_kind(f.coeffs());
    std::vector<double> out(second.size() + 1, 0.0);
    const double c = f.support().scale;
    for (std::size_t k = 0; k < second.size(); ++k)
        out[k + 1] = 2.0 * c * second[k];
    return ChebSeries(f.support(), std::move(out));
}

ChebSeries counting_second_kind(const ChebSeries& f) {
    auto second = first_to_second_kind(f.coeffs());
    for (std::size_t k = 0; k < second.size(); ++k)
        second[k] *= static_cast<double>(k);
    return ChebSeries(f.support(), second_to_first_kind(second));
}

}  // namespace

ChebSeries apply(Op op, const ChebSeries& f) {
    switch (op) {
        case Op::DiffMean:
            return diff_mean(f);
        case Op::DiffMeanInverse:
            return diff_mean_inverse(f);
        case Op::CountingSecondKind:
            return counting_second_kind(f);
        default:
            break;
    }
    std::vector<double> a = f.coeffs();
    switch (op) {
        case Op::Counting:
            for (std::size_t n = 0; n < a.size(); ++n)
                a[n] *= static_cast<double>(n);
            break;
        case Op::CountingInverse:
            a[0] = 0.0;
            for (std::size_t n = 1; n < a.size(); ++n)
                a[n] /= static_cast<double>(n);
            break;
        case Op::Jacobi:
            for (std::size_t n = 0; n < a.size(); ++n)
                a[n] *= static_cast<double>(n) * static_cast<double>(n);
            break;
        default:
            break;
    }
    return ChebSeries(f.support(), std::move(a));
}

double counting_via_integrals(const ChebSeries& f, double x) {
    const Support s = f.support();
    if (!s.contains(x))
        throw std::invalid_argument("counting_via_integrals: point outside support");
    const ChebSeries fd = f.derivative();
    const ChebSeries fdd = fd.derivative();
    const QuadRule rule = arcsine_rule(s, fd.degree() + 3);
    const double fdx = fd(x);
    double moment1 = 0.0, moment0 = 0.0, quotient = 0.0;
    const double near = 1e-9 * s.scale;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double y = rule.nodes[j];
        const double w = rule.weights[j];
        const double fdy = fd(y);
        moment1 += w * (y - s.center) * fdy;
        moment0 += w * fdy;
        quotient += w * (std::abs(x - y) > near ? (fdx - fdy) / (x - y) : fdd(0.5 * (x + y)));
    }
    const double xb = x - s.center;
    return moment1 + xb * moment0 - (4.0 * s.scale * s.scale - xb * xb) * quotient;
}

double log_kernel_sum(double x, double y, int terms) {
    if (terms < 1)
        throw std::invalid_argument("log_kernel_sum: need at least one term");
    if (x == y)
        throw std::invalid_argument("log_kernel_sum: diagonal excluded");
    if (std::abs(x) > 2.0 || std::abs(y) > 2.0)
        throw std::invalid_argument("log_kernel_sum: points must lie in [-2, 2]");
    const double tx = 0.5 * x, ty = 0.5 * y;
    double px1 = 1.0, px = tx, py1 = 1.0, py = ty;
    double sum = -2.0 * px * py;
    for (int n = 2; n <= terms; ++n) {
        const double nx = 2.0 * tx * px - px1;
        const double ny = 2.0 * ty * py - py1;
        px1 = px;
        px = nx;
        py1 = py;
        py = ny;
        sum -= 2.0 / n * px * py;
    }
    return sum;
}

double log_potential(const DensityMeasure& mu, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("log_potential: non-finite point");
    const Support s = mu.base.support;
    const double mass = total_mass(mu);
    const double u = (x - s.center) / s.scale;
    // Moments vanish beyond degree + 2 (semicircle base shifts by two).
    const int nmax = mu.density.degree() + 2;
    std::vector<double> m(static_cast<std::size_t>(nmax) + 1, 0.0);
    for (int n = 1; n <= nmax; ++n)
        m[static_cast<std::size_t>(n)] = basis_moment(mu, n);

    if (std::abs(u) <= 2.0) {
        const auto tv = first_kind_values(s, x, nmax);
        double sum = 0.0;
        for (int n = 1; n <= nmax; ++n)
            sum += 2.0 / n * tv[static_cast<std::size_t>(n)] * m[static_cast<std::size_t>(n)];
        return mass * std::log(s.scale) - sum;
    }
    const double au = std::abs(u);
    const double root = std::sqrt(au * au - 4.0);
    const double ratio = 0.5 * (au - root);
    const double sign = (u > 0.0) ? 1.0 : -1.0;
    double sum = 0.0;
    double rn = 1.0, sn = 1.0;
    for (int n = 1; n <= nmax; ++n) {
        rn *= ratio;
        sn *= sign;
        sum += 2.0 / n * rn * sn * m[static_cast<std::size_t>(n)];
    }
    return mass * (std::log(s.scale) + std::log(0.5 * (au + root))) - sum;
}

double hilbert_transform(const DensityMeasure& mu, double x) {
    if (mu.base.base != MeasureBase::Semicircle)
        throw std::invalid_argument("hilbert_transform: measure must be over a semicircle base");
    const Support s = mu.base.support;
    if (!(x > s.left() && x < s.right()))
        throw std::invalid_argument("hilbert_transform: point must lie strictly inside the support");
    const auto second = first_to_second_kind(mu.density.coeffs());
    const auto tv = first_kind_values(s, x, static_cast<int>(second.size()));
    double sum = 0.0;
    for (std::size_t k = 0; k < second.size(); ++k)
        sum += 2.0 * second[k] * tv[k + 1];
    return sum / s.scale;
}

ChebSeries weighted_jacobi_apply(const ChebSeries& w, const ChebSeries& f) {
    if (!w.support().same_as(f.support()))
        throw std::invalid_argument("weighted_jacobi_apply: support mismatch");
    const Support s = f.support();
    const double c2 = s.scale * s.scale;
    // 4c^2 - (x-b)^2 and (x-b) as series on the support.
    const ChebSeries edge(s, {2.0 * c2, 0.0, -2.0 * c2});
    const ChebSeries xb(s, {0.0, 2.0 * s.scale});
    const ChebSeries fd = f.derivative();
    const ChebSeries fdd = fd.derivative();
    const ChebSeries wd = w.derivative();
    ChebSeries out = multiply(multiply(xb, w) - multiply(edge, wd), fd);
    out -= multiply(multiply(edge, w), fdd);
    return out;
}

SpectralOperatorMatrix assemble_dirichlet_matrix(const ChebSeries& w, int K) {
    if (K < 1)
        throw std::invalid_argument("assemble_dirichlet_matrix: K must be at least 1");
    // Standard frame: pull the weight onto (0, 1) coefficientwise.
    const Support std_frame{0.0, 1.0};
    const ChebSeries wf = w.rescaled(std_frame);
    const int deg_w = wf.degree();
    const int nodes = (deg_w + 2 * K + 4) / 2 + 1;
    const QuadRule rule = semicircle_rule(std_frame, nodes);

    // Second-kind values and weight values at the nodes.
    Eigen::MatrixXd psi(nodes, K);
    Eigen::VectorXd wv(nodes);
    for (int j = 0; j < nodes; ++j) {
        const double t = 0.5 * rule.nodes[static_cast<std::size_t>(j)];
        double u0 = 1.0, u1 = 2.0 * t;
        for (int k = 0; k < K; ++k) {
            psi(j, k) = (k == 0) ? u0 : u1;
            if (k >= 1) {
                const double next = 2.0 * t * u1 - u0;
                u0 = u1;
                u1 = next;
            }
        }
        wv(j) = wf(rule.nodes[static_cast<std::size_t>(j)]) * rule.weights[static_cast<std::size_t>(j)];
    }
    SpectralOperatorMatrix out;
    out.size = K;
    out.entries.resize(K, K);
    for (int m = 0; m < K; ++m)
        for (int n = m; n < K; ++n) {
            double sum = 0.0;
            for (int j = 0; j < nodes; ++j)
                sum += psi(j, m) * psi(j, n) * wv(j);
            const double value = (m + 1.0) * (n + 1.0) * sum;
            out.entries(m, n) = value;
            out.entries(n, m) = value;
        }
    return out;
}

}  // namespace logpot
