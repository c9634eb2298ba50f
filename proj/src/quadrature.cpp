#include "logpot/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace logpot {

namespace {
const double PI = 3.14159265358979323846;
}

QuadRule arcsine_rule(Support s, int n) {
    if (n < 1)
        throw std::invalid_argument("quadrature order must be positive");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.assign(static_cast<std::size_t>(n), 1.0 / n);
    for (int j = 0; j < n; ++j)
        rule.nodes[static_cast<std::size_t>(j)] = s.center + 2.0 * s.scale * std::cos(PI * (j + 0.5) / n);
    return rule;
}

QuadRule semicircle_rule(Support s, int n) {
    if (n < 1)
        throw std::invalid_argument("quadrature order must be positive");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const double theta = PI * j / (n + 1);
        rule.nodes[static_cast<std::size_t>(j - 1)] = s.center + 2.0 * s.scale * std::cos(theta);
        const double sn = std::sin(theta);
        rule.weights[static_cast<std::size_t>(j - 1)] = 2.0 * sn * sn / (n + 1);
    }
    return rule;
}

QuadRule legendre01_rule(int n) {
    if (n < 1)
        throw std::invalid_argument("quadrature order must be positive");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n, nodes on (-1,1), then mapped to (0,1).
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace logpot
