/// Gauss rules used across the library.  The arcsine and semicircle rules
/// integrate polynomials of degree <= 2n-1 exactly against the canonical
/// measures of the interval, which is all the coefficient calculus needs.

#pragma once

#include <vector>

#include "logpot/cheb.hpp"

namespace logpot {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss rule for the arcsine law of the support (first-kind nodes).
QuadRule arcsine_rule(Support s, int n);

/// Gauss rule for the semicircle law of the support (second-kind nodes).
QuadRule semicircle_rule(Support s, int n);

/// Gauss-Legendre rule on (0, 1).
QuadRule legendre01_rule(int n);

template <typename F>
double apply_rule(const QuadRule& rule, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

}  // namespace logpot
