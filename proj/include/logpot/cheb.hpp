/// Chebyshev series on an arbitrary interval.
///
/// Every function in this library is represented by a finite expansion
///     f(x) = sum_n a_n T_n((x - b) / (2c))
/// in first-kind Chebyshev polynomials of the half-argument, attached to the
/// interval [b - 2c, b + 2c].  The basis is orthogonal for the arcsine law of
/// that interval, which is what makes the coefficient calculus in the rest of
/// the library exact for polynomial data.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace logpot {

/// Interval descriptor: center b and quarter-width scale c > 0.
/// The interval is [b - 2c, b + 2c].
struct Support {
    double center = 0.0;
    double scale = 1.0;

    double left() const { return center - 2.0 * scale; }
    double right() const { return center + 2.0 * scale; }
    bool contains(double x) const { return x >= left() && x <= right(); }

    /// Supports compare equal up to a tight relative tolerance, so that
    /// solver-produced and hand-constructed intervals interoperate.
    bool same_as(const Support& other) const;
};

/// Validated constructor; throws std::invalid_argument unless c > 0 and
/// both fields are finite.
Support make_support(double center, double scale);

class ChebSeries {
  public:
    ChebSeries() : support_{}, coeffs_{0.0} {}
    ChebSeries(Support support, std::vector<double> coeffs);

    static ChebSeries zero(Support s) { return ChebSeries(s, {0.0}); }
    static ChebSeries constant(Support s, double value) { return ChebSeries(s, {value}); }
    /// Basis element T_n((x - b)/(2c)).
    static ChebSeries basis(Support s, int n);
    /// The coordinate function f(x) = x.
    static ChebSeries identity(Support s);

    const Support& support() const { return support_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    /// Coefficient a_n, zero beyond the stored degree.
    double coeff(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : 0.0; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double max_abs_coeff() const;

    /// Clenshaw evaluation.  Valid outside the interval too (the series is a
    /// polynomial); callers that care should check support().contains(x).
    double operator()(double x) const;

    /// Exact derivative series on the same support (degree drops by one).
    ChebSeries derivative() const;

    /// Affine pullback onto another interval: the returned series has the
    /// same coefficients on the target support, so that integrals against the
    /// matched canonical measures are preserved.
    ChebSeries rescaled(Support to) const;

    /// Drop trailing coefficients below tol * max|a_n|.
    ChebSeries trimmed(double rel_tol = 1e-14) const;

    ChebSeries& operator+=(const ChebSeries& rhs);
    ChebSeries& operator-=(const ChebSeries& rhs);
    ChebSeries& operator*=(double s);

    friend ChebSeries operator+(ChebSeries lhs, const ChebSeries& rhs) { return lhs += rhs; }
    friend ChebSeries operator-(ChebSeries lhs, const ChebSeries& rhs) { return lhs -= rhs; }
    friend ChebSeries operator*(ChebSeries lhs, double s) { return lhs *= s; }
    friend ChebSeries operator*(double s, ChebSeries rhs) { return rhs *= s; }

  private:
    Support support_;
    std::vector<double> coeffs_;  // a_0 .. a_K
};

/// Exact product series, degree deg(f) + deg(g).  Supports must match.
ChebSeries multiply(const ChebSeries& f, const ChebSeries& g);

/// The K+1 Chebyshev-Gauss-Lobatto nodes of the support, ordered from the
/// right endpoint to the left (x_j = b + 2c cos(pi j / K)).  K = 0 gives the
/// single node {b}.
std::vector<double> lobatto_nodes(Support s, int degree);

/// Interpolate samples taken at lobatto_nodes(s, K); values.size() = K + 1.
ChebSeries analyze(std::span<const double> node_values, Support s);

/// Re-expansion between the first-kind basis T_n(x/2) and the second-kind
/// basis U_n(x/2) of the same polynomial.  Both directions are exact.
std::vector<double> first_to_second_kind(std::span<const double> first);
std::vector<double> second_to_first_kind(std::span<const double> second);

}  // namespace logpot
