/// Operator calculus on Chebyshev coefficients: the counting operator and its
/// log-kernel inverse, the averaged difference quotient and its inverse, the
/// second-kind counting operator, the Jacobi operator and its weighted
/// Dirichlet matrices, logarithmic potentials, and the finite Hilbert
/// transform in closed form.

#pragma once

#include <Eigen/Core>

#include "logpot/cheb.hpp"
#include "logpot/measures.hpp"

namespace logpot {

enum class Op {
    Counting,           // a_n -> n a_n
    CountingInverse,    // a_0 -> 0, a_n -> a_n / n; the log-kernel inverse
    DiffMean,           // averaged difference quotient against the arcsine law
    DiffMeanInverse,    // right inverse of DiffMean
    CountingSecondKind, // counting operator in the second-kind basis
    Jacobi,             // a_n -> n^2 a_n
};

/// Coefficientwise action of the named operator.  DiffMean and its inverse
/// carry the support scale so that, e.g., the averaged difference quotient of
/// the coordinate function is identically 1 on every interval.
ChebSeries apply(Op op, const ChebSeries& f);

/// Counting operator evaluated at a point through its integro-differential
/// form (two arcsine moments of f' plus the averaged difference quotient of
/// f'), independent of the diagonal coefficient rule; oracle for
/// apply(Op::Counting, .).
double counting_via_integrals(const ChebSeries& f, double x);

/// Partial sum of the log kernel expansion on [-2, 2]; converges (slowly)
/// to log|x - y| off the diagonal.
double log_kernel_sum(double x, double y, int terms);

/// Logarithmic potential of a density measure: interior points use the exact
/// coefficient pairing, exterior points the absolutely convergent expansion
/// in the exterior ratio.
double log_potential(const DensityMeasure& mu, double x);

/// Principal-value Hilbert transform 2 * p.v. integral of 1/(x - y) d mu(y)
/// for a measure over a semicircle base, evaluated in closed form: the
/// transform of each weighted second-kind polynomial is a first-kind
/// polynomial of one degree higher.  x must lie strictly inside the support.
double hilbert_transform(const DensityMeasure& mu, double x);

/// Weighted Jacobi operator applied as an exact series:
///   -(4c^2-(x-b)^2) w f'' + ((x-b) w - (4c^2-(x-b)^2) w') f'.
/// Values match the standard-frame operator under affine pullback.
ChebSeries weighted_jacobi_apply(const ChebSeries& w, const ChebSeries& f);

/// Dense symmetric matrix of an operator in the orthonormalized mean-zero
/// first-kind basis {sqrt(2) T_n(x/2)}_{n=1..K}.
struct SpectralOperatorMatrix {
    int size = 0;
    Eigen::MatrixXd entries;
};

/// Dirichlet matrix of the weighted Jacobi operator: entries
/// 2 * int f_m' f_n' w d(semicircle), assembled in the standard frame by a
/// Gauss rule that integrates every entry exactly.  w = 1 gives diag(n^2).
SpectralOperatorMatrix assemble_dirichlet_matrix(const ChebSeries& w, int K);

}  // namespace logpot
