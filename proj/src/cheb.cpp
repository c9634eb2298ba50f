#include "logpot/cheb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace logpot {

namespace {
const double PI = 3.14159265358979323846;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string(what) + " is not finite");
}
}  // namespace

bool Support::same_as(const Support& other) const {
    const double tol = 1e-12 * (1.0 + std::abs(center) + scale);
    return std::abs(center - other.center) <= tol && std::abs(scale - other.scale) <= tol;
}

Support make_support(double center, double scale) {
    require_finite(center, "support center");
    require_finite(scale, "support scale");
    if (scale <= 0.0)
        throw std::invalid_argument("support scale must be positive");
    return Support{center, scale};
}

ChebSeries::ChebSeries(Support support, std::vector<double> coeffs)
    : support_(support), coeffs_(std::move(coeffs)) {
    if (support_.scale <= 0.0 || !std::isfinite(support_.center) || !std::isfinite(support_.scale))
        throw std::invalid_argument("invalid support");
    if (coeffs_.empty())
        coeffs_.push_back(0.0);
    for (double a : coeffs_)
        require_finite(a, "series coefficient");
}

ChebSeries ChebSeries::basis(Support s, int n) {
    if (n < 0)
        throw std::invalid_argument("basis index must be nonnegative");
    std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
    a.back() = 1.0;
    return ChebSeries(s, std::move(a));
}

ChebSeries ChebSeries::identity(Support s) {
    // x = b + 2c T_1((x - b)/(2c))
    return ChebSeries(s, {s.center, 2.0 * s.scale});
}

double ChebSeries::max_abs_coeff() const {
    double m = 0.0;
    for (double a : coeffs_)
        m = std::max(m, std::abs(a));
    return m;
}

double ChebSeries::operator()(double x) const {
    require_finite(x, "evaluation point");
    const double t = (x - support_.center) / (2.0 * support_.scale);
    // Clenshaw backward recurrence.
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 1;) {
        const double b0 = coeffs_[i] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs_[0] + t * b1 - b2;
}

ChebSeries ChebSeries::derivative() const {
    const int deg = degree();
    if (deg <= 0)
        return ChebSeries::zero(support_);
    // T_n' = n U_{n-1}; re-expand the second-kind result in the storage basis.
    std::vector<double> second(static_cast<std::size_t>(deg), 0.0);
    const double chain = 1.0 / (2.0 * support_.scale);
    for (int n = 1; n <= deg; ++n)
        second[static_cast<std::size_t>(n) - 1] = n * coeffs_[static_cast<std::size_t>(n)] * chain;
    return ChebSeries(support_, second_to_first_kind(second));
}

ChebSeries ChebSeries::rescaled(Support to) const {
    if (to.scale <= 0.0)
        throw std::invalid_argument("rescale target must have positive scale");
    return ChebSeries(to, coeffs_);
}

ChebSeries ChebSeries::trimmed(double rel_tol) const {
    const double cut = rel_tol * max_abs_coeff();
    std::size_t n = coeffs_.size();
    while (n > 1 && std::abs(coeffs_[n - 1]) <= cut)
        --n;
    return ChebSeries(support_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

ChebSeries& ChebSeries::operator+=(const ChebSeries& rhs) {
    if (!support_.same_as(rhs.support_))
        throw std::invalid_argument("support mismatch in series addition");
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

ChebSeries& ChebSeries::operator-=(const ChebSeries& rhs) {
    if (!support_.same_as(rhs.support_))
        throw std::invalid_argument("support mismatch in series subtraction");
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

ChebSeries& ChebSeries::operator*=(double s) {
    require_finite(s, "scalar factor");
    for (double& a : coeffs_)
        a *= s;
    return *this;
}

ChebSeries multiply(const ChebSeries& f, const ChebSeries& g) {
    if (!f.support().same_as(g.support()))
        throw std::invalid_argument("support mismatch in series product");
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    // 2 T_m T_n = T_{m+n} + T_{|m-n|}
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m] == 0.0)
            continue;
        for (std::size_t n = 0; n < b.size(); ++n) {
            const double half = 0.5 * a[m] * b[n];
            c[m + n] += half;
            c[m > n ? m - n : n - m] += half;
        }
    }
    return ChebSeries(f.support(), std::move(c));
}

std::vector<double> lobatto_nodes(Support s, int degree) {
    if (degree < 0)
        throw std::invalid_argument("degree must be nonnegative");
    if (degree == 0)
        return {s.center};
    std::vector<double> x(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j)
        x[static_cast<std::size_t>(j)] = s.center + 2.0 * s.scale * std::cos(PI * j / degree);
    return x;
}

ChebSeries analyze(std::span<const double> node_values, Support s) {
    if (node_values.empty())
        throw std::invalid_argument("analyze: empty sample list");
    for (double v : node_values)
        require_finite(v, "sample value");
    const int K = static_cast<int>(node_values.size()) - 1;
    if (K == 0)
        return ChebSeries::constant(s, node_values[0]);
    std::vector<double> a(static_cast<std::size_t>(K) + 1, 0.0);
    for (int n = 0; n <= K; ++n) {
        double sum = 0.5 * (node_values[0] + (n % 2 == 0 ? 1.0 : -1.0) * node_values[static_cast<std::size_t>(K)]);
        for (int j = 1; j < K; ++j) {
            // reduce the angle index modulo the period exactly in integers
            const long long m = (static_cast<long long>(n) * j) % (2LL * K);
            sum += node_values[static_cast<std::size_t>(j)] * std::cos(PI * m / K);
        }
        const double gamma = (n == 0 || n == K) ? 2.0 : 1.0;
        a[static_cast<std::size_t>(n)] = 2.0 * sum / (K * gamma);
    }
    return ChebSeries(s, std::move(a));
}

std::vector<double> first_to_second_kind(std::span<const double> first) {
    // T_0 = U_0, 2 T_1 = U_1, 2 T_n = U_n - U_{n-2} (n >= 2).
    if (first.empty())
        return {0.0};
    std::vector<double> d(first.size(), 0.0);
    d[0] = first[0] - (first.size() > 2 ? 0.5 * first[2] : 0.0);
    for (std::size_t k = 1; k < first.size(); ++k)
        d[k] = 0.5 * (first[k] - (k + 2 < first.size() ? first[k + 2] : 0.0));
    return d;
}

std::vector<double> second_to_first_kind(std::span<const double> second) {
    // U_{2m} = T_0 + 2(T_2 + ... + T_{2m}), U_{2m+1} = 2(T_1 + T_3 + ... + T_{2m+1}):
    // each first-kind coefficient collects a suffix sum over indices of equal parity.
    if (second.empty())
        return {0.0};
    std::vector<double> a(second.size(), 0.0);
    const std::size_t n = second.size();
    std::array<double, 2> suffix = {0.0, 0.0};
    std::vector<double> acc(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        suffix[i % 2] += second[i];
        acc[i] = suffix[i % 2];
    }
    a[0] = acc[0];
    for (std::size_t i = 1; i < n; ++i)
        a[i] = 2.0 * acc[i];
    return a;
}

}  // namespace logpot
