#include "su11/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace su11::specfun {

void SeriesTolerance::validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 1e-6))
        throw std::invalid_argument("SeriesTolerance: rel_tol must lie in (0, 1e-6)");
    if (max_terms < 64)
        throw std::invalid_argument("SeriesTolerance: max_terms must be >= 64");
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double bessel_i(int order, double x, const SeriesTolerance& tol) {
    tol.validate();
    if (order < 0) throw std::domain_error("bessel_i: order must be nonnegative");
    if (!(x >= 0.0)) throw std::domain_error("bessel_i: argument must be nonnegative");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;

    // Leading term (x/2)^m / m!, then the ratio recurrence
    // t_{n+1}/t_n = (x/2)^2 / ((n+1)(m+n+1)).
    const double q = 0.25 * x * x;
    double term = std::exp(order * std::log(0.5 * x) - std::lgamma(order + 1.0));
    double sum = term;
    for (int n = 0; n < tol.max_terms; ++n) {
        term *= q / ((n + 1.0) * (order + n + 1.0));
        sum += term;
        if (term < tol.rel_tol * sum) return sum;
    }
    throw SeriesNonConvergence(
        "bessel_i(" + std::to_string(order) + ", " + std::to_string(x) +
            "): series did not converge within " + std::to_string(tol.max_terms) + " terms",
        sum, tol.max_terms);
}

double bessel_ratio(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_ratio: order must be nonnegative");
    if (!(x > 0.0)) throw std::domain_error("bessel_ratio: argument must be positive");

    // R_m = I_{m+1}/I_m = 1 / (2(m+1)/x + R_{m+1}),
    // evaluated by the modified Lentz algorithm.
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double f = tiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k <= 10000; ++k) {
        const double b = 2.0 * (order + k) / x;
        d = b + d;
        if (d == 0.0) d = tiny;
        c = b + 1.0 / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < eps) return f;
    }
    throw SeriesNonConvergence("bessel_ratio: continued fraction did not converge", f, 10000);
}

}  // namespace su11::specfun
