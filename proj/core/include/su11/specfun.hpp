#pragma once

#include "su11/errors.hpp"

namespace su11::specfun {

// Stopping rule for power-series evaluation.
struct SeriesTolerance {
    double rel_tol = 1e-14;
    int max_terms = 512;

    void validate() const;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Modified Bessel function of the first kind, integer order m >= 0,
// summed from its power series
//   I_m(x) = sum_n (x/2)^(2n+m) / (n! Gamma(m+n+1)).
// Terms are accumulated until the next one drops below rel_tol times the
// partial sum; exhausting max_terms raises SeriesNonConvergence.
double bessel_i(int order, double x, const SeriesTolerance& tol = {});

// I_{m+1}(x) / I_m(x) for x > 0, evaluated by the continued fraction
// from the downward recurrence (Lentz). Lies in (0, 1) for all x > 0.
double bessel_ratio(int order, double x);

}  // namespace su11::specfun
