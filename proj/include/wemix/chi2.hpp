#pragma once

#include <cmath>
#include <limits>

#include "wemix/errors.hpp"

// Chi-square reference distribution: density, CDF via the regularized
// incomplete gamma function, and quantile by bisection.

namespace wemix {

// Density of chi-square with p degrees of freedom. Underflows to 0 far in
// the tail (t beyond ~1500 for small p); callers treat that as a sentinel.
inline double chi2_pdf(double t, int p) {
    if (p < 1) throw DomainError("chi2_pdf: p must be >= 1");
    if (t < 0) throw DomainError("chi2_pdf: t must be >= 0");
    if (t == 0) {
        if (p == 1) throw BoundarySingularity("chi2_pdf: density diverges at t=0 for p=1");
        if (p == 2) return 0.5;
        return 0.0;
    }
    const double a = 0.5 * p;
    return std::exp((a - 1.0) * std::log(t) - 0.5 * t - a * std::log(2.0) - std::lgamma(a));
}

namespace detail {

// Regularized lower incomplete gamma P(a, x), series expansion.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x), modified Lentz continued fraction.
inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return f * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

inline double chi2_cdf(double t, int p) {
    if (p < 1) throw DomainError("chi2_cdf: p must be >= 1");
    if (t < 0) throw DomainError("chi2_cdf: t must be >= 0");
    if (t == 0) return 0.0;
    const double a = 0.5 * p;
    const double x = 0.5 * t;
    if (t < static_cast<double>(p)) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_contfrac(a, x);
}

// t such that chi2_cdf(t, p) = prob, bisected on [1e-12, p + 40*sqrt(2p)].
inline double chi2_quantile(double prob, int p) {
    if (p < 1) throw DomainError("chi2_quantile: p must be >= 1");
    if (!(prob > 0.0 && prob < 1.0)) throw DomainError("chi2_quantile: prob must lie in (0,1)");
    double lo = 1e-12;
    double hi = p + 40.0 * std::sqrt(2.0 * p);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, p) < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace wemix
