#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wemix/chi2.hpp"
#include "wemix/errors.hpp"

// Pearson residuals on squared distances against the raw chi-square
// reference density, residual adjustment functions (PDM and GKL families)
// and the downweighting function w = [A(delta)+1]^+ / (delta+1).

namespace wemix {

enum class RafFamily { pdm, gkl };

struct RafSpec {
    RafFamily family = RafFamily::gkl;
    double tau = 0.9;
    bool kl_limit = false;  // PDM tau -> infinity

    static RafSpec pdm(double tau) { return {RafFamily::pdm, tau, false}; }
    static RafSpec pdm_kl() { return {RafFamily::pdm, 0.0, true}; }
    static RafSpec gkl(double tau) { return {RafFamily::gkl, tau, false}; }

    void validate() const {
        if (family == RafFamily::pdm) {
            if (!kl_limit && tau == 0) throw DomainError("pdm RAF rejects tau = 0");
        } else {
            if (!(tau >= 0 && tau <= 1)) throw DomainError("gkl RAF needs tau in [0,1]");
        }
    }
};

inline std::string raf_family_name(RafFamily f) {
    return f == RafFamily::pdm ? "pdm" : "gkl";
}

constexpr double kResidualFloor = -1.0 + 1e-12;

// delta = kde / chi2_pdf - 1, floored at -1 + 1e-12. An underflowed
// reference density maps to +inf; weight() turns that into 0.
inline double pearson_residual(double d2, int p, double kde_value) {
    const double ref = chi2_pdf(d2, p);
    if (ref <= 0) return std::numeric_limits<double>::infinity();
    return std::max(kde_value / ref - 1.0, kResidualFloor);
}

inline double raf_apply(double delta, const RafSpec& spec) {
    spec.validate();
    if (std::isinf(delta)) return delta;
    if (spec.family == RafFamily::pdm) {
        if (spec.kl_limit) return std::log(delta + 1.0);
        if (spec.tau == 1.0) return delta;  // maximum-likelihood special case
        return spec.tau * (std::pow(delta + 1.0, 1.0 / spec.tau) - 1.0);
    }
    if (spec.tau < 1e-12) return delta;  // GKL tau -> 0 is maximum likelihood
    const double arg = spec.tau * delta + 1.0;
    if (arg <= 0) return -std::numeric_limits<double>::infinity();
    return std::log(arg) / spec.tau;
}

// w = [A(delta)+1]^+ / (delta+1), clipped to [0,1]. Total function: the
// floored residual and the +inf sentinel both map to 0.
inline double weight(double delta, const RafSpec& spec) {
    if (!std::isfinite(delta)) return 0.0;
    if (delta <= kResidualFloor) return 0.0;
    const double a = raf_apply(delta, spec);
    const double num = a + 1.0;
    if (!(num > 0)) return 0.0;
    return std::clamp(num / (delta + 1.0), 0.0, 1.0);
}

}  // namespace wemix
