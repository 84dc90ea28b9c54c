#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "wemix/errors.hpp"

// Boundary-corrected univariate kernel density estimation on squared
// distances, supported on [0, inf).

namespace wemix {

enum class KernelFamily { folded_normal, gamma, log_transform };

struct KernelSpec {
    KernelFamily family = KernelFamily::folded_normal;
    double bandwidth = 0.5;  // squared-distance scale; log scale for log_transform

    void validate() const {
        if (!(bandwidth > 0)) throw DomainError("kernel bandwidth must be positive");
    }
};

inline std::string kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::folded_normal: return "folded-normal";
        case KernelFamily::gamma: return "gamma";
        case KernelFamily::log_transform: return "log-transform";
    }
    return "?";
}

// One KDE over a fixed sample set, evaluated many times. Samples are sorted
// once so the Gaussian kernels can skip terms beyond kWindow standard
// deviations (each dropped term is below phi(9.5) ~ 2e-20).
class BoundaryKde {
public:
    BoundaryKde(std::vector<double> samples, KernelSpec spec)
        : spec_(spec), samples_(std::move(samples)) {
        spec_.validate();
        if (samples_.empty()) throw EmptySample("kde_boundary: empty sample set");
        for (double s : samples_) {
            if (!(s >= 0)) throw DomainError("kde_boundary: negative sample");
            if (spec_.family == KernelFamily::log_transform && s == 0)
                throw DomainError("log-transform kernel rejects zero samples");
        }
        switch (spec_.family) {
            case KernelFamily::folded_normal:
                std::sort(samples_.begin(), samples_.end());
                break;
            case KernelFamily::log_transform:
                for (double& s : samples_) s = std::log(s);
                std::sort(samples_.begin(), samples_.end());
                break;
            case KernelFamily::gamma:
                log_samples_.reserve(samples_.size());
                for (double s : samples_) log_samples_.push_back(s > 0 ? std::log(s) : 0.0);
                break;
        }
    }

    double operator()(double t) const {
        if (!(t >= 0)) throw DomainError("kde_boundary: negative evaluation point");
        switch (spec_.family) {
            case KernelFamily::folded_normal: return folded(t);
            case KernelFamily::gamma: return gamma_kernel(t);
            case KernelFamily::log_transform: return log_transform(t);
        }
        return 0;
    }

    std::vector<double> evaluate(std::span<const double> points) const {
        std::vector<double> out(points.size());
        for (size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points[i]);
        return out;
    }

private:
    static constexpr double kWindow = 9.5;
    static constexpr double kInvSqrt2Pi = 0.3989422804014327;

    double folded(double t) const {
        const double h = spec_.bandwidth;
        const double n = static_cast<double>(samples_.size());
        auto lo = std::lower_bound(samples_.begin(), samples_.end(), t - kWindow * h);
        auto hi = std::upper_bound(lo, samples_.end(), t + kWindow * h);
        double acc = 0;
        for (auto it = lo; it != hi; ++it) {
            double z = (t - *it) / h;
            acc += std::exp(-0.5 * z * z);
        }
        // reflection about 0; contributes only when t and s are both near 0
        double cap = kWindow * h - t;
        if (cap > 0) {
            auto rhi = std::upper_bound(samples_.begin(), samples_.end(), cap);
            for (auto it = samples_.begin(); it != rhi; ++it) {
                double z = (t + *it) / h;
                acc += std::exp(-0.5 * z * z);
            }
        }
        return acc * kInvSqrt2Pi / (n * h);
    }

    // Chen-style gamma kernel: density with shape t/h+1 and scale h,
    // evaluated at each sample.
    double gamma_kernel(double t) const {
        const double h = spec_.bandwidth;
        const double shape = t / h + 1.0;
        const double log_const = shape * std::log(h) + std::lgamma(shape);
        const double a1 = shape - 1.0;
        double acc = 0;
        for (size_t i = 0; i < samples_.size(); ++i) {
            if (samples_[i] == 0) {
                if (a1 == 0) acc += std::exp(-log_const);
                continue;
            }
            acc += std::exp(a1 * log_samples_[i] - samples_[i] / h - log_const);
        }
        return acc / static_cast<double>(samples_.size());
    }

    double log_transform(double t) const {
        if (t == 0) throw DomainError("log-transform kernel rejects t=0");
        const double h = spec_.bandwidth;
        const double lt = std::log(t);
        auto lo = std::lower_bound(samples_.begin(), samples_.end(), lt - kWindow * h);
        auto hi = std::upper_bound(lo, samples_.end(), lt + kWindow * h);
        double acc = 0;
        for (auto it = lo; it != hi; ++it) {
            double z = (lt - *it) / h;
            acc += std::exp(-0.5 * z * z);
        }
        return acc * kInvSqrt2Pi / (static_cast<double>(samples_.size()) * h * t);
    }

    KernelSpec spec_;
    std::vector<double> samples_;      // sorted (log scale for log_transform)
    std::vector<double> log_samples_;  // gamma family only
};

inline std::vector<double> kde_boundary(std::span<const double> eval_points,
                                        std::span<const double> samples,
                                        const KernelSpec& spec) {
    BoundaryKde kde(std::vector<double>(samples.begin(), samples.end()), spec);
    return kde.evaluate(eval_points);
}

}  // namespace wemix
