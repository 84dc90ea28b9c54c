#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "wemix/errors.hpp"

// Eigen-ratio constraint: pooled covariance eigenvalues are truncated to
// [m, c*m], with m chosen to minimize the truncation deviance
//   sum_{j,k} n_k (log lambda*_{jk}(m) + lambda_{jk} / lambda*_{jk}(m)).
// Within each interval between consecutive breakpoints {lambda, lambda/c}
// the configuration of clipped eigenvalues is fixed and the stationary
// point has the closed form m = S/N, so scanning the 2Kp+1 intervals is an
// exact minimization.

namespace wemix {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace detail {

struct PooledEigen {
    std::vector<double> lambda;  // flattened, one entry per (j,k)
    std::vector<double> count;   // matching n_k weights
};

inline double truncation_deviance(const PooledEigen& pe, double m, double c) {
    double acc = 0;
    for (size_t i = 0; i < pe.lambda.size(); ++i) {
        double ls = std::clamp(pe.lambda[i], m, c * m);
        acc += pe.count[i] * (std::log(ls) + pe.lambda[i] / ls);
    }
    return acc;
}

inline double optimal_truncation_level(const PooledEigen& pe, double c) {
    std::vector<double> bps;
    bps.reserve(2 * pe.lambda.size());
    for (double l : pe.lambda) {
        if (l > 0) {
            bps.push_back(l);
            bps.push_back(l / c);
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    if (bps.empty()) throw DegenerateComponent("all pooled eigenvalues vanish");

    double best_m = bps.front();
    double best_dev = truncation_deviance(pe, best_m, c);
    auto consider = [&](double m) {
        if (!(m > 0)) return;
        double dev = truncation_deviance(pe, m, c);
        if (dev < best_dev) {
            best_dev = dev;
            best_m = m;
        }
    };

    for (size_t j = 0; j <= bps.size(); ++j) {
        const double lo = j == 0 ? bps.front() * 0.5 : bps[j - 1];
        const double hi = j == bps.size() ? bps.back() * 2.0 : bps[j];
        const double probe = j == 0 ? lo : (j == bps.size() ? hi : 0.5 * (lo + hi));
        double n_sum = 0, s_sum = 0;
        for (size_t i = 0; i < pe.lambda.size(); ++i) {
            if (pe.lambda[i] < probe) {
                n_sum += pe.count[i];
                s_sum += pe.count[i] * pe.lambda[i];
            } else if (pe.lambda[i] > c * probe) {
                n_sum += pe.count[i];
                s_sum += pe.count[i] * pe.lambda[i] / c;
            }
        }
        consider(n_sum > 0 ? std::clamp(s_sum / n_sum, lo, hi) : probe);
        consider(hi);
    }
    return best_m;
}

}  // namespace detail

// Returns the input matrices unchanged (bit-identical) when they already
// satisfy the constraint. counts holds the soft component sizes n_k used to
// weight the deviance; pass an empty vector for equal weighting.
inline std::vector<MatrixXd> eigen_ratio_enforce(const std::vector<MatrixXd>& covariances,
                                                 double c, VectorXd counts = VectorXd()) {
    if (!(c >= 1.0)) throw DomainError("eigen-ratio constant must satisfy c >= 1");
    const int K = static_cast<int>(covariances.size());
    if (K == 0) return {};
    if (counts.size() == 0) counts = VectorXd::Ones(K);

    std::vector<Eigen::SelfAdjointEigenSolver<MatrixXd>> solvers;
    solvers.reserve(K);
    detail::PooledEigen pe;
    double lam_min = std::numeric_limits<double>::infinity();
    double lam_max = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
        solvers.emplace_back(covariances[k]);
        const VectorXd& lam = solvers.back().eigenvalues();
        for (int j = 0; j < lam.size(); ++j) {
            pe.lambda.push_back(lam[j]);
            pe.count.push_back(counts[k]);
            lam_min = std::min(lam_min, lam[j]);
            lam_max = std::max(lam_max, lam[j]);
        }
    }
    if (lam_min > 0 && lam_max <= c * lam_min) return covariances;

    const double m = detail::optimal_truncation_level(pe, c);
    std::vector<MatrixXd> out;
    out.reserve(K);
    for (int k = 0; k < K; ++k) {
        VectorXd lam = solvers[k].eigenvalues();
        for (int j = 0; j < lam.size(); ++j) lam[j] = std::clamp(lam[j], m, c * m);
        const MatrixXd& v = solvers[k].eigenvectors();
        out.push_back(v * lam.asDiagonal() * v.transpose());
    }
    return out;
}

}  // namespace wemix
