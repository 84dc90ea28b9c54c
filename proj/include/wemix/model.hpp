#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "wemix/errors.hpp"

// Mixture parameter container, Gaussian/mixture density evaluation and
// squared Mahalanobis distances. Covariances are inverted through their
// eigendecomposition, which downstream code also needs for the eigen-ratio
// constraint; the decomposition is cached per component per iteration.

namespace wemix {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct MixtureModel {
    VectorXd weights;               // K mixing proportions
    std::vector<VectorXd> means;    // K vectors of dimension p
    std::vector<MatrixXd> covariances;

    int components() const { return static_cast<int>(means.size()); }
    int dim() const { return means.empty() ? 0 : static_cast<int>(means[0].size()); }

    void validate() const;
};

inline void validate_data(const MatrixXd& data) {
    if (data.rows() < 1 || data.cols() < 1)
        throw DomainError("data matrix must have n >= 1 rows and p >= 1 columns");
    if (!data.allFinite()) throw DomainError("data matrix contains non-finite entries");
}

// Eigendecomposition of one component, reused for distances, densities and
// the eigen-ratio constraint.
struct ComponentCache {
    VectorXd mean;
    MatrixXd basis;        // eigenvectors, columns
    VectorXd eigenvalues;  // ascending
    double log_norm = 0;   // -(p log 2pi + sum log lambda)/2

    double mahalanobis_sq(const VectorXd& point) const {
        VectorXd z = basis.transpose() * (point - mean);
        double d2 = 0;
        for (int j = 0; j < z.size(); ++j) d2 += z[j] * z[j] / eigenvalues[j];
        return d2;
    }

    double log_density(const VectorXd& point) const {
        return log_norm - 0.5 * mahalanobis_sq(point);
    }
};

inline ComponentCache decompose(const VectorXd& mean, const MatrixXd& cov) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw SingularCovariance("eigendecomposition failed");
    const VectorXd& lam = es.eigenvalues();
    const double largest = lam[lam.size() - 1];
    if (!(lam[0] > 1e-300 * largest) || !(largest > 0))
        throw SingularCovariance("covariance is numerically singular");
    ComponentCache cache;
    cache.mean = mean;
    cache.basis = es.eigenvectors();
    cache.eigenvalues = lam;
    double log_det = 0;
    for (int j = 0; j < lam.size(); ++j) log_det += std::log(lam[j]);
    cache.log_norm = -0.5 * (mean.size() * std::log(2.0 * std::numbers::pi) + log_det);
    return cache;
}

inline std::vector<ComponentCache> decompose(const MixtureModel& model) {
    std::vector<ComponentCache> caches;
    caches.reserve(model.components());
    for (int k = 0; k < model.components(); ++k)
        caches.push_back(decompose(model.means[k], model.covariances[k]));
    return caches;
}

inline void MixtureModel::validate() const {
    const int K = components();
    if (K < 1) throw InvalidModel("mixture needs at least one component");
    if (weights.size() != K || static_cast<int>(covariances.size()) != K)
        throw InvalidModel("weights/means/covariances sizes disagree");
    if (std::abs(weights.sum() - 1.0) > 1e-12) throw InvalidModel("weights must sum to 1");
    const int p = dim();
    if (p < 1) throw InvalidModel("dimension must be >= 1");
    for (int k = 0; k < K; ++k) {
        if (!(weights[k] >= 0)) throw InvalidModel("weights must be nonnegative");
        if (means[k].size() != p || covariances[k].rows() != p || covariances[k].cols() != p)
            throw InvalidModel("component dimensions disagree");
        double asym = (covariances[k] - covariances[k].transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-10) throw InvalidModel("covariance is not symmetric");
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(covariances[k]);
        if (!(es.eigenvalues()[0] > 0)) throw InvalidModel("covariance is not positive definite");
    }
}

inline double mahalanobis_sq(const VectorXd& point, const VectorXd& mean, const MatrixXd& cov) {
    return decompose(mean, cov).mahalanobis_sq(point);
}

// log sum_k pi_k phi_p(y; mu_k, Sigma_k), with max-shift against underflow.
inline double mixture_log_density(const VectorXd& point, const VectorXd& weights,
                                  const std::vector<ComponentCache>& caches) {
    const int K = static_cast<int>(caches.size());
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(K);
    for (int k = 0; k < K; ++k) {
        logs[k] = (weights[k] > 0 ? std::log(weights[k]) : -std::numeric_limits<double>::infinity()) +
                  caches[k].log_density(point);
        best = std::max(best, logs[k]);
    }
    if (!std::isfinite(best)) return best;
    double acc = 0;
    for (int k = 0; k < K; ++k) acc += std::exp(logs[k] - best);
    return best + std::log(acc);
}

inline double mixture_density(const VectorXd& point, const MixtureModel& model) {
    auto caches = decompose(model);
    return std::exp(mixture_log_density(point, model.weights, caches));
}

inline double log_likelihood(const MatrixXd& data, const MixtureModel& model) {
    validate_data(data);
    auto caches = decompose(model);
    double acc = 0;
    for (int i = 0; i < data.rows(); ++i)
        acc += mixture_log_density(data.row(i).transpose(), model.weights, caches);
    return acc;
}

}  // namespace wemix
