#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace gmentropy {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One multivariate normal N(mean, covariance) with its Cholesky factor and the
/// precision-side quantities reused by the product integrals.
class GaussianComponent {
public:
    /// Throws std::invalid_argument for non-square, asymmetric or
    /// numerically singular covariances (pivot < 1e-12 * max diagonal).
    GaussianComponent(Vector mean, Matrix covariance);

    int dimension() const { return static_cast<int>(mean_.size()); }
    const Vector& mean() const { return mean_; }
    const Matrix& covariance() const { return covariance_; }
    /// Lower-triangular L with covariance = L L^T.
    const Matrix& factor() const { return factor_; }
    double log_det() const { return log_det_; }

    /// K^{-1}, K^{-1} w and w^T K^{-1} w, all obtained from the factor.
    const Matrix& precision() const { return precision_; }
    const Vector& precision_mean() const { return precision_mean_; }
    double mean_quadratic() const { return mean_quadratic_; }

    /// ln N(x; mean, K). `scratch` must have length n and is overwritten.
    double log_density(const Eigen::Ref<const Vector>& x, Vector& scratch) const;
    double log_density(const Eigen::Ref<const Vector>& x) const;

    /// ln g(mean) = -n/2 ln(2 pi) - 1/2 ln det K.
    double log_peak() const;

private:
    Vector mean_;
    Matrix covariance_;
    Matrix factor_;
    double log_det_ = 0.0;
    Matrix precision_;
    Vector precision_mean_;
    double mean_quadratic_ = 0.0;
};

/// f(x) = sum_j p_j N(x; w_j, K_j). Immutable after construction.
class GaussianMixture {
public:
    /// Throws std::invalid_argument unless weights are positive, sum to 1
    /// within 1e-12, and every component has the same dimension.
    GaussianMixture(std::vector<double> weights, std::vector<GaussianComponent> components);

    int dimension() const { return dimension_; }
    int size() const { return static_cast<int>(components_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& log_weights() const { return log_weights_; }
    const std::vector<GaussianComponent>& components() const { return components_; }
    const GaussianComponent& component(int j) const { return components_[static_cast<std::size_t>(j)]; }

private:
    int dimension_ = 0;
    std::vector<double> weights_;
    std::vector<double> log_weights_;
    std::vector<GaussianComponent> components_;
};

/// ln f(x) by log-sum-exp over components. Throws std::invalid_argument on a
/// dimension mismatch.
double log_density(const GaussianMixture& mix, const Eigen::Ref<const Vector>& x);

/// Same, without allocation; `scratch` must have length n.
double log_density(const GaussianMixture& mix, const Eigen::Ref<const Vector>& x, Vector& scratch);

/// Per-component log(p_j g_j(x)) written into `out` (length q); returns ln f(x).
double log_joint_terms(const GaussianMixture& mix, const Eigen::Ref<const Vector>& x,
                       Vector& scratch, Eigen::Ref<Vector> out);

/// Draws row i of a sample set: categorical component choice then mean + L z.
/// Uses only the stream (seed, index), so rows can be generated in any order.
void draw_sample(const GaussianMixture& mix, std::uint64_t seed, std::uint64_t index,
                 Eigen::Ref<Vector> out);

/// count x n matrix of draws; deterministic given seed and independent of the
/// number of OpenMP threads.
Matrix sample(const GaussianMixture& mix, std::int64_t count, std::uint64_t seed);

struct MixtureMoments {
    Vector mean;
    Matrix covariance;
};

/// Mean and covariance of the mixture:
/// Sigma = sum_i p_i (w_i w_i^T + K_i) - mu mu^T.
MixtureMoments mixture_moments(const GaussianMixture& mix);

struct ModeResult {
    Vector argmax;
    double f_max = 0.0;
    int starts_converged = 0;
    std::vector<int> iterations_per_start;
};

struct ModeSearchOptions {
    double step_tolerance = 1e-10;
    int max_iterations = 500;
};

/// Global maximum of f by fixed-point ascent
///   x <- (sum_j gamma_j K_j^{-1})^{-1} sum_j gamma_j K_j^{-1} w_j
/// started from every component mean and from the mixture mean.
/// Throws NonConvergenceError (carrying the best value) if no start converges.
ModeResult find_f_max(const GaussianMixture& mix, const ModeSearchOptions& options = {});

/// max_j f(w_j): a certified lower bound on f_max.
double max_density_at_means(const GaussianMixture& mix);

/// sum_j p_j g_j(w_j): an upper bound on f_max.
double sum_of_peaks(const GaussianMixture& mix);

/// Mixture with every mean translated by `shift`.
GaussianMixture translated(const GaussianMixture& mix, const Vector& shift);

/// Mixture of x -> lambda x: means scaled by lambda, covariances by lambda^2.
GaussianMixture scaled(const GaussianMixture& mix, double lambda);

/// Mixture with components (and weights) reordered: result j = input perm[j].
GaussianMixture permuted(const GaussianMixture& mix, const std::vector<int>& perm);

}  // namespace gmentropy
