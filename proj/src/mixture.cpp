#include "gmentropy/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gmentropy/errors.hpp"
#include "gmentropy/log_sum_exp.hpp"
#include "gmentropy/random.hpp"

namespace gmentropy {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

}  // namespace

GaussianComponent::GaussianComponent(Vector mean, Matrix covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
    const auto n = mean_.size();
    if (n < 1) throw std::invalid_argument("component mean must have length >= 1");
    if (covariance_.rows() != n || covariance_.cols() != n) {
        std::ostringstream msg;
        msg << "covariance must be " << n << "x" << n << ", got " << covariance_.rows() << "x"
            << covariance_.cols();
        throw std::invalid_argument(msg.str());
    }
    if (!covariance_.allFinite() || !mean_.allFinite())
        throw std::invalid_argument("mean and covariance must be finite");

    const double scale = covariance_.cwiseAbs().maxCoeff();
    const double asym = (covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) throw std::invalid_argument("covariance is not symmetric");

    Eigen::LLT<Matrix> llt(covariance_);
    const double max_diag = covariance_.diagonal().maxCoeff();
    if (llt.info() != Eigen::Success || max_diag <= 0.0)
        throw std::invalid_argument("covariance is not positive definite");
    factor_ = llt.matrixL();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pivot = factor_(i, i) * factor_(i, i);
        if (!(pivot >= 1e-12 * max_diag))
            throw std::invalid_argument("covariance is numerically singular (pivot below 1e-12 * max diagonal)");
    }
    log_det_ = 2.0 * factor_.diagonal().array().log().sum();

    precision_ = llt.solve(Matrix::Identity(n, n));
    precision_ = 0.5 * (precision_ + precision_.transpose()).eval();
    precision_mean_ = llt.solve(mean_);
    mean_quadratic_ = mean_.dot(precision_mean_);
}

double GaussianComponent::log_density(const Eigen::Ref<const Vector>& x, Vector& scratch) const {
    scratch = x - mean_;
    factor_.triangularView<Eigen::Lower>().solveInPlace(scratch);
    return -0.5 * (static_cast<double>(mean_.size()) * kLog2Pi + log_det_ + scratch.squaredNorm());
}

double GaussianComponent::log_density(const Eigen::Ref<const Vector>& x) const {
    Vector scratch(mean_.size());
    return log_density(x, scratch);
}

double GaussianComponent::log_peak() const {
    return -0.5 * (static_cast<double>(mean_.size()) * kLog2Pi + log_det_);
}

GaussianMixture::GaussianMixture(std::vector<double> weights, std::vector<GaussianComponent> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("mixture needs at least one component");
    if (weights_.size() != components_.size()) {
        std::ostringstream msg;
        msg << "got " << weights_.size() << " weights for " << components_.size() << " components";
        throw std::invalid_argument(msg.str());
    }
    dimension_ = components_.front().dimension();
    double total = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j]))
            throw std::invalid_argument("weight " + std::to_string(j) + " must be positive");
        if (components_[j].dimension() != dimension_)
            throw std::invalid_argument("component " + std::to_string(j) + " has dimension " +
                                        std::to_string(components_[j].dimension()) + ", expected " +
                                        std::to_string(dimension_));
        total += weights_[j];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "weights sum to " << total << ", expected 1 within 1e-12";
        throw std::invalid_argument(msg.str());
    }
    log_weights_.reserve(weights_.size());
    for (double p : weights_) log_weights_.push_back(std::log(p));
}

double log_joint_terms(const GaussianMixture& mix, const Eigen::Ref<const Vector>& x, Vector& scratch,
                       Eigen::Ref<Vector> out) {
    LogSumExp acc;
    for (int j = 0; j < mix.size(); ++j) {
        out[j] = mix.log_weights()[static_cast<std::size_t>(j)] + mix.component(j).log_density(x, scratch);
        acc.add(out[j]);
    }
    return acc.value();
}

double log_density(const GaussianMixture& mix, const Eigen::Ref<const Vector>& x, Vector& scratch) {
    LogSumExp acc;
    for (int j = 0; j < mix.size(); ++j)
        acc.add(mix.log_weights()[static_cast<std::size_t>(j)] + mix.component(j).log_density(x, scratch));
    return acc.value();
}

double log_density(const GaussianMixture& mix, const Eigen::Ref<const Vector>& x) {
    if (x.size() != mix.dimension()) {
        std::ostringstream msg;
        msg << "point has dimension " << x.size() << ", mixture has dimension " << mix.dimension();
        throw std::invalid_argument(msg.str());
    }
    Vector scratch(mix.dimension());
    return log_density(mix, x, scratch);
}

void draw_sample(const GaussianMixture& mix, std::uint64_t seed, std::uint64_t index, Eigen::Ref<Vector> out) {
    CounterRng rng(seed, index);
    const double u = rng.uniform();
    int chosen = mix.size() - 1;
    double cumulative = 0.0;
    for (int j = 0; j < mix.size(); ++j) {
        cumulative += mix.weights()[static_cast<std::size_t>(j)];
        if (u < cumulative) {
            chosen = j;
            break;
        }
    }
    const auto& comp = mix.component(chosen);
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = rng.normal();
    out = comp.mean() + comp.factor().triangularView<Eigen::Lower>() * out;
}

Matrix sample(const GaussianMixture& mix, std::int64_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");
    const int n = mix.dimension();
    Matrix rows(count, n);
#pragma omp parallel
    {
        Vector x(n);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            draw_sample(mix, seed, static_cast<std::uint64_t>(i), x);
            rows.row(i) = x.transpose();
        }
    }
    return rows;
}

MixtureMoments mixture_moments(const GaussianMixture& mix) {
    const int n = mix.dimension();
    MixtureMoments moments{Vector::Zero(n), Matrix::Zero(n, n)};
    for (int j = 0; j < mix.size(); ++j) {
        const double p = mix.weights()[static_cast<std::size_t>(j)];
        const auto& comp = mix.component(j);
        moments.mean += p * comp.mean();
        moments.covariance += p * (comp.mean() * comp.mean().transpose() + comp.covariance());
    }
    moments.covariance -= moments.mean * moments.mean.transpose();
    moments.covariance = 0.5 * (moments.covariance + moments.covariance.transpose()).eval();
    return moments;
}

double max_density_at_means(const GaussianMixture& mix) {
    double best = 0.0;
    for (const auto& comp : mix.components()) best = std::max(best, std::exp(log_density(mix, comp.mean())));
    return best;
}

double sum_of_peaks(const GaussianMixture& mix) {
    double total = 0.0;
    for (int j = 0; j < mix.size(); ++j)
        total += mix.weights()[static_cast<std::size_t>(j)] * std::exp(mix.component(j).log_peak());
    return total;
}

ModeResult find_f_max(const GaussianMixture& mix, const ModeSearchOptions& options) {
    const int n = mix.dimension();
    const int q = mix.size();

    std::vector<Vector> starts;
    starts.reserve(static_cast<std::size_t>(q) + 1);
    for (const auto& comp : mix.components()) starts.push_back(comp.mean());
    starts.push_back(mixture_moments(mix).mean);

    ModeResult result;
    result.argmax = starts.front();
    double best_log = -std::numeric_limits<double>::infinity();
    double best_any_log = -std::numeric_limits<double>::infinity();

    Vector scratch(n);
    Vector terms(q);
    Matrix system(n, n);
    Vector rhs(n);

    for (const auto& start : starts) {
        Vector x = start;
        int iteration = 0;
        bool converged = false;
        while (iteration < options.max_iterations) {
            const double log_f = log_joint_terms(mix, x, scratch, terms);
            system.setZero();
            rhs.setZero();
            for (int j = 0; j < q; ++j) {
                const double gamma = std::exp(terms[j] - log_f);
                system += gamma * mix.component(j).precision();
                rhs += gamma * mix.component(j).precision_mean();
            }
            Vector next = system.llt().solve(rhs);
            ++iteration;
            const double step = (next - x).norm();
            x = std::move(next);
            if (step < options.step_tolerance) {
                converged = true;
                break;
            }
        }
        result.iterations_per_start.push_back(iteration);
        const double log_f = log_density(mix, x, scratch);
        best_any_log = std::max(best_any_log, log_f);
        if (!converged) continue;
        ++result.starts_converged;
        if (log_f > best_log) {
            best_log = log_f;
            result.argmax = x;
        }
    }

    if (result.starts_converged == 0)
        throw NonConvergenceError("mode search: no start converged within " +
                                      std::to_string(options.max_iterations) + " iterations",
                                  std::exp(best_any_log));
    result.f_max = std::exp(best_log);
    return result;
}

GaussianMixture translated(const GaussianMixture& mix, const Vector& shift) {
    std::vector<GaussianComponent> comps;
    for (const auto& c : mix.components()) comps.emplace_back(c.mean() + shift, c.covariance());
    return GaussianMixture(mix.weights(), std::move(comps));
}

GaussianMixture scaled(const GaussianMixture& mix, double lambda) {
    std::vector<GaussianComponent> comps;
    for (const auto& c : mix.components()) comps.emplace_back(lambda * c.mean(), lambda * lambda * c.covariance());
    return GaussianMixture(mix.weights(), std::move(comps));
}

GaussianMixture permuted(const GaussianMixture& mix, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != mix.size()) throw std::invalid_argument("permutation has wrong length");
    std::vector<double> weights;
    std::vector<GaussianComponent> comps;
    for (int j : perm) {
        weights.push_back(mix.weights().at(static_cast<std::size_t>(j)));
        comps.push_back(mix.component(j));
    }
    return GaussianMixture(std::move(weights), std::move(comps));
}

}  // namespace gmentropy
