#include "gmentropy/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gmentropy/errors.hpp"

namespace gmentropy {

namespace {

const double kLog2PiE = std::log(2.0 * std::numbers::pi * std::numbers::e);

}  // namespace

double gaussian_entropy(const Matrix& covariance) {
    Eigen::LLT<Matrix> llt(covariance);
    if (llt.info() != Eigen::Success) throw DomainError("covariance is not positive definite");
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return 0.5 * (static_cast<double>(covariance.rows()) * kLog2PiE + log_det);
}

double moment_upper_bound(const GaussianMixture& mix) { return gaussian_entropy(mixture_moments(mix).covariance); }

double component_upper_bound(const GaussianMixture& mix) {
    const double n = mix.dimension();
    double h = 0.0;
    for (int j = 0; j < mix.size(); ++j) {
        const double p = mix.weights()[static_cast<std::size_t>(j)];
        h += -p * std::log(p) + p * 0.5 * (n * kLog2PiE + mix.component(j).log_det());
    }
    return h;
}

BoundReport bound_report(const GaussianMixture& mix) {
    BoundReport report{moment_upper_bound(mix), component_upper_bound(mix), std::nullopt};
    if (mix.size() == 1) report.exact_if_single = gaussian_entropy(mix.component(0).covariance());
    return report;
}

double spherical_gaussian_peak(double sigma, int n) {
    return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * n);
}

double single_gaussian_volume(double s, double sigma, int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const double peak = spherical_gaussian_peak(sigma, n);
    if (!(s > 0.0 && s < peak)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "level s=" << s << " must lie in (0, f_max=" << peak << ")";
        throw DomainError(msg.str());
    }
    const double half_n = 0.5 * n;
    const double u = std::log(peak / s);
    const double log_prefactor = std::log(2.0) + half_n * std::log(std::numbers::pi) + n * std::log(sigma) +
                                 (half_n - 1.0) * std::log(2.0) - std::lgamma(half_n);
    return std::exp(log_prefactor + (half_n - 1.0) * std::log(u)) / s;
}

}  // namespace gmentropy
