#pragma once

#include <optional>

#include "gmentropy/mixture.hpp"

namespace gmentropy {

/// 1/2 ln det(2 pi e K).
double gaussian_entropy(const Matrix& covariance);

/// 1/2 ln det(2 pi e Sigma) with Sigma the mixture covariance; Gaussians
/// maximize entropy at fixed covariance.
double moment_upper_bound(const GaussianMixture& mix);

/// sum_j p_j ln(1/p_j) + sum_j p_j 1/2 ln det(2 pi e K_j); exact for q = 1.
double component_upper_bound(const GaussianMixture& mix);

struct BoundReport {
    double moment_bound = 0.0;
    double component_bound = 0.0;
    std::optional<double> exact_if_single;
};

BoundReport bound_report(const GaussianMixture& mix);

/// Level-set volume V(s) of a spherical N(0, sigma^2 I_n):
///   V(s) = 2 pi^{n/2} sigma^n 2^{n/2-1} / Gamma(n/2) * u^{n/2-1} / s,
///   u = ln(f_max / s),
/// normalized so that int_0^{f_max} s V(s) ds = 1. Throws DomainError
/// unless 0 < s < f_max.
double single_gaussian_volume(double s, double sigma, int n);

/// (2 pi sigma^2)^{-n/2}.
double spherical_gaussian_peak(double sigma, int n);

}  // namespace gmentropy
