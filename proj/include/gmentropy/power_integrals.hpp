#pragma once

#include <vector>

#include "gmentropy/compositions.hpp"
#include "gmentropy/mixture.hpp"

namespace gmentropy {

/// The Gaussian that results from multiplying component powers g_j^{t_j}:
///   prod_j g_j^{t_j}(x) = D(t) * N(x; mean, precision^{-1}).
struct ProductGaussianMoment {
    Matrix precision;  ///< sum_j t_j K_j^{-1}
    Vector mean;       ///< precision^{-1} sum_j t_j K_j^{-1} w_j
    double log_D = 0.0;
};

/// ln of int prod_j g_j^{t_j} dx in closed form. Throws std::invalid_argument
/// if t has the wrong length or sums to zero.
ProductGaussianMoment log_product_integral(const GaussianMixture& mix, const Composition& t);

/// How the multinomial sum for int f^a dx is accumulated.
enum class Arithmetic {
    log_space,     ///< log-gamma multinomials, log-sum-exp accumulation
    linear,        ///< factorial multinomials, plain double summation
    linear_kahan,  ///< factorial multinomials, compensated summation
};

/// ln(a! / prod t_i!) via log-gamma.
double log_multinomial(const Composition& t);

/// ln int f^a dx, summed over compositions of a in parallel (partitioned on the
/// first part; partial log-sum-exps merged in a fixed order).
double log_power_integral(const GaussianMixture& mix, int a);

/// int f^a dx. Throws ResourceLimitError if the composition count exceeds 1e8.
double power_integral(const GaussianMixture& mix, int a, Arithmetic arithmetic = Arithmetic::log_space);

/// Cached int f^a dx for a = 1..max_order.
class PowerIntegralTable {
public:
    PowerIntegralTable(std::vector<double> values, Arithmetic arithmetic);

    int max_order() const { return static_cast<int>(values_.size()); }
    /// int f^a dx; throws std::out_of_range outside 1..max_order.
    double at(int a) const;
    const std::vector<double>& values() const { return values_; }
    Arithmetic arithmetic() const { return arithmetic_; }

private:
    std::vector<double> values_;
    Arithmetic arithmetic_;
};

/// Throws std::invalid_argument unless 1 <= max_order <= 16.
PowerIntegralTable build_table(const GaussianMixture& mix, int max_order,
                               Arithmetic arithmetic = Arithmetic::log_space);

}  // namespace gmentropy
