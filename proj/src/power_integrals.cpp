#include "gmentropy/power_integrals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gmentropy/errors.hpp"
#include "gmentropy/log_sum_exp.hpp"

namespace gmentropy {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

double log_weight_power(const GaussianMixture& mix, const Composition& t) {
    double s = 0.0;
    for (std::size_t j = 0; j < t.t.size(); ++j)
        if (t.t[j] > 0) s += t.t[j] * mix.log_weights()[j];
    return s;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double linear_term(const GaussianMixture& mix, const Composition& t) {
    double coeff = factorial(t.order);
    double weight = 1.0;
    for (std::size_t j = 0; j < t.t.size(); ++j) {
        coeff /= factorial(t.t[j]);
        weight *= std::pow(mix.weights()[j], t.t[j]);
    }
    return coeff * weight * std::exp(log_product_integral(mix, t).log_D);
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
};

double linear_power_integral(const GaussianMixture& mix, int a, bool compensated) {
    CompositionStream stream(mix.size(), a);
    double plain = 0.0;
    KahanSum kahan;
    while (stream.next()) {
        const double term = linear_term(mix, stream.current());
        if (compensated)
            kahan.add(term);
        else
            plain += term;
    }
    return compensated ? kahan.sum : plain;
}

}  // namespace

double log_multinomial(const Composition& t) {
    double s = std::lgamma(static_cast<double>(t.order) + 1.0);
    for (int k : t.t) s -= std::lgamma(static_cast<double>(k) + 1.0);
    return s;
}

ProductGaussianMoment log_product_integral(const GaussianMixture& mix, const Composition& t) {
    if (static_cast<int>(t.t.size()) != mix.size())
        throw std::invalid_argument("composition has " + std::to_string(t.t.size()) + " parts, mixture has " +
                                    std::to_string(mix.size()) + " components");
    const int n = mix.dimension();
    int a = 0;
    ProductGaussianMoment out{Matrix::Zero(n, n), Vector::Zero(n), 0.0};
    Vector weighted_mean = Vector::Zero(n);
    double log_det_sum = 0.0;
    double quad_sum = 0.0;
    for (int j = 0; j < mix.size(); ++j) {
        const int tj = t.t[static_cast<std::size_t>(j)];
        if (tj < 0) throw std::invalid_argument("composition parts must be nonnegative");
        if (tj == 0) continue;
        a += tj;
        const auto& comp = mix.component(j);
        out.precision += tj * comp.precision();
        weighted_mean += tj * comp.precision_mean();
        log_det_sum += tj * comp.log_det();
        quad_sum += tj * comp.mean_quadratic();
    }
    if (a < 1) throw std::invalid_argument("composition must sum to at least 1");

    Eigen::LLT<Matrix> llt(out.precision);
    if (llt.info() != Eigen::Success) throw InternalError("combined precision is not positive definite");
    out.mean = llt.solve(weighted_mean);
    const Matrix& L = llt.matrixLLT();
    const double log_det_precision = 2.0 * L.diagonal().array().log().sum();

    // ln det M = -ln det(precision); mu^T M^{-1} mu = (sum t K^{-1} w) . mu
    out.log_D = -0.5 * n * (a - 1) * kLog2Pi - 0.5 * log_det_sum - 0.5 * log_det_precision -
                0.5 * (quad_sum - weighted_mean.dot(out.mean));
    return out;
}

double log_power_integral(const GaussianMixture& mix, int a) {
    if (a < 1) throw std::invalid_argument("power integral order must be >= 1");
    const int q = mix.size();
    composition_count(q, a);

    std::vector<LogSumExp> partials(static_cast<std::size_t>(a) + 1);
#pragma omp parallel for schedule(dynamic, 1)
    for (int first = 0; first <= a; ++first) {
        if (q == 1 && first != a) continue;
        auto stream = CompositionStream::with_first(q, a, first);
        LogSumExp acc;
        while (stream.next()) {
            const auto& t = stream.current();
            acc.add(log_multinomial(t) + log_weight_power(mix, t) + log_product_integral(mix, t).log_D);
        }
        partials[static_cast<std::size_t>(first)] = acc;
    }
    LogSumExp total;
    for (const auto& p : partials) total.merge(p);
    return total.value();
}

double power_integral(const GaussianMixture& mix, int a, Arithmetic arithmetic) {
    switch (arithmetic) {
        case Arithmetic::log_space:
            return std::exp(log_power_integral(mix, a));
        case Arithmetic::linear:
            return linear_power_integral(mix, a, false);
        case Arithmetic::linear_kahan:
            return linear_power_integral(mix, a, true);
    }
    throw std::invalid_argument("unknown arithmetic mode");
}

PowerIntegralTable::PowerIntegralTable(std::vector<double> values, Arithmetic arithmetic)
    : values_(std::move(values)), arithmetic_(arithmetic) {}

double PowerIntegralTable::at(int a) const {
    if (a < 1 || a > max_order())
        throw std::out_of_range("power integral table covers a = 1.." + std::to_string(max_order()) + ", asked for " +
                                std::to_string(a));
    return values_[static_cast<std::size_t>(a - 1)];
}

PowerIntegralTable build_table(const GaussianMixture& mix, int max_order, Arithmetic arithmetic) {
    if (max_order < 1 || max_order > 16)
        throw std::invalid_argument("table order must lie in 1..16, got " + std::to_string(max_order));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(max_order));
    for (int a = 1; a <= max_order; ++a) values.push_back(power_integral(mix, a, arithmetic));
    return PowerIntegralTable(std::move(values), arithmetic);
}

}  // namespace gmentropy
