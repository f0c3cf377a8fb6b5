#include "gmentropy/taylor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gmentropy/errors.hpp"

namespace gmentropy {

namespace {

constexpr int kMaxOrder = 30;

void check_order(int order) {
    if (order < 1 || order > kMaxOrder)
        throw DomainError("Taylor order must lie in 1.." + std::to_string(kMaxOrder) + ", got " +
                          std::to_string(order));
}

/// int f^a / m^{a-1}, formed in log space since both factors can be tiny.
double scaled_power(const PowerIntegralTable& table, int a, double m) {
    return std::exp(std::log(table.at(a)) - (a - 1) * std::log(m));
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > 62) throw std::invalid_argument("binomial out of range");
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return result;
}

double harmonic_number(int k) {
    double h = 0.0;
    for (int i = 1; i <= k; ++i) h += 1.0 / i;
    return h;
}

TaylorCoefficients taylor_coefficients(int order, double m) {
    check_order(order);
    if (!(m > 0.0)) throw DomainError("Taylor scale m must be positive");
    TaylorCoefficients out;
    out.harmonic = harmonic_number(order - 1);
    out.c.push_back(out.harmonic);
    for (int a = 2; a <= order; ++a) {
        const double sign = (a % 2 == 0) ? -1.0 : 1.0;
        out.c.push_back(sign / std::pow(m, a - 1) / (a - 1) * static_cast<double>(binomial(order - 1, a - 1)));
    }
    return out;
}

TaylorCoefficients taylor_coefficients(int order, double m, const PowerIntegralTable& table) {
    auto out = taylor_coefficients(order, m);
    for (int a = 1; a <= order; ++a) {
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        out.B.push_back(sign * scaled_power(table, a, m) / m);
    }
    return out;
}

double resolve_scale(const GaussianMixture& mix, const TaylorParams& params, double f_max) {
    switch (params.policy) {
        case ScalePolicy::sum_of_peaks:
            return sum_of_peaks(mix);
        case ScalePolicy::beta_times_fmax:
            if (!(params.beta >= 0.5)) throw DomainError("Taylor beta must be >= 1/2");
            return params.beta == 1.0 ? f_max * (1.0 + 1e-9) : params.beta * f_max;
    }
    throw std::invalid_argument("unknown scale policy");
}

EntropyEstimate taylor_entropy_at_scale(const PowerIntegralTable& table, int order, double m, double f_max) {
    check_order(order);
    if (!(m > 0.0)) throw DomainError("Taylor scale m must be positive");
    if (m < 0.5 * f_max) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Taylor scale m=" << m << " is below f_max/2=" << 0.5 * f_max << " (outside convergence radius)";
        throw DomainError(msg.str());
    }
    if (order > table.max_order())
        throw std::out_of_range("power integral table stops at a=" + std::to_string(table.max_order()));

    // m * B_{a+1} = (-1)^{a+1} int f^{a+1} / m^a
    double series = 0.0;
    for (int a = 1; a <= order - 1; ++a) {
        const double sign = (a % 2 == 0) ? -1.0 : 1.0;
        const double m_b_next = sign * scaled_power(table, a + 1, m);
        series += m_b_next / a * static_cast<double>(binomial(order - 1, a));
    }

    EntropyEstimate est;
    est.method = Method::taylor;
    est.value = -std::log(m) + harmonic_number(order - 1) - series;
    est.order = order;
    est.m = m;
    est.certified_lower_bound = m >= f_max;
    return est;
}

EntropyEstimate taylor_entropy(const GaussianMixture& mix, const PowerIntegralTable& table,
                               const TaylorParams& params, const ModeResult& mode) {
    const double m = resolve_scale(mix, params, mode.f_max);
    auto est = taylor_entropy_at_scale(table, params.order, m, mode.f_max);
    if (params.policy == ScalePolicy::beta_times_fmax) est.beta = params.beta;
    return est;
}

std::vector<TaylorSweepRow> taylor_sweep(const GaussianMixture& mix, const PowerIntegralTable& table,
                                         const ModeResult& mode, const std::vector<int>& orders,
                                         const std::vector<double>& betas) {
    for (double beta : betas)
        if (!(beta >= 0.5)) throw DomainError("Taylor beta must be >= 1/2");
    const auto count = static_cast<std::ptrdiff_t>(orders.size() * betas.size());
    std::vector<TaylorSweepRow> rows(static_cast<std::size_t>(count));
    std::vector<std::string> failures(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const double beta = betas[idx / orders.size()];
        const int order = orders[idx % orders.size()];
        try {
            TaylorParams params{order, ScalePolicy::beta_times_fmax, beta};
            rows[idx] = TaylorSweepRow{order, beta, taylor_entropy(mix, table, params, mode)};
        } catch (const std::exception& e) {
            failures[idx] = e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw DomainError(f);
    return rows;
}

}  // namespace gmentropy
