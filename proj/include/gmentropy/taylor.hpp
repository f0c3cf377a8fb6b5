#pragma once

#include <cstdint>
#include <vector>

#include "gmentropy/estimate.hpp"
#include "gmentropy/mixture.hpp"
#include "gmentropy/power_integrals.hpp"

namespace gmentropy {

/// How the Taylor expansion scale m is chosen.
enum class ScalePolicy {
    beta_times_fmax,  ///< m = beta * f_max, beta >= 1/2
    sum_of_peaks,     ///< m = sum_j p_j g_j(w_j), always >= f_max
};

struct TaylorParams {
    int order = 5;
    ScalePolicy policy = ScalePolicy::beta_times_fmax;
    double beta = 1.0;
};

/// Polynomial coefficients of the truncated series, plus the per-order B terms
/// when evaluated against a power-integral table.
struct TaylorCoefficients {
    std::vector<double> c;  ///< c[a-1] multiplies int f^a
    std::vector<double> B;  ///< B[a-1] = (-1)^a / m^a * int f^a; empty if no table
    double harmonic = 0.0;  ///< H_{C-1}
};

/// binom(n, k) in exact 64-bit arithmetic; n <= 62.
std::uint64_t binomial(int n, int k);

/// H_k = sum_{i=1}^k 1/i, H_0 = 0.
double harmonic_number(int k);

/// c_1 = H_{C-1}; c_a = (-1)^{a+1} / m^{a-1} / (a-1) * binom(C-1, a-1).
/// Throws DomainError for C outside 1..30 or m <= 0.
TaylorCoefficients taylor_coefficients(int order, double m);

/// Fills B from the table as well.
TaylorCoefficients taylor_coefficients(int order, double m, const PowerIntegralTable& table);

/// Resolves m from the policy. beta == 1 inflates f_max by (1 + 1e-9) so a
/// slightly underestimated mode still yields a certified bound.
double resolve_scale(const GaussianMixture& mix, const TaylorParams& params, double f_max);

/// Truncated-series entropy at an explicit scale m:
///   -ln m + H_{C-1} - m sum_{a=1}^{C-1} B_{a+1}/a binom(C-1, a).
/// Throws DomainError when m < f_max / 2 (outside the convergence radius).
EntropyEstimate taylor_entropy_at_scale(const PowerIntegralTable& table, int order, double m, double f_max);

/// Flags certified_lower_bound when m >= f_max.
EntropyEstimate taylor_entropy(const GaussianMixture& mix, const PowerIntegralTable& table,
                               const TaylorParams& params, const ModeResult& mode);

struct TaylorSweepRow {
    int order;
    double beta;
    EntropyEstimate estimate;
};

/// One estimate per (C, beta) with m = beta * f_max, in sweep order (beta
/// outer, C inner). Rows are computed in parallel.
std::vector<TaylorSweepRow> taylor_sweep(const GaussianMixture& mix, const PowerIntegralTable& table,
                                         const ModeResult& mode, const std::vector<int>& orders,
                                         const std::vector<double>& betas);

}  // namespace gmentropy
