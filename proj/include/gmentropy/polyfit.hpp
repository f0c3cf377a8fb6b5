#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gmentropy/estimate.hpp"
#include "gmentropy/mixture.hpp"
#include "gmentropy/power_integrals.hpp"

namespace gmentropy {

inline constexpr int kMaxPolyfitOrder = 12;

/// Least-squares fit of -s ln s on (0, b] with weight s^r by a degree-C
/// polynomial without constant term.
struct PolyfitParams {
    int order = 5;
    double r = -2.0;
    double b = 1.0;
};

/// The b-independent normal equations M d = z with
///   M_ij = 1 / (i + j + r + 1),  z_i = 1 / (i + r + 2)^2,  i, j = 1..C.
/// M and z are rounded copies for inspection; d is the correctly rounded
/// solution of the exact (or 50-digit) system.
struct RescaledSystem {
    Matrix M;
    Vector z;
    Vector d;
    SolveMode solve_mode = SolveMode::exact_rational;
    /// ||M||_1 ||M^{-1}||_1 from the high-precision inverse.
    double condition_estimate = 0.0;
    /// ||M d - z||_inf evaluated in the solve arithmetic (0 when exact).
    double residual_inf = 0.0;
};

/// (num, den) with den <= 64 when r is the double nearest to num/den.
std::optional<std::pair<long long, long long>> small_rational(double r);

/// Solves exactly in rationals when small_rational(r) succeeds, otherwise with
/// 50 significant digits; `mode` forces one path. Throws DomainError unless
/// r > -3 and 1 <= C <= 12, or if exact mode is forced for an r that is not
/// a small rational.
RescaledSystem build_rescaled_system(int order, double r, std::optional<SolveMode> mode = std::nullopt);

struct PolyCoefficients {
    std::vector<double> c;  ///< c[a-1] multiplies s^a
    PolyfitParams params;
    SolveMode solve_mode = SolveMode::exact_rational;
    double condition_estimate = 0.0;
};

/// c_1 = d_1 - ln b, c_a = b^{1-a} d_a.
PolyCoefficients fit_coefficients(const PolyfitParams& params);

/// sum_a c_a s^a at each s. Throws DomainError for s outside (0, b].
std::vector<double> eval_fit_curve(const PolyfitParams& params, const std::vector<double>& s_grid);

/// sum_a c_a int f^a dx with b = mode.f_max. Throws DomainError if the fit
/// interval ends below the density at some component mean.
EntropyEstimate polyfit_entropy(const GaussianMixture& mix, const PowerIntegralTable& table, int order, double r,
                                const ModeResult& mode);

/// Same with an explicit b (must be >= max_j f(w_j)).
EntropyEstimate polyfit_entropy(const GaussianMixture& mix, const PowerIntegralTable& table,
                                const PolyfitParams& params);

struct PolyfitSweepRow {
    int order;
    double r;
    EntropyEstimate estimate;
};

/// Grid over (r, C), r outer, sharing one table and one mode result.
std::vector<PolyfitSweepRow> polyfit_sweep(const GaussianMixture& mix, const PowerIntegralTable& table,
                                           const ModeResult& mode, const std::vector<int>& orders,
                                           const std::vector<double>& rs);

}  // namespace gmentropy
