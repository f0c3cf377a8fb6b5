#include "gmentropy/polyfit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "gmentropy/errors.hpp"

namespace gmentropy {

namespace mp = boost::multiprecision;

namespace {

using Rational = mp::cpp_rational;
using Extended = mp::cpp_bin_float_50;

template <typename T>
using Table = std::vector<std::vector<T>>;

template <typename T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

/// Gauss-Jordan inverse with partial pivoting.
template <typename T>
Table<T> invert(Table<T> a) {
    const std::size_t n = a.size();
    Table<T> inv(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = T(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (abs_value(a[row][col]) > abs_value(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0) throw InternalError("rescaled normal matrix is singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const T scale = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= scale;
            inv[col][k] /= scale;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const T factor = a[row][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
                inv[row][k] -= factor * inv[col][k];
            }
        }
    }
    return inv;
}

template <typename T>
T one_norm(const Table<T>& a) {
    T best(0);
    for (std::size_t col = 0; col < a.size(); ++col) {
        T sum(0);
        for (const auto& row : a) sum += abs_value(row[col]);
        if (sum > best) best = sum;
    }
    return best;
}

template <typename T>
void solve_into(const Table<T>& m, const std::vector<T>& z, RescaledSystem& out) {
    const std::size_t n = z.size();
    const Table<T> inv = invert(m);
    std::vector<T> d(n, T(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i] += inv[i][j] * z[j];

    T residual(0);
    for (std::size_t i = 0; i < n; ++i) {
        T row(-z[i]);
        for (std::size_t j = 0; j < n; ++j) row += m[i][j] * d[j];
        if (abs_value(row) > residual) residual = abs_value(row);
    }

    out.M.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    out.z.resize(static_cast<Eigen::Index>(n));
    out.d.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        out.z[ii] = static_cast<double>(z[i]);
        out.d[ii] = static_cast<double>(d[i]);
        for (std::size_t j = 0; j < n; ++j) out.M(ii, static_cast<Eigen::Index>(j)) = static_cast<double>(m[i][j]);
    }
    out.condition_estimate = static_cast<double>(one_norm(m) * one_norm(inv));
    out.residual_inf = static_cast<double>(residual);
}

void check_params(int order, double r) {
    if (!(r > -3.0) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << "weight exponent r must exceed -3, got " << r;
        throw DomainError(msg.str());
    }
    if (order < 1 || order > kMaxPolyfitOrder)
        throw DomainError("Polyfit order must lie in 1.." + std::to_string(kMaxPolyfitOrder) + ", got " +
                          std::to_string(order));
}

}  // namespace

std::optional<std::pair<long long, long long>> small_rational(double r) {
    for (long long den = 1; den <= 64; ++den) {
        const double scaled = r * static_cast<double>(den);
        if (std::abs(scaled) > 1e15) return std::nullopt;
        if (scaled == std::nearbyint(scaled) && scaled / static_cast<double>(den) == r)
            return std::make_pair(static_cast<long long>(scaled), den);
    }
    return std::nullopt;
}

RescaledSystem build_rescaled_system(int order, double r, std::optional<SolveMode> mode) {
    check_params(order, r);
    const auto n = static_cast<std::size_t>(order);
    RescaledSystem out;

    const auto ratio = small_rational(r);
    if (mode == SolveMode::exact_rational && !ratio)
        throw DomainError("exact solve needs r = num/den with den <= 64");
    const bool exact = mode ? *mode == SolveMode::exact_rational : ratio.has_value();
    if (exact) {
        const Rational rr(ratio->first, ratio->second);
        Table<Rational> m(n, std::vector<Rational>(n));
        std::vector<Rational> z(n);
        for (std::size_t i = 1; i <= n; ++i) {
            const Rational zi_den = Rational(static_cast<long long>(i) + 2) + rr;
            z[i - 1] = Rational(1) / (zi_den * zi_den);
            for (std::size_t j = 1; j <= n; ++j)
                m[i - 1][j - 1] = Rational(1) / (Rational(static_cast<long long>(i + j) + 1) + rr);
        }
        out.solve_mode = SolveMode::exact_rational;
        solve_into(m, z, out);
    } else {
        const Extended rr(r);
        Table<Extended> m(n, std::vector<Extended>(n));
        std::vector<Extended> z(n);
        for (std::size_t i = 1; i <= n; ++i) {
            const Extended zi_den = Extended(static_cast<long long>(i) + 2) + rr;
            z[i - 1] = Extended(1) / (zi_den * zi_den);
            for (std::size_t j = 1; j <= n; ++j)
                m[i - 1][j - 1] = Extended(1) / (Extended(static_cast<long long>(i + j) + 1) + rr);
        }
        out.solve_mode = SolveMode::extended_precision;
        solve_into(m, z, out);
    }
    return out;
}

PolyCoefficients fit_coefficients(const PolyfitParams& params) {
    if (!(params.b > 0.0) || !std::isfinite(params.b)) throw DomainError("fit interval end b must be positive");
    const auto system = build_rescaled_system(params.order, params.r);
    PolyCoefficients out;
    out.params = params;
    out.solve_mode = system.solve_mode;
    out.condition_estimate = system.condition_estimate;
    const double log_b = std::log(params.b);
    out.c.push_back(system.d[0] - log_b);
    for (int a = 2; a <= params.order; ++a) out.c.push_back(std::exp((1 - a) * log_b) * system.d[a - 1]);
    return out;
}

std::vector<double> eval_fit_curve(const PolyfitParams& params, const std::vector<double>& s_grid) {
    const auto coeffs = fit_coefficients(params);
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s > 0.0 && s <= params.b)) {
            std::ostringstream msg;
            msg << "fit curve evaluated at s=" << s << " outside (0, " << params.b << "]";
            throw DomainError(msg.str());
        }
        double acc = 0.0;
        for (auto it = coeffs.c.rbegin(); it != coeffs.c.rend(); ++it) acc = (acc + *it) * s;
        out.push_back(acc);
    }
    return out;
}

EntropyEstimate polyfit_entropy(const GaussianMixture& mix, const PowerIntegralTable& table,
                                const PolyfitParams& params) {
    const double floor = max_density_at_means(mix);
    if (params.b < floor * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "fit interval end b=" << params.b << " is below the density " << floor << " at a component mean";
        throw DomainError(msg.str());
    }
    if (params.order > table.max_order())
        throw std::out_of_range("power integral table stops at a=" + std::to_string(table.max_order()));
    const auto system = build_rescaled_system(params.order, params.r);

    // sum_a c_a int f^a with c_a = b^{1-a} d_a, each power ratio formed in logs.
    const double log_b = std::log(params.b);
    double value = -log_b;
    for (int a = 1; a <= params.order; ++a)
        value += system.d[a - 1] * std::exp(std::log(table.at(a)) - (a - 1) * log_b);

    EntropyEstimate est;
    est.method = Method::polyfit;
    est.value = value;
    est.order = params.order;
    est.r = params.r;
    est.b = params.b;
    est.solve_mode = system.solve_mode;
    est.condition_estimate = system.condition_estimate;
    return est;
}

EntropyEstimate polyfit_entropy(const GaussianMixture& mix, const PowerIntegralTable& table, int order, double r,
                                const ModeResult& mode) {
    return polyfit_entropy(mix, table, PolyfitParams{order, r, mode.f_max});
}

std::vector<PolyfitSweepRow> polyfit_sweep(const GaussianMixture& mix, const PowerIntegralTable& table,
                                           const ModeResult& mode, const std::vector<int>& orders,
                                           const std::vector<double>& rs) {
    for (double r : rs) check_params(1, r);
    const auto count = static_cast<std::ptrdiff_t>(orders.size() * rs.size());
    std::vector<PolyfitSweepRow> rows(static_cast<std::size_t>(count));
    std::vector<std::string> failures(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const double r = rs[idx / orders.size()];
        const int order = orders[idx % orders.size()];
        try {
            rows[idx] = PolyfitSweepRow{order, r, polyfit_entropy(mix, table, order, r, mode)};
        } catch (const std::exception& e) {
            failures[idx] = e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw DomainError(f);
    return rows;
}

}  // namespace gmentropy
