#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "gmentropy/bounds.hpp"
#include "gmentropy/errors.hpp"
#include "gmentropy/presets.hpp"
#include "gmentropy/taylor.hpp"
#include "support/oracles.hpp"

using namespace gmentropy;
using namespace gmentropy::testing;
using Rational = boost::multiprecision::cpp_rational;

namespace {

const double kGaussEntropy = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);

/// Coefficients of sum_{k=1}^{C-1} (1/k) f (1-f)^k collected in powers of f.
std::vector<Rational> expanded_series(int order) {
    std::vector<Rational> coeff(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int k = 1; k <= order - 1; ++k) {
        // f (1-f)^k = sum_i binom(k, i) (-1)^i f^{i+1}
        Rational binom(1);
        for (int i = 0; i <= k; ++i) {
            if (i > 0) binom = binom * (k - i + 1) / i;
            coeff[static_cast<std::size_t>(i + 1)] += (i % 2 ? -1 : 1) * binom / k;
        }
    }
    return coeff;
}

/// Independent evaluation: int f (-ln m + sum_{k<C} (1/k)(1 - f/m)^k) dx.
double truncated_series_quadrature(const GaussianMixture& mix, int order, double m) {
    boost::math::quadrature::sinh_sinh<double> integrator;
    const double series = integrator.integrate([&](double x) {
        const double f = naive_density(mix, Vector::Constant(1, x));
        const double z = 1.0 - f / m;
        double s = 0.0;
        double zk = 1.0;
        for (int k = 1; k < order; ++k) {
            zk *= z;
            s += zk / k;
        }
        return f * s;
    });
    return -std::log(m) + series;
}

}  // namespace

TEST_CASE("harmonic numbers and binomials") {
    CHECK(harmonic_number(0) == 0.0);
    CHECK(harmonic_number(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    CHECK(binomial(11, 5) == 462);
    CHECK(binomial(30, 15) == 155117520ULL);
    CHECK(binomial(62, 31) == 465428353255261088ULL);
}

TEST_CASE("taylor_coefficients examples") {
    CHECK(taylor_coefficients(4, 0.3).c[0] == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    const auto c3 = taylor_coefficients(3, 1.0).c;
    REQUIRE(c3.size() == 3);
    CHECK(c3[0] == doctest::Approx(1.5));
    CHECK(c3[1] == doctest::Approx(-2.0));
    CHECK(c3[2] == doctest::Approx(0.5));
    const auto c1 = taylor_coefficients(1, 2.0);
    CHECK(c1.c == std::vector<double>{0.0});
    CHECK_THROWS_AS(taylor_coefficients(0, 1.0), DomainError);
    CHECK_THROWS_AS(taylor_coefficients(31, 1.0), DomainError);
    CHECK_THROWS_AS(taylor_coefficients(3, 0.0), DomainError);
}

TEST_CASE("taylor coefficients equal the re-expanded truncated series") {
    for (int order = 1; order <= 6; ++order) {
        const auto expected = expanded_series(order);
        const auto c = taylor_coefficients(order, 1.0).c;
        for (int a = 1; a <= order; ++a) {
            // closed form, in exact arithmetic
            Rational closed = a == 1 ? Rational(0) : Rational(a % 2 ? 1 : -1) / (a - 1) * binomial(order - 1, a - 1);
            if (a == 1)
                for (int k = 1; k < order; ++k) closed += Rational(1, k);
            CHECK(closed == expected[static_cast<std::size_t>(a)]);
            CHECK(c[static_cast<std::size_t>(a - 1)] ==
                  doctest::Approx(static_cast<double>(expected[static_cast<std::size_t>(a)])).epsilon(1e-15));
            if (a >= 2) CHECK((c[static_cast<std::size_t>(a - 1)] > 0) == (a % 2 == 1));
        }
    }
}

TEST_CASE("B terms follow their definition") {
    const auto table = build_table(preset("table1_row1"), 6);
    const double m = 0.2;
    const auto coeffs = taylor_coefficients(6, m, table);
    for (int a = 1; a <= 6; ++a)
        CHECK(coeffs.B[static_cast<std::size_t>(a - 1)] ==
              doctest::Approx(std::pow(-1.0, a) / std::pow(m, a) * table.at(a)).epsilon(1e-13));
}

TEST_CASE("standard normal hand values") {
    const auto g = standard_normal();
    const auto table = build_table(g, 12);
    const double f_max = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    const auto c2 = taylor_entropy_at_scale(table, 2, f_max, f_max);
    const double hand = std::log(std::sqrt(2.0 * std::numbers::pi)) + 1.0 -
                        std::sqrt(2.0 * std::numbers::pi) * 0.28209479177387814;
    CHECK(c2.value == doctest::Approx(hand).epsilon(1e-14));
    CHECK(c2.value == doctest::Approx(1.2118).epsilon(1e-4));
    CHECK(*c2.certified_lower_bound);

    const auto c1 = taylor_entropy_at_scale(table, 1, f_max, f_max);
    CHECK(c1.value == doctest::Approx(-std::log(f_max)).epsilon(1e-15));

    for (int order = 1; order <= 12; ++order)
        CHECK(taylor_entropy_at_scale(table, order, f_max, f_max).value <= kGaussEntropy);
}

TEST_CASE("closed form agrees with quadrature of the truncated series") {
    for (const auto& mix : {standard_normal(), one_dim({0.5, 0.5}, {-1.0, 1.0}, {1.0, 1.0}),
                            one_dim({0.2, 0.8}, {-2.0, 1.5}, {0.5, 2.0})}) {
        const auto table = build_table(mix, 10);
        const double f_max = find_f_max(mix).f_max;
        for (double beta : {0.5, 1.0, 1.7}) {
            for (int order = 1; order <= 10; ++order) {
                const double m = beta * f_max;
                const auto est = taylor_entropy_at_scale(table, order, m, f_max);
                CHECK(est.value == doctest::Approx(truncated_series_quadrature(mix, order, m)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("scale policies and certification") {
    const auto mix = preset("table1_row2");
    const auto table = build_table(mix, 6);
    const auto mode = find_f_max(mix);

    const auto full = taylor_entropy(mix, table, {5, ScalePolicy::beta_times_fmax, 1.0}, mode);
    CHECK(*full.m == doctest::Approx(mode.f_max * (1 + 1e-9)).epsilon(1e-15));
    CHECK(*full.m > mode.f_max);
    CHECK(*full.certified_lower_bound);
    CHECK(*full.beta == 1.0);

    const auto half = taylor_entropy(mix, table, {5, ScalePolicy::beta_times_fmax, 0.5}, mode);
    CHECK(*half.m == 0.5 * mode.f_max);
    CHECK_FALSE(*half.certified_lower_bound);

    const auto peaks = taylor_entropy(mix, table, {5, ScalePolicy::sum_of_peaks, 1.0}, mode);
    CHECK(*peaks.m == doctest::Approx(sum_of_peaks(mix)));
    CHECK(*peaks.m >= mode.f_max);
    CHECK(*peaks.certified_lower_bound);
    CHECK_FALSE(peaks.beta.has_value());
}

TEST_CASE("taylor domain errors") {
    const auto mix = preset("table1_row1");
    const auto table = build_table(mix, 4);
    const auto mode = find_f_max(mix);
    CHECK_THROWS_AS(taylor_entropy_at_scale(table, 3, 0.49 * mode.f_max, mode.f_max), DomainError);
    CHECK_NOTHROW(taylor_entropy_at_scale(table, 3, 0.5 * mode.f_max, mode.f_max));
    CHECK_THROWS_AS(taylor_entropy(mix, table, {3, ScalePolicy::beta_times_fmax, 0.4}, mode), DomainError);
    CHECK_THROWS_AS(taylor_entropy(mix, table, {5, ScalePolicy::beta_times_fmax, 1.0}, mode), std::out_of_range);
}

TEST_CASE("taylor estimate is nondecreasing in C at m = f_max") {
    for (const auto& name : preset_names()) {
        const auto mix = preset(name);
        const auto table = build_table(mix, 12);
        const auto mode = find_f_max(mix);
        double previous = -1e300;
        for (int order = 1; order <= 12; ++order) {
            const double h = taylor_entropy(mix, table, {order, ScalePolicy::beta_times_fmax, 1.0}, mode).value;
            INFO(name << " C=" << order);
            CHECK(h >= previous - 1e-9);
            CHECK(h <= component_upper_bound(mix));
            previous = h;
        }
    }
}

TEST_CASE("taylor estimate is invariant under component permutation") {
    const auto mix = preset("table1_row5");
    std::vector<int> perm{4, 2, 0, 3, 1};
    const auto other = permuted(mix, perm);
    const auto t1 = build_table(mix, 8);
    const auto t2 = build_table(other, 8);
    const auto m1 = find_f_max(mix);
    const auto m2 = find_f_max(other);
    for (int order = 1; order <= 8; ++order) {
        const TaylorParams params{order, ScalePolicy::beta_times_fmax, 1.0};
        CHECK(close_rel(taylor_entropy(mix, t1, params, m1).value, taylor_entropy(other, t2, params, m2).value,
                        1e-12));
    }
}

TEST_CASE("taylor_sweep order and content") {
    const auto mix = preset("table1_row2");
    const auto table = build_table(mix, 12);
    const auto mode = find_f_max(mix);
    std::vector<int> orders(12);
    std::iota(orders.begin(), orders.end(), 1);
    const auto rows = taylor_sweep(mix, table, mode, orders, {0.5, 1.0});
    REQUIRE(rows.size() == 24);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].beta == (k < 12 ? 0.5 : 1.0));
        CHECK(rows[k].order == orders[k % 12]);
        const TaylorParams params{rows[k].order, ScalePolicy::beta_times_fmax, rows[k].beta};
        CHECK(rows[k].estimate.value == taylor_entropy(mix, table, params, mode).value);
    }
    for (std::size_t k = 13; k < 24; ++k) CHECK(rows[k].estimate.value >= rows[k - 1].estimate.value - 1e-9);
    CHECK_THROWS_AS(taylor_sweep(mix, table, mode, orders, {0.25}), DomainError);
}
