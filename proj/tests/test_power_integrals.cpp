#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <omp.h>

#include "gmentropy/errors.hpp"
#include "gmentropy/power_integrals.hpp"
#include "gmentropy/presets.hpp"
#include "gmentropy/reference.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gmentropy;
using namespace gmentropy::testing;

namespace {

double integrate_real_line(const std::function<double(double)>& f) {
    boost::math::quadrature::sinh_sinh<double> integrator;
    return integrator.integrate(f);
}

/// Compositions by brute-force recursion, as a count oracle.
std::uint64_t brute_force_count(int q, int a) {
    if (q == 1) return 1;
    std::uint64_t total = 0;
    for (int first = 0; first <= a; ++first) total += brute_force_count(q - 1, a - first);
    return total;
}

std::vector<std::vector<int>> collect(CompositionStream stream) {
    std::vector<std::vector<int>> out;
    while (stream.next()) out.push_back(stream.current().t);
    return out;
}

}  // namespace

TEST_CASE("enumerate_compositions small cases") {
    CHECK(collect(CompositionStream(2, 2)) == std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}});
    CHECK(collect(CompositionStream(3, 1)) == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    CHECK(collect(CompositionStream(1, 4)) == std::vector<std::vector<int>>{{4}});
    CHECK(composition_count(5, 8) == 495);
    CHECK(brute_force_count(5, 8) == 495);
}

TEST_CASE("compositions are unique, lexicographic and complete") {
    for (int q = 1; q <= 5; ++q) {
        for (int a = 1; a <= 8; ++a) {
            const auto all = collect(CompositionStream(q, a));
            CHECK(all.size() == brute_force_count(q, a));
            CHECK(all.size() == composition_count(q, a));
            CHECK(std::is_sorted(all.begin(), all.end()));
            CHECK(std::set<std::vector<int>>(all.begin(), all.end()).size() == all.size());
            for (const auto& t : all) {
                CHECK(std::accumulate(t.begin(), t.end(), 0) == a);
                CHECK(*std::min_element(t.begin(), t.end()) >= 0);
            }
            std::vector<std::vector<int>> pieces;
            for (int first = 0; first <= a; ++first) {
                auto part = collect(CompositionStream::with_first(q, a, first));
                for (const auto& t : part) CHECK(t[0] == first);
                pieces.insert(pieces.end(), part.begin(), part.end());
            }
            CHECK(pieces == all);
        }
    }
}

TEST_CASE("composition count guard") {
    CHECK_THROWS_AS(composition_count(20, 40), ResourceLimitError);
    CHECK_THROWS_AS(CompositionStream(30, 30), ResourceLimitError);
    CHECK_THROWS_AS(CompositionStream(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(CompositionStream(2, 0), std::invalid_argument);
}

TEST_CASE("product integral closed form against 1-D quadrature") {
    const auto g = standard_normal();
    const auto self = log_product_integral(g, Composition{{2}, 2});
    const double quad_sq = integrate_real_line([](double x) { return std::exp(-x * x) / (2.0 * std::numbers::pi); });
    CHECK(std::exp(self.log_D) == doctest::Approx(quad_sq).epsilon(1e-12));
    CHECK(std::exp(self.log_D) == doctest::Approx(0.28209479177387814).epsilon(1e-14));

    const auto pair = one_dim({0.5, 0.5}, {0.0, 2.0}, {1.0, 1.0});
    const auto cross = log_product_integral(pair, Composition{{1, 1}, 2});
    const double quad_cross = integrate_real_line([](double x) {
        return std::exp(-0.5 * x * x - 0.5 * (x - 2.0) * (x - 2.0)) / (2.0 * std::numbers::pi);
    });
    CHECK(std::exp(cross.log_D) == doctest::Approx(quad_cross).epsilon(1e-12));
    CHECK(std::exp(cross.log_D) == doctest::Approx(0.10377687435514868).epsilon(1e-12));
}

TEST_CASE("unit compositions integrate to one") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto mix = random_mixture(rng, 3, 1 + trial % 4);
        for (int j = 0; j < 3; ++j) {
            Composition t{{0, 0, 0}, 1};
            t.t[static_cast<std::size_t>(j)] = 1;
            CHECK(std::abs(log_product_integral(mix, t).log_D) < 1e-12);
        }
    }
}

TEST_CASE("combined precision and completed square reproduce the component product") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const int q = 2 + trial % 2;
        const int n = 1 + trial % 3;
        const auto mix = random_mixture(rng, q, n);
        for (int a = 1; a <= 4; ++a) {
            CompositionStream stream(q, a);
            while (stream.next()) {
                const auto& t = stream.current();
                const auto moment = log_product_integral(mix, t);

                Matrix precision = Matrix::Zero(n, n);
                for (int j = 0; j < q; ++j)
                    precision += t.t[static_cast<std::size_t>(j)] * mix.component(j).covariance().inverse();
                CHECK((moment.precision - precision).norm() <= 1e-10 * precision.norm());

                const Matrix cov = moment.precision.inverse();
                for (int k = 0; k < 20; ++k) {
                    Vector x(n);
                    for (int i = 0; i < n; ++i) x[i] = 1.5 * normal(rng);
                    double product = 1.0;
                    for (int j = 0; j < q; ++j)
                        product *= std::pow(std::exp(mix.component(j).log_density(x)), t.t[static_cast<std::size_t>(j)]);
                    const Vector d = x - moment.mean;
                    const double gaussian = std::exp(-0.5 * d.dot(moment.precision * d)) /
                                            std::sqrt(std::pow(2.0 * std::numbers::pi, n) * cov.determinant());
                    CHECK(close_rel(std::exp(moment.log_D) * gaussian, product, 1e-9));
                }
            }
        }
    }
}

TEST_CASE("power integral small cases") {
    for (const auto& name : preset_names()) CHECK(power_integral(preset(name), 1) == doctest::Approx(1.0).epsilon(1e-12));

    const auto pair = one_dim({0.5, 0.5}, {-1.0, 1.0}, {1.0, 1.0});
    const double quad = integrate_real_line([&](double x) {
        const double f = std::exp(log_density(pair, Vector::Constant(1, x)));
        return f * f;
    });
    CHECK(power_integral(pair, 2) == doctest::Approx(quad).epsilon(1e-12));
    CHECK(power_integral(pair, 2) == doctest::Approx(0.25 * (2 * 0.28209479177387814 + 2 * 0.10377687435514868)).epsilon(1e-12));
}

TEST_CASE("power integral matches tensor-grid quadrature on 2-D presets") {
    for (const char* name : {"table1_row1", "table1_row2"}) {
        const auto mix = preset(name);
        const auto quad = quadrature_power_integrals(mix, 5);
        for (int a = 2; a <= 5; ++a) {
            INFO(name << " a=" << a);
            CHECK(close_rel(power_integral(mix, a), quad[static_cast<std::size_t>(a - 1)], 1e-6));
        }
    }
}

TEST_CASE("power integral invariances") {
    std::mt19937_64 rng(23);
    for (const auto& name : preset_names()) {
        const auto mix = preset(name);
        const int n = mix.dimension();
        std::vector<int> perm(static_cast<std::size_t>(mix.size()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto shuffled = permuted(mix, perm);
        const auto shifted = translated(mix, Vector::LinSpaced(n, -2.0, 3.0));
        const auto doubled = scaled(mix, 2.0);
        for (int a = 2; a <= 5; ++a) {
            INFO(name << " a=" << a);
            const double base = power_integral(mix, a);
            CHECK(close_rel(power_integral(shuffled, a), base, 1e-12));
            CHECK(close_rel(power_integral(shifted, a), base, 1e-10));
            if (a <= 3) CHECK(close_rel(power_integral(doubled, a), base * std::pow(2.0, -n * (a - 1)), 1e-9));
        }
    }
}

TEST_CASE("parallel power integral agrees with the serial reference") {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    for (const auto& name : preset_names()) {
        const auto mix = preset(name);
        for (int a = 1; a <= 8; ++a)
            CHECK(close_rel(log_power_integral(mix, a), reference::log_power_integral(mix, a), 1e-13));
    }
    omp_set_num_threads(saved);
}

TEST_CASE("linear and compensated accumulation agree with log space at moderate order") {
    for (const auto& name : preset_names()) {
        const auto mix = preset(name);
        for (int a = 1; a <= 6; ++a) {
            const double base = power_integral(mix, a);
            CHECK(close_rel(power_integral(mix, a, Arithmetic::linear), base, 1e-11));
            CHECK(close_rel(power_integral(mix, a, Arithmetic::linear_kahan), base, 1e-11));
        }
    }
}

TEST_CASE("build_table") {
    const auto table = build_table(standard_normal(), 3);
    CHECK(table.max_order() == 3);
    CHECK(table.at(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(table.at(2) == doctest::Approx(0.28209479177387814).epsilon(1e-13));
    CHECK(table.at(3) == doctest::Approx(1.0 / (2.0 * std::numbers::pi * std::sqrt(3.0))).epsilon(1e-13));
    for (int a = 1; a <= 8; ++a) {
        const double closed = std::pow(a, -0.5) * std::pow(2.0 * std::numbers::pi, -0.5 * (a - 1));
        CHECK(build_table(standard_normal(), 8).at(a) == doctest::Approx(closed).epsilon(1e-12));
    }
    CHECK_THROWS_AS(table.at(0), std::out_of_range);
    CHECK_THROWS_AS(table.at(4), std::out_of_range);
    CHECK_THROWS_AS(build_table(standard_normal(), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_table(standard_normal(), 17), std::invalid_argument);
}

TEST_CASE("table entries decrease by at most a factor f_max") {
    for (const auto& name : preset_names()) {
        const auto mix = preset(name);
        const auto table = build_table(mix, 12);
        const double f_max = find_f_max(mix).f_max;
        CHECK(table.at(1) == doctest::Approx(1.0).epsilon(1e-12));
        for (int a = 1; a < 12; ++a) {
            CHECK(table.at(a + 1) > 0.0);
            CHECK(table.at(a + 1) < table.at(a) * f_max);
        }
        std::vector<int> perm(static_cast<std::size_t>(mix.size()));
        std::iota(perm.rbegin(), perm.rend(), 0);
        const auto reversed = build_table(permuted(mix, perm), 12);
        for (int a = 1; a <= 12; ++a) CHECK(close_rel(reversed.at(a), table.at(a), 1e-12));
    }
}
