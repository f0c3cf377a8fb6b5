#pragma once

#include <random>
#include <vector>

#include "gmentropy/mixture.hpp"

namespace gmentropy::testing {

/// Random well-conditioned mixture for property tests.
inline GaussianMixture random_mixture(std::mt19937_64& rng, int q, int n) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.2, 1.0);
    std::vector<double> weights;
    double total = 0.0;
    for (int j = 0; j < q; ++j) {
        weights.push_back(pos(rng));
        total += weights.back();
    }
    double partial = 0.0;
    for (int j = 0; j + 1 < q; ++j) {
        weights[static_cast<std::size_t>(j)] /= total;
        partial += weights[static_cast<std::size_t>(j)];
    }
    weights.back() = 1.0 - partial;

    std::vector<GaussianComponent> comps;
    for (int j = 0; j < q; ++j) {
        Vector mean(n);
        Matrix a(n, n);
        for (int i = 0; i < n; ++i) mean[i] = uni(rng);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) a(i, k) = 0.6 * uni(rng);
        Matrix cov = a * a.transpose() + 0.3 * Matrix::Identity(n, n);
        cov = 0.5 * (cov + cov.transpose()).eval();
        comps.emplace_back(mean, cov);
    }
    return GaussianMixture(std::move(weights), std::move(comps));
}

}  // namespace gmentropy::testing
