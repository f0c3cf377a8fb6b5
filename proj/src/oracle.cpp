#include "gmentropy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gmentropy/errors.hpp"

namespace gmentropy {

namespace {

struct Welford {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Welford& other) {
        if (other.count == 0) return;
        const auto total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
        m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) /
                             static_cast<double>(total);
        count = total;
    }
};

constexpr double kLogFloor = -700.0;

}  // namespace

EntropyEstimate mc_entropy(const GaussianMixture& mix, std::int64_t sample_count, std::uint64_t seed) {
    if (sample_count < 1000) throw std::invalid_argument("Monte Carlo oracle needs N >= 1000");
    const int n = mix.dimension();
    const std::int64_t blocks = (sample_count + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<Welford> partials(static_cast<std::size_t>(blocks));

#pragma omp parallel
    {
        Vector x(n);
        Vector scratch(n);
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t block = 0; block < blocks; ++block) {
            Welford acc;
            const std::int64_t end = std::min(sample_count, (block + 1) * kMcBlockSize);
            for (std::int64_t i = block * kMcBlockSize; i < end; ++i) {
                draw_sample(mix, seed, static_cast<std::uint64_t>(i), x);
                acc.add(-log_density(mix, x, scratch));
            }
            partials[static_cast<std::size_t>(block)] = acc;
        }
    }

    Welford total;
    for (const auto& p : partials) total.merge(p);

    EntropyEstimate est;
    est.method = Method::mc;
    est.value = total.mean;
    est.std_error = std::sqrt(total.m2 / static_cast<double>(total.count - 1) / static_cast<double>(total.count));
    est.sample_count = sample_count;
    return est;
}

GridBox grid_box(const GaussianMixture& mix, double half_width_sigmas) {
    const int n = mix.dimension();
    double lambda_max = 0.0;
    for (const auto& comp : mix.components()) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(comp.covariance(), Eigen::EigenvaluesOnly);
        lambda_max = std::max(lambda_max, eig.eigenvalues().maxCoeff());
    }
    const double half = half_width_sigmas * std::sqrt(lambda_max);
    GridBox box{Vector::Constant(n, std::numeric_limits<double>::infinity()),
                Vector::Constant(n, -std::numeric_limits<double>::infinity())};
    for (const auto& comp : mix.components()) {
        box.lower = box.lower.cwiseMin(comp.mean());
        box.upper = box.upper.cwiseMax(comp.mean());
    }
    box.lower.array() -= half;
    box.upper.array() += half;
    return box;
}

std::vector<double> simpson_weights(int nodes, double step) {
    if (nodes < 3 || nodes % 2 == 0) throw std::invalid_argument("Simpson rule needs an odd node count >= 3");
    std::vector<double> w(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        const double k = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[static_cast<std::size_t>(i)] = k * step / 3.0;
    }
    return w;
}

EntropyEstimate grid_entropy(const GaussianMixture& mix, const GridSpec& spec) {
    const int n = mix.dimension();
    if (n > 2)
        throw UnsupportedDimensionError("grid oracle supports n <= 2, mixture has n = " + std::to_string(n));
    const int nodes = spec.nodes_per_axis;
    const GridBox box = grid_box(mix, spec.half_width_sigmas);
    std::vector<std::vector<double>> axes, weights;
    for (int d = 0; d < n; ++d) {
        const double step = (box.upper[d] - box.lower[d]) / (nodes - 1);
        weights.push_back(simpson_weights(nodes, step));
        std::vector<double> axis(static_cast<std::size_t>(nodes));
        for (int i = 0; i < nodes; ++i) axis[static_cast<std::size_t>(i)] = box.lower[d] + i * step;
        axes.push_back(std::move(axis));
    }

    const int rows = n == 1 ? 1 : nodes;
    std::vector<double> row_entropy(static_cast<std::size_t>(rows), 0.0);
    std::vector<double> row_mass(static_cast<std::size_t>(rows), 0.0);
#pragma omp parallel
    {
        Vector x(n);
        Vector scratch(n);
#pragma omp for schedule(static)
        for (int i = 0; i < rows; ++i) {
            double h = 0.0;
            double mass = 0.0;
            const double outer = n == 1 ? 1.0 : weights[0][static_cast<std::size_t>(i)];
            if (n == 2) x[0] = axes[0][static_cast<std::size_t>(i)];
            for (int k = 0; k < nodes; ++k) {
                const auto kk = static_cast<std::size_t>(k);
                x[n - 1] = axes[static_cast<std::size_t>(n - 1)][kk];
                const double log_f = log_density(mix, x, scratch);
                if (log_f < kLogFloor) continue;
                const double f = std::exp(log_f);
                const double w = weights[static_cast<std::size_t>(n - 1)][kk];
                h -= w * f * log_f;
                mass += w * f;
            }
            row_entropy[static_cast<std::size_t>(i)] = outer * h;
            row_mass[static_cast<std::size_t>(i)] = outer * mass;
        }
    }

    EntropyEstimate est;
    est.method = Method::grid;
    est.value = 0.0;
    double mass = 0.0;
    for (int i = 0; i < rows; ++i) {
        est.value += row_entropy[static_cast<std::size_t>(i)];
        mass += row_mass[static_cast<std::size_t>(i)];
    }
    est.grid_mass = mass;
    est.grid_nodes_per_axis = nodes;
    return est;
}

}  // namespace gmentropy
