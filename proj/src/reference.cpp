#include "gmentropy/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "gmentropy/errors.hpp"
#include "gmentropy/log_sum_exp.hpp"
#include "gmentropy/power_integrals.hpp"

namespace gmentropy::reference {

EntropyEstimate mc_entropy(const GaussianMixture& mix, std::int64_t sample_count, std::uint64_t seed) {
    if (sample_count < 1000) throw std::invalid_argument("Monte Carlo oracle needs N >= 1000");
    const int n = mix.dimension();
    Vector x(n);
    Vector scratch(n);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < sample_count; ++i) {
        draw_sample(mix, seed, static_cast<std::uint64_t>(i), x);
        const double v = -log_density(mix, x, scratch);
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    EntropyEstimate est;
    est.method = Method::mc;
    est.value = mean;
    est.std_error = std::sqrt(m2 / static_cast<double>(sample_count - 1) / static_cast<double>(sample_count));
    est.sample_count = sample_count;
    return est;
}

EntropyEstimate grid_entropy(const GaussianMixture& mix, const GridSpec& spec) {
    const int n = mix.dimension();
    if (n > 2)
        throw UnsupportedDimensionError("grid oracle supports n <= 2, mixture has n = " + std::to_string(n));
    const int nodes = spec.nodes_per_axis;
    const GridBox box = grid_box(mix, spec.half_width_sigmas);
    Vector step = (box.upper - box.lower) / (nodes - 1);
    std::vector<std::vector<double>> weights;
    for (int d = 0; d < n; ++d) weights.push_back(simpson_weights(nodes, step[d]));

    Vector x(n);
    double h = 0.0;
    double mass = 0.0;
    const int outer_nodes = n == 2 ? nodes : 1;
    for (int i = 0; i < outer_nodes; ++i) {
        for (int k = 0; k < nodes; ++k) {
            double w = weights[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
            x[n - 1] = box.lower[n - 1] + k * step[n - 1];
            if (n == 2) {
                x[0] = box.lower[0] + i * step[0];
                w *= weights[0][static_cast<std::size_t>(i)];
            }
            const double log_f = gmentropy::log_density(mix, x);
            if (log_f < -700.0) continue;
            h -= w * std::exp(log_f) * log_f;
            mass += w * std::exp(log_f);
        }
    }
    EntropyEstimate est;
    est.method = Method::grid;
    est.value = h;
    est.grid_mass = mass;
    est.grid_nodes_per_axis = nodes;
    return est;
}

double log_power_integral(const GaussianMixture& mix, int a) {
    if (a < 1) throw std::invalid_argument("power integral order must be >= 1");
    CompositionStream stream(mix.size(), a);
    LogSumExp acc;
    while (stream.next()) {
        const auto& t = stream.current();
        double log_weight = 0.0;
        for (std::size_t j = 0; j < t.t.size(); ++j) log_weight += t.t[j] * mix.log_weights()[j];
        acc.add(log_multinomial(t) + log_weight + log_product_integral(mix, t).log_D);
    }
    return acc.value();
}

}  // namespace gmentropy::reference
