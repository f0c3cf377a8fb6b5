#pragma once

#include <cstdint>

#include "gmentropy/estimate.hpp"
#include "gmentropy/mixture.hpp"

namespace gmentropy {

inline constexpr std::int64_t kMcBlockSize = 1 << 16;

/// Monte Carlo h = E[-ln f(X)] over N seeded draws, with std_error equal to
/// the sample standard deviation of -ln f(X_i) over sqrt(N). Samples are
/// processed in fixed blocks of kMcBlockSize whose Welford accumulators are
/// merged in block order, so the result does not depend on the thread count.
/// Throws std::invalid_argument for N < 1000.
EntropyEstimate mc_entropy(const GaussianMixture& mix, std::int64_t sample_count, std::uint64_t seed);

struct GridSpec {
    int nodes_per_axis = 2001;  ///< odd, >= 3
    double half_width_sigmas = 8.0;
};

/// Per-axis box [min_j w_j - k sqrt(lambda_max), max_j w_j + k sqrt(lambda_max)].
struct GridBox {
    Vector lower;
    Vector upper;
};

GridBox grid_box(const GaussianMixture& mix, double half_width_sigmas);

/// Composite Simpson quadrature of -f ln f on the box, with the integrand set
/// to 0 where ln f < -700. Also records int f on the same grid as grid_mass.
/// Throws UnsupportedDimensionError for n > 2.
EntropyEstimate grid_entropy(const GaussianMixture& mix, const GridSpec& spec = {});

/// Simpson weights (1, 4, 2, ..., 4, 1) * h / 3 for an odd node count.
std::vector<double> simpson_weights(int nodes, double step);

}  // namespace gmentropy
