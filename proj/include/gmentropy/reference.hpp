#pragma once

// Single-threaded reference versions of the parallel kernels. They are kept
// straightforward (one pass, one accumulator) and are used by the tests and
// the benchmark to check and time the OpenMP paths.

#include <cstdint>

#include "gmentropy/estimate.hpp"
#include "gmentropy/mixture.hpp"
#include "gmentropy/oracle.hpp"

namespace gmentropy::reference {

/// One Welford pass over all N samples in index order.
EntropyEstimate mc_entropy(const GaussianMixture& mix, std::int64_t sample_count, std::uint64_t seed);

EntropyEstimate grid_entropy(const GaussianMixture& mix, const GridSpec& spec = {});

/// Single composition stream, single log-sum-exp.
double log_power_integral(const GaussianMixture& mix, int a);

}  // namespace gmentropy::reference
