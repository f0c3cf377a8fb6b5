#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace gmentropy {

enum class Method { taylor, polyfit, moment_bound, component_bound, mc, grid };

std::string to_string(Method method);
/// Throws std::invalid_argument for an unknown name.
Method method_from_string(const std::string& name);

enum class SolveMode { exact_rational, extended_precision };

std::string to_string(SolveMode mode);

/// An entropy value in nats plus whatever parameters produced it. Fields that
/// do not apply to a method stay empty.
struct EntropyEstimate {
    double value = 0.0;
    Method method = Method::mc;
    std::optional<double> std_error;

    std::optional<int> order;
    std::optional<double> r;
    std::optional<double> beta;
    std::optional<double> m;
    std::optional<double> b;
    std::optional<bool> certified_lower_bound;
    std::optional<SolveMode> solve_mode;
    std::optional<double> condition_estimate;

    std::optional<std::int64_t> sample_count;
    std::optional<int> grid_nodes_per_axis;
    /// Grid oracle only: integral of f over the same grid.
    std::optional<double> grid_mass;
};

/// (reference - estimate) / reference * 100.
inline double percent_error(double reference, double estimate) {
    return (reference - estimate) / reference * 100.0;
}

}  // namespace gmentropy
