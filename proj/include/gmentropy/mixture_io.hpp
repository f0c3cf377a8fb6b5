#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "gmentropy/mixture.hpp"

namespace gmentropy {

/// Config error anchored to a 1-based line of the source text (0 if unknown).
class MixtureParseError : public std::runtime_error {
public:
    MixtureParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Parses a mixture config:
///
///     dimension: 2
///     weights: [0.2, 0.3, 0.5]
///     components:
///       - mean: [1, 0]
///         covariance: [[1, 0], [0, 1]]
///
/// Any violation of the mixture invariants is reported as a MixtureParseError
/// pointing at the offending node.
GaussianMixture parse_mixture(const std::string& text);
GaussianMixture load_mixture(const std::filesystem::path& path);

/// Inverse of parse_mixture (17 significant digits, so it round-trips).
std::string to_config_text(const GaussianMixture& mix);

/// Canonical rendering: components sorted together with their weights,
/// numbers printed with 17 significant digits. Equal for mixtures that differ
/// only in component order.
std::string canonical_string(const GaussianMixture& mix);

/// 16 hex digits of FNV-1a over canonical_string().
std::string mixture_hash(const GaussianMixture& mix);

}  // namespace gmentropy
