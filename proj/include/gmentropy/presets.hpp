#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmentropy/mixture.hpp"

namespace gmentropy {

/// Names of the bundled benchmark mixtures, table1_row1 .. table1_row5:
///   row1  q=3 n=2, identity covariances
///   row2  q=3 n=2, non-spherical covariances
///   row3  q=4 n=3
///   row4  q=4 n=8
///   row5  q=5 n=4
std::vector<std::string> preset_names();

/// Throws std::out_of_range for an unknown name.
GaussianMixture preset(const std::string& name);

std::optional<GaussianMixture> find_preset(const std::string& name);

}  // namespace gmentropy
