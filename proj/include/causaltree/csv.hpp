#pragma once

#include <string>

#include "causaltree/inference.hpp"

namespace causaltree {

/// Dataset serialization: columns step, intervened_var (name or empty),
/// intervened_val (or empty), then one integer column per variable.
std::string dataset_to_csv(const Dataset& data, const VariableSpace& space);

Dataset dataset_from_csv(const std::string& text, const VariableSpace& space);

}  // namespace causaltree
