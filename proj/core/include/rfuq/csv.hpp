#pragma once

#include <string>

#include "rfuq/dataset.hpp"

namespace rfuq {

// Loads a headered CSV into a numeric Dataset. Numeric columns pass through;
// categorical feature columns are one-hot encoded with levels in
// first-appearance order (indicator columns named "col=level"). Regression
// targets must be numeric; classification targets are mapped to dense class
// indices, also in first-appearance order.
//
// Missing values (empty, NA, NaN, ?) and malformed rows raise
// std::runtime_error carrying the 1-based line number; imputation is out of
// scope.
Dataset load_csv(const std::string& path, const std::string& target_column, Task task);

}  // namespace rfuq
