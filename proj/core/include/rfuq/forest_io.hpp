#pragma once

#include <iosfwd>
#include <string>

#include "rfuq/forest.hpp"

namespace rfuq {

// Versioned JSON forest format: config, per-tree node arrays and bootstrap
// counts. Round-trips everything needed to resume prediction, proximity and
// uncertainty computations without retraining.
inline constexpr int kForestFormatVersion = 1;

void save_forest(const Forest& forest, std::ostream& out);
void save_forest(const Forest& forest, const std::string& path);

Forest load_forest(std::istream& in);
Forest load_forest(const std::string& path);

}  // namespace rfuq
