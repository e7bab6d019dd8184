#pragma once

// JSON ingestion for instances, schemes and grid instances. Errors are
// InstanceErrors whose message starts with the offending field.

#include <string>

#include "persuasion/core.hpp"
#include "persuasion/multidim.hpp"

namespace persuasion {

struct Instance {
  Prior prior;
  ReceiverUtility utility;
};

/// {"prior": [...], "utility": [...]}
Instance parse_instance(const std::string& text);
/// {"atoms": [{"posterior": [...], "weight": w}, ...]}
FiniteScheme parse_scheme(const std::string& text);
/// {"dims": [...], "marginals": [[...], ...] | "joint": [...], "utility": [...]}
GridInstance parse_grid_instance(const std::string& text);

/// Reads a whole file; throws InstanceError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace persuasion
