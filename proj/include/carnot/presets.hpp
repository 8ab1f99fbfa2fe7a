#pragma once

#include "carnot/group.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace carnot {

/// Shipped groups: "R<n>" (abelian, 1 <= n <= 16), "H1", "H2" (Heisenberg),
/// "free_2_3" (free step-2 on 3 generators), "engel". Throws ConfigError on
/// unknown names.
CarnotGroup preset(std::string_view name);

/// Canonical names of the non-abelian presets plus "R2".
std::vector<std::string> preset_names();

} // namespace carnot
