#include "carnot/presets.hpp"

#include "carnot/errors.hpp"

#include <charconv>

namespace carnot {

namespace {

CarnotGroup abelian(int n) {
  return build_group(Stratification({n}), {}, "R" + std::to_string(n));
}

} // namespace

CarnotGroup preset(std::string_view name) {
  if (name == "H1" || name == "heisenberg" || name == "heisenberg1")
    return build_group(Stratification({2, 1}), {{0, 1, 2, 1.0}}, "H1");
  if (name == "H2" || name == "heisenberg2")
    return build_group(Stratification({4, 1}), {{0, 1, 4, 1.0}, {2, 3, 4, 1.0}}, "H2");
  if (name == "free_2_3")
    return build_group(Stratification({3, 3}), {{0, 1, 3, 1.0}, {0, 2, 4, 1.0}, {1, 2, 5, 1.0}},
                       "free_2_3");
  if (name == "engel")
    return build_group(Stratification({2, 1, 1}), {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}, "engel");
  if (name.size() >= 2 && name.front() == 'R') {
    int n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size() && n >= 1 && n <= kMaxDim)
      return abelian(n);
  }
  throw ConfigError("unknown preset group '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"R2", "H1", "H2", "free_2_3", "engel"}; }

} // namespace carnot
