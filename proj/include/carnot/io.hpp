#pragma once

#include "carnot/condh.hpp"
#include "carnot/density.hpp"
#include "carnot/gauge.hpp"
#include "carnot/group.hpp"
#include "carnot/monotone.hpp"
#include "carnot/perimeter.hpp"
#include "carnot/sets.hpp"

#include <json.hpp>

#include <string>

namespace carnot {

using Json = nlohmann::ordered_json;

/// A preset name, {"file": path}, or an inline definition
/// {"name", "layers": [..], "constants": [[i, j, k, value], ..]} with
/// 1-based indices. Throws ConfigError on malformed input; invariant
/// violations propagate from build_group.
CarnotGroup parse_group(const Json &spec);
CarnotGroup load_group_file(const std::string &path);

Json read_json_file(const std::string &path);

Coords parse_coords(const Json &v, int dim, const std::string &what);
Box parse_box(const Json &v, int dim, const std::string &what);

/// Set definition tree. Kinds: half_space {normal, offset}, ball {center,
/// radius, metric: gauge | euclidean}, complement {of}, intersection |
/// union | difference | symdiff {a, b}, translate {by, of}, dilate
/// {lambda, of}, empty, full. The group must outlive the result.
SetOracle parse_set(const Json &spec, const CarnotGroup &g, const HomogeneousDistance &d);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string config_hash(const Json &config);

Json to_json(const Coords &c);
Json to_json(const Box &b);
Json to_json(const Estimate &e);
Json to_json(const GridParams &grid);
Json to_json(const MonotonicityReport &r);
Json to_json(const ConstantNormalReport &r);
Json to_json(const PerimeterEstimate &e);
Json to_json(const MinimalityReport &r);
Json to_json(const HomogeneityReport &r);
Json to_json(const VolumeLawReport &r);
Json to_json(const DensityProfile &p);
Json to_json(const GammaRankReport &r);
Json to_json(const SweepReport &s);

/// One row per line: direction, base, transitions, verdict.
std::string lines_csv(const MonotonicityReport &r);
/// One row per radius.
std::string profile_csv(const DensityProfile &p);
/// One row per grid point: coordinates, ratio and stderr per radius, class.
std::string scan_csv(const BoundaryScan &scan);

} // namespace carnot
