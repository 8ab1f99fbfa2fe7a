#include "carnot/io.hpp"

#include "carnot/errors.hpp"
#include "carnot/presets.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace carnot {

namespace {

const Json &require(const Json &obj, const char *key, const std::string &what) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError(what + ": missing key '" + key + "'");
  return obj.at(key);
}

double number(const Json &v, const std::string &what) {
  if (!v.is_number())
    throw ConfigError(what + ": expected a number");
  return v.get<double>();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

CarnotGroup parse_group(const Json &spec) {
  if (spec.is_string())
    return preset(spec.get<std::string>());
  if (!spec.is_object())
    throw ConfigError("group: expected a preset name or an object");
  if (spec.contains("file"))
    return load_group_file(spec.at("file").get<std::string>());
  const Json &layers = require(spec, "layers", "group");
  if (!layers.is_array() || layers.empty())
    throw ConfigError("group: 'layers' must be a non-empty array");
  std::vector<int> dims;
  for (const auto &l : layers) {
    if (!l.is_number_integer() || l.get<int>() < 1)
      throw ConfigError("group: layer dimensions must be positive integers");
    dims.push_back(l.get<int>());
  }
  Stratification strat(dims);
  std::vector<StructureConstant> constants;
  if (spec.contains("constants")) {
    for (const auto &c : spec.at("constants")) {
      if (!c.is_array() || c.size() != 4)
        throw ConfigError("group: constants are [i, j, k, value] with 1-based indices");
      int idx[3];
      for (int a = 0; a < 3; ++a) {
        if (!c[a].is_number_integer())
          throw ConfigError("group: constant indices must be integers");
        idx[a] = c[a].get<int>() - 1;
        if (idx[a] < 0 || idx[a] >= strat.dim())
          throw ConfigError("group: constant index out of range");
      }
      constants.push_back({idx[0], idx[1], idx[2], number(c[3], "group constant")});
    }
  }
  return build_group(std::move(strat), std::move(constants), spec.value("name", std::string("custom")));
}

CarnotGroup load_group_file(const std::string &path) {
  const Json spec = read_json_file(path);
  if (spec.is_object() && spec.contains("file"))
    throw ConfigError("group file '" + path + "' must not reference another file");
  return parse_group(spec);
}

Coords parse_coords(const Json &v, int dim, const std::string &what) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw ConfigError(what + ": expected an array of " + std::to_string(dim) + " numbers");
  Coords out(dim);
  for (int c = 0; c < dim; ++c)
    out[c] = number(v[c], what);
  return out;
}

Box parse_box(const Json &v, int dim, const std::string &what) {
  Box b{parse_coords(require(v, "lo", what), dim, what + ".lo"),
        parse_coords(require(v, "hi", what), dim, what + ".hi")};
  if (b.empty())
    throw EmptyWindow(what + ": box is empty");
  return b;
}

SetOracle parse_set(const Json &spec, const CarnotGroup &g, const HomogeneousDistance &d) {
  const std::string kind = require(spec, "kind", "set").get<std::string>();
  const int n = g.dim();
  if (kind == "half_space")
    return half_space(g, AlgebraVector{parse_coords(require(spec, "normal", kind), n, "normal")},
                      spec.contains("offset") ? number(spec.at("offset"), "offset") : 0.0);
  if (kind == "ball") {
    const Point center{parse_coords(require(spec, "center", kind), n, "center")};
    const double radius = number(require(spec, "radius", kind), "radius");
    const std::string metric = spec.value("metric", std::string("gauge"));
    if (metric == "gauge")
      return metric_ball(d, center, radius);
    if (metric == "euclidean")
      return coordinate_ball(g, center, radius);
    throw ConfigError("ball: metric must be 'gauge' or 'euclidean'");
  }
  if (kind == "empty")
    return empty_set(g);
  if (kind == "full")
    return whole_group(g);
  if (kind == "complement")
    return complement(parse_set(require(spec, "of", kind), g, d));
  if (kind == "translate")
    return translate(g, parse_set(require(spec, "of", kind), g, d),
                     Point{parse_coords(require(spec, "by", kind), n, "by")});
  if (kind == "dilate")
    return dilate(g, parse_set(require(spec, "of", kind), g, d),
                  number(require(spec, "lambda", kind), "lambda"));
  const std::pair<const char *, BooleanOp> ops[] = {
      {"intersection", BooleanOp::intersection},
      {"union", BooleanOp::union_of},
      {"difference", BooleanOp::difference},
      {"symdiff", BooleanOp::symmetric_difference}};
  for (const auto &[name, op] : ops)
    if (kind == name)
      return boolean_op(parse_set(require(spec, "a", kind), g, d),
                        parse_set(require(spec, "b", kind), g, d), op);
  throw ConfigError("unknown set kind '" + kind + "'");
}

std::string config_hash(const Json &config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Coords &c) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    out.push_back(c[i]);
  return out;
}

Json to_json(const Box &b) { return Json{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

Json to_json(const Estimate &e) {
  return Json{{"value", e.value}, {"stderr", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

Json to_json(const GridParams &grid) { return Json{{"h", grid.h}, {"min_run", grid.min_run}}; }

Json to_json(const MonotonicityReport &r) {
  Json bins = Json::array();
  for (const auto &b : r.bins)
    bins.push_back(Json{{"lines", b.lines}, {"non_monotone", b.non_monotone}});
  return Json{{"lines_sampled", r.lines_sampled},
              {"lines_meeting", r.lines_meeting},
              {"lines_non_monotone", r.lines_non_monotone},
              {"fraction", to_json(r.fraction)},
              {"grid", to_json(r.grid)},
              {"direction_bins", bins}};
}

Json to_json(const ConstantNormalReport &r) {
  return Json{{"passes", r.passes},
              {"best_normal", to_json(r.best_normal)},
              {"best_violation", r.best_violation},
              {"lines_with_transitions", r.lines_with_transitions},
              {"candidates", r.candidates},
              {"noise_threshold", r.noise_threshold}};
}

Json to_json(const PerimeterEstimate &e) {
  return Json{{"window", to_json(e.window)},
              {"lines", e.lines_used},
              {"lines_meeting", e.lines_meeting},
              {"value", e.value},
              {"stderr", e.std_error},
              {"line_measure", e.line_measure},
              {"max_line_count", e.max_line_count},
              {"fraction_at_most_one", e.fraction_at_most_one},
              {"grid", to_json(e.grid)},
              {"seed", e.seed}};
}

Json to_json(const MinimalityReport &r) {
  Json per = Json::array();
  for (const auto &p : r.perturbations)
    per.push_back(Json{{"perturbation", p.description},
                       {"bounds", to_json(p.bounds)},
                       {"delta", p.delta},
                       {"stderr", p.std_error},
                       {"verdict", p.pass ? "PASS" : "FAIL"}});
  Json out = to_json(r.base);
  out["per_perturbation"] = per;
  out["verdict"] = r.pass ? "PASS" : "FAIL";
  return out;
}

Json to_json(const HomogeneityReport &r) {
  return Json{{"lambda", r.lambda},
              {"base", to_json(r.base)},
              {"scaled", to_json(r.scaled)},
              {"ratio", r.ratio},
              {"ratio_stderr", r.ratio_std_error},
              {"expected", r.expected},
              {"verdict", r.pass ? "PASS" : "FAIL"}};
}

Json to_json(const VolumeLawReport &r) {
  Json vols = Json::array();
  for (std::size_t k = 0; k < r.radii.size(); ++k)
    vols.push_back(Json{{"radius", r.radii[k]}, {"volume", r.volumes[k].value},
                        {"stderr", r.volumes[k].std_error}});
  return Json{{"samples_per_radius", r.samples_per_radius},
              {"volumes", vols},
              {"slope", r.slope},
              {"intercept", r.intercept}};
}

Json to_json(const DensityProfile &p) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < p.radii.size(); ++k)
    rows.push_back(Json{{"radius", p.radii[k]}, {"ratio", p.ratios[k].value},
                        {"stderr", p.ratios[k].std_error}, {"h", p.h_values[k]}});
  return Json{{"point", to_json(p.point.coords)}, {"radii", rows}};
}

Json to_json(const GammaRankReport &r) {
  Json sv = Json::array();
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i)
    sv.push_back(r.singular_values[i]);
  return Json{{"direction", to_json(r.direction.coords)},
              {"p", r.p},
              {"rank", r.jacobian_rank},
              {"full_rank_needed", r.full_rank_needed},
              {"verdict", to_string(r.verdict)},
              {"openness", r.openness()},
              {"singular_values", sv}};
}

Json to_json(const SweepReport &s) {
  Json per = Json::array();
  for (const auto &r : s.reports)
    per.push_back(to_json(r));
  return Json{{"p", s.p},
              {"directions", s.reports.size()},
              {"worst_rank", s.worst_rank},
              {"best_rank", s.best_rank},
              {"deficient", s.deficient.size()},
              {"per_direction", per}};
}

std::string lines_csv(const MonotonicityReport &r) {
  std::ostringstream os;
  int n = 0;
  if (!r.records.empty())
    n = static_cast<int>(r.records.front().line.base.coords.size());
  int rdim = r.records.empty() ? 0 : static_cast<int>(r.records.front().line.direction.horizontal().size());
  for (int a = 0; a < rdim; ++a)
    os << "x" << a + 1 << ",";
  for (int c = 0; c < n; ++c)
    os << "base" << c + 1 << ",";
  os << "transitions,verdict\n";
  for (const auto &rec : r.records) {
    const Eigen::VectorXd x = rec.line.direction.horizontal();
    for (int a = 0; a < rdim; ++a)
      os << fmt(x[a]) << ",";
    for (int c = 0; c < n; ++c)
      os << fmt(rec.line.base.coords[c]) << ",";
    os << rec.verdict.transitions << "," << to_string(rec.verdict.cls) << "\n";
  }
  return os.str();
}

std::string profile_csv(const DensityProfile &p) {
  std::ostringstream os;
  os << "radius,ratio,stderr,h\n";
  for (std::size_t k = 0; k < p.radii.size(); ++k)
    os << fmt(p.radii[k]) << "," << fmt(p.ratios[k].value) << "," << fmt(p.ratios[k].std_error) << ","
       << fmt(p.h_values[k]) << "\n";
  return os.str();
}

std::string scan_csv(const BoundaryScan &scan) {
  std::ostringstream os;
  const int n = scan.box.dim();
  for (int c = 0; c < n; ++c)
    os << "x" << c + 1 << ",";
  const auto &radii = scan.points.empty() ? std::vector<double>{} : scan.points.front().profile.radii;
  for (std::size_t k = 0; k < radii.size(); ++k)
    os << "ratio_r" << fmt(radii[k]) << ",stderr_r" << fmt(radii[k]) << ",";
  os << "class\n";
  for (const auto &sp : scan.points) {
    for (int c = 0; c < n; ++c)
      os << fmt(sp.profile.point.coords[c]) << ",";
    for (const auto &r : sp.profile.ratios)
      os << fmt(r.value) << "," << fmt(r.std_error) << ",";
    os << to_string(sp.cls) << "\n";
  }
  return os.str();
}

} // namespace carnot
