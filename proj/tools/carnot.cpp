// Experiment runner: group-info, monotone-check, perimeter, density, gamma.
//
// Every subcommand reads a JSON config (--config), fills in defaults, and
// writes the completed config next to its results so a run can be
// repeated byte for byte. Exit codes: 0 pass, 1 verdict FAIL, 2 config or
// invariant error.

#include "carnot/condh.hpp"
#include "carnot/density.hpp"
#include "carnot/errors.hpp"
#include "carnot/gauge.hpp"
#include "carnot/io.hpp"
#include "carnot/monotone.hpp"
#include "carnot/perimeter.hpp"
#include "carnot/presets.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using namespace carnot;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out_dir;
  std::string group; // group-info only
};

/// Config reader that records every default it hands out.
class Config {
public:
  explicit Config(Json data) : data_(std::move(data)) {
    if (!data_.is_object())
      throw ConfigError("config must be a JSON object");
  }

  template <class T> T get(const char *key, T fallback) {
    if (!data_.contains(key))
      data_[key] = fallback;
    try {
      return data_.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
      throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
  }
  const Json &at(const char *key) const {
    if (!data_.contains(key))
      throw ConfigError(std::string("config is missing '") + key + "'");
    return data_.at(key);
  }
  bool has(const char *key) const { return data_.contains(key); }
  void set(const char *key, Json v) { data_[key] = std::move(v); }
  const Json &json() const { return data_; }

private:
  Json data_;
};

Config load_config(const Options &opt) {
  Json data = Json::object();
  if (!opt.config_path.empty())
    data = read_json_file(opt.config_path);
  Config cfg(std::move(data));
  if (opt.seed)
    cfg.set("seed", *opt.seed);
  return cfg;
}

std::uint64_t require_seed(Config &cfg) {
  if (!cfg.has("seed"))
    throw ConfigError("stochastic experiments need an explicit seed (--seed or \"seed\")");
  if (!cfg.at("seed").is_number_unsigned())
    throw ConfigError("seed must be a non-negative integer");
  return cfg.at("seed").get<std::uint64_t>();
}

GridParams read_grid(Config &cfg) {
  const double h = cfg.get("h", 0.01);
  const double min_run = cfg.get("min_run", 4.0 * h);
  if (!(h > 0.0) || min_run < h)
    throw BadGrid("need h > 0 and min_run >= h");
  return {h, min_run};
}

/// Writes results; every file carries the config hash and seed.
class Output {
public:
  Output(const Options &opt, const Config &cfg) : dir_(opt.out_dir) {
    hash_ = config_hash(cfg.json());
    seed_ = cfg.has("seed") ? cfg.json().at("seed") : Json(nullptr);
    if (!dir_.empty()) {
      std::filesystem::create_directories(dir_);
      Json copy = cfg.json();
      write("config.json", copy.dump(2) + "\n");
    }
  }

  void json(const std::string &name, Json body, bool pass) {
    Json out{{"config_hash", hash_}, {"seed", seed_}, {"verdict", pass ? "PASS" : "FAIL"}};
    for (auto &[k, v] : body.items())
      out[k] = v;
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!dir_.empty())
      write(name, text);
  }

  void csv(const std::string &name, const std::string &body) {
    if (dir_.empty())
      return;
    std::string seed = seed_.is_null() ? "none" : seed_.dump();
    write(name, "# config_hash=" + hash_ + " seed=" + seed + "\n" + body);
  }

private:
  void write(const std::string &name, const std::string &text) {
    std::ofstream f(std::filesystem::path(dir_) / name, std::ios::binary);
    if (!f)
      throw ConfigError("cannot write '" + name + "' in '" + dir_ + "'");
    f << text;
  }

  std::string dir_;
  std::string hash_;
  Json seed_;
};

Json stratification_json(const CarnotGroup &g) {
  Json layers = Json::array();
  for (int d : g.strat().layer_dims())
    layers.push_back(d);
  return Json{{"name", g.name()},
              {"layers", layers},
              {"step", g.step()},
              {"dim", g.dim()},
              {"homogeneous_dim", g.homogeneous_dim()}};
}

int cmd_group_info(const Options &opt) {
  Config cfg = load_config(opt);
  if (!opt.group.empty()) {
    Json spec = opt.group;
    if (std::filesystem::exists(opt.group))
      spec = Json{{"file", opt.group}};
    cfg.set("group", spec);
  }
  const CarnotGroup g = parse_group(cfg.at("group"));
  const double jacobi = max_jacobi_residual(g);
  Output out(opt, cfg);
  Json body = stratification_json(g);
  body["jacobi_residual"] = jacobi;
  body["checks"] = "PASS";
  std::cerr << "step " << g.step() << ", dim " << g.dim() << ", Q " << g.homogeneous_dim()
            << ", checks PASS\n";
  out.json("group_info.json", body, true);
  return 0;
}

struct Setup {
  CarnotGroup g;
  std::optional<HomogeneousDistance> d;
};

Setup setup(Config &cfg) {
  Setup s{parse_group(cfg.at("group")), std::nullopt};
  s.d.emplace(HomogeneousDistance::calibrate(s.g));
  Json kappa = Json::array();
  for (double k : s.d->kappa())
    kappa.push_back(k);
  cfg.set("gauge_kappa", kappa);
  return s;
}

int cmd_monotone(const Options &opt) {
  Config cfg = load_config(opt);
  const std::uint64_t seed = require_seed(cfg);
  Setup s = setup(cfg);
  const SetOracle e = parse_set(cfg.at("set"), s.g, *s.d);
  const Region window(parse_box(cfg.at("window"), s.g.dim(), "window"));
  const auto lines = cfg.get<std::size_t>("lines", 10000);
  const GridParams grid = read_grid(cfg);
  const double max_fraction = cfg.get("max_fraction", 0.01);
  const double noise = cfg.get("noise", 0.02);
  const bool check_cn = cfg.get("constant_normal", true);
  if (lines < 100)
    throw ConfigError("monotone-check needs lines >= 100");
  Output out(opt, cfg);

  const LineMeasureSampler sampler(s.g, seed);
  const MonotonicityReport rep =
      monotonicity_fraction(s.g, e, sampler, window, lines, grid, {opt.workers, true});
  Json body{{"set", e.description()}, {"labels", e.labels().to_string()}, {"monotonicity", to_json(rep)}};
  bool pass = true;
  if (e.labels().has(SetLabel::monotone))
    pass = rep.fraction.value <= max_fraction;
  if (check_cn) {
    const ConstantNormalReport cn =
        constant_normal_test(s.g, e, sampler, window, lines, grid, noise, opt.workers);
    body["constant_normal"] = to_json(cn);
    if (e.labels().has(SetLabel::constant_normal))
      pass = pass && cn.passes;
  }
  out.csv("lines.csv", lines_csv(rep));
  out.json("monotone.json", body, pass);
  return pass ? 0 : 1;
}

std::vector<SetOracle> read_perturbations(Config &cfg, const Setup &s, const Box &omega,
                                          double margin, std::uint64_t seed) {
  std::vector<SetOracle> out;
  const Json spec = cfg.get("perturbations", Json{{"random", 20}, {"radius", {0.05, 0.2}}});
  if (spec.is_array()) {
    for (const auto &p : spec)
      out.push_back(parse_set(p, s.g, *s.d));
    return out;
  }
  const int count = spec.value("random", 20);
  const Json radius = spec.value("radius", Json{0.05, 0.2});
  const double r_lo = radius.at(0).get<double>(), r_hi = radius.at(1).get<double>();
  if (!(r_lo > 0.0) || r_hi < r_lo)
    throw ConfigError("perturbation radius range must be positive and ordered");
  CounterRng rng(seed, 0, 41);
  for (int i = 0, tries = 0; i < count; ++tries) {
    if (tries > 10000 * count)
      throw ConfigError("cannot place random perturbation balls inside the window");
    Point c{Coords(s.g.dim())};
    for (int k = 0; k < s.g.dim(); ++k)
      c.coords[k] = rng.uniform(omega.lo[k], omega.hi[k]);
    const double r = rng.uniform(r_lo, r_hi);
    const Box b = s.d->ball_bounds(c, r);
    bool inside = true;
    for (int k = 0; k < s.g.dim(); ++k)
      inside = inside && b.lo[k] >= omega.lo[k] + margin && b.hi[k] <= omega.hi[k] - margin;
    if (!inside)
      continue;
    out.push_back(metric_ball(*s.d, c, r));
    ++i;
  }
  return out;
}

int cmd_perimeter(const Options &opt) {
  Config cfg = load_config(opt);
  const std::uint64_t seed = require_seed(cfg);
  Setup s = setup(cfg);
  const SetOracle e = parse_set(cfg.at("set"), s.g, *s.d);
  const Box box = parse_box(cfg.at("window"), s.g.dim(), "window");
  const Region omega(box);
  const auto lines = cfg.get<std::size_t>("lines", 10000);
  const GridParams grid = read_grid(cfg);
  const std::string mode = cfg.get<std::string>("mode", "estimate");

  if (mode == "estimate") {
    Output out(opt, cfg);
    const PerimeterEstimate est =
        estimate_perimeter(s.g, e, omega, LineMeasureSampler(s.g, seed), lines, grid, opt.workers);
    out.json("perimeter.json", Json{{"mode", mode}, {"set", e.description()}, {"estimate", to_json(est)}}, true);
    return 0;
  }
  if (mode == "minimality") {
    const auto perturbations = read_perturbations(cfg, s, box, 2.0 * grid.h, seed);
    Output out(opt, cfg);
    const MinimalityReport rep = minimality_test(s.g, e, omega, perturbations,
                                                 LineMeasureSampler(s.g, seed), lines, grid, opt.workers);
    out.json("perimeter.json", Json{{"mode", mode}, {"set", e.description()}, {"minimality", to_json(rep)}},
             rep.pass);
    return rep.pass ? 0 : 1;
  }
  if (mode == "homogeneity") {
    const double lambda = cfg.get("lambda", 2.0);
    Output out(opt, cfg);
    const HomogeneityReport rep = homogeneity_test(s.g, e, omega, lambda, seed, lines, grid, opt.workers);
    out.json("perimeter.json", Json{{"mode", mode}, {"set", e.description()}, {"homogeneity", to_json(rep)}},
             rep.pass);
    return rep.pass ? 0 : 1;
  }
  throw ConfigError("perimeter mode must be estimate, minimality or homogeneity");
}

std::vector<double> read_radii(Config &cfg) {
  const Json spec = cfg.get("radii", Json{{"r0", 1.0}, {"levels", 7}});
  if (spec.is_array())
    return spec.get<std::vector<double>>();
  return radius_ladder(spec.value("r0", 1.0), spec.value("levels", 7));
}

int cmd_density(const Options &opt) {
  Config cfg = load_config(opt);
  const std::uint64_t seed = require_seed(cfg);
  Setup s = setup(cfg);
  const std::string mode = cfg.get<std::string>("mode", "profile");
  const std::vector<double> radii = read_radii(cfg);
  const auto samples = cfg.get<std::uint64_t>("samples", 10000);

  if (mode == "volume_law") {
    const double tol = cfg.get("slope_tolerance", 0.1);
    Output out(opt, cfg);
    const VolumeLawReport rep = ball_volume_law(*s.d, radii, samples, seed);
    const bool pass = std::abs(rep.slope - s.g.homogeneous_dim()) <= tol;
    Json body = to_json(rep);
    body["expected_slope"] = s.g.homogeneous_dim();
    out.json("density.json", Json{{"mode", mode}, {"volume_law", body}}, pass);
    return pass ? 0 : 1;
  }
  const SetOracle e = parse_set(cfg.at("set"), s.g, *s.d);
  const double eps = cfg.get("eps", 0.05);
  const double r_min = cfg.get("r_min", radii.empty() ? 0.0 : radii.back());
  if (mode == "profile") {
    const Point x{parse_coords(cfg.get("point", to_json(Coords::Zero(s.g.dim()))), s.g.dim(), "point")};
    Output out(opt, cfg);
    const DensityProfile p = density_profile(e, x, radii, samples, *s.d, seed);
    Json body = to_json(p);
    body["class"] = to_string(classify_point(p, eps, r_min));
    out.csv("profile.csv", profile_csv(p));
    out.json("density.json", Json{{"mode", mode}, {"set", e.description()}, {"profile", body}}, true);
    return 0;
  }
  if (mode == "scan") {
    const Box box = parse_box(cfg.at("box"), s.g.dim(), "box");
    const double step = cfg.get("grid_step", 0.1);
    Output out(opt, cfg);
    const BoundaryScan scan = boundary_scan(e, box, step, eps, radii, r_min, samples, *s.d, seed, opt.workers);
    Json counts = Json::object();
    for (auto c : {PointClass::interior, PointClass::exterior, PointClass::boundary, PointClass::undetermined}) {
      std::size_t n = 0;
      for (const auto &sp : scan.points)
        n += sp.cls == c;
      counts[to_string(c)] = n;
    }
    Json shape = Json::array();
    for (int k : scan.shape)
      shape.push_back(k);
    const auto violations = small_density_violations(scan);
    out.csv("scan.csv", scan_csv(scan));
    out.json("density.json",
             Json{{"mode", mode},
                  {"set", e.description()},
                  {"grid_points", scan.points.size()},
                  {"shape", shape},
                  {"classes", counts},
                  {"small_density_violations", violations.size()}},
             true);
    return 0;
  }
  throw ConfigError("density mode must be volume_law, profile or scan");
}

int cmd_gamma(const Options &opt) {
  Config cfg = load_config(opt);
  const CarnotGroup g = parse_group(cfg.at("group"));
  const std::string mode = cfg.get<std::string>("mode", "rank");
  RankOptions ro;
  ro.fd_step = cfg.get("fd_step", ro.fd_step);
  ro.rel_threshold = cfg.get("rel_threshold", ro.rel_threshold);
  auto direction = [&] {
    Coords def = Coords::Zero(g.dim());
    def[0] = 1.0;
    return Direction::from_vector(g, AlgebraVector{parse_coords(cfg.get("direction", to_json(def)), g.dim(), "direction")});
  };

  if (mode == "rank") {
    const int p = cfg.get("p", 2);
    const Direction x = direction();
    Output out(opt, cfg);
    out.json("gamma.json", Json{{"mode", mode}, {"group", g.name()}, {"report", to_json(gamma_rank(g, x, p, ro))}},
             true);
    return 0;
  }
  if (mode == "sweep") {
    const int p = cfg.get("p", 2);
    const int count = cfg.get("directions", 100);
    const auto seed = cfg.get<std::uint64_t>("seed", 0);
    Output out(opt, cfg);
    out.json("gamma.json", Json{{"mode", mode}, {"group", g.name()}, {"sweep", to_json(sphere_sweep(g, p, count, ro, seed))}},
             true);
    return 0;
  }
  if (mode == "min_p") {
    const int p_max = cfg.get("p_max", 8);
    const Direction x = direction();
    Output out(opt, cfg);
    const auto p = find_min_submersion_p(g, x, p_max, ro);
    out.json("gamma.json",
             Json{{"mode", mode}, {"group", g.name()}, {"p_max", p_max},
                  {"min_submersion_p", p ? Json(*p) : Json(nullptr)},
                  {"openness", p ? "open" : "inconclusive"}},
             p.has_value());
    return p ? 0 : 1;
  }
  throw ConfigError("gamma mode must be rank, sweep or min_p");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Carnot group toolkit: monotone sets, kinematic perimeter, densities, condition (H)"};
  app.require_subcommand(1);
  Options opt;
  auto common = [&](CLI::App *sub) {
    sub->add_option("--config", opt.config_path, "JSON experiment config");
    sub->add_option("--seed", opt.seed, "RNG seed (overrides the config)");
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_dir, "output directory");
  };
  auto *group_info = app.add_subcommand("group-info", "stratification, Q and algebra checks");
  common(group_info);
  group_info->add_option("--group", opt.group, "preset name or group JSON file");
  auto *monotone = app.add_subcommand("monotone-check", "non-monotone line fraction and constant-normal test");
  common(monotone);
  auto *perimeter = app.add_subcommand("perimeter", "perimeter estimate, minimality or homogeneity");
  common(perimeter);
  auto *density = app.add_subcommand("density", "volume law, density profile or boundary scan");
  common(density);
  auto *gamma_cmd = app.add_subcommand("gamma", "rank of the product map at the diagonal");
  common(gamma_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*group_info)
      return cmd_group_info(opt);
    if (*monotone)
      return cmd_monotone(opt);
    if (*perimeter)
      return cmd_perimeter(opt);
    if (*density)
      return cmd_density(opt);
    if (*gamma_cmd)
      return cmd_gamma(opt);
  } catch (const carnot::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
