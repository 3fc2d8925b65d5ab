#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "absmin/absmin.hpp"
#include "absmin/io.hpp"

namespace absmin::cli {

namespace {

using io::json;

struct Common {
  std::string config;
  std::string plant = "benchmark";
  std::string controller;
  std::string poly;
  std::string output;
  int order = 2;
  std::uint64_t seed = 0;
};

struct Args {
  Common common;
  // place
  double z = -1.0;
  std::string target;
  // cluster
  double lo = -5.0, hi = 5.0;
  int grid = 10001;
  // optimize
  int max_iters = 1000;
  std::string trace_csv;
  // certify
  int tau_samples = 1000;
  // step
  double horizon = 30.0, dt = 1e-3;
  std::string step_csv;
  // pseudozero
  double epsilon = 1e-4;
  std::vector<double> region{-1.5, 0.0, -0.5, 0.5};
  int nx = 200, ny = 200;
  std::string grid_csv, pgm;
  bool freeze_leading = false;
  // fragility
  int digits = 5;
};

json from_text_or_file(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && (spec[first] == '{' || spec[first] == '[')) {
    try {
      return json::parse(spec);
    } catch (const json::parse_error& e) {
      throw DomainError(std::string("invalid inline JSON: ") + e.what());
    }
  }
  return io::load_json_file(spec);
}

Plant load_plant(const std::string& spec) {
  if (spec == "benchmark") return Plant::two_mass_spring();
  return io::plant_from_json(from_text_or_file(spec));
}

Controller load_controller(const std::string& spec) {
  if (spec.empty()) throw CLI::RequiredError("--controller");
  return io::controller_from_json(from_text_or_file(spec));
}

// Polynomial from --poly, or the closed loop of --plant and --controller.
Poly target_poly(const Common& c) {
  if (!c.poly.empty()) return io::parse_poly(c.poly);
  return closed_loop_poly(load_plant(c.plant), load_controller(c.controller));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  return f;
}

// Fills options left unset on the command line from the config object.
void apply_config(CLI::App& sub, const json& config) {
  for (CLI::Option* opt : sub.get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help" || key == "config" || !config.contains(key)) continue;
    const json& v = config.at(key);
    std::vector<std::string> values;
    if (v.is_string()) {
      values.push_back(v.get<std::string>());
    } else if (v.is_array() && opt->get_items_expected_max() > 1) {
      for (const json& e : v) values.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    } else {
      values.push_back(v.dump());
    }
    opt->clear();
    for (const std::string& s : values) opt->add_result(s);
    opt->run_callback();
  }
}

void emit(const Common& c, const std::string& command, json result, std::ostream& out) {
  json doc = {{"schema", io::kSchema}, {"command", command}, {"result", std::move(result)}};
  if (c.output.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    auto f = open_output(c.output);
    f << doc.dump(2) << '\n';
  }
}

json run(const std::string& command, const Args& a) {
  const Common& c = a.common;
  if (command == "stability") return io::to_json(is_hurwitz_stable(target_poly(c)));
  if (command == "abscissa") {
    const Poly p = target_poly(c);
    json j = io::to_json(roots(p));
    j["abscissa"] = abscissa(p);
    return j;
  }
  if (command == "place") {
    const Plant plant = load_plant(c.plant);
    const Poly target = a.target.empty() ? clustered_poly(a.z, plant.den().degree() + c.order)
                                         : io::parse_poly(a.target);
    const auto placed = place_poles(plant, c.order, target);
    json j = io::to_json(placed);
    j["objective"] = objective(plant, placed.controller);
    return j;
  }
  if (command == "cluster") {
    ClusterOptions opts;
    opts.bracket_lo = a.lo;
    opts.bracket_hi = a.hi;
    opts.grid_points = a.grid;
    return io::to_json(cluster_all_poles(load_plant(c.plant), c.order, opts));
  }
  if (command == "optimize") {
    const Plant plant = load_plant(c.plant);
    auto random_start = [&] {
      std::mt19937_64 rng(c.seed);
      std::normal_distribution<double> normal;
      std::vector<double> theta(2 * c.order + 1);
      for (double& v : theta) v = normal(rng);
      return Controller::from_params(c.order, theta);
    };
    const Controller start = c.controller.empty() ? random_start() : load_controller(c.controller);
    OptOptions opts;
    opts.max_iters = a.max_iters;
    opts.seed = c.seed;
    const auto result = minimize_abscissa(plant, c.order, start, opts);
    if (!a.trace_csv.empty()) {
      auto f = open_output(a.trace_csv);
      io::write_trace_csv(f, result);
    }
    return io::to_json(result);
  }
  if (command == "certify") {
    CertifyOptions opts;
    opts.tau_samples = a.tau_samples;
    opts.seed = c.seed;
    return io::to_json(certify_local_min(load_plant(c.plant), load_controller(c.controller), opts));
  }
  if (command == "step") {
    const auto r = step_response(load_plant(c.plant), load_controller(c.controller), a.horizon, a.dt);
    if (!a.step_csv.empty()) {
      auto f = open_output(a.step_csv);
      io::write_step_csv(f, r);
    }
    return io::summary_json(r);
  }
  if (command == "pseudozero") {
    if (a.region.size() != 4) throw DomainError("--region needs re_min re_max im_min im_max");
    PseudozeroOptions opts;
    opts.perturb_leading = !a.freeze_leading;
    const auto grid = pseudozero_grid(target_poly(c), {a.region[0], a.region[1], a.region[2], a.region[3]},
                                      a.nx, a.ny, a.epsilon, opts);
    if (!a.grid_csv.empty()) {
      auto f = open_output(a.grid_csv);
      io::write_pseudozero_csv(f, grid);
    }
    if (!a.pgm.empty()) {
      auto f = open_output(a.pgm);
      io::write_membership_pgm(f, grid);
    }
    return io::summary_json(grid);
  }
  if (command == "fragility")
    return io::to_json(fragility_experiment(load_plant(c.plant), load_controller(c.controller), a.digits));
  throw CLI::CallForHelp();
}

void add_common(CLI::App& sub, Common& c, bool plant, bool controller, bool poly, bool order) {
  sub.add_option("--config", c.config, "JSON file of option defaults (falls back to $ABSMIN_CONFIG)");
  sub.add_option("-o,--output", c.output, "Write the JSON document here instead of stdout");
  sub.add_option("--seed", c.seed, "Random seed");
  if (plant) sub.add_option("--plant", c.plant, "\"benchmark\", a JSON file, or inline JSON {num, den}");
  if (controller) sub.add_option("--controller", c.controller, "Controller JSON file or inline JSON {order, x, y}");
  if (poly) sub.add_option("--poly", c.poly, "Ascending coefficients as JSON, e.g. \"[1, 1]\"");
  if (order) sub.add_option("--order", c.order, "Controller order m")->check(CLI::NonNegativeNumber);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-loop abscissa analysis and fixed-order controller design", "absmin"};
  app.require_subcommand(1);
  Args a;

  auto* stability = app.add_subcommand("stability", "Hurwitz matrix, leading minors, and verdict");
  add_common(*stability, a.common, true, true, true, false);
  auto* abs = app.add_subcommand("abscissa", "Roots, clusters, and abscissa");
  add_common(*abs, a.common, true, true, true, false);

  auto* place = app.add_subcommand("place", "Sylvester pole placement");
  add_common(*place, a.common, true, false, false, true);
  place->add_option("--z", a.z, "Place all poles at this real point");
  place->add_option("--target", a.target, "Monic target polynomial as JSON (overrides --z)");

  auto* cluster = app.add_subcommand("cluster", "Controllers with all closed-loop poles at one real point");
  add_common(*cluster, a.common, true, false, false, true);
  cluster->add_option("--lo", a.lo, "Bracket lower end");
  cluster->add_option("--hi", a.hi, "Bracket upper end");
  cluster->add_option("--grid", a.grid, "Scan points")->check(CLI::Range(3, 10000000));

  auto* optimize = app.add_subcommand("optimize", "Gradient-sampling minimization of the abscissa");
  add_common(*optimize, a.common, true, true, false, true);
  optimize->add_option("--max-iters", a.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  optimize->add_option("--trace-csv", a.trace_csv, "Write the iteration trace as CSV");

  auto* certify = app.add_subcommand("certify", "Sharp local minimizer certificate");
  add_common(*certify, a.common, true, true, false, false);
  certify->add_option("--tau-samples", a.tau_samples, "Directions sampled for the growth estimate")
      ->check(CLI::NonNegativeNumber);

  auto* step = app.add_subcommand("step", "Unit step response");
  add_common(*step, a.common, true, true, false, false);
  step->add_option("--horizon", a.horizon, "Simulated time in seconds")->check(CLI::PositiveNumber);
  step->add_option("--dt", a.dt, "Integration step")->check(CLI::PositiveNumber);
  step->add_option("--csv", a.step_csv, "Write time,value samples as CSV");

  auto* pz = app.add_subcommand("pseudozero", "Real pseudozero distances on a grid");
  add_common(*pz, a.common, true, true, true, false);
  pz->add_option("--epsilon", a.epsilon, "Perturbation norm bound")->check(CLI::NonNegativeNumber);
  pz->add_option("--region", a.region, "re_min re_max im_min im_max")->expected(4);
  pz->add_option("--nx", a.nx, "Grid columns")->check(CLI::Range(2, 100000));
  pz->add_option("--ny", a.ny, "Grid rows")->check(CLI::Range(2, 100000));
  pz->add_option("--csv", a.grid_csv, "Write re,im,distance as CSV");
  pz->add_option("--pgm", a.pgm, "Write the membership raster as PGM");
  pz->add_flag("--freeze-leading", a.freeze_leading, "Do not perturb the leading coefficient");

  auto* frag = app.add_subcommand("fragility", "Round the controller and compare closed-loop roots");
  add_common(*frag, a.common, true, true, false, false);
  frag->add_option("--digits", a.digits, "Significant digits kept")->check(CLI::Range(1, 17));

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    std::string config_path = a.common.config;
    if (config_path.empty())
      if (const char* env = std::getenv(kConfigEnv)) config_path = env;
    if (!config_path.empty()) {
      const json config = io::load_json_file(config_path);
      if (!config.is_object()) throw DomainError("config must be a JSON object");
      apply_config(*sub, config);
    }
    emit(a.common, sub->get_name(), run(sub->get_name(), a), out);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "absmin: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "absmin: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "absmin: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace absmin::cli
