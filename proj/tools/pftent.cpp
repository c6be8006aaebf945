#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pftent/run.hpp"
#include "pftent/serialize.hpp"

namespace {

pftent::RunConfig load_base_config(const std::string& path) {
  if (path.empty()) return pftent::RunConfig{};
  std::ifstream in(path);
  if (!in) throw pftent::ConfigError("cannot read config file: " + path);
  nlohmann::json j;
  in >> j;
  return pftent::run_config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer-operator cocycles of paired tent maps: spectral bounds,"
               " Lyapunov estimates, and exact Markov analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON run configuration")->expected(1);
  app.add_option("--format", format, "Output format: csv or json");
  app.add_option("--out", out_path, "Output file path (default: stdout)");
  app.add_option("--seed", seed, "Driving seed override")
      ->each([&](const std::string&) { seed_set = true; });

  auto* markov = app.add_subcommand("markov", "Exact spectral data of the Markov family");
  std::vector<int> n_range;
  bool emit_graph = false;
  markov->add_option("--n-range", n_range, "Range of n (two integers)")->expected(2);
  markov->add_flag("--emit-graph", emit_graph, "Append map graph sample rows");

  auto* bound = app.add_subcommand("bound", "Second-Lyapunov-exponent upper bound");
  std::vector<double> kappas;
  bound->add_option("--kappa", kappas, "Scale parameters for the asymptotic bound");
  double nu = 0;
  double cone_a = 0;
  bound->add_option("--nu", nu, "Subcone parameter");
  bound->add_option("--a", cone_a, "Cone parameter a");

  auto* simulate = app.add_subcommand("simulate", "Lyapunov exponent estimators");
  int steps = 0, renorm = 0, burn = -1, depth = 0;
  std::int64_t omega = 0;
  bool omega_set = false, graph2 = false;
  simulate->add_option("--steps", steps, "Second-iterate steps");
  simulate->add_option("--renorm-every", renorm, "Renormalization period");
  simulate->add_option("--burn-in", burn, "Steps discarded before accumulating");
  simulate->add_option("--depth", depth, "Pullback depth");
  simulate->add_option("--omega", omega, "Base index of omega")
      ->each([&](const std::string&) { omega_set = true; });
  simulate->add_flag("--emit-graph", graph2, "Append the equivariant density cells");

  auto* ly = app.add_subcommand("ly-sweep", "Randomized Lasota-Yorke verification");
  int samples = 0;
  std::string mode;
  ly->add_option("--samples", samples, "Number of random cases");
  ly->add_option("--mode", mode, "rational (exact) or float");

  auto* eta = app.add_subcommand("eta-check", "Bracketing functional diagnostics");
  int eta_steps = 0, eta_samples = 0;
  eta->add_option("--steps", eta_steps, "Bracketing steps");
  eta->add_option("--samples", eta_samples, "Random test functions");

  auto* schedule = app.add_subcommand("schedule", "Cone-contraction visit schedule");
  int horizon = 0, k_P = 0;
  double D_P = 0;
  schedule->add_option("--horizon", horizon, "Schedule horizon (second-iterate steps)");
  schedule->add_option("--k-P", k_P, "Contraction window");
  schedule->add_option("--D-P", D_P, "Diameter bound");

  try {
    app.parse(argc, argv);
    pftent::RunConfig cfg = load_base_config(config_path);
    if (!format.empty()) cfg.format = format;
    if (!out_path.empty()) cfg.out_path = out_path;
    if (seed_set) cfg.driving.seed = seed;

    if (markov->parsed()) {
      cfg.command = "markov";
      if (!n_range.empty()) {
        cfg.n_lo = n_range[0];
        cfg.n_hi = n_range[1];
      }
      cfg.emit_graph = emit_graph || cfg.emit_graph;
    } else if (bound->parsed()) {
      cfg.command = "bound";
      if (!kappas.empty()) cfg.kappas = kappas;
      if (nu > 0) cfg.cone.nu = nu;
      if (cone_a > 0) cfg.cone.a = cone_a;
    } else if (simulate->parsed()) {
      cfg.command = "simulate";
      if (steps > 0) cfg.steps = steps;
      if (renorm > 0) cfg.renorm_every = renorm;
      if (burn >= 0) cfg.burn_in = burn;
      if (depth > 0) cfg.depth = depth;
      if (omega_set) cfg.omega_index = omega;
      cfg.emit_graph = graph2 || cfg.emit_graph;
    } else if (ly->parsed()) {
      cfg.command = "ly-sweep";
      if (samples > 0) cfg.samples = samples;
      cfg.mode = mode.empty() ? "rational" : mode;
    } else if (eta->parsed()) {
      cfg.command = "eta-check";
      if (eta_steps > 0) cfg.steps = eta_steps;
      if (eta_samples > 0) cfg.samples = eta_samples;
      else cfg.samples = 20;
    } else if (schedule->parsed()) {
      cfg.command = "schedule";
      if (horizon > 0) cfg.horizon = horizon;
      if (k_P > 0) cfg.k_P = k_P;
      if (D_P > 0) cfg.D_P = D_P;
    }
    return pftent::run(cfg, std::cout);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << app.help() << std::endl;
    return 1;
  } catch (const pftent::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 1;
  } catch (const pftent::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
