#include "pftent/run.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pftent/bounds.hpp"
#include "pftent/cocycle.hpp"
#include "pftent/markov.hpp"
#include "pftent/serialize.hpp"
#include "pftent/sweeps.hpp"

namespace pftent {

namespace {

void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
  if (cfg.out_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output path: " + cfg.out_path);
  file << text;
}

std::string map_graph_csv(const PiecewiseLinearMap<double>& T, int n_tag) {
  std::ostringstream os;
  for (const auto& b : T.branches) {
    const int samples = 64;
    for (int s = 0; s <= samples; ++s) {
      double x = b.domain.lo + (b.domain.hi - b.domain.lo) * s / samples;
      os << n_tag << ',' << format_double(x) << ',' << format_double(b.at(x)) << '\n';
    }
  }
  return os.str();
}

int run_markov(const RunConfig& cfg, std::ostream& fallback) {
  if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo) throw ConfigError("markov: bad n range");
  std::vector<MarkovModel> rows;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    if (n >= 4) {
      rows.push_back(exact_lambda2(n));
    } else {
      MarkovModel m = adjacency_matrix(n);
      m.charpoly_ok = char_poly_verify(n);
      m.r_n = std::numeric_limits<double>::quiet_NaN();
      m.lambda2 = std::numeric_limits<double>::quiet_NaN();
      m.ratio_to_minus_2kappa = std::numeric_limits<double>::quiet_NaN();
      rows.push_back(m);
    }
  }
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& m : rows) j.push_back(markov_model_to_json(m));
    os << j.dump(2) << '\n';
  } else {
    os << markov_csv_header();
    for (const auto& m : rows) os << markov_csv_row(m);
    if (cfg.emit_graph) {
      os << "\nn,x,T_x\n";
      for (const auto& m : rows) {
        auto T = make_paired_tent<double>({m.kappa, m.kappa});
        os << map_graph_csv(T, m.n);
      }
    }
  }
  emit(cfg, fallback, os.str());
  return 0;
}

int run_bound(const RunConfig& cfg, std::ostream& fallback) {
  BoundReport rep = spectral_gap_bound(cfg.driving, cfg.cone);
  std::vector<AsymptoticBound> ladder;
  for (double k : cfg.kappas) ladder.push_back(asymptotic_bound(cfg.driving, cfg.cone, k));
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::json j = bound_report_to_json(rep);
    if (!ladder.empty()) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& ab : ladder)
        arr.push_back({{"kappa", ab.kappa},
                       {"k_P_kappa", ab.k_P_kappa},
                       {"m3_kappa", ab.m3_kappa},
                       {"gamma", ab.gamma},
                       {"C1", ab.C1},
                       {"c2", ab.c2},
                       {"asymptotic_regime", ab.asymptotic_regime}});
      j["asymptotic"] = arr;
    }
    os << j.dump(2) << '\n';
  } else {
    os << bound_report_csv_header();
    if (ladder.empty()) {
      os << bound_report_csv_row(rep);
    } else {
      for (const auto& ab : ladder) os << bound_report_csv_row(rep, &ab);
    }
  }
  emit(cfg, fallback, os.str());
  return 0;
}

int run_simulate(const RunConfig& cfg, std::ostream& fallback) {
  SpectrumEstimate est = lambda2_power_iteration(cfg.driving, cfg.omega_index, cfg.steps,
                                                 cfg.renorm_every, cfg.burn_in);
  auto pb = pullback_density(cfg.driving, cfg.omega_index, cfg.depth);
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::json j = spectrum_to_json(est);
    j["equivariant"] = {{"phi", pb.density.phi},
                        {"residual", pb.density.residual},
                        {"pullback_depth", pb.density.pullback_depth},
                        {"density", step_function_to_json(pb.density.density)}};
    os << j.dump(2) << '\n';
  } else {
    os << "lambda1,lambda2,n_steps,stderr,phi,residual\n";
    os << format_double(est.lambda1) << ',' << format_double(est.lambda2) << ','
       << est.n_steps << ',' << format_double(est.stderr_est) << ','
       << format_double(pb.density.phi) << ',' << format_double(pb.density.residual)
       << '\n';
    if (cfg.emit_graph) {
      os << "\ncell_lo,cell_hi,density\n" << step_function_csv_row(pb.density.density);
    }
  }
  emit(cfg, fallback, os.str());
  return 0;
}

int run_ly_sweep(const RunConfig& cfg, std::ostream& fallback) {
  LySweepResult res = cfg.mode == "rational"
                          ? ly_sweep_rational(cfg.samples, cfg.driving.seed)
                          : ly_sweep_float(cfg.samples, cfg.driving.seed);
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::json j = {{"samples", res.samples},
                        {"violations_general", res.violations_general},
                        {"sharp_cases", res.sharp_cases},
                        {"violations_sharp", res.violations_sharp},
                        {"max_lhs_over_rhs", res.max_lhs_over_rhs},
                        {"mode", cfg.mode}};
    os << j.dump(2) << '\n';
  } else {
    os << "samples,violations_general,sharp_cases,violations_sharp,max_lhs_over_rhs\n"
       << res.samples << ',' << res.violations_general << ',' << res.sharp_cases << ','
       << res.violations_sharp << ',' << format_double(res.max_lhs_over_rhs) << '\n';
  }
  emit(cfg, fallback, os.str());
  return res.violations_general == 0 && res.violations_sharp == 0 ? 0 : 2;
}

int run_eta_check(const RunConfig& cfg, std::ostream& fallback) {
  auto pb = pullback_density(cfg.driving, cfg.omega_index, cfg.depth);
  auto self = eta_bracket(cfg.driving, cfg.omega_index, pb.density.density, cfg.steps,
                          cfg.cone, cfg.depth);
  std::uint64_t state = cfg.driving.seed + 17;
  int checked = 0;
  double max_rel = 0.0;
  bool monotone = true;
  for (int s = 0; s < std::max(1, cfg.samples); ++s) {
    StepFunction<double> x = convert_step<double>(random_rational_step(state));
    auto eb = eta_bracket(cfg.driving, cfg.omega_index, x, cfg.steps, cfg.cone, cfg.depth);
    for (std::size_t i = 1; i < eb.alpha_seq_g1.size(); ++i) {
      if (eb.alpha_seq_g1[i] < eb.alpha_seq_g1[i - 1] - 1e-8) monotone = false;
      if (eb.beta_seq_g1[i] > eb.beta_seq_g1[i - 1] + 1e-8) monotone = false;
    }
    double ident = eb.eta * eb.integral_v - integral(x);
    double denom = std::max(1e-12, std::abs(integral(x)));
    max_rel = std::max(max_rel, std::abs(ident) / denom);
    ++checked;
  }
  std::ostringstream os;
  nlohmann::json j = {{"eta_of_v", self.eta},
                      {"eta_of_v_closed", self.closed},
                      {"samples", checked},
                      {"max_identity_rel_error", max_rel},
                      {"brackets_monotone", monotone}};
  if (cfg.format == "json") {
    os << j.dump(2) << '\n';
  } else {
    os << "eta_of_v,samples,max_identity_rel_error,brackets_monotone\n"
       << format_double(self.eta) << ',' << checked << ',' << format_double(max_rel) << ','
       << (monotone ? 1 : 0) << '\n';
  }
  emit(cfg, fallback, os.str());
  return 0;
}

int run_schedule(const RunConfig& cfg, std::ostream& fallback) {
  int k_P = cfg.k_P;
  double D_P = cfg.D_P;
  if (k_P <= 0 || !(D_P > 0)) {
    BoundReport rep = spectral_gap_bound(cfg.driving, cfg.cone);
    if (k_P <= 0) k_P = rep.k_P;
    if (!(D_P > 0)) D_P = rep.D_P;
  }
  auto pred = g_p_predicate(cfg.driving, cfg.cone);
  auto sched = contraction_schedule(cfg.driving, cfg.omega_index, cfg.horizon, pred, k_P, D_P);
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::json j = {{"k_P", sched.k_P},       {"D_P", sched.D_P},
                        {"l_plus", sched.l_plus}, {"l_minus", sched.l_minus},
                        {"j_plus", sched.j_plus}, {"j_minus", sched.j_minus},
                        {"predicted_diam", sched.predicted_diam}};
    os << j.dump(2) << '\n';
  } else {
    os << "n,l_plus,l_minus,j_plus,j_minus,predicted_diam\n";
    for (std::size_t n = 0; n < sched.j_plus.size(); ++n)
      os << n << ',' << sched.l_plus[n] << ',' << sched.l_minus[n] << ','
         << sched.j_plus[n] << ',' << sched.j_minus[n] << ','
         << format_double(sched.predicted_diam[n]) << '\n';
  }
  emit(cfg, fallback, os.str());
  return 0;
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.command = j.value("command", std::string{});
  if (j.contains("driving")) cfg.driving = driving_from_json(j.at("driving"));
  if (j.contains("cone")) {
    cfg.cone.a = j.at("cone").value("a", 120.0);
    cfg.cone.nu = j.at("cone").value("nu", 0.8);
  }
  if (j.contains("numeric")) cfg.mode = j.at("numeric").value("mode", std::string{"float"});
  if (j.contains("output")) {
    cfg.format = j.at("output").value("format", std::string{"csv"});
    cfg.out_path = j.at("output").value("path", std::string{});
  }
  auto opt = [&](const char* key) { return j.contains(key) ? j.at(key) : nlohmann::json::object(); };
  nlohmann::json m = opt("markov");
  cfg.n_lo = m.value("n_lo", cfg.n_lo);
  cfg.n_hi = m.value("n_hi", cfg.n_hi);
  cfg.emit_graph = m.value("emit_graph", cfg.emit_graph);
  nlohmann::json s = opt("simulate");
  cfg.omega_index = s.value("omega_index", cfg.omega_index);
  cfg.steps = s.value("steps", cfg.steps);
  cfg.renorm_every = s.value("renorm_every", cfg.renorm_every);
  cfg.burn_in = s.value("burn_in", cfg.burn_in);
  cfg.depth = s.value("depth", cfg.depth);
  nlohmann::json ls = opt("ly_sweep");
  cfg.samples = ls.value("samples", cfg.samples);
  nlohmann::json sc = opt("schedule");
  cfg.horizon = sc.value("horizon", cfg.horizon);
  cfg.k_P = sc.value("k_P", cfg.k_P);
  cfg.D_P = sc.value("D_P", cfg.D_P);
  nlohmann::json b = opt("bound");
  if (b.contains("kappas")) cfg.kappas = b.at("kappas").get<std::vector<double>>();
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& fallback) {
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("output format must be csv or json");
  if (cfg.mode != "float" && cfg.mode != "rational")
    throw ConfigError("numeric mode must be float or rational");
  cfg.driving.validate();
  if (cfg.command == "markov") return run_markov(cfg, fallback);
  if (cfg.command == "bound") return run_bound(cfg, fallback);
  if (cfg.command == "simulate") return run_simulate(cfg, fallback);
  if (cfg.command == "ly-sweep") return run_ly_sweep(cfg, fallback);
  if (cfg.command == "eta-check") return run_eta_check(cfg, fallback);
  if (cfg.command == "schedule") return run_schedule(cfg, fallback);
  throw ConfigError("unknown command: " + cfg.command);
}

}  // namespace pftent
