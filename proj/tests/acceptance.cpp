// Acceptance suite: one criterion per --criterion index, all when absent.
// Prints one pass/fail line per criterion; exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pftent/bounds.hpp"
#include "pftent/cocycle.hpp"
#include "pftent/markov.hpp"
#include "pftent/sweeps.hpp"

using namespace pftent;

namespace {

const ConeParams<double> cp = default_cone();

StepFunction<double> random_cone_fn(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cut(-1.0, 1.0);
  std::uniform_real_distribution<double> val(0.25, 4.0);
  for (;;) {
    int pieces = 2 + static_cast<int>(rng() % 7);
    std::vector<double> cuts;
    for (int i = 0; i < pieces - 1; ++i) cuts.push_back(cut(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> bp{-1.0};
    for (double c : cuts)
      if (c - bp.back() > 1e-6 && 1.0 - c > 1e-6) bp.push_back(c);
    bp.push_back(1.0);
    std::vector<double> v;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) v.push_back(val(rng));
    StepFunction<double> f(bp, v);
    if (cone_contains(f, cp)) return f;
  }
}

bool criterion_markov_charpoly(std::string& note) {
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 12; ++n)
    if (!char_poly_verify(n)) {
      note = "charpoly mismatch at n=" + std::to_string(n);
      return false;
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << "n=1..12 exact, " << secs << " s";
  note = os.str();
  return secs < 10.0;
}

bool criterion_markov_radius(std::string& note) {
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    auto m = adjacency_matrix(n);
    worst = std::max(worst, std::abs(m.rho - (2.0 + 2.0 * m.kappa)));
  }
  std::ostringstream os;
  os << "max |rho - (2+2kappa)| = " << worst;
  note = os.str();
  return worst <= 1e-9;
}

bool criterion_sharpness(std::string& note) {
  double prev = 1e9;
  bool ok = true;
  double at5 = 0, at12 = 0;
  for (int n = 5; n <= 12; ++n) {
    auto m = exact_lambda2(n);
    if (!(m.ratio_to_minus_2kappa < prev) || !(m.ratio_to_minus_2kappa > 1.0)) ok = false;
    prev = m.ratio_to_minus_2kappa;
    if (n == 5) at5 = m.ratio_to_minus_2kappa;
    if (n == 12) at12 = m.ratio_to_minus_2kappa;
  }
  std::ostringstream os;
  os << "ratio(5)=" << at5 << ", ratio(12)=" << at12;
  note = os.str();
  return ok && std::abs(at5 - 1.20) <= 0.01 && at12 <= 1.01;
}

bool criterion_ly(std::string& note) {
  auto res = ly_sweep_rational(10000, 20240229);
  std::ostringstream os;
  os << res.samples << " exact cases, " << res.violations_general << " general / "
     << res.violations_sharp << " sharp violations (sharp-eligible: " << res.sharp_cases
     << "), max lhs/rhs = " << res.max_lhs_over_rhs;
  note = os.str();
  return res.violations_general == 0 && res.violations_sharp == 0 && res.sharp_cases > 100;
}

bool criterion_cone_preservation(std::string& note) {
  auto res = cone_preservation_sweep_rational(10000, 777);
  std::ostringstream os;
  os << res.samples << " exact cases, " << res.violations << " violations";
  note = os.str();
  return res.violations == 0;
}

bool criterion_cone_contraction(std::string& note) {
  auto dr = make_constant_driving(1.0, 1.0);
  auto rep = spectral_gap_bound(dr, cp);
  const double factor = contraction_factor(rep.D_P);
  std::mt19937_64 rng(61);
  int pairs = 0;
  double worst = -1e9;
  while (pairs < 100) {
    auto v = random_cone_fn(rng);
    auto w = random_cone_fn(rng);
    double before = hilbert_alpha_beta(v, w, cp).theta;
    if (!std::isfinite(before) || before < 1e-6) continue;
    for (int kstep = 0; kstep < rep.k_P; ++kstep) {
      auto si = second_iterate_at_base(dr, 2 * kstep);
      v = pf_apply(si.map, v);
      w = pf_apply(si.map, w);
    }
    double after = hilbert_alpha_beta(v, w, cp).theta;
    worst = std::max(worst, after - (factor * before + 1e-8));
    ++pairs;
  }
  std::ostringstream os;
  os << "100 pairs, max theta excess = " << worst;
  note = os.str();
  return worst <= 0.0;
}

bool criterion_equivariant_density(std::string& note) {
  std::ostringstream os;
  bool ok = true;
  for (int n : {1, 5}) {
    auto dr = make_constant_driving(1.0, 1.0, solve_kappa(n));
    auto pb = pullback_density(dr, 0, 60);
    auto exact = markov_invariant_density(n);
    exact = scale(exact, 1.0 / bv_norm(exact));
    double dist = l1_norm(subtract(pb.density.density, exact));
    os << "n=" << n << ": L1 distance " << dist << "; ";
    if (!(dist <= 1e-6)) ok = false;
    auto t = first_contraction_time(dr, 0, 30, cp);
    if (!t.has_value()) {
      ok = false;
      continue;
    }
    for (std::size_t i = static_cast<std::size_t>(*t) + 1; i < pb.increments.size(); ++i) {
      if (pb.increments[i] < 1e-13) break;
      if (pb.increments[i] > pb.increments[i - 1] * (1.0 + 1e-9)) ok = false;
    }
  }
  os << "increments monotone beyond the contraction time";
  note = os.str();
  return ok;
}

bool criterion_eta(std::string& note) {
  auto dr = make_constant_driving(1.0, 1.0, solve_kappa(1));
  auto pb = pullback_density(dr, 0, 60);
  auto self = eta_bracket(dr, 0, pb.density.density, 40, cp);
  bool ok = self.closed && std::abs(self.eta - 1.0) <= 1e-6;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> cut(-1.0, 1.0), val(-2.0, 2.0);
  double worst_rel = 0.0;
  bool monotone = true;
  for (int trial = 0; trial < 100; ++trial) {
    int pieces = 2 + static_cast<int>(rng() % 6);
    std::vector<double> cuts;
    for (int i = 0; i < pieces - 1; ++i) cuts.push_back(cut(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> bp{-1.0};
    for (double c : cuts)
      if (c - bp.back() > 1e-6 && 1.0 - c > 1e-6) bp.push_back(c);
    bp.push_back(1.0);
    std::vector<double> v;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) v.push_back(val(rng));
    StepFunction<double> x(bp, v);
    auto eb = eta_bracket(dr, 0, x, 40, cp);
    if (!eb.closed) monotone = false;
    for (std::size_t i = 1; i < eb.alpha_seq_g1.size(); ++i) {
      if (eb.alpha_seq_g1[i] < eb.alpha_seq_g1[i - 1] - 1e-8) monotone = false;
      if (eb.beta_seq_g1[i] > eb.beta_seq_g1[i - 1] + 1e-8) monotone = false;
      if (eb.alpha_seq_g2[i] < eb.alpha_seq_g2[i - 1] - 1e-8) monotone = false;
      if (eb.beta_seq_g2[i] > eb.beta_seq_g2[i - 1] + 1e-8) monotone = false;
    }
    double rel = std::abs(eb.eta * eb.integral_v - integral(x)) /
                 std::max(1.0, std::abs(integral(x)));
    worst_rel = std::max(worst_rel, rel);
  }
  std::ostringstream os;
  os << "eta(v)=" << self.eta << ", 100 x-samples, max identity error " << worst_rel
     << ", monotone=" << (monotone ? "yes" : "no");
  note = os.str();
  return ok && monotone && worst_rel <= 1e-6;
}

bool criterion_lambda2_cross(std::string& note) {
  std::ostringstream os;
  bool ok = true;
  for (int n = 5; n <= 8; ++n) {
    auto start = std::chrono::steady_clock::now();
    auto m = exact_lambda2(n);
    auto dr = make_constant_driving(1.0, 1.0, m.kappa);
    auto est = lambda2_power_iteration(dr, 0, 260, 1, 30);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double err = std::abs(est.lambda2 - m.lambda2);
    os << "n=" << n << ": err=" << err << " (" << secs << " s); ";
    if (!(err <= 0.01) || !(secs < 5.0)) ok = false;
  }
  note = os.str();
  return ok;
}

bool criterion_bound_validity(std::string& note) {
  int cases = 0;
  bool ok = true;
  std::ostringstream os;
  std::vector<DrivingStream> streams;
  for (double kappa : {1.0, 0.5, 0.25, 0.1}) {
    streams.push_back(make_constant_driving(1.0, 1.0, kappa));
    streams.push_back(make_constant_driving(0.7, 0.2, kappa));
    streams.push_back(make_periodic_driving({{1.0, 0.0}, {0.0, 1.0}}, kappa));
    streams.push_back(make_periodic_driving({{0.3, 0.6}, {0.9, 0.1}, {0.5, 0.5}}, kappa));
    streams.push_back(make_iid_driving({{0.8, 0.4, 0.5}, {0.2, 0.9, 0.5}}, 5, kappa));
  }
  for (const auto& dr : streams) {
    for (double nu : {0.76, 0.8, 0.85, 0.9, 0.95}) {
      ConeParams<double> cone{canonical_cone_a(dr, nu), nu};
      auto rep = spectral_gap_bound(dr, cone);
      ++cases;
      if (!(rep.C < 0.0)) ok = false;
    }
  }
  // exact lambda2 is available on the Markov subfamily
  for (int n = 5; n <= 8; ++n) {
    auto m = exact_lambda2(n);
    auto rep = spectral_gap_bound(make_constant_driving(1.0, 1.0, m.kappa), cp);
    ++cases;
    if (!(rep.C < 0.0) || !(m.lambda2 <= rep.C)) ok = false;
  }
  os << cases << " configurations, C < 0 throughout, exact lambda2 below C on the"
     << " Markov subfamily";
  note = os.str();
  return ok && cases >= 100;
}

bool criterion_asymptotic(std::string& note) {
  auto dr = make_constant_driving(1.0, 1.0);
  std::vector<double> ratios;
  bool negative = true;
  for (int j = 5; j <= 12; ++j) {
    auto ab = asymptotic_bound(dr, cp, std::pow(2.0, -j));
    if (!(ab.C1 < 0.0)) negative = false;
    ratios.push_back(ab.C1 / ab.kappa);
  }
  double final_step = ratios[ratios.size() - 1] / ratios[ratios.size() - 2];
  bool cauchy = std::abs(final_step - 1.0) <= 0.10;

  // measured lambda2 slope against kappa on the same ladder
  std::vector<double> xs, ys;
  for (int j = 5; j <= 12; ++j) {
    double kappa = std::pow(2.0, -j);
    auto est = lambda2_power_iteration(make_constant_driving(1.0, 1.0, kappa), 0, 160, 1, 60);
    if (est.lambda2 < 0) {
      xs.push_back(std::log(kappa));
      ys.push_back(std::log(-est.lambda2));
    }
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  double slope = num / den;
  bool slope_ok = xs.size() == 8 && slope >= 0.9 && slope <= 1.1;

  std::ostringstream os;
  os << "C1<0: " << (negative ? "yes" : "no") << "; final successive C1/kappa ratio "
     << final_step
     << (cauchy ? " (within 10%)"
                : " (outside 10%: the ceiling in m3(kappa) makes C1/kappa oscillate"
                  " between dyadic parity classes, see README)")
     << "; lambda2 log-log slope " << slope;
  note = os.str();
  return negative && cauchy && slope_ok;
}

bool criterion_appendix(std::string& note) {
  auto res = adaptedness_sweep_rational(10000, 4242);
  std::ostringstream os;
  os << res.samples << " exact pairs, " << res.violations_triangle
     << " triangle violations, " << res.violations_adapted
     << " adaptedness violations, max norm ratio " << res.max_norm_ratio << " (2a+1 = "
     << 241 << ")";
  note = os.str();
  return res.violations_triangle == 0 && res.violations_adapted == 0 &&
         res.max_norm_ratio <= 241.0;
}

bool criterion_schedule(std::string& note) {
  // contraction_schedule throws if a j-estimate inequality ever fails
  int tested = 0;
  try {
    auto constant = make_constant_driving(1.0, 1.0);
    auto per = make_periodic_driving({{1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}});
    auto iid = make_iid_driving({{1.0, 1.0, 0.2}, {0.0, 0.0, 0.8}}, 31);
    for (int k_P : {1, 2, 3, 5, 8, 13, 20}) {
      auto pred_const = g_p_predicate(constant, cp);
      contraction_schedule(constant, 0, 10000, pred_const, k_P, 50.0);
      ++tested;
      auto pred_per = g_p_predicate(per, cp);
      contraction_schedule(per, 0, 10000, pred_per, k_P, 50.0);
      ++tested;
      std::mt19937_64 rng(1000 + k_P);
      auto coin = [&rng](std::int64_t) { return rng() % 3 == 0; };
      contraction_schedule(iid, 0, 10000, coin, k_P, 50.0);
      ++tested;
      auto pred_iid = g_p_predicate(iid, cp);
      contraction_schedule(iid, -4000, 10000, pred_iid, k_P, 50.0);
      ++tested;
    }
  } catch (const NumericalError& e) {
    note = std::string("j-estimate violated: ") + e.what();
    return false;
  }
  std::ostringstream os;
  os << tested << " schedules at horizon 10^4, inequalities exact";
  note = os.str();
  return true;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "markov-charpoly", criterion_markov_charpoly},
      {2, "markov-spectral-radius", criterion_markov_radius},
      {3, "sharpness-asymptotics", criterion_sharpness},
      {4, "lasota-yorke", criterion_ly},
      {5, "cone-preservation", criterion_cone_preservation},
      {6, "cone-contraction", criterion_cone_contraction},
      {7, "equivariant-density", criterion_equivariant_density},
      {8, "eta-functional", criterion_eta},
      {9, "lambda2-cross-validation", criterion_lambda2_cross},
      {10, "theorem-bound-validity", criterion_bound_validity},
      {11, "asymptotic-bound", criterion_asymptotic},
      {12, "appendix-properties", criterion_appendix},
      {13, "contraction-schedule", criterion_schedule},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }
  int failures = 0;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    std::string note;
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = c.fn(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %02d [%s] %s (%s) [%.2f s]\n", c.id, c.name,
                pass ? "PASS" : "FAIL", note.c_str(), secs);
    if (!pass) ++failures;
  }
  return failures;
}
