#include "pftent/cocycle.hpp"

#include <cmath>
#include <random>

namespace pftent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoarsenTol = 1e-13;  // long-orbit value coarsening

double norm_of(const StepFunction<double>& f, PullbackNorm norm) {
  return norm == PullbackNorm::bv ? bv_norm(f) : l1_norm(f);
}

StepFunction<double> run_pullback_chain(const DrivingStream& dr, std::int64_t target,
                                        int depth, const StepFunction<double>& seed,
                                        PullbackNorm norm,
                                        std::vector<double>* increments) {
  StepFunction<double> v = scale(seed, 1.0 / norm_of(seed, norm));
  StepFunction<double> prev = v;
  for (int j = depth; j >= 1; --j) {
    auto si = second_iterate_at_base(dr, target - 2 * j);
    StepFunction<double> w = pf_apply(si.map, v);
    double r = norm_of(w, norm);
    if (!(r > 0)) throw NumericalError("pullback_density: vanished iterate");
    v = scale(w, 1.0 / r);
    v.coarsen(kCoarsenTol);
    if (increments) increments->push_back(bv_norm(subtract(v, prev)));
    prev = v;
  }
  return v;
}

// Zero-integral re-projection; P preserves integrals, so in exact arithmetic
// the correction is identically zero.
void kill_integral_drift(StepFunction<double>& f) {
  double m = integral(f);
  if (m != 0.0) f = subtract(f, StepFunction<double>::constant(m));
}

}  // namespace

PullbackResult pullback_density(const DrivingStream& dr, std::int64_t omega_index,
                                int depth, const StepFunction<double>& seed_fn,
                                PullbackNorm norm) {
  if (depth < 1) throw std::domain_error("pullback_density: depth must be >= 1");
  if (!seed_fn.nonnegative() || seed_fn.is_zero())
    throw std::domain_error("pullback_density: seed must be a nonzero nonnegative function");
  PullbackResult out;
  StepFunction<double> v = run_pullback_chain(dr, omega_index, depth, seed_fn, norm,
                                              &out.increments);
  // Independent chain at sigma^2(omega) for the equivariance residual.
  StepFunction<double> v_next =
      run_pullback_chain(dr, omega_index + 2, depth, seed_fn, norm, nullptr);
  auto si = second_iterate_at_base(dr, omega_index);
  StepFunction<double> pv = pf_apply(si.map, v);
  double phi = norm_of(pv, norm);
  out.density.omega_index = omega_index;
  out.density.density = v;
  out.density.phi = phi;
  out.density.pullback_depth = depth;
  out.density.residual = bv_norm(subtract(pv, scale(v_next, phi)));
  return out;
}

double lambda1_birkhoff(const DrivingStream& dr, std::int64_t omega_index, int n_steps,
                        int pullback_depth) {
  if (n_steps < 1) throw std::domain_error("lambda1_birkhoff: n_steps must be >= 1");
  StepFunction<double> v =
      run_pullback_chain(dr, omega_index, pullback_depth, StepFunction<double>::one(),
                         PullbackNorm::bv, nullptr);
  double acc = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    auto si = second_iterate_at_base(dr, omega_index + 2 * i);
    StepFunction<double> w = pf_apply(si.map, v);
    double phi = bv_norm(w);
    if (!(phi > 0)) throw NumericalError("lambda1_birkhoff: vanished iterate");
    acc += std::log(phi);
    v = scale(w, 1.0 / phi);
    v.coarsen(kCoarsenTol);
  }
  return acc / (2.0 * n_steps);
}

SpectrumEstimate lambda2_power_iteration(const DrivingStream& dr, std::int64_t omega_index,
                                         int n_steps, int renorm_every, int burn_in) {
  if (renorm_every < 1 || n_steps < renorm_every)
    throw std::domain_error("lambda2_power_iteration: need n_steps >= renorm_every >= 1");
  StepFunction<double> f({-1.0, 0.0, 1.0}, {1.0, -1.0});
  f = scale(f, 1.0 / bv_norm(f));
  double acc = 0.0, acc_tail = 0.0;
  int tail_steps = 0;
  std::vector<double> block_rates;
  int block_start = 0;
  bool annihilated = false;
  for (int i = 0; i < n_steps; ++i) {
    auto si = second_iterate_at_base(dr, omega_index + 2 * i);
    f = pf_apply(si.map, f);
    bool renorm = ((i + 1) % renorm_every == 0) || (i + 1 == n_steps);
    if (renorm) {
      kill_integral_drift(f);
      double r = bv_norm(f);
      if (!(r > 0)) {
        // the zero-integral seed was mapped to zero: no subdominant direction
        annihilated = true;
        break;
      }
      double lg = std::log(r);
      acc += lg;
      if (block_start >= burn_in) {
        acc_tail += lg;
        tail_steps += (i + 1) - block_start;
      }
      block_rates.push_back(lg / (i + 1 - block_start));
      block_start = i + 1;
      f = scale(f, 1.0 / r);
      f.coarsen(kCoarsenTol);
    }
  }
  SpectrumEstimate est;
  est.n_steps = n_steps;
  if (annihilated) {
    est.lambda2 = -std::numeric_limits<double>::infinity();
    est.stderr_est = 0.0;
  } else {
    est.lambda2 = (burn_in > 0 && tail_steps > 0) ? acc_tail / (2.0 * tail_steps)
                                                  : acc / (2.0 * n_steps);
    double mean = 0.0;
    for (double r : block_rates) mean += r;
    mean /= static_cast<double>(block_rates.size());
    double var = 0.0;
    for (double r : block_rates) var += (r - mean) * (r - mean);
    est.stderr_est = block_rates.size() > 1
                         ? std::sqrt(var / (block_rates.size() - 1.0) / block_rates.size()) / 2.0
                         : 0.0;
  }
  est.lambda1 = lambda1_birkhoff(dr, omega_index, std::min(n_steps, 400));
  return est;
}

EtaBracket eta_bracket(const DrivingStream& dr, std::int64_t omega_index,
                       const StepFunction<double>& x, int n_steps,
                       const ConeParams<double>& cp, int pullback_depth,
                       double close_tol) {
  if (n_steps < 1) throw std::domain_error("eta_bracket: n_steps must be >= 1");
  // x = g1 - g2 with g2 = c*1; c keeps both parts inside C_a.
  auto B = bv_functionals(x);
  double c = std::max(0.0, -B.essinf) + variation(x) / cp.a + std::abs(B.integral) + 1.0;
  StepFunction<double> g1 = add(x, StepFunction<double>::constant(c));
  StepFunction<double> g2 = StepFunction<double>::constant(c);

  StepFunction<double> v = run_pullback_chain(dr, omega_index, pullback_depth,
                                              StepFunction<double>::one(),
                                              PullbackNorm::bv, nullptr);
  EtaBracket out;
  out.integral_v = integral(v);
  StepFunction<double> h1 = g1, h2 = g2;
  for (int i = 0;; ++i) {
    auto ab1 = hilbert_alpha_beta(v, h1, cp);
    auto ab2 = hilbert_alpha_beta(v, h2, cp);
    out.alpha_seq_g1.push_back(ab1.alpha);
    out.beta_seq_g1.push_back(ab1.beta);
    out.alpha_seq_g2.push_back(ab2.alpha);
    out.beta_seq_g2.push_back(ab2.beta);
    if (i == n_steps) break;
    auto si = second_iterate_at_base(dr, omega_index + 2 * i);
    StepFunction<double> w = pf_apply(si.map, v);
    double phi = bv_norm(w);
    if (!(phi > 0)) throw NumericalError("eta_bracket: vanished iterate");
    v = scale(w, 1.0 / phi);
    h1 = scale(pf_apply(si.map, h1), 1.0 / phi);
    h2 = scale(pf_apply(si.map, h2), 1.0 / phi);
  }
  out.eta_g1 = 0.5 * (out.alpha_seq_g1.back() + out.beta_seq_g1.back());
  out.eta_g2 = 0.5 * (out.alpha_seq_g2.back() + out.beta_seq_g2.back());
  out.eta = out.eta_g1 - out.eta_g2;
  double w1 = out.beta_seq_g1.back() - out.alpha_seq_g1.back();
  double w2 = out.beta_seq_g2.back() - out.alpha_seq_g2.back();
  out.final_width = std::max(w1, w2);
  out.closed = std::isfinite(out.final_width) &&
               out.final_width <= close_tol * std::max({1.0, out.eta_g1, out.eta_g2});
  return out;
}

ContractionSchedule contraction_schedule(const DrivingStream& dr, std::int64_t omega_index,
                                         int horizon,
                                         const std::function<bool(std::int64_t)>& in_G,
                                         int k_P, double D_P) {
  if (k_P < 1 || horizon < k_P)
    throw std::domain_error("contraction_schedule: need horizon >= k_P >= 1");
  (void)dr;
  std::vector<std::int64_t> n_plus, n_minus;
  for (int n = 0; n <= horizon; ++n)
    if (in_G(omega_index + 2 * n)) n_plus.push_back(n);
  for (int n = 1; n <= horizon; ++n)
    if (in_G(omega_index - 2 * n)) n_minus.push_back(n);

  // k_P-separated subsequences m_j; backward starts at the first visit >= k_P.
  std::vector<std::int64_t> m_plus, m_minus;
  for (std::int64_t t : n_plus)
    if (m_plus.empty() ? true : t >= m_plus.back() + k_P) m_plus.push_back(t);
  for (std::int64_t t : n_minus)
    if (m_minus.empty() ? t >= k_P : t >= m_minus.back() + k_P) m_minus.push_back(t);

  ContractionSchedule out;
  out.k_P = k_P;
  out.D_P = D_P;
  out.l_plus.resize(horizon + 1);
  out.l_minus.resize(horizon + 1);
  out.j_plus.resize(horizon + 1);
  out.j_minus.resize(horizon + 1);
  out.predicted_diam.resize(horizon + 1, kInf);
  const double rho = contraction_factor(D_P);
  std::size_t ip = 0, im = 0, jp = 0, jm = 0;
  for (int n = 0; n <= horizon; ++n) {
    while (ip < n_plus.size() && n_plus[ip] <= n) ++ip;
    while (im < n_minus.size() && n_minus[im] <= n) ++im;
    while (jp < m_plus.size() && m_plus[jp] <= n - k_P) ++jp;
    while (jm < m_minus.size() && m_minus[jm] <= n) ++jm;
    out.l_plus[n] = static_cast<std::int64_t>(ip);
    out.l_minus[n] = static_cast<std::int64_t>(im);
    out.j_plus[n] = static_cast<int>(jp);
    out.j_minus[n] = static_cast<int>(jm);
    if (jp >= 1)
      out.predicted_diam[n] = std::pow(rho, static_cast<double>(jp - 1)) * D_P;
    // Lemma j-estimate, exact integer form.
    if ((out.j_plus[n] + 1) * static_cast<std::int64_t>(k_P) < out.l_plus[n])
      throw NumericalError("contraction_schedule: forward j-estimate violated");
    if ((out.j_minus[n] + 1) * static_cast<std::int64_t>(k_P) < out.l_minus[n] + 1)
      throw NumericalError("contraction_schedule: backward j-estimate violated");
  }
  return out;
}

namespace {

std::vector<StepFunction<double>> probe_family(const ConeParams<double>& cp,
                                               int grid_probe_stride, int random_probes) {
  std::vector<StepFunction<double>> probes;
  probes.push_back(StepFunction<double>::one());
  int cells = std::max(2, 2 * static_cast<int>(cp.a));
  double width = 2.0 / cells;
  for (int k = 0; k < cells; k += std::max(1, grid_probe_stride)) {
    double lo = -1.0 + k * width;
    probes.push_back(StepFunction<double>::indicator({lo, std::min(1.0, lo + width)}));
  }
  std::mt19937_64 rng(271828);
  std::uniform_real_distribution<double> unif(0.25, 4.0);
  for (int r = 0; r < random_probes; ++r) {
    std::vector<double> bp{-1.0};
    std::vector<double> val;
    int pieces = 4 + static_cast<int>(rng() % 5);
    for (int i = 1; i < pieces; ++i) bp.push_back(-1.0 + 2.0 * i / pieces);
    bp.push_back(1.0);
    for (int i = 0; i < pieces; ++i) val.push_back(unif(rng));
    StepFunction<double> f(bp, val);
    if (cone_contains(f, cp)) probes.push_back(f);
  }
  return probes;
}

}  // namespace

std::optional<int> first_contraction_time(const DrivingStream& dr, std::int64_t omega_index,
                                          int max_k, const ConeParams<double>& cp,
                                          int grid_probe_stride, int random_probes) {
  if (max_k < 1) throw std::domain_error("first_contraction_time: max_k must be >= 1");
  auto probes = probe_family(cp, grid_probe_stride, random_probes);
  StepFunction<double> ref = StepFunction<double>::one();
  for (int k = 1; k <= max_k; ++k) {
    auto si = second_iterate_at_base(dr, omega_index + 2 * (k - 1));
    for (auto& p : probes) p = pf_apply(si.map, p);
    ref = pf_apply(si.map, ref);
    bool all_positive = true;
    for (const auto& p : probes)
      if (!(bv_functionals(p).essinf > 0)) {
        all_positive = false;
        break;
      }
    if (!all_positive) continue;
    bool all_finite = true;
    for (const auto& p : probes) {
      if (!std::isfinite(hilbert_alpha_beta(p, ref, cp).theta)) {
        all_finite = false;
        break;
      }
    }
    if (all_finite) return k;
  }
  return std::nullopt;
}

double probe_theta_diameter(const DrivingStream& dr, std::int64_t omega_index, int k,
                            const ConeParams<double>& cp, int grid_probe_stride,
                            int random_probes) {
  auto probes = probe_family(cp, grid_probe_stride, random_probes);
  StepFunction<double> ref = StepFunction<double>::one();
  for (int step = 0; step < k; ++step) {
    auto si = second_iterate_at_base(dr, omega_index + 2 * step);
    for (auto& p : probes) p = pf_apply(si.map, p);
    ref = pf_apply(si.map, ref);
  }
  double diam = 0.0;
  for (const auto& p : probes) {
    double theta = hilbert_alpha_beta(p, ref, cp).theta;
    diam = std::max(diam, 2.0 * theta);
    if (!std::isfinite(diam)) break;
  }
  return diam;
}

}  // namespace pftent
