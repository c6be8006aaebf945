#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pftent/cone.hpp"
#include "pftent/driving.hpp"
#include "pftent/step_function.hpp"

namespace pftent {

// v(omega) estimate from the pullback construction, with the equivariance
// residual ||P_omega v - phi v_next|| measured against an independent
// pullback at sigma^2(omega).
struct EquivariantDensity {
  std::int64_t omega_index = 0;
  StepFunction<double> density;
  double phi = 0.0;
  int pullback_depth = 0;
  double residual = 0.0;
};

struct PullbackResult {
  EquivariantDensity density;
  std::vector<double> increments;  // ||v_d - v_{d-1}||_BV per depth step
};

enum class PullbackNorm { bv, l1 };

PullbackResult pullback_density(const DrivingStream& dr, std::int64_t omega_index,
                                int depth,
                                const StepFunction<double>& seed_fn = StepFunction<double>::one(),
                                PullbackNorm norm = PullbackNorm::bv);

// (1/(2n)) sum log phi-hat over the second-iterate orbit; the halving maps
// second-iterate exponents back to the base cocycle.
double lambda1_birkhoff(const DrivingStream& dr, std::int64_t omega_index, int n_steps,
                        int pullback_depth = 40);

struct SpectrumEstimate {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int n_steps = 0;
  double stderr_est = 0.0;
};

// Power iteration on ker(eta) starting from 1_{[-1,0]} - 1_{[0,1]}.
// With burn_in > 0 the accumulation starts after burn_in steps, which removes
// the O(1/n) constant bias on constant drivings.
SpectrumEstimate lambda2_power_iteration(const DrivingStream& dr, std::int64_t omega_index,
                                         int n_steps, int renorm_every, int burn_in = 0);

struct EtaBracket {
  std::vector<double> alpha_seq_g1, beta_seq_g1;
  std::vector<double> alpha_seq_g2, beta_seq_g2;
  double eta = 0.0;
  double eta_g1 = 0.0, eta_g2 = 0.0;
  double final_width = 0.0;
  bool closed = false;
  double integral_v = 0.0;  // integral of the v-hat estimate at omega
};

// Bracketing construction of eta(omega, x) through the decomposition
// x = (x + c 1) - c 1 with both parts in C_a.
EtaBracket eta_bracket(const DrivingStream& dr, std::int64_t omega_index,
                       const StepFunction<double>& x, int n_steps,
                       const ConeParams<double>& cp, int pullback_depth = 50,
                       double close_tol = 1e-6);

struct ContractionSchedule {
  int k_P = 0;
  double D_P = 0.0;
  std::vector<std::int64_t> l_plus, l_minus;  // visit counts per horizon step
  std::vector<int> j_plus, j_minus;           // k_P-separated subsequence counts
  std::vector<double> predicted_diam;         // forward-direction bound
};

// Visit bookkeeping of Prop exp-bound / Lemma j-estimate.  in_G receives a
// base index.  Throws NumericalError if the j-estimate inequalities fail.
ContractionSchedule contraction_schedule(const DrivingStream& dr, std::int64_t omega_index,
                                         int horizon,
                                         const std::function<bool(std::int64_t)>& in_G,
                                         int k_P, double D_P);

// Smallest k <= max_k with every probe image strictly positive (hence a
// finite theta-diameter via the subcone distance bound); nullopt otherwise.
std::optional<int> first_contraction_time(const DrivingStream& dr, std::int64_t omega_index,
                                          int max_k, const ConeParams<double>& cp,
                                          int grid_probe_stride = 8, int random_probes = 4);

// 2 sup_h theta(P^(k) h, P^(k) 1) over the probe family: the empirical stand-in
// for the theta-diameter of the image cone.
double probe_theta_diameter(const DrivingStream& dr, std::int64_t omega_index, int k,
                            const ConeParams<double>& cp, int grid_probe_stride = 8,
                            int random_probes = 4);

}  // namespace pftent
