#pragma once

#include <cstdint>

#include "pftent/cone.hpp"
#include "pftent/step_function.hpp"

namespace pftent {

// Random rational step functions and epsilon quadruples for the exact
// Lasota-Yorke and cone sweeps.
StepFunction<Rational> random_rational_step(std::uint64_t& state, int max_pieces = 8,
                                            bool nonnegative = false);
Rational random_rational_unit(std::uint64_t& state);  // in [0,1], denominator 100
StepFunction<Rational> random_rational_cone_element(std::uint64_t& state,
                                                    const ConeParams<Rational>& cp);

struct LySweepResult {
  int samples = 0;
  int violations_general = 0;
  int sharp_cases = 0;
  int violations_sharp = 0;
  double max_lhs_over_rhs = 0.0;
};

// Var(P f) <= (3/4) Var f + 6 ||f||_1 over random (f, epsilon-quadruple)
// cases, exact arithmetic; the 1/2, 4 form is checked whenever all four
// epsilons are <= 1/2.
LySweepResult ly_sweep_rational(int samples, std::uint64_t seed);

// Same sweep in double arithmetic with slack 1e-9.
LySweepResult ly_sweep_float(int samples, std::uint64_t seed);

struct ConeSweepResult {
  int samples = 0;
  int violations = 0;
};

// P_omega(C_a) subset C_{nu a} over random cone elements, exact arithmetic.
ConeSweepResult cone_preservation_sweep_rational(int samples, std::uint64_t seed);

struct AdaptednessSweepResult {
  int samples = 0;
  int violations_triangle = 0;
  int violations_adapted = 0;
  double max_norm_ratio = 0.0;
};

// |Var f - Var g| <= Var(f-g) on random pairs and the (2a+1)-adaptedness
// bound on random cone-ordered pairs, exact arithmetic.
AdaptednessSweepResult adaptedness_sweep_rational(int samples, std::uint64_t seed);

}  // namespace pftent
