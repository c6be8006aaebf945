#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "pftent/step_function.hpp"

namespace pftent {

// Parameters of the cone C_a = {f >= 0, Var(f) <= a ||f||_1} \ {0} and the
// target subcone C_{nu a}.
template <class S>
struct ConeParams {
  S a;
  S nu;

  S adaptedness() const { return S(S(2) * a + S(1)); }  // D = 2a+1
};

inline ConeParams<double> default_cone() { return {120.0, 0.8}; }

// Membership in C_{coeff} union {0} for coeff = scale*a.
template <class S>
bool cone_member_or_zero(const StepFunction<S>& f, const S& var_coeff) {
  if (!f.nonnegative()) return false;
  return variation(f) <= S(var_coeff * l1_norm(f));
}

template <class S>
bool cone_contains(const StepFunction<S>& f, const ConeParams<S>& cp, const S& scale) {
  if (f.is_zero()) return false;
  return cone_member_or_zero(f, S(scale * cp.a));
}

template <class S>
bool cone_contains(const StepFunction<S>& f, const ConeParams<S>& cp) {
  return cone_contains(f, cp, S(1));
}

struct ConeGeometry {
  double alpha;
  double beta;   // may be +inf
  double theta;  // log(beta/alpha); +inf when incomparable
};

inline constexpr double kThetaTol = 1e-10;  // relative bisection tolerance

// alpha = sup{ lambda >= 0 : w - lambda v in C_a u {0} },
// beta  = inf{ mu >= 0 : mu v - w in C_a u {0} }, via bisection against the
// exact membership predicate.  alpha is reported from the feasible side and
// beta from the infeasible side, so theta is never underestimated.
ConeGeometry hilbert_alpha_beta(const StepFunction<double>& v,
                                const StepFunction<double>& w,
                                const ConeParams<double>& cp);

// tanh(diam/4); equals 1 for an infinite diameter.
double contraction_factor(double diam);

struct ThetaBound {
  double bound;   // log((1+nu)/(1-nu) * esssup/essinf)
  double actual;  // theta_a(f, 1)
};

// Bound of the projective distance to the constant function for f in
// C_{nu a} with unit integral norm; also evaluates the actual distance.
ThetaBound theta_to_constant_bound(const StepFunction<double>& f,
                                   const ConeParams<double>& cp);

// Checks ||g||_BVmax <= (2a+1) ||f||_BVmax for -f <= g <= f in the cone
// order.  Throws std::invalid_argument when the order precondition fails.
template <class S>
bool d_adapted_verify(const StepFunction<S>& f, const StepFunction<S>& g,
                      const ConeParams<S>& cp) {
  StepFunction<S> fm = subtract(f, g);
  StepFunction<S> fp = add(f, g);
  if (!cone_member_or_zero(fm, cp.a) || !cone_member_or_zero(fp, cp.a))
    throw std::invalid_argument("d_adapted_verify: pair is not cone-ordered");
  return bv_norm_max(g) <= S(cp.adaptedness() * bv_norm_max(f));
}

struct NormBoundPair {
  double lhs;  // ||f-g||_BV
  double rhs;  // D^2 r (e^theta - 1)
};

// ||f-g|| <= D^2 r (e^{theta(f,g)} - 1) for equal-norm cone elements.
NormBoundPair comparability_norm_bound(const StepFunction<double>& f,
                                       const StepFunction<double>& g,
                                       const ConeParams<double>& cp);

}  // namespace pftent
