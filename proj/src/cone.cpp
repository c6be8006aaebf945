#include "pftent/cone.hpp"

#include <algorithm>
#include <cmath>

namespace pftent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ConeGeometry hilbert_alpha_beta(const StepFunction<double>& v,
                                const StepFunction<double>& w,
                                const ConeParams<double>& cp) {
  if (!cone_contains(v, cp) || !cone_contains(w, cp))
    throw std::domain_error("hilbert_alpha_beta: inputs must lie in the cone");
  const double D = cp.adaptedness();
  const double nv = bv_norm(v);
  const double nw = bv_norm(w);

  auto alpha_member = [&](double lam) {
    return cone_member_or_zero(subtract(w, scale(v, lam)), cp.a);
  };
  // initial bracket from alpha <= D ||w|| / ||v||
  double hi = 2.0 * D * nw / nv + 1.0;
  int guard = 0;
  while (alpha_member(hi)) {
    hi *= 2.0;
    if (++guard > 80) throw NumericalError("hilbert_alpha_beta: alpha unbounded");
  }
  double lo = 0.0;  // always feasible: w itself is in the cone
  while (hi - lo > kThetaTol * std::max(1.0, hi)) {
    double mid = 0.5 * (lo + hi);
    (alpha_member(mid) ? lo : hi) = mid;
  }
  const double alpha = lo;

  auto beta_member = [&](double mu) {
    return cone_member_or_zero(subtract(scale(v, mu), w), cp.a);
  };
  double bhi = std::max(1.0, nw / (D * nv));
  guard = 0;
  bool comparable = true;
  while (!beta_member(bhi)) {
    bhi *= 2.0;
    if (++guard > 100) {
      comparable = false;
      break;
    }
  }
  double beta;
  if (!comparable) {
    beta = kInf;
  } else {
    double blo = 0.0;
    while (bhi - blo > kThetaTol * std::max(1.0, bhi)) {
      double mid = 0.5 * (blo + bhi);
      (beta_member(mid) ? bhi : blo) = mid;
    }
    beta = bhi;
  }

  double theta;
  if (!(alpha > 0) || !std::isfinite(beta))
    theta = kInf;
  else
    theta = std::log(beta / alpha);
  if (theta < 0) theta = 0;  // collinear pair, bisection wobble
  return {alpha, beta, theta};
}

double contraction_factor(double diam) {
  if (!(diam > 0)) throw std::domain_error("contraction_factor: diameter must be positive");
  if (std::isinf(diam)) return 1.0;
  return std::tanh(0.25 * diam);
}

ThetaBound theta_to_constant_bound(const StepFunction<double>& f,
                                   const ConeParams<double>& cp) {
  if (!cone_contains(f, cp, cp.nu))
    throw std::domain_error("theta_to_constant_bound: f must lie in the subcone");
  auto B = bv_functionals(f);
  if (std::abs(B.l1 - 1.0) > 1e-9)
    throw std::domain_error("theta_to_constant_bound: f must have unit L1 norm");
  double bound;
  if (!(B.essinf > 0)) {
    bound = kInf;
  } else {
    bound = std::log((1.0 + cp.nu) / (1.0 - cp.nu) * B.esssup / B.essinf);
  }
  double actual = hilbert_alpha_beta(f, StepFunction<double>::one(), cp).theta;
  return {bound, actual};
}

NormBoundPair comparability_norm_bound(const StepFunction<double>& f,
                                       const StepFunction<double>& g,
                                       const ConeParams<double>& cp) {
  const double rf = bv_norm(f);
  const double rg = bv_norm(g);
  if (std::abs(rf - rg) > 1e-9 * std::max(rf, rg))
    throw std::invalid_argument("comparability_norm_bound: norms must agree");
  const double D = cp.adaptedness();
  const double theta = hilbert_alpha_beta(f, g, cp).theta;
  const double lhs = bv_norm(subtract(f, g));
  const double rhs = std::isfinite(theta) ? D * D * rf * std::expm1(theta) : kInf;
  return {lhs, rhs};
}

}  // namespace pftent
