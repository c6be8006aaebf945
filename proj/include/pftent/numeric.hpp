#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace pftent {

// Exact scalar for the zero-tolerance sweeps.
using Rational = boost::multiprecision::cpp_rational;

// High-precision scalar for the Markov pipeline (332 bits of mantissa).
using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-scalar comparison slack for breakpoint and endpoint matching.
template <class S>
struct num_traits;

template <>
struct num_traits<double> {
  static constexpr bool exact = false;
  static double point_tol() { return 1e-12; }
  static double to_double(double x) { return x; }
};

template <>
struct num_traits<Rational> {
  static constexpr bool exact = true;
  static Rational point_tol() { return Rational(0); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

template <>
struct num_traits<BigFloat> {
  static constexpr bool exact = false;
  // Cell-boundary matching slack for the Markov partition arithmetic.
  static BigFloat point_tol() {
    static const BigFloat tol = boost::multiprecision::ldexp(BigFloat(1), -180);
    return tol;
  }
  static double to_double(const BigFloat& x) { return x.convert_to<double>(); }
};

template <class S>
S abs_val(const S& x) {
  return x < S(0) ? S(-x) : x;
}

// log(tanh(x)) for x > 0 without loss near tanh(x) = 1.
inline double log_tanh(double x) {
  if (!(x > 0)) throw std::domain_error("log_tanh: argument must be positive");
  if (x > 350.0) {
    // log(tanh x) = -2 exp(-2x) up to relative error exp(-2x).
    long double t = -2.0L * std::exp(-2.0L * static_cast<long double>(x));
    return static_cast<double>(t);
  }
  return std::log1p(-2.0 / (std::expm1(2.0 * x) + 2.0));
}

// Ceiling with a nudge so values that are mathematically integers do not
// round up from float noise.
inline int ceil_int(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0,1) from a 64-bit word.
inline double u64_to_unit(std::uint64_t u) {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

}  // namespace pftent
