#pragma once

#include <cstdint>
#include <functional>

#include "pftent/cone.hpp"
#include "pftent/driving.hpp"

namespace pftent {

struct BasicConstants {
  double M;      // (1/2) min{ int eps1, int eps2 }
  double D_eps;  // 4 (1 + B)^2
  double B;      // max esssup of the effective epsilons
};

BasicConstants basic_constants(const DrivingStream& dr);

struct CoveringTimes {
  double a;
  double nu;
  int m1;  // interval-to-half covering time for tau = 1/(2a)
  int m3;  // leaked-mass expansion time
  int d;   // two-way leakage wait
  double G_P_freq;
};

CoveringTimes covering_times(const DrivingStream& dr, const ConeParams<double>& cp);

struct BoundReport {
  double M = 0, D_eps = 0, B = 0;
  int m1 = 0, m3 = 0, d = 0, k_P = 0;
  double D_P = 0;
  double G_P_freq = 0;
  double C = 0;                    // from the proof's D_P (canonical)
  double C_statement_literal = 0;  // from the theorem statement's printed formula
  double a = 0, nu = 0;
};

BoundReport spectral_gap_bound(const DrivingStream& dr, const ConeParams<double>& cp);

// Membership of a base index in G_P = sigma^{-2 m1}(G); used to drive
// contraction_schedule.
std::function<bool(std::int64_t)> g_p_predicate(const DrivingStream& dr,
                                                const ConeParams<double>& cp);

struct AsymptoticBound {
  double kappa = 0;
  int k_P_kappa = 0;
  int m3_kappa = 0;
  double gamma = 0;
  double C1 = 0;
  double c2 = 0;
  double f = 0;     // half the smaller leakage frequency
  double freq = 0;  // mu(G'_P)
  bool asymptotic_regime = true;  // m3(kappa) >= N0
};

// Constants of the scaled-family bound; the stream's own kappa is treated as
// the base scale and `kappa` multiplies it.
AsymptoticBound asymptotic_bound(const DrivingStream& dr, const ConeParams<double>& cp,
                                 double kappa);

// Smallest integer cone parameter preserving the cone for the family:
// ceil(C1/(nu - CVar)) with the sharp constants when every epsilon <= 1/2.
double canonical_cone_a(const DrivingStream& dr, double nu);

}  // namespace pftent
