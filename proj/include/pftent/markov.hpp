#pragma once

#include <vector>

#include "pftent/interval.hpp"
#include "pftent/step_function.hpp"

namespace pftent {

// Exact spectral data of the Markov paired tent map T_{kappa_n, kappa_n}.
struct MarkovModel {
  int n = 0;
  double kappa = 0;
  std::vector<Interval<double>> partition;      // 2n+4 cells, left to right
  std::vector<std::vector<int>> adjacency;      // A[i][j] = 1 iff T(R_i) contains R_j
  double rho = 0;                               // power-iteration spectral radius
  double r_n = 0;                               // 2 - 2 r_n = second real root
  double lambda2 = 0;                           // log((2-2r_n)/(2+2kappa_n))
  double ratio_to_minus_2kappa = 0;
  bool charpoly_ok = false;
  bool asymptotic_regime = false;               // n >= 5
};

// Unique root of (2+2k)^n k = 1 in (0, 1/2).
double solve_kappa(int n);

// The 2n+4-cell Markov partition, built from forward images of -kappa_n and
// kappa_n in 332-bit arithmetic and rounded to double.
std::vector<Interval<double>> build_partition(int n);

// Partition, dynamics-derived adjacency, and the power-iteration spectral
// radius.  Throws NumericalError if a cell image fails to align with the
// partition (Markov property violation).
MarkovModel adjacency_matrix(int n);

// Characteristic polynomial of A_n in descending powers, computed with
// division-free integer arithmetic.
std::vector<long long> markov_charpoly(int n);

// x^2 (x^n(x-2) - 2)(x^n(x-2) + 2), expanded, descending powers.
std::vector<long long> markov_charpoly_target(int n);

bool char_poly_verify(int n);

// Full model including the second root r_n and lambda2.  Requires n >= 4;
// below that the polynomial x^n(x-2)+2 has no root in (1,2).
MarkovModel exact_lambda2(int n);

// Invariant density of T_{kappa_n,kappa_n} as a step function on the Markov
// partition, normalized to unit integral.
StepFunction<double> markov_invariant_density(int n);

}  // namespace pftent
