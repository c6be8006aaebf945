#include "pftent/markov.hpp"

#include <algorithm>
#include <cmath>

#include "pftent/piecewise_linear.hpp"

namespace pftent {

namespace {

using Int = __int128;

template <class S>
S bisect_kappa(int n, int iterations) {
  auto value = [&](const S& k) {
    S base = S(2) + S(2) * k;
    S p(1);
    for (int i = 0; i < n; ++i) p *= base;
    return S(p * k - S(1));
  };
  S lo(0), hi = S(S(1) / S(2));
  for (int it = 0; it < iterations; ++it) {
    S mid = S((lo + hi) / S(2));
    if (mid == lo || mid == hi) break;
    (value(mid) < S(0) ? lo : hi) = mid;
  }
  return S((lo + hi) / S(2));
}

template <class S>
std::vector<S> partition_boundaries(int n) {
  const S kappa = bisect_kappa<S>(n, 400);
  const S half = S(S(1) / S(2));
  PiecewiseLinearMap<S> T = make_paired_tent<S>({kappa, kappa});
  std::vector<S> left{S(-1)};
  if (n >= 2) {
    S x = S(-kappa);
    for (int i = 1; i <= n - 1; ++i) {
      x = evaluate(T, x);
      left.push_back(x);
    }
  }
  left.push_back(S(-half));
  left.push_back(S(-kappa));
  left.push_back(S(0));
  std::vector<S> bounds = left;
  for (std::size_t i = left.size() - 1; i-- > 0;) bounds.push_back(S(-left[i]));
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    if (!(bounds[i] < bounds[i + 1]))
      throw NumericalError("markov partition: boundaries out of order");
  return bounds;
}

// Adjacency from the dynamics: every cell sits inside one tent branch, and
// the Markov property makes its image a contiguous run of cells.
template <class S>
std::vector<std::vector<int>> derive_adjacency(const std::vector<S>& bounds,
                                               const PiecewiseLinearMap<S>& T) {
  const S slack = num_traits<S>::point_tol();
  const std::size_t cells = bounds.size() - 1;
  auto boundary_index = [&](const S& x) -> std::size_t {
    for (std::size_t k = 0; k < bounds.size(); ++k)
      if (abs_val(S(x - bounds[k])) <= slack) return k;
    throw NumericalError("markov adjacency: image endpoint misses the partition");
  };
  std::vector<std::vector<int>> A(cells, std::vector<int>(cells, 0));
  for (std::size_t i = 0; i < cells; ++i) {
    S mid = S((bounds[i] + bounds[i + 1]) / S(2));
    const AffineBranch<S>* branch = nullptr;
    for (const auto& b : T.branches)
      if (b.domain.lo <= mid && mid <= b.domain.hi) {
        branch = &b;
        break;
      }
    if (!branch) throw NumericalError("markov adjacency: cell outside every branch");
    S p = branch->at(bounds[i]);
    S q = branch->at(bounds[i + 1]);
    if (q < p) std::swap(p, q);
    std::size_t k = boundary_index(p);
    std::size_t l = boundary_index(q);
    if (!(k < l)) throw NumericalError("markov adjacency: degenerate cell image");
    for (std::size_t j = k; j < l; ++j) A[i][j] = 1;
  }
  for (const auto& row : A) {
    int sum = 0;
    for (int x : row) sum += x;
    if (sum == 0) throw NumericalError("markov adjacency: empty row");
  }
  return A;
}

double power_radius(const std::vector<std::vector<int>>& A, bool transpose) {
  const std::size_t n = A.size();
  std::vector<double> v(n, 1.0), w(n, 0.0);
  double ratio = 0.0;
  for (int it = 0; it < 60000; ++it) {
    double maxw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        s += (transpose ? A[j][i] : A[i][j]) * v[j];
      w[i] = s;
      maxw = std::max(maxw, std::abs(s));
    }
    ratio = maxw;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / maxw;
  }
  return ratio;
}

std::vector<double> power_left_vector(const std::vector<std::vector<int>>& A) {
  const std::size_t n = A.size();
  std::vector<double> v(n, 1.0), w(n, 0.0);
  for (int it = 0; it < 60000; ++it) {
    double maxw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += A[j][i] * v[j];
      w[i] = s;
      maxw = std::max(maxw, std::abs(s));
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / maxw;
  }
  return v;
}

// Samuelson-Berkowitz: division-free characteristic polynomial.
std::vector<Int> berkowitz(const std::vector<std::vector<int>>& A) {
  const std::size_t n = A.size();
  std::vector<Int> C{Int(1), -Int(A[0][0])};
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<Int> t(i + 2);
    t[0] = 1;
    t[1] = -Int(A[i][i]);
    std::vector<Int> v(i);
    for (std::size_t r = 0; r < i; ++r) v[r] = A[r][i];
    for (std::size_t k = 2; k <= i + 1; ++k) {
      Int dot = 0;
      for (std::size_t r = 0; r < i; ++r) dot += Int(A[i][r]) * v[r];
      t[k] = -dot;
      if (k <= i) {
        std::vector<Int> mv(i, 0);
        for (std::size_t r = 0; r < i; ++r)
          for (std::size_t c = 0; c < i; ++c) mv[r] += Int(A[r][c]) * v[c];
        v = std::move(mv);
      }
    }
    std::vector<Int> next(i + 2, 0);
    for (std::size_t j = 0; j < next.size(); ++j)
      for (std::size_t k = 0; k <= std::min(j, t.size() - 1); ++k)
        if (j - k < C.size()) next[j] += t[k] * C[j - k];
    C = std::move(next);
  }
  return C;
}

std::vector<long long> to_int64(const std::vector<Int>& c) {
  std::vector<long long> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] > Int(std::numeric_limits<long long>::max()) ||
        c[i] < Int(std::numeric_limits<long long>::min()))
      throw NumericalError("markov charpoly: coefficient overflow");
    out[i] = static_cast<long long>(c[i]);
  }
  return out;
}

double bisect_r(int n) {
  // smallest root of (2-2r)^n r = 1 in (0, 1/(n+1)); the value function is
  // increasing there and tops out at r* = 1/(n+1)
  auto value = [&](double r) { return std::pow(2.0 - 2.0 * r, n) * r - 1.0; };
  double lo = 1e-12, hi = 1.0 / (n + 1.0);
  if (!(value(hi) > 0))
    throw std::domain_error("exact_lambda2: no second real root for this n");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (value(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double solve_kappa(int n) {
  if (n < 1) throw std::domain_error("solve_kappa: n must be >= 1");
  return bisect_kappa<double>(n, 200);
}

std::vector<Interval<double>> build_partition(int n) {
  if (n < 1) throw std::domain_error("build_partition: n must be >= 1");
  auto bounds = partition_boundaries<BigFloat>(n);
  std::vector<Interval<double>> cells;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    cells.push_back({bounds[i].convert_to<double>(), bounds[i + 1].convert_to<double>()});
  return cells;
}

MarkovModel adjacency_matrix(int n) {
  if (n < 1) throw std::domain_error("adjacency_matrix: n must be >= 1");
  MarkovModel m;
  m.n = n;
  auto bounds = partition_boundaries<BigFloat>(n);
  const BigFloat kappa = bisect_kappa<BigFloat>(n, 400);
  m.kappa = kappa.convert_to<double>();
  PiecewiseLinearMap<BigFloat> T = make_paired_tent<BigFloat>({kappa, kappa});
  m.adjacency = derive_adjacency(bounds, T);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    m.partition.push_back({bounds[i].convert_to<double>(), bounds[i + 1].convert_to<double>()});
  m.rho = power_radius(m.adjacency, false);
  return m;
}

std::vector<long long> markov_charpoly(int n) {
  MarkovModel m = adjacency_matrix(n);
  return to_int64(berkowitz(m.adjacency));
}

std::vector<long long> markov_charpoly_target(int n) {
  // (x^{n+1} - 2x^n)^2 - 4, times x^2, in descending powers of degree 2n+4
  std::vector<long long> sq(2 * n + 3, 0);
  sq[0] = 1;        // x^{2n+2}
  sq[1] = -4;       // x^{2n+1}
  sq[2] = 4;        // x^{2n}
  sq[2 * n + 2] += -4;  // constant term of the difference of squares
  std::vector<long long> out(2 * n + 5, 0);
  for (std::size_t i = 0; i < sq.size(); ++i) out[i] = sq[i];
  return out;
}

bool char_poly_verify(int n) {
  return markov_charpoly(n) == markov_charpoly_target(n);
}

MarkovModel exact_lambda2(int n) {
  MarkovModel m = adjacency_matrix(n);
  m.charpoly_ok = char_poly_verify(n);
  m.r_n = bisect_r(n);
  m.lambda2 = std::log((2.0 - 2.0 * m.r_n) / (2.0 + 2.0 * m.kappa));
  m.ratio_to_minus_2kappa = m.lambda2 / (-2.0 * m.kappa);
  m.asymptotic_regime = n >= 5;
  return m;
}

StepFunction<double> markov_invariant_density(int n) {
  MarkovModel m = adjacency_matrix(n);
  std::vector<double> coeff = power_left_vector(m.adjacency);
  std::vector<double> bp{-1.0};
  for (const auto& cell : m.partition) bp.push_back(cell.hi);
  double mass = 0.0;
  for (std::size_t i = 0; i < coeff.size(); ++i) mass += coeff[i] * m.partition[i].measure();
  for (auto& c : coeff) c /= mass;
  return StepFunction<double>(std::move(bp), std::move(coeff));
}

}  // namespace pftent
