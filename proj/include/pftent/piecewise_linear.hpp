#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pftent/interval.hpp"
#include "pftent/numeric.hpp"

namespace pftent {

template <class S>
struct AffineBranch {
  Interval<S> domain;
  S slope;
  S intercept;

  S at(const S& x) const { return S(slope * x + intercept); }
  S inverse_at(const S& y) const { return S((y - intercept) / slope); }

  Interval<S> image() const {
    S a = at(domain.lo);
    S b = at(domain.hi);
    if (a <= b) return {a, b};
    return {b, a};
  }
};

// Piecewise-linear map on [-1,1]: finitely many affine branches whose
// domains tile [-1,1] left to right.
template <class S>
struct PiecewiseLinearMap {
  std::vector<AffineBranch<S>> branches;
};

template <class S>
struct PairedTentParams {
  S eps1;
  S eps2;
};

// The 4-branch paired tent map T_{eps1,eps2}.  The isolated value T(0) = 0
// is measure-zero and not represented.
template <class S>
PiecewiseLinearMap<S> make_paired_tent(const PairedTentParams<S>& p) {
  if (p.eps1 < S(0) || p.eps1 > S(1) || p.eps2 < S(0) || p.eps2 > S(1))
    throw std::domain_error("make_paired_tent: parameters must lie in [0,1]");
  const S one(1), two(2);
  const S half = S(S(1) / S(2));
  const S s1 = S(two * (one + p.eps1));
  const S s2 = S(two * (one + p.eps2));
  PiecewiseLinearMap<S> m;
  m.branches = {
      AffineBranch<S>{{S(-1), S(-half)}, s1, S(s1 - one)},
      AffineBranch<S>{{S(-half), S(0)}, S(-s1), S(-one)},
      AffineBranch<S>{{S(0), half}, S(-s2), one},
      AffineBranch<S>{{half, one}, s2, S(one - s2)},
  };
  return m;
}

// Point evaluation; at shared branch endpoints the left branch wins
// (an a.e.-irrelevant convention).
template <class S>
S evaluate(const PiecewiseLinearMap<S>& m, const S& x) {
  if (x < S(-1) || x > S(1))
    throw std::domain_error("evaluate: point outside [-1,1]");
  std::size_t i = 0;
  while (i + 1 < m.branches.size() && !(x <= m.branches[i].domain.hi)) ++i;
  return m.branches[i].at(x);
}

// second o first, with branch domains I_ij = D_i \cap first^{-1}(D_j).
// Degenerate intersections are pruned.
template <class S>
PiecewiseLinearMap<S> compose_second_iterate(const PiecewiseLinearMap<S>& first,
                                             const PiecewiseLinearMap<S>& second) {
  const S tol = num_traits<S>::point_tol();
  PiecewiseLinearMap<S> out;
  for (const auto& a : first.branches) {
    const Interval<S> img = a.image();
    for (const auto& b : second.branches) {
      S lo = std::max(img.lo, b.domain.lo);
      S hi = std::min(img.hi, b.domain.hi);
      if (!(hi - lo > tol)) continue;
      S u = a.inverse_at(lo);
      S v = a.inverse_at(hi);
      if (v < u) std::swap(u, v);
      out.branches.push_back(AffineBranch<S>{
          {u, v}, S(b.slope * a.slope), S(b.slope * a.intercept + b.intercept)});
    }
  }
  std::sort(out.branches.begin(), out.branches.end(),
            [](const AffineBranch<S>& x, const AffineBranch<S>& y) {
              return x.domain.lo < y.domain.lo;
            });
  return out;
}

// A second-iterate map together with the parameters that generated it.
// The sharp Lasota-Yorke branch needs the epsilon quadruple, which is not
// recoverable from the composed map alone.
template <class S>
struct SecondIterate {
  PairedTentParams<S> step0;  // epsilons at omega
  PairedTentParams<S> step1;  // epsilons at sigma(omega)
  PiecewiseLinearMap<S> map;
};

template <class S>
SecondIterate<S> make_second_iterate(const PairedTentParams<S>& at_omega,
                                     const PairedTentParams<S>& at_sigma_omega) {
  return {at_omega, at_sigma_omega,
          compose_second_iterate(make_paired_tent(at_omega),
                                 make_paired_tent(at_sigma_omega))};
}

// All one-tailed branch endpoints whose one-sided image is interior to
// [-1,1].
template <class S>
std::vector<OneTailedPoint<S>> hanging_points(const PiecewiseLinearMap<S>& m) {
  const S tol = num_traits<S>::point_tol();
  auto interior = [&](const S& y) {
    return abs_val(S(y - S(1))) > tol && abs_val(S(y + S(1))) > tol;
  };
  std::vector<OneTailedPoint<S>> pts;
  for (const auto& b : m.branches) {
    if (interior(b.at(b.domain.lo))) pts.push_back({b.domain.lo, Side::plus});
    if (interior(b.at(b.domain.hi))) pts.push_back({b.domain.hi, Side::minus});
  }
  std::sort(pts.begin(), pts.end(),
            [](const OneTailedPoint<S>& p, const OneTailedPoint<S>& q) {
              if (p.x != q.x) return p.x < q.x;
              return p.side == Side::minus && q.side == Side::plus;
            });
  return pts;
}

// T(I) as a minimal union of closed intervals.
template <class S>
std::vector<Interval<S>> image_of_interval(const PiecewiseLinearMap<S>& m,
                                           const Interval<S>& I) {
  if (!I.nonempty()) throw std::domain_error("image_of_interval: empty interval");
  const S tol = num_traits<S>::point_tol();
  std::vector<Interval<S>> parts;
  for (const auto& b : m.branches) {
    S lo = std::max(I.lo, b.domain.lo);
    S hi = std::min(I.hi, b.domain.hi);
    if (!(hi - lo > tol)) continue;
    S p = b.at(lo);
    S q = b.at(hi);
    if (q < p) std::swap(p, q);
    parts.push_back({p, q});
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval<S>& x, const Interval<S>& y) { return x.lo < y.lo; });
  std::vector<Interval<S>> merged;
  for (const auto& part : parts) {
    if (!merged.empty() && part.lo <= S(merged.back().hi + tol)) {
      if (part.hi > merged.back().hi) merged.back().hi = part.hi;
    } else {
      merged.push_back(part);
    }
  }
  return merged;
}

template <class S>
S min_abs_slope(const PiecewiseLinearMap<S>& m) {
  S best = abs_val(m.branches.front().slope);
  for (const auto& b : m.branches) best = std::min(best, abs_val(b.slope));
  return best;
}

template <class S>
S max_abs_slope(const PiecewiseLinearMap<S>& m) {
  S best = abs_val(m.branches.front().slope);
  for (const auto& b : m.branches) best = std::max(best, abs_val(b.slope));
  return best;
}

}  // namespace pftent
