#pragma once

#include <vector>

#include "pftent/numeric.hpp"

namespace pftent {

// Closed subinterval of the state space [-1,1].  The measure is normalized
// Lebesgue measure, so measure([-1,1]) = 1.
template <class S>
struct Interval {
  S lo;
  S hi;

  S length() const { return S(hi - lo); }
  S measure() const { return S((hi - lo) / S(2)); }
  bool nonempty() const { return lo < hi; }
  bool contains(const S& x) const { return lo <= x && x <= hi; }
};

template <class S>
bool same_interval(const Interval<S>& a, const Interval<S>& b, const S& tol) {
  return abs_val(S(a.lo - b.lo)) <= tol && abs_val(S(a.hi - b.hi)) <= tol;
}

enum class Side { minus, plus };

// One-tailed point (x, s): x approached from side s.
template <class S>
struct OneTailedPoint {
  S x;
  Side side;
};

template <class S>
bool operator==(const OneTailedPoint<S>& a, const OneTailedPoint<S>& b) {
  return a.x == b.x && a.side == b.side;
}

}  // namespace pftent
