#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pftent/interval.hpp"
#include "pftent/numeric.hpp"
#include "pftent/piecewise_linear.hpp"

namespace pftent {

// Piecewise-constant representative of a BV class on [-1,1], stored in the
// minimal-variation form: open-interval values only, no point values.
// breakpoints: -1 = x_0 < x_1 < ... < x_m = 1; values: c_1..c_m on
// (x_{i-1}, x_i).  Adjacent equal values are merged.
template <class S>
class StepFunction {
 public:
  StepFunction() : breakpoints_{S(-1), S(1)}, values_{S(0)} {}

  StepFunction(std::vector<S> breakpoints, std::vector<S> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size() + 1 || values_.empty())
      throw std::invalid_argument("StepFunction: size mismatch");
    canonicalize();
  }

  static StepFunction constant(const S& c) { return StepFunction({S(-1), S(1)}, {c}); }

  static StepFunction one() { return constant(S(1)); }

  // Indicator of I within [-1,1].
  static StepFunction indicator(const Interval<S>& I) {
    std::vector<S> bp{S(-1)};
    std::vector<S> val;
    if (I.lo > S(-1)) {
      bp.push_back(I.lo);
      val.push_back(S(0));
    }
    bp.push_back(I.hi < S(1) ? I.hi : S(1));
    val.push_back(S(1));
    if (I.hi < S(1)) {
      bp.push_back(S(1));
      val.push_back(S(0));
    }
    return StepFunction(std::move(bp), std::move(val));
  }

  const std::vector<S>& breakpoints() const { return breakpoints_; }
  const std::vector<S>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }

  // Value of the piece containing x; at a breakpoint the piece to the right
  // (diagnostic use only, the class is an a.e. object).
  S value_at(const S& x) const {
    if (x < S(-1) || x > S(1))
      throw std::domain_error("StepFunction::value_at: outside [-1,1]");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
    if (idx == 0) idx = 1;
    if (idx > values_.size()) idx = values_.size();
    return values_[idx - 1];
  }

  bool is_zero() const {
    for (const auto& c : values_)
      if (c != S(0)) return false;
    return true;
  }

  bool nonnegative() const {
    for (const auto& c : values_)
      if (c < S(0)) return false;
    return true;
  }

  // Merge adjacent cells whose values differ by at most reltol * max|value|,
  // preserving the integral.  Used to keep long float-mode orbits compact;
  // a no-op at reltol = 0 unless values match exactly.
  void coarsen(const S& reltol) {
    S scale(0);
    for (const auto& c : values_) scale = std::max(scale, abs_val(c));
    S tol = S(reltol * scale);
    std::vector<S> bp{breakpoints_.front()};
    std::vector<S> val;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!val.empty() && abs_val(S(val.back() - values_[i])) <= tol) {
        S w0 = S(bp[bp.size() - 1] - bp[bp.size() - 2]);
        S w1 = S(breakpoints_[i + 1] - breakpoints_[i]);
        val.back() = S((val.back() * w0 + values_[i] * w1) / (w0 + w1));
        bp.back() = breakpoints_[i + 1];
      } else {
        val.push_back(values_[i]);
        bp.push_back(breakpoints_[i + 1]);
      }
    }
    breakpoints_ = std::move(bp);
    values_ = std::move(val);
  }

 private:
  void canonicalize() {
    const S tol = num_traits<S>::point_tol();
    if (!(abs_val(S(breakpoints_.front() + S(1))) <= tol) ||
        !(abs_val(S(breakpoints_.back() - S(1))) <= tol))
      throw std::invalid_argument("StepFunction: domain must be [-1,1]");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
      if (breakpoints_[i + 1] < breakpoints_[i])
        throw std::invalid_argument("StepFunction: breakpoints not increasing");
    // Kept grid: endpoints plus interior points separated by more than tol.
    std::vector<S> kept{S(-1)};
    for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
      if (breakpoints_[i] - kept.back() > tol && S(1) - breakpoints_[i] > tol)
        kept.push_back(breakpoints_[i]);
    }
    kept.push_back(S(1));
    // Value per kept cell: exact passthrough when one input piece covers the
    // cell, integral-weighted average when slivers fold in.
    std::vector<S> mass(kept.size() - 1, S(0));
    std::vector<S> val(kept.size() - 1, S(0));
    std::vector<int> cover(kept.size() - 1, 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      S lo = std::max(breakpoints_[i], S(-1));
      S hi = std::min(breakpoints_[i + 1], S(1));
      while (lo < hi) {
        while (k + 2 < kept.size() && !(lo < kept[k + 1])) ++k;
        S cut = std::min(hi, kept[k + 1]);
        mass[k] += S(values_[i] * S(cut - lo));
        val[k] = values_[i];
        ++cover[k];
        lo = cut;
      }
    }
    for (std::size_t j = 0; j + 1 < kept.size(); ++j)
      if (cover[j] > 1) val[j] = S(mass[j] / S(kept[j + 1] - kept[j]));
    // Merge adjacent equal values.
    std::vector<S> bp2{kept.front()};
    std::vector<S> val2;
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (!val2.empty() && val2.back() == val[i]) {
        bp2.back() = kept[i + 1];
      } else {
        val2.push_back(val[i]);
        bp2.push_back(kept[i + 1]);
      }
    }
    breakpoints_ = std::move(bp2);
    values_ = std::move(val2);
  }

  std::vector<S> breakpoints_;
  std::vector<S> values_;
};

// Var(f) of the minimal-variation representative: sum of interior jumps,
// no boundary terms at +-1.
template <class S>
S variation(const StepFunction<S>& f) {
  S v(0);
  const auto& c = f.values();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) v += abs_val(S(c[i + 1] - c[i]));
  return v;
}

template <class S>
struct BvFunctionals {
  S l1;
  S integral;
  S essinf;
  S esssup;
  S bv_norm;  // ||f||_1 + Var(f)
};

template <class S>
BvFunctionals<S> bv_functionals(const StepFunction<S>& f) {
  const auto& bp = f.breakpoints();
  const auto& c = f.values();
  S l1(0), integral(0);
  S lo = c[0], hi = c[0];
  for (std::size_t i = 0; i < c.size(); ++i) {
    S w = S(S(bp[i + 1] - bp[i]) / S(2));
    l1 += S(abs_val(c[i]) * w);
    integral += S(c[i] * w);
    lo = std::min(lo, c[i]);
    hi = std::max(hi, c[i]);
  }
  return {l1, integral, lo, hi, S(l1 + variation(f))};
}

template <class S>
S l1_norm(const StepFunction<S>& f) {
  return bv_functionals(f).l1;
}

template <class S>
S integral(const StepFunction<S>& f) {
  return bv_functionals(f).integral;
}

template <class S>
S bv_norm(const StepFunction<S>& f) {
  return bv_functionals(f).bv_norm;
}

// max{||f||_1, Var(f)}; the appendix norm used by d_adapted_verify.
template <class S>
S bv_norm_max(const StepFunction<S>& f) {
  return std::max(l1_norm(f), variation(f));
}

namespace detail {

// Sorted union of points with per-scalar dedup slack.
template <class S>
std::vector<S> merge_grid(std::vector<S> pts) {
  const S tol = num_traits<S>::point_tol();
  std::sort(pts.begin(), pts.end());
  std::vector<S> grid;
  for (const auto& p : pts) {
    if (grid.empty() || p - grid.back() > tol) grid.push_back(p);
  }
  return grid;
}

template <class S>
std::size_t grid_index(const std::vector<S>& grid, const S& x) {
  auto it = std::lower_bound(grid.begin(), grid.end(), x);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i == grid.size()) return i - 1;
  if (i == 0) return 0;
  // nearest of grid[i-1], grid[i]
  return (abs_val(S(grid[i] - x)) < abs_val(S(x - grid[i - 1]))) ? i : i - 1;
}

}  // namespace detail

// Pointwise linear combination on the merged breakpoint grid.
template <class S>
StepFunction<S> linear_combine(const std::vector<S>& coeffs,
                               const std::vector<const StepFunction<S>*>& fs) {
  if (coeffs.empty() || coeffs.size() != fs.size())
    throw std::invalid_argument("linear_combine: bad inputs");
  std::vector<S> pts;
  for (const auto* f : fs)
    pts.insert(pts.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::vector<S> grid = detail::merge_grid(std::move(pts));
  grid.front() = S(-1);
  grid.back() = S(1);
  std::vector<S> vals(grid.size() - 1, S(0));
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto& bp = fs[k]->breakpoints();
    const auto& c = fs[k]->values();
    std::size_t piece = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const S mid = S(S(grid[i] + grid[i + 1]) / S(2));
      while (piece + 1 < c.size() && !(mid < bp[piece + 1])) ++piece;
      vals[i] += S(coeffs[k] * c[piece]);
    }
  }
  return StepFunction<S>(std::move(grid), std::move(vals));
}

template <class S>
StepFunction<S> add(const StepFunction<S>& f, const StepFunction<S>& g) {
  return linear_combine<S>({S(1), S(1)}, {&f, &g});
}

template <class S>
StepFunction<S> subtract(const StepFunction<S>& f, const StepFunction<S>& g) {
  return linear_combine<S>({S(1), S(-1)}, {&f, &g});
}

template <class S>
StepFunction<S> scale(const StepFunction<S>& f, const S& c) {
  std::vector<S> vals = f.values();
  for (auto& v : vals) v = S(v * c);
  return StepFunction<S>(f.breakpoints(), std::move(vals));
}

// Step function equal to 1/|slope| on each branch interior.
template <class S>
StepFunction<S> weight_function(const PiecewiseLinearMap<S>& m) {
  std::vector<S> bp;
  std::vector<S> val;
  bp.push_back(S(-1));
  for (const auto& b : m.branches) {
    val.push_back(S(S(1) / abs_val(b.slope)));
    bp.push_back(b.domain.hi);
  }
  bp.back() = S(1);
  return StepFunction<S>(std::move(bp), std::move(val));
}

// Exact transfer-operator image: L(f)(x) = sum over branches b containing a
// preimage of x of f(b^{-1}(x)) / |slope_b|.  Preserves the integral.
template <class S>
StepFunction<S> pf_apply(const PiecewiseLinearMap<S>& m, const StepFunction<S>& f) {
  struct Piece {
    S lo, hi, val;
  };
  const auto& bp = f.breakpoints();
  const auto& c = f.values();
  std::vector<Piece> pieces;
  pieces.reserve(m.branches.size() * (c.size() + 1));
  for (const auto& b : m.branches) {
    const S w = S(S(1) / abs_val(b.slope));
    // pieces of f overlapping the branch domain
    auto it = std::upper_bound(bp.begin(), bp.end(), b.domain.lo);
    std::size_t i = (it == bp.begin()) ? 0 : static_cast<std::size_t>(it - bp.begin()) - 1;
    for (; i < c.size() && bp[i] < b.domain.hi; ++i) {
      S u = std::max(bp[i], b.domain.lo);
      S v = std::min(bp[i + 1], b.domain.hi);
      if (!(u < v)) continue;
      S p = b.at(u);
      S q = b.at(v);
      if (q < p) std::swap(p, q);
      pieces.push_back({p, q, S(w * c[i])});
    }
  }
  std::vector<S> pts{S(-1), S(1)};
  pts.reserve(2 * pieces.size() + 2);
  for (const auto& pc : pieces) {
    pts.push_back(pc.lo);
    pts.push_back(pc.hi);
  }
  std::vector<S> grid = detail::merge_grid(std::move(pts));
  grid.front() = S(-1);
  grid.back() = S(1);
  std::vector<S> delta(grid.size(), S(0));
  for (const auto& pc : pieces) {
    std::size_t i = detail::grid_index(grid, pc.lo);
    std::size_t j = detail::grid_index(grid, pc.hi);
    if (i >= j) continue;
    delta[i] += pc.val;
    delta[j] -= pc.val;
  }
  std::vector<S> vals(grid.size() - 1, S(0));
  S run(0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    run += delta[i];
    vals[i] = run;
  }
  return StepFunction<S>(std::move(grid), std::move(vals));
}

// 1_{I^s} * pf_apply(f) with I^- = [-1,0], I^+ = [0,1].
template <class S>
StepFunction<S> pf_restricted(const PiecewiseLinearMap<S>& m, const StepFunction<S>& f,
                              Side half) {
  StepFunction<S> g = pf_apply(m, f);
  StepFunction<S> ind = (half == Side::minus)
                            ? StepFunction<S>::indicator({S(-1), S(0)})
                            : StepFunction<S>::indicator({S(0), S(1)});
  // pointwise product with an indicator on the merged grid
  std::vector<S> pts = g.breakpoints();
  pts.push_back(S(0));
  std::vector<S> grid = detail::merge_grid(std::move(pts));
  grid.front() = S(-1);
  grid.back() = S(1);
  std::vector<S> vals(grid.size() - 1, S(0));
  const auto& bp = g.breakpoints();
  const auto& c = g.values();
  std::size_t piece = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const S mid = S(S(grid[i] + grid[i + 1]) / S(2));
    while (piece + 1 < c.size() && !(mid < bp[piece + 1])) ++piece;
    bool in_half = (half == Side::minus) ? mid < S(0) : !(mid < S(0));
    vals[i] = in_half ? c[piece] : S(0);
  }
  return StepFunction<S>(std::move(grid), std::move(vals));
}

template <class S>
struct LyCheck {
  S lhs;          // Var(P f)
  S rhs_general;  // (3/4) Var(f) + 6 ||f||_1
  bool has_sharp;
  S rhs_sharp;  // (1/2) Var(f) + 4 ||f||_1, when all epsilons <= 1/2
  bool holds_general;
  bool holds_sharp;
};

template <class S>
S ly_slack() {
  return num_traits<S>::exact ? S(0) : S(1e-9);
}

// Balanced Lasota-Yorke inequality check for the second-iterate operator.
template <class S>
LyCheck<S> ly_check(const SecondIterate<S>& si, const StepFunction<S>& f) {
  StepFunction<S> pf = pf_apply(si.map, f);
  const S lhs = variation(pf);
  const S var = variation(f);
  const S l1 = l1_norm(f);
  const S slack = ly_slack<S>();
  LyCheck<S> out;
  out.lhs = lhs;
  out.rhs_general = S(S(3) * var / S(4) + S(6) * l1);
  out.holds_general = lhs <= S(out.rhs_general + slack);
  const S half = S(S(1) / S(2));
  out.has_sharp = si.step0.eps1 <= half && si.step0.eps2 <= half &&
                  si.step1.eps1 <= half && si.step1.eps2 <= half;
  out.rhs_sharp = S(0);
  out.holds_sharp = true;
  if (out.has_sharp) {
    out.rhs_sharp = S(half * var + S(4) * l1);
    out.holds_sharp = lhs <= S(out.rhs_sharp + slack);
  }
  return out;
}

template <class Target, class S>
StepFunction<Target> convert_step(const StepFunction<S>& f) {
  std::vector<Target> bp, val;
  for (const auto& x : f.breakpoints()) bp.push_back(static_cast<Target>(num_traits<S>::to_double(x)));
  for (const auto& c : f.values()) val.push_back(static_cast<Target>(num_traits<S>::to_double(c)));
  return StepFunction<Target>(std::move(bp), std::move(val));
}

}  // namespace pftent
