#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pftent/piecewise_linear.hpp"

namespace pftent {

enum class DrivingKind { iid, periodic };

struct DrivingRow {
  double e1;
  double e2;
  double prob;  // ignored for periodic drivings
};

// Two-sided driving system omega -> (eps1(sigma^n omega), eps2(sigma^n omega)).
// Access at any index n in Z is deterministic given (seed, n); iid draws use
// a counter-keyed generator, periodic drivings index the cycle by n mod p.
struct DrivingStream {
  DrivingKind kind = DrivingKind::iid;
  std::vector<DrivingRow> table;
  std::uint64_t seed = 0;
  double kappa = 1.0;

  void validate() const;
  std::pair<double, double> epsilon_at(std::int64_t n) const;
  DrivingStream scaled(double extra_kappa) const;

  // sigma^2 is ergodic on the even-index component only for even periods.
  bool sigma2_has_two_components() const {
    return kind == DrivingKind::periodic && table.size() % 2 == 0;
  }
  std::int64_t component_period() const {
    if (kind != DrivingKind::periodic) return 0;
    auto p = static_cast<std::int64_t>(table.size());
    return p % 2 == 0 ? p / 2 : p;
  }
};

DrivingStream make_constant_driving(double e1, double e2, double kappa = 1.0);
DrivingStream make_periodic_driving(std::vector<std::pair<double, double>> cycle,
                                    double kappa = 1.0);
DrivingStream make_iid_driving(std::vector<DrivingRow> table, std::uint64_t seed,
                               double kappa = 1.0);

PiecewiseLinearMap<double> tent_at(const DrivingStream& dr, std::int64_t n);

// S at base index `base`, built from the maps at `base` and `base + 1`.
SecondIterate<double> second_iterate_at_base(const DrivingStream& dr, std::int64_t base);

// S of the n-th second-iterate step, at base index 2n.
SecondIterate<double> second_iterate_at(const DrivingStream& dr, std::int64_t n);

}  // namespace pftent
