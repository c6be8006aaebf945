#include "pftent/driving.hpp"

#include <cmath>

namespace pftent {

void DrivingStream::validate() const {
  if (table.empty()) throw ConfigError("driving: empty table");
  if (!(kappa > 0.0) || kappa > 1.0) throw ConfigError("driving: kappa must lie in (0,1]");
  double psum = 0.0;
  for (const auto& row : table) {
    if (row.e1 < 0.0 || row.e1 > 1.0 || row.e2 < 0.0 || row.e2 > 1.0)
      throw ConfigError("driving: epsilon values must lie in [0,1]");
    if (kind == DrivingKind::iid) {
      if (row.prob < 0.0) throw ConfigError("driving: negative probability");
      psum += row.prob;
    }
  }
  if (kind == DrivingKind::iid && std::abs(psum - 1.0) > 1e-9)
    throw ConfigError("driving: probabilities must sum to 1");
}

std::pair<double, double> DrivingStream::epsilon_at(std::int64_t n) const {
  const DrivingRow* row = nullptr;
  if (kind == DrivingKind::periodic) {
    auto p = static_cast<std::int64_t>(table.size());
    std::int64_t r = n % p;
    if (r < 0) r += p;
    row = &table[static_cast<std::size_t>(r)];
  } else {
    std::uint64_t word = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(n)));
    double u = u64_to_unit(word);
    double cum = 0.0;
    row = &table.back();
    for (const auto& r : table) {
      cum += r.prob;
      if (u < cum) {
        row = &r;
        break;
      }
    }
  }
  return {kappa * row->e1, kappa * row->e2};
}

DrivingStream DrivingStream::scaled(double extra_kappa) const {
  DrivingStream out = *this;
  out.kappa = kappa * extra_kappa;
  return out;
}

DrivingStream make_constant_driving(double e1, double e2, double kappa) {
  DrivingStream dr;
  dr.kind = DrivingKind::iid;
  dr.table = {{e1, e2, 1.0}};
  dr.kappa = kappa;
  dr.validate();
  return dr;
}

DrivingStream make_periodic_driving(std::vector<std::pair<double, double>> cycle,
                                    double kappa) {
  DrivingStream dr;
  dr.kind = DrivingKind::periodic;
  for (const auto& [a, b] : cycle) dr.table.push_back({a, b, 0.0});
  dr.kappa = kappa;
  dr.validate();
  return dr;
}

DrivingStream make_iid_driving(std::vector<DrivingRow> table, std::uint64_t seed,
                               double kappa) {
  DrivingStream dr;
  dr.kind = DrivingKind::iid;
  dr.table = std::move(table);
  dr.seed = seed;
  dr.kappa = kappa;
  dr.validate();
  return dr;
}

PiecewiseLinearMap<double> tent_at(const DrivingStream& dr, std::int64_t n) {
  auto [e1, e2] = dr.epsilon_at(n);
  return make_paired_tent<double>({e1, e2});
}

SecondIterate<double> second_iterate_at_base(const DrivingStream& dr, std::int64_t base) {
  auto [a1, a2] = dr.epsilon_at(base);
  auto [b1, b2] = dr.epsilon_at(base + 1);
  return make_second_iterate<double>({a1, a2}, {b1, b2});
}

SecondIterate<double> second_iterate_at(const DrivingStream& dr, std::int64_t n) {
  return second_iterate_at_base(dr, 2 * n);
}

}  // namespace pftent
