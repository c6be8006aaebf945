#include "pftent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pftent {

namespace {

struct TableStats {
  double int1, int2;  // effective integrals
  double sup1, sup2;  // effective esssups
};

TableStats table_stats(const DrivingStream& dr) {
  dr.validate();
  TableStats st{0, 0, 0, 0};
  if (dr.kind == DrivingKind::periodic) {
    for (const auto& row : dr.table) {
      st.int1 += dr.kappa * row.e1;
      st.int2 += dr.kappa * row.e2;
      st.sup1 = std::max(st.sup1, dr.kappa * row.e1);
      st.sup2 = std::max(st.sup2, dr.kappa * row.e2);
    }
    st.int1 /= static_cast<double>(dr.table.size());
    st.int2 /= static_cast<double>(dr.table.size());
  } else {
    for (const auto& row : dr.table) {
      st.int1 += row.prob * dr.kappa * row.e1;
      st.int2 += row.prob * dr.kappa * row.e2;
      if (row.prob > 0) {
        st.sup1 = std::max(st.sup1, dr.kappa * row.e1);
        st.sup2 = std::max(st.sup2, dr.kappa * row.e2);
      }
    }
  }
  return st;
}

// G_k at a base index: one of the two epsilon_k draws feeding S reaches M.
struct LeakSets {
  const DrivingStream* dr;
  double M;
  int d = 1;

  bool G(int k, std::int64_t base) const {
    auto [a1, a2] = dr->epsilon_at(base);
    auto [b1, b2] = dr->epsilon_at(base + 1);
    double va = (k == 1) ? a1 : a2;
    double vb = (k == 1) ? b1 : b2;
    return va >= M || vb >= M;
  }

  // The union runs over i = 0..d inclusive so that G_1 cap sigma^{-2 d_12}(G_2)
  // is contained in the set, which is what makes its measure positive.
  bool script_G(std::int64_t base) const {
    bool g1 = G(1, base), g2 = G(2, base);
    if (g1) {
      for (int i = 0; i <= d; ++i)
        if (G(2, base + 2 * i)) return true;
    }
    if (g2) {
      for (int i = 0; i <= d; ++i)
        if (G(1, base + 2 * i)) return true;
    }
    return false;
  }
};

// Base residues of the sigma^2-ergodic component containing index 0.
std::vector<std::int64_t> component_bases(const DrivingStream& dr) {
  std::vector<std::int64_t> bases;
  auto p = static_cast<std::int64_t>(dr.table.size());
  std::int64_t step = dr.sigma2_has_two_components() ? 2 : 1;
  std::int64_t count = dr.sigma2_has_two_components() ? p / 2 : p;
  for (std::int64_t i = 0; i < count; ++i) bases.push_back(i * step);
  return bases;
}

int leakage_wait(const DrivingStream& dr, const LeakSets& ls) {
  if (dr.kind == DrivingKind::iid) {
    // disjoint coordinate windows make G_1 and sigma^{-2d}(G_2) independent
    bool has1 = false, has2 = false;
    for (const auto& row : dr.table) {
      if (row.prob > 0 && dr.kappa * row.e1 >= ls.M) has1 = true;
      if (row.prob > 0 && dr.kappa * row.e2 >= ls.M) has2 = true;
    }
    if (!has1 || !has2) throw NumericalError("leakage_wait: empty leak set");
    return 1;
  }
  auto bases = component_bases(dr);
  auto find_wait = [&](int from, int to) -> int {
    for (int d = 1; d <= static_cast<int>(bases.size()); ++d) {
      for (std::int64_t b : bases)
        if (ls.G(from, b) && ls.G(to, b + 2 * d)) return d;
    }
    throw NumericalError("leakage_wait: no co-occurrence found");
  };
  int d12 = find_wait(1, 2);
  int d21 = find_wait(2, 1);
  return std::max(d12, d21);
}

double script_g_frequency(const DrivingStream& dr, const LeakSets& ls) {
  if (dr.kind == DrivingKind::periodic) {
    auto bases = component_bases(dr);
    std::int64_t hits = 0;
    for (std::int64_t b : bases)
      if (ls.script_G(b)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(bases.size());
  }
  if (dr.table.size() == 1) return ls.script_G(0) ? 1.0 : 0.0;
  const std::int64_t orbit = 1000000;
  std::int64_t hits = 0;
  for (std::int64_t n = 0; n < orbit; ++n)
    if (ls.script_G(2 * n)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(orbit);
}

struct LyFamilyConstants {
  double c_var;
  double c_one;
};

LyFamilyConstants family_ly_constants(const BasicConstants& bc) {
  if (bc.B <= 0.5) return {0.5, 4.0};
  return {0.75, 6.0};
}

void validate_cone_for_family(const ConeParams<double>& cp, const LyFamilyConstants& ly) {
  if (!(cp.nu > ly.c_var) || !(cp.nu < 1.0))
    throw ConfigError("cone: nu outside the admissible range for this family");
  if (ly.c_var * cp.a + ly.c_one > cp.nu * cp.a + 1e-9)
    throw ConfigError("cone: a too small, the family does not map C_a into C_{nu a}");
}

struct FrequencyEstimate {
  double f;     // (1/2) min of the two leak frequencies
  int N0;       // Birkhoff threshold at delta = 1/2
  double freq;  // measure of G' = C_1 cap C_2
};

// Visit-count threshold per Lemma ae-conv with delta = 1/2: over sampled
// starting points, find N so that at least half satisfy l_k(n) >= f n for
// all n in [N, horizon], both directions of leakage.
FrequencyEstimate birkhoff_frequency(const DrivingStream& dr, const LeakSets& ls) {
  double mu1, mu2;
  std::vector<std::int64_t> starts;
  int horizon;
  if (dr.kind == DrivingKind::periodic) {
    auto bases = component_bases(dr);
    std::int64_t h1 = 0, h2 = 0;
    for (std::int64_t b : bases) {
      if (ls.G(1, b)) ++h1;
      if (ls.G(2, b)) ++h2;
    }
    mu1 = static_cast<double>(h1) / static_cast<double>(bases.size());
    mu2 = static_cast<double>(h2) / static_cast<double>(bases.size());
    starts = bases;
    horizon = 8 * static_cast<int>(bases.size()) + 64;
  } else if (dr.table.size() == 1) {
    mu1 = ls.G(1, 0) ? 1.0 : 0.0;
    mu2 = ls.G(2, 0) ? 1.0 : 0.0;
    if (mu1 == 0.0 || mu2 == 0.0) throw NumericalError("birkhoff_frequency: empty leak set");
    return {0.5 * std::min(mu1, mu2), 1, 1.0};
  } else {
    double p1 = 0, p2 = 0;  // single-draw tail probabilities
    for (const auto& row : dr.table) {
      if (row.prob > 0 && dr.kappa * row.e1 >= ls.M) p1 += row.prob;
      if (row.prob > 0 && dr.kappa * row.e2 >= ls.M) p2 += row.prob;
    }
    mu1 = 1.0 - (1.0 - p1) * (1.0 - p1);
    mu2 = 1.0 - (1.0 - p2) * (1.0 - p2);
    const int samples = 256;
    horizon = 2048;
    for (int s = 0; s < samples; ++s)
      starts.push_back(2 * static_cast<std::int64_t>(s) * (horizon + 2));
  }
  if (mu1 <= 0 || mu2 <= 0) throw NumericalError("birkhoff_frequency: empty leak set");
  double f = 0.5 * std::min(mu1, mu2);
  std::vector<int> first_good(starts.size(), 0);
  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::int64_t l1 = 0, l2 = 0;
    int last_bad = 0;
    for (int n = 1; n <= horizon; ++n) {
      std::int64_t b = starts[s] + 2 * (n - 1);
      if (ls.G(1, b)) ++l1;
      if (ls.G(2, b)) ++l2;
      double need = f * n;
      if (static_cast<double>(l1) < need || static_cast<double>(l2) < need) last_bad = n;
    }
    first_good[s] = last_bad + 1;
  }
  std::vector<int> sorted = first_good;
  std::sort(sorted.begin(), sorted.end());
  int N0 = sorted[(sorted.size() - 1) / 2];  // smallest N covering half the samples
  std::int64_t ok = 0;
  for (int n : first_good)
    if (n <= N0) ++ok;
  double freq = static_cast<double>(ok) / static_cast<double>(first_good.size());
  return {f, std::max(1, N0), freq};
}

double subcone_log_constant(const ConeParams<double>& cp) {
  return std::log(2.0 * (1.0 + cp.nu) / (1.0 - cp.nu) * (1.0 + cp.nu * cp.a));
}

}  // namespace

BasicConstants basic_constants(const DrivingStream& dr) {
  TableStats st = table_stats(dr);
  if (!(st.int1 > 0) || !(st.int2 > 0))
    throw ConfigError("basic_constants: both epsilon integrals must be positive");
  BasicConstants bc;
  bc.M = 0.5 * std::min(st.int1, st.int2);
  bc.B = std::max(st.sup1, st.sup2);
  bc.D_eps = 4.0 * (1.0 + bc.B) * (1.0 + bc.B);
  return bc;
}

CoveringTimes covering_times(const DrivingStream& dr, const ConeParams<double>& cp) {
  BasicConstants bc = basic_constants(dr);
  validate_cone_for_family(cp, family_ly_constants(bc));
  CoveringTimes ct;
  ct.a = cp.a;
  ct.nu = cp.nu;
  ct.m1 = ceil_int(std::log(cp.a) / std::log(1.5)) + 1;
  ct.m3 = ceil_int(-std::log(bc.M) / std::log(4.0));
  LeakSets ls{&dr, bc.M, 1};
  ls.d = leakage_wait(dr, ls);
  ct.d = ls.d;
  ct.G_P_freq = script_g_frequency(dr, ls);
  return ct;
}

BoundReport spectral_gap_bound(const DrivingStream& dr, const ConeParams<double>& cp) {
  BasicConstants bc = basic_constants(dr);
  CoveringTimes ct = covering_times(dr, cp);
  if (!(ct.G_P_freq > 0))
    throw NumericalError("spectral_gap_bound: G_P frequency estimate vanished");
  BoundReport rep;
  rep.M = bc.M;
  rep.D_eps = bc.D_eps;
  rep.B = bc.B;
  rep.m1 = ct.m1;
  rep.m3 = ct.m3;
  rep.d = ct.d;
  rep.k_P = ct.m1 + ct.d + ct.m3;
  rep.G_P_freq = ct.G_P_freq;
  rep.a = cp.a;
  rep.nu = cp.nu;
  const double logc = subcone_log_constant(cp);
  rep.D_P = 2.0 * logc + 2.0 * rep.k_P * std::log(bc.D_eps);
  rep.C = rep.G_P_freq / (2.0 * rep.k_P) * log_tanh(0.25 * rep.D_P);
  const double literal_arg = -0.25 * logc + 0.25 * rep.k_P * std::log(bc.D_eps);
  rep.C_statement_literal = literal_arg > 0
                                ? rep.G_P_freq / (2.0 * rep.k_P) * log_tanh(literal_arg)
                                : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

std::function<bool(std::int64_t)> g_p_predicate(const DrivingStream& dr,
                                                const ConeParams<double>& cp) {
  BasicConstants bc = basic_constants(dr);
  CoveringTimes ct = covering_times(dr, cp);
  DrivingStream copy = dr;
  double M = bc.M;
  int d = ct.d;
  int m1 = ct.m1;
  return [copy, M, d, m1](std::int64_t base) {
    LeakSets ls{&copy, M, d};
    return ls.script_G(base + 2 * m1);
  };
}

AsymptoticBound asymptotic_bound(const DrivingStream& dr, const ConeParams<double>& cp,
                                 double kappa) {
  if (!(kappa > 0) || kappa > 1) throw ConfigError("asymptotic_bound: kappa must lie in (0,1]");
  BasicConstants base = basic_constants(dr);
  validate_cone_for_family(cp, family_ly_constants(base));
  const int m1 = ceil_int(std::log(cp.a) / std::log(1.5)) + 1;
  LeakSets ls{&dr, base.M, 1};  // G-sets do not depend on kappa
  FrequencyEstimate fe = birkhoff_frequency(dr, ls);

  DrivingStream scaled = dr.scaled(kappa);
  BasicConstants bc = basic_constants(scaled);
  AsymptoticBound out;
  out.kappa = kappa;
  out.m3_kappa = ceil_int(-std::log(bc.M) / std::log(4.0));
  out.k_P_kappa = m1 + 2 * out.m3_kappa;
  out.f = fe.f;
  out.freq = fe.freq;
  out.asymptotic_regime = out.m3_kappa >= fe.N0;
  out.gamma = std::pow(1.0 + bc.B, -2.0 * out.k_P_kappa) /
              (2.0 * std::pow(4.0, m1)) * fe.f * out.m3_kappa /
              std::pow(4.0, out.m3_kappa);
  const double c1 = 2.0 * subcone_log_constant(cp);
  const double Dp = c1 - 2.0 * std::log(out.gamma);
  out.C1 = fe.freq / out.k_P_kappa * log_tanh(0.25 * Dp);
  out.c2 = std::exp(-0.5 * c1) * fe.freq * fe.f * base.M / (2.0 * std::pow(4.0, m1));
  return out;
}

double canonical_cone_a(const DrivingStream& dr, double nu) {
  BasicConstants bc = basic_constants(dr);
  LyFamilyConstants ly = family_ly_constants(bc);
  if (!(nu > ly.c_var) || !(nu < 1.0))
    throw ConfigError("canonical_cone_a: nu outside the admissible range");
  return std::ceil(ly.c_one / (nu - ly.c_var) - 1e-9);
}

}  // namespace pftent
