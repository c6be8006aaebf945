#include "pftent/sweeps.hpp"

#include <algorithm>
#include <set>

namespace pftent {

namespace {

std::uint64_t next(std::uint64_t& state) {
  state = splitmix64(state + 0x9e3779b97f4a7c15ULL);
  return state;
}

ConeParams<Rational> default_rational_cone() {
  return {Rational(120), Rational(4, 5)};
}

}  // namespace

Rational random_rational_unit(std::uint64_t& state) {
  return Rational(static_cast<long long>(next(state) % 101), 100);
}

StepFunction<Rational> random_rational_step(std::uint64_t& state, int max_pieces,
                                            bool nonnegative) {
  int pieces = 2 + static_cast<int>(next(state) % static_cast<std::uint64_t>(max_pieces - 1));
  std::set<long long> cuts;
  while (static_cast<int>(cuts.size()) < pieces - 1)
    cuts.insert(static_cast<long long>(next(state) % 127) + 1);  // interior 64ths
  std::vector<Rational> bp{Rational(-1)};
  for (long long c : cuts) bp.push_back(Rational(c - 64, 64));
  bp.push_back(Rational(1));
  std::vector<Rational> val;
  for (int i = 0; i < pieces; ++i) {
    long long k = static_cast<long long>(next(state) % 401);
    Rational v(k - 200, 100);  // in [-2, 2]
    if (nonnegative) v = Rational(k, 100);
    val.push_back(v);
  }
  return StepFunction<Rational>(std::move(bp), std::move(val));
}

StepFunction<Rational> random_rational_cone_element(std::uint64_t& state,
                                                    const ConeParams<Rational>& cp) {
  for (;;) {
    // positive values bounded away from zero keep the rejection rate low
    int pieces = 2 + static_cast<int>(next(state) % 9);
    std::set<long long> cuts;
    while (static_cast<int>(cuts.size()) < pieces - 1)
      cuts.insert(static_cast<long long>(next(state) % 127) + 1);
    std::vector<Rational> bp{Rational(-1)};
    for (long long c : cuts) bp.push_back(Rational(c - 64, 64));
    bp.push_back(Rational(1));
    std::vector<Rational> val;
    for (int i = 0; i < pieces; ++i)
      val.push_back(Rational(static_cast<long long>(next(state) % 311) + 25, 80));
    StepFunction<Rational> f(std::move(bp), std::move(val));
    if (cone_contains(f, cp)) return f;
  }
}

namespace {

template <class S>
LySweepResult ly_sweep_impl(int samples, std::uint64_t seed,
                            S (*to_scalar)(const Rational&)) {
  LySweepResult out;
  out.samples = samples;
  std::uint64_t state = seed;
  for (int s = 0; s < samples; ++s) {
    Rational e[4];
    for (auto& v : e) v = random_rational_unit(state);
    StepFunction<Rational> fq = random_rational_step(state);
    PairedTentParams<S> w{to_scalar(e[0]), to_scalar(e[1])};
    PairedTentParams<S> sw{to_scalar(e[2]), to_scalar(e[3])};
    StepFunction<S> f = [&] {
      if constexpr (std::is_same_v<S, Rational>) {
        return fq;
      } else {
        return convert_step<S>(fq);
      }
    }();
    auto si = make_second_iterate<S>(w, sw);
    auto chk = ly_check(si, f);
    if (!chk.holds_general) ++out.violations_general;
    if (chk.has_sharp) {
      ++out.sharp_cases;
      if (!chk.holds_sharp) ++out.violations_sharp;
    }
    if (chk.rhs_general > S(0)) {
      double ratio = num_traits<S>::to_double(chk.lhs) / num_traits<S>::to_double(chk.rhs_general);
      out.max_lhs_over_rhs = std::max(out.max_lhs_over_rhs, ratio);
    }
  }
  return out;
}

Rational id_rational(const Rational& q) { return q; }
double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace

LySweepResult ly_sweep_rational(int samples, std::uint64_t seed) {
  return ly_sweep_impl<Rational>(samples, seed, &id_rational);
}

LySweepResult ly_sweep_float(int samples, std::uint64_t seed) {
  return ly_sweep_impl<double>(samples, seed, &rational_to_double);
}

ConeSweepResult cone_preservation_sweep_rational(int samples, std::uint64_t seed) {
  ConeSweepResult out;
  out.samples = samples;
  const ConeParams<Rational> cp = default_rational_cone();
  std::uint64_t state = seed;
  for (int s = 0; s < samples; ++s) {
    Rational e[4];
    for (auto& v : e) v = random_rational_unit(state);
    StepFunction<Rational> f = random_rational_cone_element(state, cp);
    auto si = make_second_iterate<Rational>({e[0], e[1]}, {e[2], e[3]});
    StepFunction<Rational> pf = pf_apply(si.map, f);
    if (!cone_contains(pf, cp, cp.nu)) ++out.violations;
  }
  return out;
}

AdaptednessSweepResult adaptedness_sweep_rational(int samples, std::uint64_t seed) {
  AdaptednessSweepResult out;
  out.samples = samples;
  const ConeParams<Rational> cp = default_rational_cone();
  std::uint64_t state = seed;
  const Rational D = cp.adaptedness();
  for (int s = 0; s < samples; ++s) {
    StepFunction<Rational> f = random_rational_step(state);
    StepFunction<Rational> g = random_rational_step(state);
    Rational lhs = abs_val(Rational(variation(f) - variation(g)));
    if (lhs > variation(subtract(f, g))) ++out.violations_triangle;
    // ordered pair via u, w in C_a: f0 = (u+w)/2, g0 = (w-u)/2
    StepFunction<Rational> u = random_rational_cone_element(state, cp);
    StepFunction<Rational> w = random_rational_cone_element(state, cp);
    const Rational half(1, 2);
    StepFunction<Rational> f0 = scale(add(u, w), half);
    StepFunction<Rational> g0 = scale(subtract(w, u), half);
    if (!d_adapted_verify(f0, g0, cp)) ++out.violations_adapted;
    Rational nf = bv_norm_max(f0);
    if (nf > Rational(0)) {
      double ratio = Rational(bv_norm_max(g0) / nf).convert_to<double>();
      out.max_norm_ratio = std::max(out.max_norm_ratio, ratio);
    }
    (void)D;
  }
  return out;
}

}  // namespace pftent
