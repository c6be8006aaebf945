#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pftent/cone.hpp"

using namespace pftent;
using pftent::testing::random_cone_step;
using pftent::testing::random_step;

namespace {

const ConeParams<double> cp = default_cone();  // a = 120, nu = 0.8

StepFunction<double> halves(double left, double right) {
  return StepFunction<double>({-1.0, 0.0, 1.0}, {left, right});
}

}  // namespace

TEST_CASE("cone membership") {
  CHECK(cone_contains(StepFunction<double>::one(), cp));
  CHECK(cone_contains(halves(1.5, 0.5), cp));
  CHECK_FALSE(cone_contains(halves(1.0, -1.0), cp));
  CHECK_FALSE(cone_contains(StepFunction<double>::constant(0.0), cp));
  // scale argument tests the subcone
  StepFunction<double> spiky({-1.0, -0.99, 1.0}, {200.0, 0.01'0});
  CHECK(variation(spiky) > cp.nu * cp.a * l1_norm(spiky));
  CHECK_FALSE(cone_contains(spiky, cp, cp.nu));
}

TEST_CASE("hilbert metric on explicit pairs") {
  auto one = StepFunction<double>::one();
  auto g = hilbert_alpha_beta(one, one, cp);
  CHECK(g.alpha == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g.beta == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g.theta == doctest::Approx(0.0).epsilon(1e-7));

  auto w = halves(1.5, 0.5);
  auto gw = hilbert_alpha_beta(one, w, cp);
  CHECK(gw.alpha == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(gw.beta == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(gw.theta == doctest::Approx(std::log(3.0)).epsilon(1e-7));
}

TEST_CASE("theta is symmetric and scale invariant") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    auto v = random_cone_step(rng, cp.a);
    auto w = random_cone_step(rng, cp.a);
    auto ab = hilbert_alpha_beta(v, w, cp);
    auto ba = hilbert_alpha_beta(w, v, cp);
    if (!std::isfinite(ab.theta) || !std::isfinite(ba.theta)) continue;
    CHECK(ab.theta == doctest::Approx(ba.theta).epsilon(1e-6));
    // alpha(v,w) = 1/beta(w,v)
    CHECK(ab.alpha == doctest::Approx(1.0 / ba.beta).epsilon(1e-6));
    auto scaled = hilbert_alpha_beta(scale(v, 3.7), w, cp);
    CHECK(scaled.theta == doctest::Approx(ab.theta).epsilon(1e-6));
  }
}

TEST_CASE("theta triangle inequality") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 60; ++i) {
    auto u = random_cone_step(rng, cp.a);
    auto v = random_cone_step(rng, cp.a);
    auto w = random_cone_step(rng, cp.a);
    double uv = hilbert_alpha_beta(u, v, cp).theta;
    double vw = hilbert_alpha_beta(v, w, cp).theta;
    double uw = hilbert_alpha_beta(u, w, cp).theta;
    if (std::isfinite(uv) && std::isfinite(vw))
      CHECK(uw <= uv + vw + 1e-6);
  }
}

TEST_CASE("operators do not expand alpha-beta brackets") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    auto S = make_second_iterate<double>({unif(rng), unif(rng)}, {unif(rng), unif(rng)});
    auto v = random_cone_step(rng, cp.a);
    auto w = random_cone_step(rng, cp.a);
    auto before = hilbert_alpha_beta(v, w, cp);
    auto after = hilbert_alpha_beta(pf_apply(S.map, v), pf_apply(S.map, w), cp);
    CHECK(after.alpha >= before.alpha - 1e-7 * std::max(1.0, before.alpha));
    if (std::isfinite(before.beta))
      CHECK(after.beta <= before.beta + 1e-7 * std::max(1.0, before.beta));
  }
}

TEST_CASE("contraction factor") {
  CHECK(contraction_factor(4.0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  CHECK(contraction_factor(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(contraction_factor(1e-9) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK_THROWS_AS(contraction_factor(0.0), std::domain_error);
}

TEST_CASE("distance bound to the constant function") {
  auto tb = theta_to_constant_bound(halves(1.5, 0.5), cp);
  CHECK(tb.bound == doctest::Approx(std::log(27.0)).epsilon(1e-10));
  CHECK(tb.actual <= tb.bound + 1e-8);

  auto tb1 = theta_to_constant_bound(StepFunction<double>::one(), cp);
  CHECK(tb1.bound == doctest::Approx(std::log(9.0)).epsilon(1e-10));
  CHECK(tb1.actual == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("bounded distance for random subcone elements") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    auto f = random_cone_step(rng, cp.nu * cp.a);
    f = scale(f, 1.0 / l1_norm(f));
    auto tb = theta_to_constant_bound(f, cp);
    CHECK(tb.actual <= tb.bound + 1e-8);
  }
}

TEST_CASE("d-adaptedness") {
  auto one = StepFunction<double>::one();
  CHECK(d_adapted_verify(one, one, cp));
  CHECK(d_adapted_verify(one, scale(one, -1.0), cp));
  auto f = halves(2.0, 1.0);
  CHECK_THROWS_AS(d_adapted_verify(halves(0.1, 0.1), f, cp), std::invalid_argument);
}

TEST_CASE("randomized d-adaptedness with worst ratio below 2a+1") {
  std::mt19937_64 rng(25);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto u = random_cone_step(rng, cp.a);
    auto w = random_cone_step(rng, cp.a);
    auto f = scale(add(u, w), 0.5);
    auto g = scale(subtract(w, u), 0.5);
    CHECK(d_adapted_verify(f, g, cp));
    worst = std::max(worst, bv_norm_max(g) / bv_norm_max(f));
  }
  CHECK(worst <= 2.0 * cp.a + 1.0);
}

TEST_CASE("comparability norm bound") {
  auto f = StepFunction<double>::one();
  auto self = comparability_norm_bound(f, f, cp);
  CHECK(self.lhs == doctest::Approx(0.0));
  // rhs inflates the bisection tolerance by D^2
  CHECK(self.rhs <= cp.adaptedness() * cp.adaptedness() * 2.0 * kThetaTol);

  auto g = halves(1.5, 0.5);
  g = scale(g, bv_norm(f) / bv_norm(g));
  auto pair = comparability_norm_bound(f, g, cp);
  CHECK(pair.lhs <= pair.rhs);

  std::mt19937_64 rng(26);
  for (int i = 0; i < 200; ++i) {
    auto u = random_cone_step(rng, cp.a);
    auto w = random_cone_step(rng, cp.a);
    w = scale(w, bv_norm(u) / bv_norm(w));
    auto p = comparability_norm_bound(u, w, cp);
    CHECK(p.lhs <= p.rhs + 1e-9);
  }
}

TEST_CASE("exact cone checks in rational mode") {
  ConeParams<Rational> rq{Rational(120), Rational(4, 5)};
  StepFunction<Rational> f({Rational(-1), Rational(0), Rational(1)},
                           {Rational(3, 2), Rational(1, 2)});
  CHECK(cone_contains(f, rq));
  CHECK(cone_contains(f, rq, rq.nu));
  CHECK(d_adapted_verify(f, f, rq));
}
