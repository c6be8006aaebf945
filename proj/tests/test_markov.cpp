#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "pftent/markov.hpp"
#include "pftent/piecewise_linear.hpp"

using namespace pftent;

TEST_CASE("kappa_n solves the defining equation") {
  CHECK(solve_kappa(1) == doctest::Approx((std::sqrt(3.0) - 1.0) / 2.0).epsilon(1e-13));
  CHECK(solve_kappa(4) == doctest::Approx(0.05118).epsilon(1e-3));
  double prev = 1.0;
  for (int n = 1; n <= 20; ++n) {
    double k = solve_kappa(n);
    CHECK(std::abs(std::pow(2.0 + 2.0 * k, n) * k - 1.0) <= 1e-14);
    CHECK(k < prev);
    prev = k;
  }
  CHECK(solve_kappa(20) * std::pow(2.0, 20) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("markov partition cells") {
  auto cells = build_partition(1);
  REQUIRE(cells.size() == 6);
  double k1 = solve_kappa(1);
  CHECK(cells[0].lo == doctest::Approx(-1.0));
  CHECK(cells[0].hi == doctest::Approx(-0.5));
  CHECK(cells[1].hi == doctest::Approx(-k1));
  CHECK(cells[2].hi == doctest::Approx(0.0));
  CHECK(cells[3].hi == doctest::Approx(k1));
  CHECK(cells[4].hi == doctest::Approx(0.5));
  CHECK(cells[5].hi == doctest::Approx(1.0));

  CHECK(build_partition(4).size() == 12);

  auto c2 = build_partition(2);
  REQUIRE(c2.size() == 8);
  for (std::size_t i = 0; i < c2.size(); ++i) {
    CHECK(c2[i].lo == doctest::Approx(-c2[c2.size() - 1 - i].hi).epsilon(1e-13));
  }
}

TEST_CASE("partition tiles the interval") {
  for (int n = 1; n <= 12; ++n) {
    auto cells = build_partition(n);
    REQUIRE(cells.size() == static_cast<std::size_t>(2 * n + 4));
    CHECK(cells.front().lo == doctest::Approx(-1.0));
    CHECK(cells.back().hi == doctest::Approx(1.0));
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
      CHECK(cells[i].hi == doctest::Approx(cells[i + 1].lo));
  }
}

TEST_CASE("adjacency matrix from dynamics") {
  auto m = adjacency_matrix(4);
  const std::size_t N = m.adjacency.size();
  REQUIRE(N == 12);
  // every row covers at least one cell
  for (const auto& row : m.adjacency) {
    int sum = 0;
    for (int x : row) sum += x;
    CHECK(sum >= 1);
  }
  // index-reversal symmetry from x -> -x
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      CHECK(m.adjacency[i][j] == m.adjacency[N - 1 - i][N - 1 - j]);
}

TEST_CASE("cell measures form the right Perron vector") {
  for (int n : {1, 4, 7}) {
    auto m = adjacency_matrix(n);
    double rho = 2.0 + 2.0 * m.kappa;
    for (std::size_t i = 0; i < m.adjacency.size(); ++i) {
      double image = 0.0;
      for (std::size_t j = 0; j < m.adjacency.size(); ++j)
        image += m.adjacency[i][j] * m.partition[j].measure();
      CHECK(image == doctest::Approx(rho * m.partition[i].measure()).epsilon(1e-11));
    }
  }
}

TEST_CASE("power iteration spectral radius") {
  for (int n = 1; n <= 12; ++n) {
    auto m = adjacency_matrix(n);
    CHECK(std::abs(m.rho - (2.0 + 2.0 * m.kappa)) <= 1e-9);
  }
}

TEST_CASE("characteristic polynomial matches the closed form") {
  for (int n = 1; n <= 12; ++n) {
    CHECK(char_poly_verify(n));
    auto coeffs = markov_charpoly(n);
    REQUIRE(coeffs.size() == static_cast<std::size_t>(2 * n + 5));
    CHECK(coeffs[0] == 1);
    CHECK(coeffs[1] == -4);
    CHECK(coeffs[2] == 4);
    CHECK(coeffs[2 * n + 2] == -4);
  }
}

TEST_CASE("factored and expanded target forms agree") {
  for (int n = 1; n <= 12; ++n) {
    // x^2 (x^n(x-2) - 2)(x^n(x-2) + 2) via integer polynomial arithmetic
    std::vector<long long> f1(n + 2, 0), f2(n + 2, 0);
    f1[0] = 1;
    f1[1] = -2;
    f1[n + 1] = -2;
    f2 = f1;
    f2[n + 1] = 2;
    std::vector<long long> prod(2 * n + 3, 0);
    for (std::size_t i = 0; i < f1.size(); ++i)
      for (std::size_t j = 0; j < f2.size(); ++j) prod[i + j] += f1[i] * f2[j];
    std::vector<long long> expanded(2 * n + 5, 0);
    for (std::size_t i = 0; i < prod.size(); ++i) expanded[i] = prod[i];
    CHECK(expanded == markov_charpoly_target(n));
  }
}

TEST_CASE("exact lambda2 values") {
  auto m5 = exact_lambda2(5);
  CHECK(m5.kappa == doctest::Approx(0.02731).epsilon(2e-3));
  CHECK(m5.r_n == doctest::Approx(0.0379).epsilon(2e-2));
  CHECK(m5.lambda2 == doctest::Approx(-0.0656).epsilon(1e-2));
  CHECK(m5.ratio_to_minus_2kappa == doctest::Approx(1.20).epsilon(1e-2));

  auto m12 = exact_lambda2(12);
  CHECK(m12.ratio_to_minus_2kappa == doctest::Approx(1.0).epsilon(1e-2));

  double prev = 10.0;
  for (int n = 5; n <= 12; ++n) {
    auto m = exact_lambda2(n);
    CHECK(std::abs(std::pow(2.0 - 2.0 * m.r_n, n) * m.r_n - 1.0) <= 1e-12);
    CHECK(m.ratio_to_minus_2kappa < prev);
    CHECK(m.ratio_to_minus_2kappa > 1.0);
    prev = m.ratio_to_minus_2kappa;
  }

  CHECK_THROWS_AS(exact_lambda2(3), std::domain_error);
  CHECK_FALSE(exact_lambda2(4).asymptotic_regime);
}

TEST_CASE("subdominant spectrum stays below the second real root") {
  for (int n = 5; n <= 8; ++n) {
    auto m = exact_lambda2(n);
    const auto N = static_cast<Eigen::Index>(m.adjacency.size());
    Eigen::MatrixXd A(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) A(i, j) = m.adjacency[i][j];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(A);
    std::vector<double> mods;
    for (Eigen::Index i = 0; i < N; ++i) mods.push_back(std::abs(solver.eigenvalues()[i]));
    std::sort(mods.rbegin(), mods.rend());
    CHECK(mods[0] == doctest::Approx(2.0 + 2.0 * m.kappa).epsilon(1e-9));
    CHECK(mods[1] == doctest::Approx(2.0 - 2.0 * m.r_n).epsilon(1e-9));
    for (std::size_t i = 2; i < mods.size(); ++i)
      CHECK(mods[i] <= 2.0 - 2.0 * m.r_n + 1e-6);
  }
}

TEST_CASE("invariant density fixed under the transfer operator") {
  for (int n : {1, 5}) {
    auto dens = markov_invariant_density(n);
    CHECK(integral(dens) == doctest::Approx(1.0).epsilon(1e-12));
    double kappa = solve_kappa(n);
    auto T = make_paired_tent<double>({kappa, kappa});
    auto Ld = pf_apply(T, dens);
    CHECK(bv_norm(subtract(Ld, dens)) <= 1e-9);
  }
}
