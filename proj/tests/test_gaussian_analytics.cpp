#include <doctest.h>

#include <cmath>
#include <random>

#include "jsaforge/errors.hpp"
#include "jsaforge/gaussian_analytics.hpp"
#include "jsaforge/spectral_core.hpp"

using namespace jsaforge;

TEST_CASE("correlation matrix entries") {
  const auto c = gaussian_correlation_matrix(1, -1);
  CHECK(c.c11 == doctest::Approx(2.0));
  CHECK(c.c12 == doctest::Approx(0.0));
  CHECK(c.c22 == doctest::Approx(2.0));

  const auto c2 = gaussian_correlation_matrix(2, -0.5);
  CHECK(c2.c11 == doctest::Approx(5.0));
  CHECK(c2.c12 == doctest::Approx(0.0));
  CHECK(c2.c22 == doctest::Approx(1.25));

  // r = s is the degenerate direction: the matrix turns singular
  const auto c3 = gaussian_correlation_matrix(1, 1);
  CHECK(c3.c11 * c3.c22 - c3.c12 * c3.c12 == doctest::Approx(0.0));
}

TEST_CASE("closed-form gaussian purity") {
  CHECK(gaussian_purity(1, -1) == doctest::Approx(1.0));
  CHECK(gaussian_purity(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(gaussian_purity(0.7, 0.7), DegenerateGroupVelocities);

  SUBCASE("matches the grid construction") {
    for (auto [r, s] : {std::pair{10.0, 0.0}, std::pair{1.0, -0.5}, std::pair{3.0, 0.4}}) {
      auto [gx, gy] = default_grids(r, s);
      const auto j = build_jsa(SpectralFn::gaussian(), SpectralFn::gaussian(), r, s, gx, gy);
      CHECK(purity_schmidt(j).purity == doctest::Approx(gaussian_purity(r, s)).epsilon(1e-4));
    }
  }
}

TEST_CASE("separability condition") {
  CHECK(separability_condition(1, -1));
  CHECK(separability_condition(4, -0.25));
  CHECK_FALSE(separability_condition(1, -0.5));

  SUBCASE("purity is 1 exactly on the rs = -1 manifold") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
      const double r = dist(rng);
      const double s = -dist(rng);
      const bool separable = separability_condition(r, s, 1e-12);
      const bool unit = std::abs(gaussian_purity(r, s) - 1.0) < 1e-12;
      CHECK(separable == unit);
      // and exactly on the manifold:
      CHECK(gaussian_purity(r, -1.0 / r) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("purity is symmetric under r <-> s") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double r = dist(rng), s = dist(rng);
    if (std::abs(r - s) < 1e-6) continue;
    CHECK(gaussian_purity(r, s) == doctest::Approx(gaussian_purity(s, r)).epsilon(1e-12));
  }
}

TEST_CASE("asymptotic scaling") {
  CHECK(asymptotic_gaussian_purity(10) == doctest::Approx(0.995));
  CHECK(asymptotic_gaussian_purity(1e9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(asymptotic_gaussian_purity(0), DomainError);

  CHECK(asymptotic_gaussian_purity(23.4) == doctest::Approx(0.99909).epsilon(1e-5));
  CHECK(gaussian_purity(23.4, 0) == doctest::Approx(asymptotic_gaussian_purity(23.4)).epsilon(1e-5));

  SUBCASE("error decays as 1/r^4") {
    for (double r : {5.0, 10.0, 20.0, 50.0, 100.0}) {
      const double err = std::abs(gaussian_purity(r, 0) - asymptotic_gaussian_purity(r));
      const double ratio = err * r * r * r * r;
      CHECK(ratio > 0.05);
      CHECK(ratio < 0.5);
    }
  }
}

TEST_CASE("pmf angle on the separability manifold") {
  CHECK(separable_pmf_angle(1.0) == doctest::Approx(M_PI / 4));
  CHECK(separable_pmf_angle(0.5) == doctest::Approx(std::atan(0.25)));
}
