#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "jsaforge/errors.hpp"
#include "jsaforge/fock.hpp"
#include "jsaforge/spectral_core.hpp"

using namespace jsaforge;

namespace {

constexpr double kPi = 3.14159265358979323846;

FockKet basis_ket(int n, int n_trunc) {
  FockKet k;
  k.coeffs = Eigen::VectorXcd::Zero(n_trunc);
  k.coeffs(n) = 1.0;
  return k;
}

double l2_grid_error(const JointAmplitude& a, const JointAmplitude& b) {
  // global phase is not physical; align before differencing
  const Complex overlap = (a.values.conjugate().cwiseProduct(b.values)).sum();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
  return std::sqrt((a.values * phase - b.values).squaredNorm() * a.dx() * a.dy());
}

}  // namespace

TEST_CASE("hermite wavefunctions") {
  CHECK(hermite_wavefunction(0, 0.0) == doctest::Approx(0.751126).epsilon(1e-6));
  CHECK(hermite_wavefunction(1, 0.0) == doctest::Approx(0.0));
  CHECK(hermite_wavefunction(2, 0.7) ==
        doctest::Approx((2 * 0.7 * 0.7 - 1) / std::sqrt(2.0) * hermite_wavefunction(0, 0.7)));

  SUBCASE("orthonormality up to n = 40") {
    const Grid1D g(-30, 30, 24001);
    const Eigen::MatrixXd h = hermite_table(g.points(), 41);
    Eigen::VectorXd w = Eigen::VectorXd::Ones(g.n_points);
    for (int i = 1; i + 1 < g.n_points; ++i) w(i) = (i % 2) ? 4.0 : 2.0;
    w *= g.step() / 3.0;
    const Eigen::MatrixXd gram = h.transpose() * w.asDiagonal() * h;
    const Eigen::MatrixXd err = gram - Eigen::MatrixXd::Identity(41, 41);
    CHECK(err.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("projection onto the number basis") {
  SUBCASE("ground-state gaussian") {
    const FockKet k = project_to_fock(SpectralFn::gaussian(), 20);
    CHECK(std::abs(k.coeffs(0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(k.coeffs.tail(19).norm() < 1e-8);
    CHECK_FALSE(k.truncation_warning);
  }
  SUBCASE("sinc ground-state overlap matches the closed form") {
    const double alpha = 0.71;
    const double expected =
        std::pow(kPi, 0.25) * std::sqrt(alpha) * std::erf(1.0 / (std::sqrt(2.0) * alpha));
    // quadrature overlap, before any ket renormalization
    const Grid1D g(-60, 60, 120001);
    double acc = 0.0;
    const SpectralFn f = SpectralFn::sinc_fn(alpha);
    for (int i = 0; i < g.n_points; ++i) {
      const double w = (i == 0 || i == g.n_points - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * hermite_wavefunction(0, g.point(i)) * f(g.point(i)).real();
    }
    acc *= g.step() / 3.0;
    CHECK(acc == doctest::Approx(expected).epsilon(1e-6));

    const FockKet k = project_to_fock(f, 40);
    for (int n = 1; n < 40; n += 2) CHECK(std::abs(k.coeffs(n)) < 1e-9);
    CHECK(k.coeffs(0).real() > 0.9);
  }
  SUBCASE("odd function has no even weight") {
    const FockKet k = project_to_fock(SpectralFn::hermite_gauss(1), 10);
    CHECK(std::abs(k.coeffs(0)) < 1e-10);
    CHECK(std::abs(k.coeffs(1)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("squeeze operator") {
  SUBCASE("mu = 1 is the identity") {
    const Eigen::MatrixXd s = squeeze_operator(1.0, 15);
    CHECK((s - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("squeezed vacuum wavefunction") {
    const double mu = 1.5;
    const int n = 40;
    const Eigen::MatrixXd s = squeeze_operator(mu, n);
    FockKet k;
    k.coeffs = s.col(0).cast<Complex>();
    const Grid1D g(-5, 5, 201);
    const Eigen::VectorXcd wf = synthesize_wavefunction(k, g);
    for (int i = 0; i < g.n_points; ++i) {
      const double x = g.point(i);
      const double expected = std::pow(mu * mu / kPi, 0.25) * std::exp(-0.5 * mu * mu * x * x);
      CHECK(std::abs(wf(i) - expected) < 1e-6);
    }
  }
  SUBCASE("inverse pairing") {
    const Eigen::MatrixXd a = squeeze_operator(1.3, 40);
    const Eigen::MatrixXd b = squeeze_operator(1.0 / 1.3, 40);
    const Eigen::MatrixXd prod = a * b;
    CHECK((prod.topLeftCorner(30, 30) - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() <
          1e-8);
  }
  SUBCASE("unitary on the interior block") {
    const int n = 40;
    const Eigen::MatrixXd s = squeeze_operator(1.4, n);
    const Eigen::MatrixXd err = s.transpose() * s - Eigen::MatrixXd::Identity(n, n);
    CHECK(err.topLeftCorner(n - 10, n - 10).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(squeeze_operator(0.0, 10), DomainError);
  CHECK_THROWS_AS(squeeze_operator(-2.0, 10), DomainError);
}

TEST_CASE("squeezed vacuum ket") {
  SUBCASE("mu = 1 is the vacuum") {
    const FockKet k = squeezed_vacuum(1.0, 10);
    CHECK(std::abs(k.coeffs(0)) == doctest::Approx(1.0));
  }
  SUBCASE("mean photon number") {
    const FockKet k = squeezed_vacuum(2.0, 60);
    double n_mean = 0;
    for (int n = 0; n < 60; ++n) n_mean += n * std::norm(k.coeffs(n));
    const double expected = std::pow(std::sinh(std::log(2.0)), 2);
    CHECK(expected == doctest::Approx(0.5625));
    CHECK(n_mean == doctest::Approx(expected).epsilon(1e-8));
  }
  SUBCASE("only even photon numbers") {
    const FockKet k = squeezed_vacuum(1.8, 41);
    for (int n = 1; n < 41; n += 2) CHECK(std::abs(k.coeffs(n)) == 0.0);
  }
  SUBCASE("matches the operator route") {
    const int n = 50;
    const FockKet closed = squeezed_vacuum(1.6, n);
    const Eigen::MatrixXd s = squeeze_operator(1.6, n);
    const Eigen::VectorXcd via_op = s.col(0).cast<Complex>();
    CHECK((closed.coeffs - via_op).norm() < 1e-8);
  }
}

TEST_CASE("parity") {
  const FockKet vac = basis_ket(0, 8);
  CHECK((parity_apply(vac).coeffs - vac.coeffs).norm() == 0.0);
  FockKet mixed;
  mixed.coeffs = (Eigen::VectorXcd(4) << 0.5, 0.5, 0.5, 0.5).finished();
  CHECK((parity_apply(parity_apply(mixed)).coeffs - mixed.coeffs).norm() == 0.0);

  SUBCASE("synthesized wavefunction is inverted") {
    FockKet k = project_to_fock(SpectralFn::sech(), 40);
    k.coeffs = k.coeffs + 0.4 * basis_ket(1, 40).coeffs;
    k.normalize();
    const FockKet flipped = parity_apply(k);
    const Grid1D g(-6, 6, 121);
    const Eigen::VectorXcd a = synthesize_wavefunction(k, g);
    const Eigen::VectorXcd b = synthesize_wavefunction(flipped, g);
    for (int i = 0; i < g.n_points; ++i)
      CHECK(std::abs(a(i) - b(g.n_points - 1 - i)) < 1e-8);
  }
}

TEST_CASE("beam splitter") {
  SUBCASE("theta = 0 is the identity") {
    const Eigen::MatrixXd u = beamsplitter_operator(0.0, 6);
    CHECK((u - Eigen::MatrixXd::Identity(36, 36)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("single-photon sector rotates") {
    const double theta = 0.37;
    const BeamSplitter bs(theta, 4);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(4, 4);
    x(0, 1) = 1.0;  // |0, 1>
    const Eigen::MatrixXcd y = bs.apply(x);
    CHECK(y(0, 1).real() == doctest::Approx(std::cos(theta)));
    CHECK(y(1, 0).real() == doctest::Approx(std::sin(theta)));
    Eigen::MatrixXcd x2 = Eigen::MatrixXcd::Zero(4, 4);
    x2(1, 0) = 1.0;  // |1, 0>
    const Eigen::MatrixXcd y2 = bs.apply(x2);
    CHECK(y2(0, 1).real() == doctest::Approx(-std::sin(theta)));
    CHECK(y2(1, 0).real() == doctest::Approx(std::cos(theta)));
  }
  SUBCASE("position-product transformation") {
    const double theta = 0.6;
    const int n = 36;
    FockKet pa = squeezed_vacuum(1.3, n);
    FockKet pb = squeezed_vacuum(0.8, n);
    const BeamSplitter bs(theta, n);
    const Eigen::MatrixXcd y = bs.apply(pa.coeffs * pb.coeffs.transpose());
    const Grid1D g(-4, 4, 81);
    const Eigen::MatrixXd h = hermite_table(g.points(), n);
    const Eigen::MatrixXcd on_grid = h * y * h.transpose();
    for (int i = 0; i < g.n_points; i += 5)
      for (int k = 0; k < g.n_points; k += 5) {
        const double x = g.point(i), yy = g.point(k);
        const double xa = std::cos(theta) * x - std::sin(theta) * yy;
        const double xb = std::cos(theta) * yy + std::sin(theta) * x;
        const double expected = std::pow(1.3 * 1.3 / kPi, 0.25) *
                                std::exp(-0.5 * 1.3 * 1.3 * xa * xa) *
                                std::pow(0.8 * 0.8 / kPi, 0.25) *
                                std::exp(-0.5 * 0.8 * 0.8 * xb * xb);
        CHECK(std::abs(on_grid(i, k) - expected) < 1e-6);
      }
  }
  SUBCASE("commutes with the total photon number") {
    const int n = 8;
    const Eigen::MatrixXd u = beamsplitter_operator(0.7, n);
    Eigen::MatrixXd num = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) num(a * n + b, a * n + b) = a + b;
    CHECK((u * num - num * u).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("unitary on complete sectors") {
    const int n = 10;
    const Eigen::MatrixXd u = beamsplitter_operator(0.9, n);
    const Eigen::MatrixXd err = u.transpose() * u - Eigen::MatrixXd::Identity(n * n, n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            if (a + b <= n - 1 && c + d <= n - 1)
              CHECK(std::abs(err(a * n + b, c * n + d)) < 1e-12);
  }
}

TEST_CASE("mapping parameters") {
  SUBCASE("symmetric matching") {
    const auto m = map_params(1, -1);
    CHECK(m.kappa == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.sigma == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.nu == doctest::Approx(1.0));
    CHECK(m.mu == doctest::Approx(1.0));
    CHECK(m.theta == doctest::Approx(kPi / 4));
    CHECK_FALSE(m.swapped);
  }
  SUBCASE("asymmetric matching") {
    const auto m = map_params(4, -0.25);
    CHECK(m.kappa == doctest::Approx(std::sqrt(17.0)));
    CHECK(m.sigma == doctest::Approx(std::sqrt(17.0) / 4));
    CHECK(m.nu == doctest::Approx(1.0));
    CHECK(m.theta == doctest::Approx(std::atan(0.25)));
  }
  SUBCASE("theta ties back to the pmf angle") {
    for (auto [r, s] : {std::pair{2.0, -0.7}, std::pair{1.0, -0.2}, std::pair{5.0, -0.9}}) {
      const auto m = map_params(r, s);
      CHECK(std::tan(m.theta) == doctest::Approx(std::sqrt(std::tan(pmf_angle(r, s)))));
      CHECK(std::tan(m.theta) == doctest::Approx(m.sigma / m.kappa));
    }
  }
  SUBCASE("same-sign parameters are rejected") {
    CHECK_THROWS_AS(map_params(1, 0.5), MappingDomainError);
    CHECK_THROWS_AS(map_params(-1, -2), MappingDomainError);
    CHECK_THROWS_AS(map_params(1, 0), MappingDomainError);
  }
  SUBCASE("swap flag") {
    const auto m = map_params(0.25, -4);
    CHECK(m.swapped);
    CHECK(m.kappa == doctest::Approx(std::sqrt(17.0)));
  }
  SUBCASE("negative r reflects") {
    const auto m = map_params(-2, 0.5);
    CHECK(m.reflected);
    CHECK(m.kappa == doctest::Approx(std::sqrt(2.0 * 2.5)));
  }
}

TEST_CASE("oscillator construction reproduces the grid amplitude") {
  SUBCASE("gaussian pair") {
    auto [gx, gy] = default_grids(1, -1);
    const FockKet phi = project_to_fock(SpectralFn::gaussian(), 20);
    const FockKet gam = project_to_fock(SpectralFn::gaussian(), 20);
    const auto j = synthesize_jsa_from_fock(phi, gam, map_params(1, -1), gx, gy);
    const auto ref = build_jsa(SpectralFn::gaussian(), SpectralFn::gaussian(), 1, -1, gx, gy);
    CHECK(l2_grid_error(j, ref) < 1e-6);
  }
  SUBCASE("swapped and reflected maps") {
    for (auto [r, s] : {std::pair{0.5, -2.0}, std::pair{-2.0, 0.5}, std::pair{-0.5, 2.0}}) {
      auto [gx, gy] = default_grids(r, s);
      const FockKet phi = project_to_fock(SpectralFn::gaussian(), 24);
      const FockKet gam = project_to_fock(SpectralFn::gaussian(), 24);
      const auto j = synthesize_jsa_from_fock(phi, gam, map_params(r, s), gx, gy);
      const auto ref = build_jsa(SpectralFn::gaussian(), SpectralFn::gaussian(), r, s, gx, gy);
      INFO("r=", r, " s=", s);
      CHECK(l2_grid_error(j, ref) < 1e-6);
    }
  }
  SUBCASE("vacuum pair stays separable at any angle") {
    for (double theta : {0.2, 0.9, 1.4}) {
      BeamSplitterMap map{theta, 1.0, 1.0, 1.0, 1.0, false, false};
      auto [gx, gy] = default_grids(1, -1);
      const auto j = synthesize_jsa_from_fock(basis_ket(0, 10), basis_ket(0, 10), map, gx, gy);
      CHECK(purity_schmidt(j).purity == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("mapping equivalence across shapes and parameters") {
  const std::vector<std::pair<std::string, SpectralFn>> pmfs = {
      {"gaussian", SpectralFn::gaussian()},
      {"sinc", SpectralFn::sinc_fn()},
      {"sech", SpectralFn::sech()},
      {"hermite1", SpectralFn::hermite_gauss(1)},
  };
  const std::vector<std::pair<std::string, SpectralFn>> pumps = {
      {"gaussian", SpectralFn::gaussian()},
      {"sinc", SpectralFn::sinc_fn()},
  };
  for (const auto& [pname, pmf] : pmfs) {
    for (const auto& [gname, pump] : pumps) {
      const int n = (pname == "sinc" || gname == "sinc") ? 60 : 40;
      const FockKet phi = project_to_fock(pmf, n);
      const FockKet gam = project_to_fock(pump, n);
      const double tail = std::max(phi.tail_weight(), gam.tail_weight());
      for (auto [r, s] : {std::pair{1.0, -1.0}, std::pair{2.0, -0.5}, std::pair{4.0, -0.25}}) {
        auto [gx, gy] = default_grids(r, s);
        const auto fock_jsa = synthesize_jsa_from_fock(phi, gam, map_params(r, s), gx, gy);
        const auto grid_jsa = build_jsa(pmf, pump, r, s, gx, gy);
        const double pf = purity_schmidt(fock_jsa).purity;
        const double pg = purity_schmidt(grid_jsa).purity;
        const double tol = std::max(1e-3, tail * 10.0);
        INFO(pname, "/", gname, " r=", r, " s=", s, " tail=", tail);
        CHECK(std::abs(pf - pg) < tol);
      }
    }
  }
}

TEST_CASE("two-mode purity") {
  SUBCASE("product state") {
    TwoModeFockState psi{squeezed_vacuum(1.4, 12).coeffs * basis_ket(3, 12).coeffs.transpose()};
    CHECK(two_mode_purity(psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("balanced single photon") {
    const BeamSplitter bs(kPi / 4, 6);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(6, 6);
    x(0, 1) = 1.0;
    CHECK(two_mode_purity({bs.apply(x)}) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("matches the grid purity of the synthesized amplitude") {
    const FockKet phi = project_to_fock(SpectralFn::sech(), 40);
    const FockKet gam = project_to_fock(SpectralFn::gaussian(), 40);
    const auto map = map_params(2, -0.5);
    const int w = 60;
    Eigen::VectorXcd pw = Eigen::VectorXcd::Zero(w);
    pw.head(40) = phi.coeffs;
    Eigen::VectorXcd gw = Eigen::VectorXcd::Zero(w);
    gw.head(40) = gam.coeffs;
    gw = squeeze_operator(map.nu, w) * gw;
    const BeamSplitter bs(map.theta, w);
    const Eigen::MatrixXcd after = bs.apply(pw * gw.transpose());
    const double p_fock = two_mode_purity({after});

    auto [gx, gy] = default_grids(2, -0.5);
    const auto j = synthesize_jsa_from_fock(phi, gam, map, gx, gy);
    CHECK(p_fock == doctest::Approx(purity_schmidt(j).purity).epsilon(1e-4));
  }
}

TEST_CASE("local squeezing after the beam splitter does not change the purity") {
  const int w = 60;
  Eigen::VectorXcd pw = Eigen::VectorXcd::Zero(w);
  pw.head(40) = project_to_fock(SpectralFn::sech(), 40).coeffs;
  Eigen::VectorXcd gw = Eigen::VectorXcd::Zero(w);
  gw(1) = 1.0;
  const BeamSplitter bs(0.5, w);
  const Eigen::MatrixXcd after = bs.apply(pw * gw.transpose());
  const double p0 = two_mode_purity({after});
  const Eigen::MatrixXd sk = squeeze_operator(1.3, w);
  const Eigen::MatrixXd ss = squeeze_operator(0.7, w);
  const Eigen::MatrixXcd local = sk * after * ss.transpose();
  CHECK(std::abs(two_mode_purity({local}) - p0) < 1e-8);
}

TEST_CASE("equal squeezing through a beam splitter stays separable") {
  const int n = 50;
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double theta : {kPi / 8, kPi / 4}) {
      const BeamSplitter bs(theta, n);
      const Eigen::MatrixXcd out =
          bs.apply(squeezed_vacuum(mu, n).coeffs * squeezed_vacuum(mu, n).coeffs.transpose());
      INFO("mu=", mu, " theta=", theta);
      CHECK(two_mode_purity({out}) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("mismatched squeezing entangles") {
    const BeamSplitter bs(kPi / 4, n);
    for (double mu : {0.6, 1.0, 1.4}) {
      const Eigen::MatrixXcd out = bs.apply(squeezed_vacuum(mu, n).coeffs *
                                            squeezed_vacuum(1.5 * mu, n).coeffs.transpose());
      CHECK(two_mode_purity({out}) < 1.0 - 1e-3);
    }
  }
}

TEST_CASE("squeezed fidelity") {
  SUBCASE("self fidelity") {
    const auto fit = squeezed_fidelity(squeezed_vacuum(1.7, 40));
    CHECK(fit.fidelity == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(fit.mu == doctest::Approx(1.7).epsilon(1e-4));
  }
  SUBCASE("vacuum") {
    const auto fit = squeezed_fidelity(basis_ket(0, 20));
    CHECK(fit.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.mu == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("odd states are orthogonal to the family") {
    const auto fit = squeezed_fidelity(basis_ket(1, 20));
    CHECK(fit.fidelity < 0.5);
  }
  SUBCASE("phase scan finds rotated squeezing") {
    const FockKet rot = squeezed_vacuum(1.5, 40, 1.1);
    const auto fit = squeezed_fidelity(rot);
    CHECK(fit.fidelity == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("fock ket JSON round trip") {
  FockKet k = squeezed_vacuum(1.3, 12, 0.4);
  k.truncation_warning = true;
  const FockKet back = FockKet::from_json(k.to_json());
  CHECK((back.coeffs - k.coeffs).norm() < 1e-15);
  CHECK(back.truncation_warning);
}

TEST_CASE("truncation escalation") {
  // extreme squeezing cannot be represented at a small truncation
  const FockKet phi = basis_ket(0, 8);
  const FockKet gam = basis_ket(0, 8);
  BeamSplitterMap map = map_params(40, -0.02);
  auto [gx, gy] = default_grids(40, -0.02, 64);
  CHECK_THROWS_AS(synthesize_jsa_from_fock(phi, gam, map, gx, gy), TruncationError);
}
