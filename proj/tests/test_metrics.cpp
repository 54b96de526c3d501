#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qfh/constants.hpp"
#include "qfh/errors.hpp"
#include "qfh/metrics.hpp"
#include "test_support.hpp"

using namespace qfh;
using qfh_test::make_ktp_device;
using qfh_test::make_stepper;

namespace {

Eigen::VectorXcd gaussian_envelope(const TimeGrid& g, double sigma_t, double t0 = 0.0,
                                   double carrier_offset = 0.0, double amp = 1.0) {
  Eigen::VectorXcd e(g.n);
  for (int k = 0; k < g.n; ++k) {
    const double t = g.time(k);
    e(k) = std::polar(amp * std::exp(-(t - t0) * (t - t0) / (4.0 * sigma_t * sigma_t)),
                      -carrier_offset * t);
  }
  return e;
}

}  // namespace

TEST_CASE("cross-correlation envelope") {
  TimeGrid g{2048, 5e-15};

  SUBCASE("autocorrelation peaks at zero lag with the field energy") {
    const auto e = gaussian_envelope(g, 3e-13);
    const auto gamma = cross_correlation_envelope(e, e, g);
    int kmax = 0;
    double best = 0.0;
    for (int k = 0; k < g.n; ++k)
      if (std::abs(gamma(k)) > best) {
        best = std::abs(gamma(k));
        kmax = k;
      }
    CHECK(kmax == g.n / 2);  // tau = 0
    CHECK(best == doctest::Approx(e.squaredNorm() * g.dt).epsilon(1e-12));
  }
  SUBCASE("spectrally disjoint fields decorrelate") {
    const auto e1 = gaussian_envelope(g, 2e-13, 0.0, 0.0);
    const auto e2 = gaussian_envelope(g, 2e-13, 0.0, 2e14);  // far-detuned carrier
    const auto gamma = cross_correlation_envelope(e1, e2, g);
    const double norm = e1.squaredNorm() * g.dt;
    CHECK(gamma.cwiseAbs().maxCoeff() < 1e-8 * norm);
  }
  SUBCASE("shifted gaussians reproduce the analytic overlap") {
    const double s = 2.5e-13, T = 3.1e-13;
    const auto e1 = gaussian_envelope(g, s);
    const auto e2 = gaussian_envelope(g, s, T);
    const auto gamma = cross_correlation_envelope(e1, e2, g);
    // Gamma(tau) = sqrt(2 pi s^2) exp(-(tau - T)^2 / (8 s^2))
    for (int k = g.n / 2 - 400; k < g.n / 2 + 400; k += 37) {
      const double tau = g.time(k);
      const double expect =
          std::sqrt(2.0 * pi * s * s) * std::exp(-(tau - T) * (tau - T) / (8.0 * s * s));
      CHECK(std::abs(gamma(k)) == doctest::Approx(expect).epsilon(1e-6));
    }
  }
  SUBCASE("grids must match") {
    const auto e1 = gaussian_envelope(g, 2e-13);
    Eigen::VectorXcd e2(g.n / 2);
    e2.setOnes();
    CHECK_THROWS_AS(cross_correlation_envelope(e1, e2, g), GridMismatch);
  }
}

TEST_CASE("visibility") {
  TimeGrid g{2048, 5e-15};

  SUBCASE("identical fields give exactly 1") {
    const auto e = gaussian_envelope(g, 1.7e-13, 2e-14, 3e12, 0.8);
    CHECK(visibility(e, e, g) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("equal-energy disjoint fields give 0") {
    const auto e1 = gaussian_envelope(g, 2e-13, 0.0, 0.0);
    const auto e2 = gaussian_envelope(g, 2e-13, 0.0, 2e14);
    CHECK(visibility(e1, e2, g) < 1e-8);
  }
  SUBCASE("equal-width gaussians offset in frequency follow exp(-d^2/(8 s^2))") {
    const double sigma_t = 4e-13;
    const double sigma_w = 1.0 / (2.0 * sigma_t);  // amplitude sigma in omega
    for (double d : {0.3 * sigma_w, sigma_w, 2.0 * sigma_w, 4.0 * sigma_w}) {
      const auto e1 = gaussian_envelope(g, sigma_t, 0.0, -d / 2.0);
      const auto e2 = gaussian_envelope(g, sigma_t, 0.0, d / 2.0);
      const double expect = std::exp(-d * d / (8.0 * sigma_w * sigma_w));
      CHECK(visibility(e1, e2, g) == doctest::Approx(expect).epsilon(1e-6));
    }
  }
  SUBCASE("global phase and pure delay leave V unchanged") {
    const auto e1 = gaussian_envelope(g, 2e-13);
    const auto e2 = gaussian_envelope(g, 2.6e-13, 5e-14, 1.5e12);
    const double v0 = visibility(e1, e2, g);
    const Eigen::VectorXcd e2p = std::polar(1.0, 1.234) * e2;
    CHECK(visibility(e1, e2p, g) == doctest::Approx(v0).epsilon(1e-12));
    // integer-bin circular delay
    Eigen::VectorXcd e2d(g.n);
    const int shift = 173;
    for (int k = 0; k < g.n; ++k) e2d((k + shift) % g.n) = e2(k);
    CHECK(visibility(e1, e2d, g) == doctest::Approx(v0).epsilon(1e-9));
  }
  SUBCASE("symmetry and the Cauchy-Schwarz bound on random fields") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXcd e1(g.n), e2(g.n);
      for (int k = 0; k < g.n; ++k) {
        const double env = std::exp(-std::pow(g.time(k) / 2e-13, 2));
        e1(k) = env * std::complex<double>(nd(rng), nd(rng));
        e2(k) = env * std::complex<double>(nd(rng), nd(rng));
      }
      const double v12 = visibility(e1, e2, g);
      const double v21 = visibility(e2, e1, g);
      CHECK(v12 == doctest::Approx(v21).epsilon(1e-12));
      const double p1 = e1.squaredNorm() * g.dt, p2 = e2.squaredNorm() * g.dt;
      CHECK(v12 <= 2.0 * std::sqrt(p1 * p2) / (p1 + p2) + 1e-12);
    }
  }
  SUBCASE("zero fields are rejected") {
    const auto e1 = gaussian_envelope(g, 2e-13);
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(g.n);
    CHECK_THROWS_AS(visibility(e1, z, g), ZeroField);
  }
}

TEST_CASE("visibility scans on the KTP homogenizer") {
  const auto dev = make_ktp_device();
  VisibilityScanSetup setup;
  setup.cfg = dev.cfg;
  setup.input_template = gaussian_field(FieldRole::Input, dev.cfg.lambda_i_um, 1.0);
  // low pump energy keeps the conversion perturbative (about 1 percent)
  setup.pump = dev.pump_with_energy(2e-12);
  default_grids(dev.cfg, dev.pump, setup.grid_i, setup.grid_o, 512);
  setup.stepper = make_stepper(dev, 128);
  setup.grid = make_time_grid(setup.input_template, setup.pump, 8192);
  setup.have_propagation = true;
  setup.threads = 4;

  std::vector<double> lams;
  for (int k = -4; k <= 4; ++k) lams.push_back(dev.cfg.lambda_i_um + k * 2.5e-3);

  SUBCASE("jca-map scan: reference point is 1, off points fall away") {
    const auto scan = visibility_scan(setup, lams, VisibilitySource::FromJcaMap);
    CHECK(scan.visibility[4] == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : scan.visibility) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(scan.visibility.front() < scan.visibility[4]);
    CHECK(scan.visibility.back() < scan.visibility[4]);
  }
  SUBCASE("jca-map and propagation scans agree at low conversion") {
    const auto s1 = visibility_scan(setup, lams, VisibilitySource::FromJcaMap);
    const auto s2 = visibility_scan(setup, lams, VisibilitySource::FromPropagation);
    for (std::size_t k = 0; k < lams.size(); ++k)
      CHECK(std::abs(s1.visibility[k] - s2.visibility[k]) <= 0.03);
  }
  SUBCASE("input bandwidth barely moves the scan") {
    // sub-nm inputs need the full default grid resolution
    auto setup2 = setup;
    default_grids(dev.cfg, dev.pump, setup2.grid_i, setup2.grid_o, 1024);
    auto setup01 = setup2;
    setup01.input_template = gaussian_field(FieldRole::Input, dev.cfg.lambda_i_um, 0.1);
    const auto a = visibility_scan(setup2, lams, VisibilitySource::FromJcaMap);
    const auto b = visibility_scan(setup01, lams, VisibilitySource::FromJcaMap);
    for (std::size_t k = 0; k < lams.size(); ++k)
      CHECK(std::abs(a.visibility[k] - b.visibility[k]) <= 0.02);
  }
}

TEST_CASE("homogenization bandwidth") {
  SUBCASE("all-above-threshold scans report the full width with open ends") {
    VisibilityScan scan;
    scan.reference_lambda_um = 0.545;
    for (int k = 0; k <= 10; ++k) {
      scan.lambda_i0_um.push_back(0.54 + k * 1e-3);
      scan.visibility.push_back(1.0);
    }
    const auto bw = homogenization_bandwidth(scan, 0.9);
    CHECK(bw.width_nm == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(bw.open_left);
    CHECK(bw.open_right);
  }
  SUBCASE("crossings are interpolated linearly") {
    VisibilityScan scan;
    scan.reference_lambda_um = 0.5;
    // triangle: V = 1 - |lambda - 0.5| / 0.01
    for (int k = -10; k <= 10; ++k) {
      const double lam = 0.5 + k * 1e-3;
      scan.lambda_i0_um.push_back(lam);
      scan.visibility.push_back(1.0 - std::abs(lam - 0.5) / 0.01);
    }
    const auto bw = homogenization_bandwidth(scan, 0.5);
    CHECK_FALSE(bw.open_left);
    CHECK_FALSE(bw.open_right);
    CHECK(bw.width_nm == doctest::Approx(10.0).epsilon(1e-9));
  }
  SUBCASE("a reference below threshold is an error") {
    VisibilityScan scan;
    scan.reference_lambda_um = 0.5;
    scan.lambda_i0_um = {0.49, 0.5, 0.51};
    scan.visibility = {0.2, 0.3, 0.2};
    CHECK_THROWS_AS(homogenization_bandwidth(scan, 0.9), ConfigInvalid);
  }
}
