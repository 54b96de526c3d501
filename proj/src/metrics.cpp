#include "qfh/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qfh/constants.hpp"
#include "qfh/errors.hpp"

namespace qfh {

Eigen::VectorXcd cross_correlation_envelope(const Eigen::VectorXcd& e1,
                                            const Eigen::VectorXcd& e2, const TimeGrid& grid,
                                            double carrier_diff) {
  if (e1.size() != grid.n || e2.size() != grid.n)
    throw GridMismatch("fields do not share the time grid");
  FftEngine fft;
  const Eigen::VectorXcd g1 = fft.to_freq(e1, grid.dt);
  const Eigen::VectorXcd g2 = fft.to_freq(e2, grid.dt);
  const Eigen::VectorXcd prod = g1.conjugate().cwiseProduct(g2);
  Eigen::VectorXcd gamma = fft.backward_lag(prod, 2.0 * pi / (grid.n * grid.dt));
  if (carrier_diff != 0.0) {
    for (int k = 0; k < grid.n; ++k)
      gamma(k) *= std::polar(1.0, carrier_diff * grid.time(k));
  }
  return gamma;
}

double visibility(const Eigen::VectorXcd& e1, const Eigen::VectorXcd& e2, const TimeGrid& grid,
                  double carrier_diff) {
  const double p1 = e1.squaredNorm() * grid.dt;
  const double p2 = e2.squaredNorm() * grid.dt;
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw ZeroField("visibility needs two fields with energy");
  const Eigen::VectorXcd gamma = cross_correlation_envelope(e1, e2, grid, carrier_diff);
  return 2.0 * gamma.cwiseAbs().maxCoeff() / (p1 + p2);
}

double visibility_from_spectra(const Eigen::ArrayXcd& b1, const Eigen::ArrayXcd& b2,
                               const SpectralGrid& grid) {
  if (b1.size() != grid.n || b2.size() != grid.n)
    throw GridMismatch("spectra do not share the frequency grid");
  const double dw = grid.domega();
  const double p1 = b1.abs2().sum() * dw / (2.0 * pi);
  const double p2 = b2.abs2().sum() * dw / (2.0 * pi);
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw ZeroField("visibility needs two fields with energy");
  FftEngine fft;
  const Eigen::VectorXcd prod = b1.conjugate().cwiseProduct(b2).matrix();
  const Eigen::VectorXcd gamma = fft.backward_lag(prod, dw);
  return 2.0 * gamma.cwiseAbs().maxCoeff() / (p1 + p2);
}

VisibilityScan visibility_scan(const VisibilityScanSetup& setup,
                               const std::vector<double>& lambda_i0_um, VisibilitySource source) {
  VisibilityScan scan;
  scan.reference_lambda_um = setup.cfg.lambda_i_um;
  scan.lambda_i0_um = lambda_i0_um;
  scan.visibility.assign(lambda_i0_um.size(), 0.0);
  scan.source = source;

  if (source == VisibilitySource::FromJcaMap) {
    const JCAGrid jca = build_jca(setup.cfg, setup.pump, setup.grid_i, setup.grid_o);
    auto beta_for = [&](double li_um) {
      FieldSpec in = setup.input_template;
      in.lambda0_um = li_um;
      Eigen::ArrayXcd alpha = sampled_spectral_amplitude(in, jca.grid_i);
      alpha = unit_normalized_on_grid(alpha, jca.grid_i.domega());
      return apply_jca_map(jca, alpha);
    };
    const Eigen::ArrayXcd beta_ref = beta_for(scan.reference_lambda_um);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= lambda_i0_um.size()) return;
        scan.visibility[k] =
            visibility_from_spectra(beta_ref, beta_for(lambda_i0_um[k]), jca.grid_o);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, setup.threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return scan;
  }

  if (!setup.have_propagation)
    throw ConfigInvalid("propagation source requested without stepper/grid setup");
  auto output_for = [&](double li_um) {
    Propagator prop(setup.cfg, setup.stepper, setup.grid);
    FieldSpec in = setup.input_template;
    in.lambda0_um = li_um;
    PulseState st = prop.init_fields(in, setup.pump, true);
    st = prop.propagate(st);
    return st.a_o;
  };
  const Eigen::VectorXcd ref = output_for(scan.reference_lambda_um);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= lambda_i0_um.size()) return;
      scan.visibility[k] = visibility(ref, output_for(lambda_i0_um[k]), setup.grid);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, setup.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return scan;
}

BandwidthResult homogenization_bandwidth(const VisibilityScan& scan, double threshold) {
  const auto& xs = scan.lambda_i0_um;
  const auto& vs = scan.visibility;
  if (xs.size() < 2) throw ConfigInvalid("scan needs at least two points");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw ConfigInvalid("scan wavelengths must be ascending");
  // locate the reference point (closest sample)
  std::size_t iref = 0;
  for (std::size_t k = 1; k < xs.size(); ++k)
    if (std::abs(xs[k] - scan.reference_lambda_um) < std::abs(xs[iref] - scan.reference_lambda_um))
      iref = k;
  if (vs[iref] < threshold)
    throw ConfigInvalid("visibility at the reference wavelength is below the threshold");

  BandwidthResult out;
  double left = xs.front(), right = xs.back();
  bool crossed_left = false, crossed_right = false;
  for (std::size_t k = iref; k-- > 0;) {
    if (vs[k] < threshold) {
      const double t = (threshold - vs[k]) / (vs[k + 1] - vs[k]);
      left = xs[k] + t * (xs[k + 1] - xs[k]);
      crossed_left = true;
      break;
    }
  }
  for (std::size_t k = iref + 1; k < xs.size(); ++k) {
    if (vs[k] < threshold) {
      const double t = (threshold - vs[k - 1]) / (vs[k] - vs[k - 1]);
      right = xs[k - 1] + t * (xs[k] - xs[k - 1]);
      crossed_right = true;
      break;
    }
  }
  out.open_left = !crossed_left;
  out.open_right = !crossed_right;
  out.width_nm = (right - left) * 1e3;
  return out;
}

}  // namespace qfh
