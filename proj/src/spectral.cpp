#include "qfh/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qfh/constants.hpp"
#include "qfh/errors.hpp"

namespace qfh {

namespace {
constexpr double two_sqrt_log2 = 1.6651092223153954;  // 2 sqrt(ln 2)
}

double FieldSpec::omega0() const { return omega_from_um(lambda0_um); }

double FieldSpec::fwhm_omega() const {
  const double lam_m = lambda0_um * 1e-6;
  return 2.0 * pi * c_light * (fwhm_bandwidth_nm * 1e-9) / (lam_m * lam_m);
}

double FieldSpec::sigma_omega() const {
  // |s|^2 gaussian FWHM = 2 sqrt(2 ln 2) sigma_I, amplitude sigma = sqrt(2) sigma_I
  return fwhm_omega() / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

double FieldSpec::tl_duration_fwhm_s() const {
  // time-bandwidth product 2 ln 2 / pi = 0.441 for gaussian FWHM pairs
  return 4.0 * std::log(2.0) / fwhm_omega();
}

double FieldSpec::chirped_duration_fwhm_s() const {
  const double t0 = tl_duration_fwhm_s();
  const double x = 4.0 * std::log(2.0) * gdd_s2 / (t0 * t0);
  return t0 * std::sqrt(1.0 + x * x);
}

FieldSpec gaussian_field(FieldRole role, double lambda0_um, double fwhm_nm, double energy_j,
                         double gdd_s2, double beam_sigma_m) {
  if (fwhm_nm <= 0.0) throw ConfigInvalid("fwhm_bandwidth must be positive");
  if (energy_j < 0.0) throw ConfigInvalid("energy must be nonnegative");
  FieldSpec f;
  f.role = role;
  f.lambda0_um = lambda0_um;
  f.fwhm_bandwidth_nm = fwhm_nm;
  f.shape = SpectralShape::Gaussian;
  f.gdd_s2 = gdd_s2;
  f.energy_j = energy_j;
  f.beam_sigma_m = beam_sigma_m;
  return f;
}

Eigen::ArrayXd SpectralGrid::omegas() const {
  Eigen::ArrayXd w(n);
  for (int k = 0; k < n; ++k) w(k) = omega(k);
  return w;
}

void SpectralGrid::validate() const {
  if (n < 256 || (n & (n - 1)) != 0)
    throw ConfigInvalid("spectral grid needs a power-of-two point count >= 256");
  if (!(span > 0.0) || !(center > 0.0)) throw ConfigInvalid("spectral grid span/center invalid");
}

std::complex<double> pump_spectral_amplitude(const FieldSpec& pump, double omega) {
  if (pump.shape == SpectralShape::Tabulated) {
    // linear interpolation, zero outside the table
    const auto& xs = pump.tab_omega;
    if (xs.size() < 2) throw UnsupportedShape("tabulated shape needs >= 2 samples");
    if (omega <= xs.front() || omega >= xs.back()) return {0.0, 0.0};
    auto it = std::upper_bound(xs.begin(), xs.end(), omega);
    const std::size_t j = it - xs.begin();
    const double t = (omega - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return pump.tab_amp[j - 1] * (1.0 - t) + pump.tab_amp[j] * t;
  }
  if (pump.shape != SpectralShape::Gaussian) throw UnsupportedShape("unsupported spectral shape");
  const double W = omega - pump.omega0();
  const double sig = pump.sigma_omega();
  const double mag = std::pow(2.0 * pi * sig * sig, -0.25) * std::exp(-W * W / (4.0 * sig * sig));
  const double phase = 0.5 * pump.gdd_s2 * W * W;
  return std::polar(mag, phase);
}

Eigen::ArrayXcd sampled_spectral_amplitude(const FieldSpec& f, const SpectralGrid& grid) {
  Eigen::ArrayXcd a(grid.n);
  for (int k = 0; k < grid.n; ++k) a(k) = pump_spectral_amplitude(f, grid.omega(k));
  return a;
}

Eigen::ArrayXcd unit_normalized_on_grid(const Eigen::ArrayXcd& a, double domega) {
  const double nrm2 = (a.abs2().sum()) * domega;
  if (!(nrm2 > 0.0)) throw ZeroField("cannot normalize a zero spectral amplitude");
  return a / std::sqrt(nrm2);
}

}  // namespace qfh
