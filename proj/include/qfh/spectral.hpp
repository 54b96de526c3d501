#ifndef QFH_SPECTRAL_HPP
#define QFH_SPECTRAL_HPP

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace qfh {

enum class FieldRole { Input, Output, Pump };
enum class SpectralShape { Gaussian, Tabulated };

// One interacting field: carrier, spectral-intensity FWHM, chirp, energy and
// transverse beam size.
struct FieldSpec {
  FieldRole role = FieldRole::Input;
  double lambda0_um = 0.0;
  double fwhm_bandwidth_nm = 0.0;   // FWHM of |s|^2 in wavelength
  SpectralShape shape = SpectralShape::Gaussian;
  double gdd_s2 = 0.0;              // quadratic spectral phase, gdd W^2/2
  double energy_j = 0.0;
  double beam_sigma_m = 0.0;        // standard-deviation radius
  // tabulated shape: (omega [rad/s], complex amplitude) samples
  std::vector<double> tab_omega;
  std::vector<std::complex<double>> tab_amp;

  double omega0() const;
  double fwhm_omega() const;        // FWHM of |s|^2 in angular frequency
  double sigma_omega() const;       // gaussian amplitude sigma of s
  double tl_duration_fwhm_s() const;       // transform-limited intensity FWHM
  double chirped_duration_fwhm_s() const;  // after gdd
};

FieldSpec gaussian_field(FieldRole role, double lambda0_um, double fwhm_nm, double energy_j = 0.0,
                         double gdd_s2 = 0.0, double beam_sigma_m = 0.0);

// Uniform frequency grid, sample k at center + (k - n/2) span/n.
struct SpectralGrid {
  double center = 0.0;  // rad/s
  double span = 0.0;    // rad/s
  int n = 0;            // power of two, >= 256

  double domega() const { return span / n; }
  double omega(int k) const { return center + (k - n / 2) * domega(); }
  Eigen::ArrayXd omegas() const;
  void validate() const;  // throws GridTooCoarse / ConfigInvalid
};

// Normalized spectral amplitude of the pump at omega: unit L2 norm over
// angular frequency, gaussian chirp as pure quadratic phase.
std::complex<double> pump_spectral_amplitude(const FieldSpec& pump, double omega);

// Amplitude samples over a grid (same normalization, evaluated pointwise).
Eigen::ArrayXcd sampled_spectral_amplitude(const FieldSpec& f, const SpectralGrid& grid);

// Unit-L2-normalized samples on the grid (discrete norm sum |a|^2 domega = 1).
Eigen::ArrayXcd unit_normalized_on_grid(const Eigen::ArrayXcd& a, double domega);

}  // namespace qfh

#endif
