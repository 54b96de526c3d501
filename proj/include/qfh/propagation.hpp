#ifndef QFH_PROPAGATION_HPP
#define QFH_PROPAGATION_HPP

#include <Eigen/Core>
#include <vector>

#include "qfh/constants.hpp"
#include "qfh/fft_utils.hpp"
#include "qfh/jca.hpp"
#include "qfh/phasematch.hpp"
#include "qfh/spectral.hpp"

namespace qfh {

struct TimeGrid {
  int n = 0;       // power of two
  double dt = 0.0; // s

  double window() const { return n * dt; }
  double time(int k) const { return (k - n / 2) * dt; }
  double omega(int k) const { return 2.0 * pi * (k - n / 2) / (n * dt); }
  Eigen::ArrayXd times() const;
  Eigen::ArrayXd omegas() const;  // relative angular frequency
  void validate() const;
};

// Window sized from the chirped pump and input durations (8x the longest,
// 40 ps floor for chirp scans), 2^14 samples by default.
TimeGrid make_time_grid(const FieldSpec& input, const FieldSpec& pump, int n_points = 16384,
                        double min_window_s = 40e-12);

// Complex field envelopes in sqrt(W) units: sum |A|^2 dt = pulse energy.
struct PulseState {
  TimeGrid grid;
  Eigen::VectorXcd a_i, a_o, a_p;
  double omega_i0 = 0.0, omega_o0 = 0.0, omega_p0 = 0.0;
  double z = 0.0;

  double energy_i() const;
  double energy_o() const;
  double energy_p() const;
  double photons_i() const;  // energy / (hbar carrier)
  double photons_o() const;
  double photons_p() const;
};

struct StepperConfig {
  int n_steps = 256;
  double d_eff = 0.0;        // m/V, effective (QPM-reduced where applicable)
  double sigma_i_m = 0.0, sigma_o_m = 0.0, sigma_p_m = 0.0;
  bool include_gvd = true;
  // co-moving frame reference 1/v [s/m]; <= 0 picks the pump frame
  double v_ref_inv = 0.0;
};

struct Diagnostics {
  double eta = 0.0;                       // photon conversion N_o / N_i(0)
  double manley_rowe_residual_o = 0.0;    // max |dN_o + dN_i| / N_i(0)
  double manley_rowe_residual_p = 0.0;    // max |dN_p + dN_i| / N_i(0)
  double photons_i0 = 0.0, photons_i = 0.0, photons_o = 0.0, photons_p = 0.0;
};

// Symmetrized split-step integrator for the three coupled DFG envelopes.
class Propagator {
 public:
  Propagator(const InteractionConfig& cfg, const StepperConfig& stepper, const TimeGrid& grid);

  // Transform-limited gaussians chirped by their gdd; output starts dark.
  // An input carrier offset from the design value rides on the envelope.
  PulseState init_fields(const FieldSpec& input, const FieldSpec& pump,
                         bool single_photon_input = false) const;

  // half linear, full nonlinear (RK4 in z), half linear
  void step(PulseState& state);

  PulseState propagate(PulseState state, Diagnostics* diag = nullptr);

  double gamma_i() const { return gamma_i_; }
  double gamma_o() const { return gamma_o_; }
  double gamma_p() const { return gamma_p_; }
  double dk0() const { return dk0_; }
  double dz() const { return dz_; }

 private:
  void linear_half_step(PulseState& state);

  InteractionConfig cfg_;
  StepperConfig stepper_;
  TimeGrid grid_;
  double dz_ = 0.0;
  double dk0_ = 0.0;  // carrier mismatch including any grating term
  double gamma_i_ = 0.0, gamma_o_ = 0.0, gamma_p_ = 0.0;
  Eigen::VectorXcd lin_i_, lin_o_, lin_p_;  // half-step spectral phases
  mutable FftEngine fft_;
};

double conversion_efficiency(const PulseState& initial, const PulseState& final_state);

struct SpectrumPoint {
  double wavelength_nm;
  double intensity;  // normalized to the peak
};
std::vector<SpectrumPoint> output_spectrum(const PulseState& state);

// Spectral intensity |B(W)|^2 of the output envelope on its omega grid.
Eigen::ArrayXd output_spectral_intensity(const PulseState& state, Eigen::ArrayXd* omega_abs);

struct CalibrationScenario {
  InteractionConfig cfg;
  StepperConfig stepper;
  TimeGrid grid;
  FieldSpec input;   // single-photon energy applied automatically
  FieldSpec pump;    // energy field is the calibration unknown
};

// Bisection on the pump energy until the scenario's simulated efficiency hits
// the target within 0.2 % relative.
double calibrate_pump_energy(const CalibrationScenario& scenario, double target_efficiency);

}  // namespace qfh

#endif
