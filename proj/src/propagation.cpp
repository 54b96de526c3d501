#include "qfh/propagation.hpp"

#include <cmath>

#include "qfh/constants.hpp"
#include "qfh/dispersion.hpp"
#include "qfh/errors.hpp"

namespace qfh {

Eigen::ArrayXd TimeGrid::times() const {
  Eigen::ArrayXd t(n);
  for (int k = 0; k < n; ++k) t(k) = time(k);
  return t;
}

Eigen::ArrayXd TimeGrid::omegas() const {
  Eigen::ArrayXd w(n);
  for (int k = 0; k < n; ++k) w(k) = omega(k);
  return w;
}

void TimeGrid::validate() const {
  if (n < 256 || (n & (n - 1)) != 0)
    throw ConfigInvalid("time grid needs a power-of-two point count >= 256");
  if (!(dt > 0.0)) throw ConfigInvalid("time step must be positive");
}

TimeGrid make_time_grid(const FieldSpec& input, const FieldSpec& pump, int n_points,
                        double min_window_s) {
  const double t_pump = pump.chirped_duration_fwhm_s();
  const double t_in = input.chirped_duration_fwhm_s();
  const double window = std::max({min_window_s, 8.0 * t_pump, 8.0 * t_in});
  TimeGrid g;
  g.n = n_points;
  g.dt = window / n_points;
  g.validate();
  // the widest spectrum must stay well inside the Nyquist band
  const double wmax = pi / g.dt;
  const double needed = 3.0 * std::max(input.sigma_omega(), pump.sigma_omega());
  if (needed > 0.9 * wmax) throw WindowTooSmall("time step too coarse for the field bandwidths");
  return g;
}

double PulseState::energy_i() const { return a_i.squaredNorm() * grid.dt; }
double PulseState::energy_o() const { return a_o.squaredNorm() * grid.dt; }
double PulseState::energy_p() const { return a_p.squaredNorm() * grid.dt; }
double PulseState::photons_i() const { return energy_i() / (hbar * omega_i0); }
double PulseState::photons_o() const { return energy_o() / (hbar * omega_o0); }
double PulseState::photons_p() const { return energy_p() / (hbar * omega_p0); }

Propagator::Propagator(const InteractionConfig& cfg, const StepperConfig& stepper,
                       const TimeGrid& grid)
    : cfg_(cfg), stepper_(stepper), grid_(grid) {
  grid_.validate();
  if (stepper_.n_steps < 100) throw ConfigInvalid("stepper needs >= 100 steps");
  dz_ = cfg_.length_m / stepper_.n_steps;
  dk0_ = delta_k(cfg_, omega_from_um(cfg_.lambda_i_um), omega_from_um(cfg_.lambda_o_um));

  const double ni = refractive_index(cfg_.crystal, cfg_.geom_i, cfg_.lambda_i_um);
  const double no = refractive_index(cfg_.crystal, cfg_.geom_o, cfg_.lambda_o_um);
  const double np = refractive_index(cfg_.crystal, cfg_.geom_p, cfg_.lambda_p_um);
  // power-normalized coupled-envelope coefficients; the common factor keeps
  // the Manley-Rowe relations exact
  const double overlap = beam_overlap_factor(stepper_.sigma_i_m, stepper_.sigma_o_m,
                                             stepper_.sigma_p_m) *
                         std::sqrt(2.0 / pi);
  const double common = stepper_.d_eff / c_light *
                        std::sqrt(2.0 / (eps0 * c_light * ni * no * np)) * overlap;
  gamma_i_ = omega_from_um(cfg_.lambda_i_um) * common;
  gamma_o_ = omega_from_um(cfg_.lambda_o_um) * common;
  gamma_p_ = omega_from_um(cfg_.lambda_p_um) * common;

  const double vi = group_velocity_inverse(cfg_.crystal, cfg_.geom_i, cfg_.lambda_i_um);
  const double vo = group_velocity_inverse(cfg_.crystal, cfg_.geom_o, cfg_.lambda_o_um);
  const double vp = group_velocity_inverse(cfg_.crystal, cfg_.geom_p, cfg_.lambda_p_um);
  const double vref = stepper_.v_ref_inv > 0.0 ? stepper_.v_ref_inv : vp;
  const double b2i = stepper_.include_gvd ? gvd(cfg_.crystal, cfg_.geom_i, cfg_.lambda_i_um) : 0.0;
  const double b2o = stepper_.include_gvd ? gvd(cfg_.crystal, cfg_.geom_o, cfg_.lambda_o_um) : 0.0;
  const double b2p = stepper_.include_gvd ? gvd(cfg_.crystal, cfg_.geom_p, cfg_.lambda_p_um) : 0.0;

  const Eigen::ArrayXd W = grid_.omegas();
  const double h = dz_ / 2.0;
  auto phase = [&](double beta1, double beta2) {
    Eigen::VectorXcd ph(grid_.n);
    for (int k = 0; k < grid_.n; ++k) {
      const double w = W(k);
      ph(k) = std::polar(1.0, (beta1 * w + 0.5 * beta2 * w * w) * h);
    }
    return ph;
  };
  lin_i_ = phase(vi - vref, b2i);
  lin_o_ = phase(vo - vref, b2o);
  lin_p_ = phase(vp - vref, b2p);
}

PulseState Propagator::init_fields(const FieldSpec& input, const FieldSpec& pump,
                                   bool single_photon_input) const {
  PulseState st;
  st.grid = grid_;
  st.omega_i0 = omega_from_um(cfg_.lambda_i_um);
  st.omega_o0 = omega_from_um(cfg_.lambda_o_um);
  st.omega_p0 = omega_from_um(cfg_.lambda_p_um);
  st.z = 0.0;

  const double e_in = single_photon_input ? hbar * omega_from_um(input.lambda0_um)
                                          : input.energy_j;

  auto build = [&](const FieldSpec& f, double energy, double design_omega0) {
    // spectral construction: B(W) = sqrt(2 pi E) s(W) exp(i gdd W^2 / 2),
    // then the carrier offset rides on the envelope as exp(-i dw t)
    const double sig = f.sigma_omega();
    const double dw_carrier = f.omega0() - design_omega0;
    const Eigen::ArrayXd W = grid_.omegas();
    if (3.0 * sig + std::abs(dw_carrier) > 0.9 * pi / grid_.dt)
      throw WindowTooSmall("field bandwidth exceeds the grid's Nyquist band");
    if (4.0 * f.chirped_duration_fwhm_s() > grid_.window())
      throw WindowTooSmall("window below 4x the chirped pulse duration");
    Eigen::VectorXcd B(grid_.n);
    const double mag0 = std::pow(2.0 * pi * sig * sig, -0.25) * std::sqrt(2.0 * pi * energy);
    for (int k = 0; k < grid_.n; ++k) {
      const double w = W(k) - dw_carrier;  // relative to the field's own carrier
      B(k) = std::polar(mag0 * std::exp(-w * w / (4.0 * sig * sig)), 0.5 * f.gdd_s2 * w * w);
    }
    Eigen::VectorXcd a = fft_.to_time(B, grid_.dt);
    // remove the discrete-norm residual so energies are exact on the grid
    const double got = a.squaredNorm() * grid_.dt;
    if (energy > 0.0 && got > 0.0) a *= std::sqrt(energy / got);
    return a;
  };

  st.a_i = build(input, e_in, st.omega_i0);
  st.a_p = build(pump, pump.energy_j, st.omega_p0);
  st.a_o = Eigen::VectorXcd::Zero(grid_.n);
  return st;
}

void Propagator::linear_half_step(PulseState& st) {
  auto apply = [&](Eigen::VectorXcd& a, const Eigen::VectorXcd& ph) {
    Eigen::VectorXcd B = fft_.to_freq(a, grid_.dt);
    B.array() *= ph.array();
    a = fft_.to_time(B, grid_.dt);
  };
  apply(st.a_i, lin_i_);
  apply(st.a_o, lin_o_);
  apply(st.a_p, lin_p_);
}

void Propagator::step(PulseState& st) {
  if (st.z + dz_ > cfg_.length_m * (1.0 + 1e-9))
    throw ConfigInvalid("step would leave the crystal");
  linear_half_step(st);

  // RK4 in z on dA_i/dz =  i g_i A_o A_p  e^{+i dk0 z}
  //              dA_o/dz =  i g_o A_i A_p* e^{-i dk0 z}
  //              dA_p/dz =  i g_p A_i A_o* e^{-i dk0 z}
  using Vec = Eigen::VectorXcd;
  const std::complex<double> I(0.0, 1.0);
  auto deriv = [&](const Vec& ai, const Vec& ao, const Vec& ap, double z, Vec& di, Vec& d_o,
                   Vec& dp) {
    const std::complex<double> mi = std::polar(1.0, dk0_ * z);
    di = (I * gamma_i_ * mi) * ao.array().cwiseProduct(ap.array()).matrix();
    d_o = (I * gamma_o_ * std::conj(mi)) * ai.array().cwiseProduct(ap.array().conjugate()).matrix();
    dp = (I * gamma_p_ * std::conj(mi)) * ai.array().cwiseProduct(ao.array().conjugate()).matrix();
  };

  const double z0 = st.z;
  Vec k1i, k1o, k1p, k2i, k2o, k2p, k3i, k3o, k3p, k4i, k4o, k4p;
  deriv(st.a_i, st.a_o, st.a_p, z0, k1i, k1o, k1p);
  deriv(st.a_i + 0.5 * dz_ * k1i, st.a_o + 0.5 * dz_ * k1o, st.a_p + 0.5 * dz_ * k1p,
        z0 + 0.5 * dz_, k2i, k2o, k2p);
  deriv(st.a_i + 0.5 * dz_ * k2i, st.a_o + 0.5 * dz_ * k2o, st.a_p + 0.5 * dz_ * k2p,
        z0 + 0.5 * dz_, k3i, k3o, k3p);
  deriv(st.a_i + dz_ * k3i, st.a_o + dz_ * k3o, st.a_p + dz_ * k3p, z0 + dz_, k4i, k4o, k4p);
  st.a_i += dz_ / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
  st.a_o += dz_ / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
  st.a_p += dz_ / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);

  linear_half_step(st);
  st.z = z0 + dz_;
}

PulseState Propagator::propagate(PulseState st, Diagnostics* diag) {
  const double n_i0 = st.photons_i();
  const double n_o0 = st.photons_o();
  const double n_p0 = st.photons_p();
  double mr_o = 0.0, mr_p = 0.0;
  for (int k = 0; k < stepper_.n_steps; ++k) {
    step(st);
    if ((k + 1) % 16 == 0 || k + 1 == stepper_.n_steps) {
      const double dni = st.photons_i() - n_i0;
      mr_o = std::max(mr_o, std::abs(st.photons_o() - n_o0 + dni) / n_i0);
      mr_p = std::max(mr_p, std::abs(st.photons_p() - n_p0 + dni) / n_i0);
    }
  }
  if (diag) {
    diag->photons_i0 = n_i0;
    diag->photons_i = st.photons_i();
    diag->photons_o = st.photons_o();
    diag->photons_p = st.photons_p();
    diag->eta = (st.photons_o() - n_o0) / n_i0;
    diag->manley_rowe_residual_o = mr_o;
    diag->manley_rowe_residual_p = mr_p;
  }
  return st;
}

double conversion_efficiency(const PulseState& initial, const PulseState& final_state) {
  if (initial.grid.n != final_state.grid.n || initial.grid.dt != final_state.grid.dt)
    throw GridMismatch("states live on different time grids");
  const double n_in = initial.photons_i();
  if (!(n_in > 0.0)) throw ZeroInput("initial state carries no input photons");
  return final_state.photons_o() / n_in;
}

Eigen::ArrayXd output_spectral_intensity(const PulseState& st, Eigen::ArrayXd* omega_abs) {
  FftEngine fft;
  const Eigen::VectorXcd B = fft.to_freq(st.a_o, st.grid.dt);
  if (omega_abs) {
    omega_abs->resize(st.grid.n);
    for (int k = 0; k < st.grid.n; ++k) (*omega_abs)(k) = st.omega_o0 + st.grid.omega(k);
  }
  return B.array().abs2();
}

std::vector<SpectrumPoint> output_spectrum(const PulseState& st) {
  Eigen::ArrayXd wabs;
  Eigen::ArrayXd I = output_spectral_intensity(st, &wabs);
  const double peak = I.maxCoeff();
  std::vector<SpectrumPoint> pts;
  pts.reserve(st.grid.n);
  // ascending wavelength = descending frequency
  for (int k = st.grid.n - 1; k >= 0; --k) {
    if (wabs(k) <= 0.0) continue;
    pts.push_back({um_from_omega(wabs(k)) * 1e3, peak > 0.0 ? I(k) / peak : 0.0});
  }
  return pts;
}

double calibrate_pump_energy(const CalibrationScenario& sc, double target_efficiency) {
  if (!(target_efficiency > 0.0) || target_efficiency >= 0.99)
    throw ConfigInvalid("target efficiency must lie in (0, 0.99)");

  auto eta_for = [&](double energy_j) {
    Propagator prop(sc.cfg, sc.stepper, sc.grid);
    FieldSpec pump = sc.pump;
    pump.energy_j = energy_j;
    PulseState st0 = prop.init_fields(sc.input, pump, true);
    const PulseState st1 = prop.propagate(st0);
    return conversion_efficiency(st0, st1);
  };

  // bracket on a log scale, then bisect
  double lo = 1e-18, hi = 1e-12;
  double eta_lo = eta_for(lo), eta_hi = eta_for(hi);
  int guard = 0;
  while (eta_hi < target_efficiency) {
    hi *= 10.0;
    eta_hi = eta_for(hi);
    if (++guard > 12) throw NotBracketed("pump energy bracket expansion failed (high side)");
  }
  while (eta_lo > target_efficiency) {
    lo /= 10.0;
    eta_lo = eta_for(lo);
    if (++guard > 24) throw NotBracketed("pump energy bracket expansion failed (low side)");
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double e = eta_for(mid);
    if (std::abs(e - target_efficiency) < 0.002 * target_efficiency) return mid;
    if (e < target_efficiency)
      lo = mid;
    else
      hi = mid;
  }
  throw NotBracketed("pump energy bisection did not converge");
}

}  // namespace qfh
