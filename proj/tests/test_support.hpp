#ifndef QFH_TEST_SUPPORT_HPP
#define QFH_TEST_SUPPORT_HPP

#include "qfh/jca.hpp"
#include "qfh/phasematch.hpp"
#include "qfh/propagation.hpp"

namespace qfh_test {

using namespace qfh;

// Periodically-poled bulk-KTP homogenizer: propagation along X, input/output
// polarized along Y, pump along Z, output at 1550 nm, the input carrier at
// the crystal's own input/pump group-velocity-matching point.
struct KtpDevice {
  InteractionConfig cfg;
  FieldSpec pump;      // 50-nm FWHM gaussian at the pump carrier
  double d_eff = 10.8e-12;
  double sigma_p = 2.0e-6;
  double sigma_i = 1.0e-6;  // half the pump beam size
  double sigma_o = 2.0e-6;

  FieldSpec pump_with_energy(double energy_j) const {
    FieldSpec p = pump;
    p.energy_j = energy_j;
    return p;
  }
};

inline KtpDevice make_ktp_device(double length_m = 2.5e-3, double pump_fwhm_nm = 50.0) {
  const auto crystal = load_crystal_by_name("ktp_kato_2002");
  GVMSearchOptions opt;
  opt.fixed_angle_deg = 90.0;  // propagation along X in the XZ plane
  opt.lambda_i_lo_um = 0.46;
  opt.lambda_i_hi_um = 0.75;
  const auto sol = solve_gvm_operating_point(crystal, PrincipalPlane::XZ, Polarization::Ordinary,
                                             Polarization::Ordinary, Polarization::Extraordinary,
                                             1.55, opt);
  const auto gi = axis_spec_for(crystal, Polarization::Ordinary, PrincipalPlane::XZ, 90.0);
  const auto go = gi;
  const auto gp = axis_spec_for(crystal, Polarization::Extraordinary, PrincipalPlane::XZ, 90.0);
  auto cfg = make_config(crystal, gi, go, gp, sol.lambda_i_um, 1.55, length_m);
  cfg.poling_period_um = solve_qpm_period_um(cfg);

  KtpDevice dev;
  dev.pump = gaussian_field(FieldRole::Pump, cfg.lambda_p_um, pump_fwhm_nm);
  dev.pump.beam_sigma_m = dev.sigma_p;
  dev.cfg = std::move(cfg);
  return dev;
}

inline StepperConfig make_stepper(const KtpDevice& dev, int n_steps = 256) {
  StepperConfig st;
  st.n_steps = n_steps;
  st.d_eff = dev.d_eff;
  st.sigma_i_m = dev.sigma_i;
  st.sigma_o_m = dev.sigma_o;
  st.sigma_p_m = dev.sigma_p;
  return st;
}

}  // namespace qfh_test

#endif
