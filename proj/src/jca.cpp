#include "qfh/jca.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "qfh/constants.hpp"
#include "qfh/errors.hpp"

namespace qfh {

double JCAGrid::norm_residual() const {
  const double s = f.array().abs2().sum() * grid_i.domega() * grid_o.domega();
  return std::abs(s - 1.0);
}

namespace {

// main-lobe half width of sinc(dk L/2) along omega_o, first-order dispersion
double sinc_halfwidth_omega_o(const InteractionConfig& cfg) {
  const double vo = group_velocity_inverse(cfg.crystal, cfg.geom_o, cfg.lambda_o_um);
  const double vp = group_velocity_inverse(cfg.crystal, cfg.geom_p, cfg.lambda_p_um);
  const double slope = std::abs(vp - vo);
  if (slope < 1e-18) throw DegenerateDenominator("output/pump group velocities degenerate");
  return 2.0 * pi / (cfg.length_m * slope);
}

}  // namespace

void default_grids(const InteractionConfig& cfg, const FieldSpec& pump, SpectralGrid& grid_i,
                   SpectralGrid& grid_o, int n_points) {
  grid_i.center = omega_from_um(cfg.lambda_i_um);
  grid_i.span = 5.0 * pump.fwhm_omega();
  grid_i.n = n_points;
  grid_o.center = omega_from_um(cfg.lambda_o_um);
  grid_o.span = 12.0 * sinc_halfwidth_omega_o(cfg);
  grid_o.n = n_points;
}

namespace {

void check_pump_carrier(const InteractionConfig& cfg, const FieldSpec& pump) {
  if (std::abs(pump.lambda0_um - cfg.lambda_p_um) > 1e-6 * cfg.lambda_p_um)
    throw ConfigInvalid("pump carrier does not match the interaction's energy-conservation value");
}

}  // namespace

JCAGrid build_jca(const InteractionConfig& cfg, const FieldSpec& pump, const SpectralGrid& grid_i,
                  const SpectralGrid& grid_o) {
  grid_i.validate();
  grid_o.validate();
  check_pump_carrier(cfg, pump);
  // coverage and sampling gates
  const double lobe = sinc_halfwidth_omega_o(cfg);
  if (2.0 * lobe / grid_o.domega() < 8.0)
    throw GridTooCoarse("PMF main lobe sampled by < 8 points along omega_o");
  if (grid_i.span < 4.0 * pump.fwhm_omega())
    throw GridTooCoarse("input grid span below 4 pump FWHM");
  if (grid_o.span < 4.0 * 2.0 * lobe)
    throw GridTooCoarse("output grid span below 4 PMF main-lobe widths");

  JCAGrid jca;
  jca.grid_i = grid_i;
  jca.grid_o = grid_o;
  jca.f.resize(grid_i.n, grid_o.n);

  const double L = cfg.length_m;
  for (int a = 0; a < grid_i.n; ++a) {
    const double wi = grid_i.omega(a);
    for (int b = 0; b < grid_o.n; ++b) {
      const double wo = grid_o.omega(b);
      const double wp = wi - wo;
      std::complex<double> v(0.0, 0.0);
      if (wp > 0.0) {
        const std::complex<double> s = pump_spectral_amplitude(pump, wp);
        double dk;
        try {
          dk = delta_k(cfg, wi, wo);
        } catch (const OutOfValidityRange&) {
          // pump amplitude is negligible wherever dispersion data runs out
          jca.f(a, b) = 0.0;
          continue;
        }
        const double x = dk * L / 2.0;
        const double snc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        v = std::conj(s) * snc;
      }
      jca.f(a, b) = v;
    }
  }

  const double raw = jca.f.array().abs2().sum() * grid_i.domega() * grid_o.domega();
  if (!(raw > 0.0)) throw NumericalFailure("JCA vanishes on the grid");
  jca.pmf_norm = std::sqrt(raw);
  jca.f /= jca.pmf_norm;
  jca.normalized = true;
  return jca;
}

SchmidtData schmidt_decompose(const JCAGrid& jca) {
  if (!jca.normalized) throw ConfigInvalid("schmidt_decompose needs a normalized JCA");
  const double dwi = jca.grid_i.domega(), dwo = jca.grid_o.domega();
  const Eigen::MatrixXcd M = jca.f * std::sqrt(dwi * dwo);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("SVD did not converge");

  SchmidtData out;
  const auto& sv = svd.singularValues();
  out.kappa = sv.array().square();
  if (!out.kappa.allFinite()) throw NumericalFailure("SVD produced non-finite singular values");
  out.input_modes = svd.matrixU() / std::sqrt(dwi);
  out.output_modes = svd.matrixV() / std::sqrt(dwo);
  const double sum = out.kappa.sum();
  const double sum2 = out.kappa.square().sum();
  out.schmidt_number = sum * sum / sum2;  // insensitive to the ~1e-10 norm residual
  out.purity = 1.0 / out.schmidt_number;
  out.domega_i = dwi;
  out.domega_o = dwo;
  return out;
}

double schmidt_number(const JCAGrid& jca) {
  if (!jca.normalized) throw ConfigInvalid("schmidt_number needs a normalized JCA");
  const double dwi = jca.grid_i.domega(), dwo = jca.grid_o.domega();
  const Eigen::MatrixXcd G = jca.f.adjoint() * jca.f * (dwi * dwo);
  const double sum2 = G.squaredNorm();
  const double sum = G.trace().real();
  return sum * sum / sum2;
}

Eigen::ArrayXcd apply_jca_map(const JCAGrid& jca, const Eigen::ArrayXcd& alpha) {
  if (alpha.size() != jca.grid_i.n)
    throw GridMismatch("alpha length does not match the input grid");
  const Eigen::VectorXcd av = alpha.matrix();
  // beta = conj(sum_i f alpha* dw_i) = f^H alpha dw_i
  Eigen::VectorXcd beta = jca.f.adjoint() * av * jca.grid_i.domega();
  return beta.array();
}

ConversionProbabilities conversion_probability(const SchmidtData& schmidt,
                                               const Eigen::ArrayXcd& alpha, double c_over_hbar) {
  if (alpha.size() != schmidt.input_modes.rows())
    throw GridMismatch("alpha length does not match the Schmidt input modes");
  const double nrm = alpha.abs2().sum() * schmidt.domega_i;
  if (std::abs(nrm - 1.0) > 1e-6)
    throw ConfigInvalid("alpha must be unit-normalized on the input grid");

  const Eigen::Index nmodes = schmidt.kappa.size();
  ConversionProbabilities out;
  out.eta_n.resize(nmodes);
  // overlap_n = sum alpha*(w) g_n(w) dw
  const Eigen::VectorXcd overlaps =
      schmidt.input_modes.transpose() * alpha.conjugate().matrix() * schmidt.domega_i;
  for (Eigen::Index n = 0; n < nmodes; ++n) {
    const double s = std::sin(c_over_hbar * std::sqrt(schmidt.kappa(n)));
    out.eta_n(n) = s * s * std::norm(overlaps(n));
  }
  out.eta_tot = out.eta_n.sum();
  return out;
}

double beam_overlap_factor(double si, double so, double sp) {
  if (si <= 0.0 || so <= 0.0 || sp <= 0.0) throw ConfigInvalid("beam sigmas must be positive");
  return si * so * sp / (si * si * so * so + si * si * sp * sp + so * so * sp * sp);
}

double evolution_parameter(const InteractionConfig& cfg, const FieldSpec& pump, double sigma_i_m,
                           double sigma_o_m, double sigma_p_m, double d_eff, double pump_photons,
                           double pmf_norm) {
  const double wi = omega_from_um(cfg.lambda_i_um);
  const double wo = omega_from_um(cfg.lambda_o_um);
  const double wp = omega_from_um(cfg.lambda_p_um);
  const double ni = refractive_index(cfg.crystal, cfg.geom_i, cfg.lambda_i_um);
  const double no = refractive_index(cfg.crystal, cfg.geom_o, cfg.lambda_o_um);
  const double np = refractive_index(cfg.crystal, cfg.geom_p, cfg.lambda_p_um);
  const double gi = group_index(cfg.crystal, cfg.geom_i, cfg.lambda_i_um);
  const double go = group_index(cfg.crystal, cfg.geom_o, cfg.lambda_o_um);
  const double gp = group_index(cfg.crystal, cfg.geom_p, cfg.lambda_p_um);
  check_pump_carrier(cfg, pump);

  const double pref = std::sqrt(2.0 * d_eff * d_eff / (hbar * pi * pi * eps0 * c_light * c_light * c_light));
  const double material = std::sqrt(wi * wo * wp * gi * go * gp / (ni * ni * no * no * np * np));
  const double overlap = beam_overlap_factor(sigma_i_m, sigma_o_m, sigma_p_m);
  return pref * material * overlap * cfg.length_m * pmf_norm * std::sqrt(pump_photons);
}

}  // namespace qfh
