#ifndef QFH_JCA_HPP
#define QFH_JCA_HPP

#include <Eigen/Core>
#include <complex>

#include "qfh/phasematch.hpp"
#include "qfh/spectral.hpp"

namespace qfh {

// Discretized joint coupling amplitude f(w_i, w_o) = s*(w_i - w_o) phi(w_i, w_o)
// on the product grid, globally normalized to unit L2 norm:
//   sum |f|^2 dw_i dw_o = 1.
// The sinc normalization constant absorbed by that step is kept as pmf_norm.
struct JCAGrid {
  SpectralGrid grid_i, grid_o;
  Eigen::MatrixXcd f;  // n_i x n_o
  bool normalized = false;
  double pmf_norm = 0.0;  // sqrt of the raw |s phi|^2 integral

  double norm_residual() const;  // |sum |f|^2 dwdw - 1|
};

// Default grids per the toolkit conventions: 1024 points per axis, input axis
// +-2.5 pump FWHM around the input carrier, output axis +-6 sinc main-lobe
// half-widths around the output carrier.
void default_grids(const InteractionConfig& cfg, const FieldSpec& pump, SpectralGrid& grid_i,
                   SpectralGrid& grid_o, int n_points = 1024);

JCAGrid build_jca(const InteractionConfig& cfg, const FieldSpec& pump, const SpectralGrid& grid_i,
                  const SpectralGrid& grid_o);

struct SchmidtData {
  Eigen::ArrayXd kappa;          // descending, sum = 1
  Eigen::MatrixXcd input_modes;  // g_n(w_i) columns, orthonormal under dw_i
  Eigen::MatrixXcd output_modes; // h_n(w_o) columns, orthonormal under dw_o
  double schmidt_number = 0.0;   // K = 1 / sum kappa^2
  double purity = 0.0;           // P = 1/K
  double domega_i = 0.0, domega_o = 0.0;
};

// Full singular-value decomposition of the normalized JCA. All numerically
// resolved modes are retained; CSV reporting cuts the spectrum at 1e-12.
SchmidtData schmidt_decompose(const JCAGrid& jca);

// K via the Gram-matrix Frobenius identity (sum kappa_n^2 = |f^H f|_F^2 in
// the grid measure); no mode computation. Used for grid-convergence checks.
double schmidt_number(const JCAGrid& jca);

inline constexpr double kappa_report_cutoff = 1e-12;

// beta*(w_o) = sum_i f(w_i, w_o) alpha*(w_i) dw_i, returned as beta.
Eigen::ArrayXcd apply_jca_map(const JCAGrid& jca, const Eigen::ArrayXcd& alpha);

struct ConversionProbabilities {
  Eigen::ArrayXd eta_n;
  double eta_tot = 0.0;
};

// eta_n = sin^2(theta sqrt(kappa_n)) |<alpha, g_n>|^2 with theta = C/hbar;
// alpha must be unit-normalized on the input grid.
ConversionProbabilities conversion_probability(const SchmidtData& schmidt,
                                               const Eigen::ArrayXcd& alpha, double c_over_hbar);

// sigma_i sigma_o sigma_p / (si^2 so^2 + si^2 sp^2 + so^2 sp^2)  [1/m]
double beam_overlap_factor(double sigma_i_m, double sigma_o_m, double sigma_p_m);

// Dimensionless evolution angle C/hbar from the closed-form interaction
// strength: d_eff [m/V], pump photon number N_p, beam sigmas [m], and the
// sinc-normalization constant of the JCA build.
double evolution_parameter(const InteractionConfig& cfg, const FieldSpec& pump, double sigma_i_m,
                           double sigma_o_m, double sigma_p_m, double d_eff, double pump_photons,
                           double pmf_norm = 1.0);

}  // namespace qfh

#endif
