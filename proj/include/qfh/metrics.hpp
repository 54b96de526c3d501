#ifndef QFH_METRICS_HPP
#define QFH_METRICS_HPP

#include <Eigen/Core>
#include <vector>

#include "qfh/propagation.hpp"

namespace qfh {

// Gamma(tau) = sum_t E1*(t) E2(t + tau) dt  x  e^{i d_carrier tau},
// evaluated on the field's own lag grid via the frequency-domain product.
Eigen::VectorXcd cross_correlation_envelope(const Eigen::VectorXcd& e1,
                                            const Eigen::VectorXcd& e2, const TimeGrid& grid,
                                            double carrier_diff = 0.0);

// Fringe visibility of the first-order interferogram between two fields:
// V = 2 max_tau |Gamma| / (||E1||^2 + ||E2||^2), in [0, 1] for equal energies.
double visibility(const Eigen::VectorXcd& e1, const Eigen::VectorXcd& e2, const TimeGrid& grid,
                  double carrier_diff = 0.0);

// Same quantity computed from output spectral amplitudes on a frequency grid.
double visibility_from_spectra(const Eigen::ArrayXcd& b1, const Eigen::ArrayXcd& b2,
                               const SpectralGrid& grid);

enum class VisibilitySource { FromJcaMap, FromPropagation };

struct VisibilityScan {
  double reference_lambda_um = 0.0;
  std::vector<double> lambda_i0_um;
  std::vector<double> visibility;
  VisibilitySource source = VisibilitySource::FromJcaMap;
};

struct VisibilityScanSetup {
  InteractionConfig cfg;       // carriers at the GVM point
  FieldSpec input_template;    // bandwidth/gdd copied to every scan point
  FieldSpec pump;
  // propagation-only knobs
  StepperConfig stepper;
  TimeGrid grid;
  bool have_propagation = false;
  // jca-map knobs
  SpectralGrid grid_i, grid_o;
  int threads = 1;
};

VisibilityScan visibility_scan(const VisibilityScanSetup& setup,
                               const std::vector<double>& lambda_i0_um, VisibilitySource source);

struct BandwidthResult {
  double width_nm = 0.0;
  bool open_left = false;   // threshold never crossed on that side of the scan
  bool open_right = false;
};

// Width of the contiguous interval around the reference with V >= threshold,
// linear interpolation at the crossings; open ends are flagged, not fatal.
BandwidthResult homogenization_bandwidth(const VisibilityScan& scan, double threshold);

}  // namespace qfh

#endif
