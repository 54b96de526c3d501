#ifndef QFH_PHASEMATCH_HPP
#define QFH_PHASEMATCH_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qfh/crystal.hpp"
#include "qfh/dispersion.hpp"

namespace qfh {

// One collinear DFG interaction: input (i) -> output (o) + pump-band (p),
// energy conservation at the carriers 1/lambda_p = 1/lambda_i - 1/lambda_o.
struct InteractionConfig {
  CrystalModel crystal;
  OpticalAxisSpec geom_i, geom_o, geom_p;
  double lambda_i_um = 0.0;
  double lambda_o_um = 0.0;
  double lambda_p_um = 0.0;
  double length_m = 0.0;
  std::optional<double> poling_period_um;  // signed; grating term m 2 pi / Lambda
  int qpm_order = 1;
};

// lambda_p derived from energy conservation; invariants checked.
InteractionConfig make_config(CrystalModel crystal, OpticalAxisSpec gi, OpticalAxisSpec go,
                              OpticalAxisSpec gp, double lambda_i_um, double lambda_o_um,
                              double length_m,
                              std::optional<double> poling_period_um = std::nullopt,
                              int qpm_order = 1);

// Delta k = k_i(w_i) - k_o(w_o) - k_p(w_i - w_o) - m 2 pi / Lambda  [1/m]
double delta_k(const InteractionConfig& cfg, double omega_i, double omega_o);

// First-order expansion around the carriers:
// Delta k0 + (1/v_i - 1/v_p) W_i + (1/v_p - 1/v_o) W_o
double delta_k_linearized(const InteractionConfig& cfg, double Omega_i, double Omega_o);

// sinc(Delta k L / 2); the Eq.-normalization is absorbed by the JCA grid norm
std::complex<double> pmf(const InteractionConfig& cfg, double omega_i, double omega_o);

// Orientation of the phase-matching ridge w.r.t. the omega_i axis, degrees in
// (-90, 90]. Throws DegenerateDenominator when |1/v_p - 1/v_o| < 1e-18 s/m.
double pmf_angle(const InteractionConfig& cfg);

struct GVMSolution {
  std::string crystal;
  double lambda_i_um = 0.0;
  double lambda_o_um = 0.0;
  double lambda_p_um = 0.0;
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  std::optional<PrincipalPlane> plane;
  Polarization pol_i{}, pol_o{}, pol_p{};
  double dk0_residual = 0.0;  // 1/m
  double gvm_residual = 0.0;  // s/m
};

// Solver tolerances.
inline constexpr double dk0_tol = 1.0;      // 1/m
inline constexpr double gvm_tol = 1e-15;    // s/m

// Collinear birefringent phase matching: find the in-plane angle on [0, 90]
// with Delta k0 = 0 at the given carriers. Throws NoBracket when no
// phase-matching angle exists for the tuple.
double solve_carrier_phasematch(const CrystalModel& crystal,
                                std::optional<PrincipalPlane> plane, Polarization pol_i,
                                Polarization pol_o, Polarization pol_p, double lambda_i_um,
                                double lambda_o_um);

// QPM alternative: fixed geometry, closed-form poling period m 2 pi / Dk0.
double solve_qpm_period_um(const InteractionConfig& cfg_without_poling, int order = 1);

struct GVMSearchOptions {
  double lambda_i_lo_um = 0.30;
  double lambda_i_hi_um = 1.35;
  int scan_points = 200;
  std::optional<double> fixed_angle_deg;  // QPM mode: no angle solve, poling cancels Dk0
};

// Nested solve: outer root-find on lambda_i for the input/pump group-velocity
// residual, inner carrier phase-match at each trial lambda_i. Returns every
// root found in the scan window.
std::vector<GVMSolution> solve_gvm_operating_points(const CrystalModel& crystal,
                                                    std::optional<PrincipalPlane> plane,
                                                    Polarization pol_i, Polarization pol_o,
                                                    Polarization pol_p, double lambda_o_um,
                                                    const GVMSearchOptions& opt = {});

// First root or NoBracket.
GVMSolution solve_gvm_operating_point(const CrystalModel& crystal,
                                      std::optional<PrincipalPlane> plane, Polarization pol_i,
                                      Polarization pol_o, Polarization pol_p, double lambda_o_um,
                                      const GVMSearchOptions& opt = {});

struct GVMTableEntry {
  GVMSolution solution;
  bool converged = false;
  std::string failure;  // NoBracket note for non-converged combinations
  std::optional<PrincipalPlane> plane;
  Polarization pol_i{}, pol_o{}, pol_p{};
  std::string crystal;
};

// Enumerate all plane/polarization combinations for every crystal and collect
// the converged GVM operating points (Table-I-shaped report).
std::vector<GVMTableEntry> gvm_table(double lambda_o_um, const std::vector<CrystalModel>& crystals,
                                     const GVMSearchOptions& opt = {}, int threads = 1);

OpticalAxisSpec axis_spec_for(const CrystalModel& crystal, Polarization pol,
                              std::optional<PrincipalPlane> plane, double angle_deg);

}  // namespace qfh

#endif
