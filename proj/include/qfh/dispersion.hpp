#ifndef QFH_DISPERSION_HPP
#define QFH_DISPERSION_HPP

#include "qfh/crystal.hpp"

namespace qfh {

enum class DerivativeMethod { Analytic, FiniteDifference };

// Fixed central-difference step for the fallback derivative path [um].
inline constexpr double fd_step_um = 1e-4;

// Effective refractive index for the given propagation geometry.
// Uniaxial extraordinary waves use 1/n(th)^2 = cos^2/n_o^2 + sin^2/n_e^2;
// biaxial principal-plane extraordinary waves use the two-index ellipse of
// the plane, ordinary waves the axis normal to the plane.
double refractive_index(const CrystalModel& model, const OpticalAxisSpec& spec, double lambda_um);

double group_index(const CrystalModel& model, const OpticalAxisSpec& spec, double lambda_um,
                   DerivativeMethod method = DerivativeMethod::Analytic);

// dk/domega at the carrier [s/m]
double group_velocity_inverse(const CrystalModel& model, const OpticalAxisSpec& spec,
                              double lambda_um,
                              DerivativeMethod method = DerivativeMethod::Analytic);

// d2k/domega2 [s^2/m]
double gvd(const CrystalModel& model, const OpticalAxisSpec& spec, double lambda_um,
           DerivativeMethod method = DerivativeMethod::Analytic);

// wavenumber n omega / c [1/m]
double wavenumber(const CrystalModel& model, const OpticalAxisSpec& spec, double lambda_um);

}  // namespace qfh

#endif
