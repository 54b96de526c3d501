#ifndef QFH_CONSTANTS_HPP
#define QFH_CONSTANTS_HPP

namespace qfh {

inline constexpr double c_light = 299792458.0;        // m/s
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double pi = 3.14159265358979323846;

// angular frequency [rad/s] <-> vacuum wavelength [um]
inline double omega_from_um(double lambda_um) { return 2.0 * pi * c_light / (lambda_um * 1e-6); }
inline double um_from_omega(double omega) { return 2.0 * pi * c_light / omega * 1e6; }

}  // namespace qfh

#endif
