#ifndef QFH_SELLMEIER_HPP
#define QFH_SELLMEIER_HPP

#include <memory>
#include <string>
#include <vector>

namespace qfh {

// Closed set of dispersion-formula variants covering the bundled crystal data.
// All forms take the vacuum wavelength in micrometers and return n^2 as a
// function of s = lambda^2:
//   constant    n = c0                                   coeffs [c0]
//   kato2       n^2 = A + B/(s-C) + D s                  coeffs [A,B,C,D]
//   kato3       n^2 = A + B/(s-C) + D1 s + D2 s^2 + D3 s^3   coeffs [A,B,C,D1,D2,D3]
//   twopole     n^2 = A + B1/(s-C1) + B2/(s-C2)          coeffs [A,B1,C1,B2,C2]
//   sellmeier3  n^2 = 1 + sum_k Bk s/(s-Ck), k=1..3      coeffs [B1,C1,B2,C2,B3,C3]
//   tabulated   cubic-spline interpolation of (lambda, n) pairs
enum class SellmeierVariant { Constant, Kato2, Kato3, TwoPole, Sellmeier3, Tabulated };

SellmeierVariant variant_from_string(const std::string& s);
std::string to_string(SellmeierVariant v);

namespace detail {
struct Spline;
}

struct SellmeierForm {
  SellmeierVariant variant = SellmeierVariant::Constant;
  std::vector<double> coefficients;
  double validity_lo_um = 0.0;
  double validity_hi_um = 0.0;
  std::shared_ptr<const detail::Spline> spline;  // tabulated variant only

  // index and its analytic wavelength derivatives at lambda [um]
  double n(double lambda_um) const;
  double dn_dlambda(double lambda_um) const;    // per um
  double d2n_dlambda2(double lambda_um) const;  // per um^2

  bool in_validity(double lambda_um) const {
    return lambda_um >= validity_lo_um && lambda_um <= validity_hi_um;
  }
  void finalize();  // validates arity, builds the spline for tabulated data
};

SellmeierForm make_constant_form(double n0, double lo_um = 0.1, double hi_um = 20.0);
SellmeierForm make_tabulated_form(std::vector<double> lambda_um, std::vector<double> n);

}  // namespace qfh

#endif
