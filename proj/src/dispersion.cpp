#include "qfh/dispersion.hpp"

#include <cmath>

#include "qfh/constants.hpp"
#include "qfh/errors.hpp"

namespace qfh {

namespace {

struct AxisPair {
  const SellmeierForm* a = nullptr;  // weight cos^2(angle)
  const SellmeierForm* b = nullptr;  // weight sin^2(angle)
  double angle_rad = 0.0;
  bool mixed = false;                // false: pure axis a
};

// Resolve which principal-axis forms the geometry mixes.
AxisPair resolve(const CrystalModel& m, const OpticalAxisSpec& s) {
  AxisPair r;
  if (m.symmetry == Symmetry::Uniaxial) {
    if (s.principal_plane)
      throw InvalidGeometry("principal_plane given for uniaxial crystal " + m.name);
    if (s.polarization == Polarization::Ordinary) {
      r.a = &m.axis("o");
      return r;
    }
    r.a = &m.axis("o");
    r.b = &m.axis("e");
    r.angle_rad = s.theta_deg * pi / 180.0;
    r.mixed = true;
    return r;
  }
  if (!s.principal_plane)
    throw InvalidGeometry("principal_plane required for biaxial crystal " + m.name);
  const bool ord = s.polarization == Polarization::Ordinary;
  switch (*s.principal_plane) {
    case PrincipalPlane::XZ:
      if (ord) { r.a = &m.axis("Y"); return r; }
      r.a = &m.axis("X");
      r.b = &m.axis("Z");
      r.angle_rad = s.theta_deg * pi / 180.0;
      break;
    case PrincipalPlane::YZ:
      if (ord) { r.a = &m.axis("X"); return r; }
      r.a = &m.axis("Y");
      r.b = &m.axis("Z");
      r.angle_rad = s.theta_deg * pi / 180.0;
      break;
    case PrincipalPlane::XY:
      if (ord) { r.a = &m.axis("Z"); return r; }
      r.a = &m.axis("Y");
      r.b = &m.axis("X");
      r.angle_rad = s.phi_deg * pi / 180.0;
      break;
  }
  r.mixed = true;
  return r;
}

void check_validity(const AxisPair& p, double lambda_um, const CrystalModel& m) {
  if (!p.a->in_validity(lambda_um) || (p.mixed && !p.b->in_validity(lambda_um)))
    throw OutOfValidityRange("lambda " + std::to_string(lambda_um) + " um outside validity of " +
                             m.name);
}

// n(lambda) with analytic first and second wavelength derivatives, including
// the index-ellipse mixing.
struct NDerivs {
  double n, np, npp;
};

NDerivs eval(const AxisPair& p, double lambda_um) {
  if (!p.mixed) {
    return {p.a->n(lambda_um), p.a->dn_dlambda(lambda_um), p.a->d2n_dlambda2(lambda_um)};
  }
  const double ca = std::cos(p.angle_rad), sa = std::sin(p.angle_rad);
  const double w1 = ca * ca, w2 = sa * sa;
  const double na = p.a->n(lambda_um), nb = p.b->n(lambda_um);
  const double nap = p.a->dn_dlambda(lambda_um), nbp = p.b->dn_dlambda(lambda_um);
  const double napp = p.a->d2n_dlambda2(lambda_um), nbpp = p.b->d2n_dlambda2(lambda_um);
  // u = 1/n^2 = w1/na^2 + w2/nb^2
  const double u = w1 / (na * na) + w2 / (nb * nb);
  const double up = -2.0 * (w1 * nap / (na * na * na) + w2 * nbp / (nb * nb * nb));
  const double upp = -2.0 * (w1 * (napp * na - 3.0 * nap * nap) / (na * na * na * na) +
                             w2 * (nbpp * nb - 3.0 * nbp * nbp) / (nb * nb * nb * nb));
  const double n = 1.0 / std::sqrt(u);
  const double np = -0.5 * up * n * n * n;
  const double npp = -0.5 * upp * n * n * n + 0.75 * up * up * n * n * n * n * n;
  return {n, np, npp};
}

}  // namespace

double refractive_index(const CrystalModel& m, const OpticalAxisSpec& s, double lambda_um) {
  if (s.theta_deg < 0.0 || s.theta_deg > 90.0 || s.phi_deg < 0.0 || s.phi_deg > 90.0)
    throw InvalidGeometry("angles must lie in [0, 90] deg");
  const AxisPair p = resolve(m, s);
  check_validity(p, lambda_um, m);
  return eval(p, lambda_um).n;
}

double group_index(const CrystalModel& m, const OpticalAxisSpec& s, double lambda_um,
                   DerivativeMethod method) {
  const AxisPair p = resolve(m, s);
  check_validity(p, lambda_um, m);
  if (method == DerivativeMethod::Analytic) {
    const NDerivs d = eval(p, lambda_um);
    return d.n - lambda_um * d.np;
  }
  const double h = fd_step_um;
  check_validity(p, lambda_um - h, m);
  check_validity(p, lambda_um + h, m);
  const double dn = (eval(p, lambda_um + h).n - eval(p, lambda_um - h).n) / (2.0 * h);
  return eval(p, lambda_um).n - lambda_um * dn;
}

double group_velocity_inverse(const CrystalModel& m, const OpticalAxisSpec& s, double lambda_um,
                              DerivativeMethod method) {
  return group_index(m, s, lambda_um, method) / c_light;
}

double gvd(const CrystalModel& m, const OpticalAxisSpec& s, double lambda_um,
           DerivativeMethod method) {
  const AxisPair p = resolve(m, s);
  check_validity(p, lambda_um, m);
  double npp;
  if (method == DerivativeMethod::Analytic) {
    npp = eval(p, lambda_um).npp;
  } else {
    const double h = fd_step_um;
    check_validity(p, lambda_um - h, m);
    check_validity(p, lambda_um + h, m);
    npp = (eval(p, lambda_um + h).n - 2.0 * eval(p, lambda_um).n + eval(p, lambda_um - h).n) /
          (h * h);
  }
  // beta2 = lambda^3/(2 pi c^2) d2n/dlambda2, SI
  const double lam_m = lambda_um * 1e-6;
  return lam_m * lam_m * lam_m / (2.0 * pi * c_light * c_light) * (npp * 1e12);
}

double wavenumber(const CrystalModel& m, const OpticalAxisSpec& s, double lambda_um) {
  return 2.0 * pi * refractive_index(m, s, lambda_um) / (lambda_um * 1e-6);
}

}  // namespace qfh
