#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qfh/constants.hpp"
#include "qfh/dispersion.hpp"
#include "qfh/errors.hpp"

using namespace qfh;

namespace {

OpticalAxisSpec pure_axis(const CrystalModel& m, const std::string& key) {
  // geometry that evaluates exactly one principal axis
  OpticalAxisSpec s;
  if (m.symmetry == Symmetry::Uniaxial) {
    s.polarization = key == "e" ? Polarization::Extraordinary : Polarization::Ordinary;
    s.theta_deg = key == "e" ? 90.0 : 0.0;
    return s;
  }
  if (key == "X") {
    s.principal_plane = PrincipalPlane::XZ;
    s.polarization = Polarization::Extraordinary;
    s.theta_deg = 0.0;
  } else if (key == "Y") {
    s.principal_plane = PrincipalPlane::XZ;
    s.polarization = Polarization::Ordinary;
    s.theta_deg = 53.0;
  } else {
    s.principal_plane = PrincipalPlane::XZ;
    s.polarization = Polarization::Extraordinary;
    s.theta_deg = 90.0;
  }
  return s;
}

}  // namespace

TEST_CASE("constant-index model behaves like vacuum scaled by n0") {
  const auto m = make_constant_crystal(1.0);
  OpticalAxisSpec s;
  for (double lam : {0.4, 0.8, 1.55, 3.0}) {
    CHECK(refractive_index(m, s, lam) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(group_index(m, s, lam) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gvd(m, s, lam) == doctest::Approx(0.0).epsilon(1e-30));
  }
  const auto m2 = make_constant_crystal(1.75);
  CHECK(group_index(m2, s, 1.0) == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(group_velocity_inverse(m2, s, 1.0) == doctest::Approx(1.75 / c_light).epsilon(1e-12));
}

TEST_CASE("uniaxial extraordinary wave at theta 0 degenerates to the ordinary index") {
  const auto m = load_crystal_by_name("bbo_tamosauskas_2018");
  OpticalAxisSpec so{Polarization::Ordinary, 0.0, 0.0, std::nullopt};
  OpticalAxisSpec se{Polarization::Extraordinary, 0.0, 0.0, std::nullopt};
  for (double lam : {0.4, 0.908, 1.55}) {
    CHECK(refractive_index(m, se, lam) ==
          doctest::Approx(refractive_index(m, so, lam)).epsilon(1e-14));
  }
}

TEST_CASE("KTP Z-axis index matches an independent evaluation of the fit") {
  const auto m = load_crystal_by_name("ktp_kato_2002");
  CHECK(refractive_index(m, pure_axis(m, "Z"), 1.55) ==
        doctest::Approx(1.8157731108173114).epsilon(1e-12));
}

TEST_CASE("bundled scalar index values") {
  const auto bbo = load_crystal_by_name("bbo_tamosauskas_2018");
  OpticalAxisSpec so{Polarization::Ordinary, 0.0, 0.0, std::nullopt};
  CHECK(refractive_index(bbo, so, 0.908) == doctest::Approx(1.6575607960684782).epsilon(1e-12));

  const auto lnb = load_crystal_by_name("mglnb_zelmon_1997");
  OpticalAxisSpec se{Polarization::Extraordinary, 90.0, 0.0, std::nullopt};
  CHECK(refractive_index(lnb, so, 1.064) == doctest::Approx(2.228837147402834).epsilon(1e-12));
  CHECK(refractive_index(lnb, se, 1.064) == doctest::Approx(2.147370127041092).epsilon(1e-12));
}

TEST_CASE("group velocity agrees with a finite-difference of k(omega)") {
  for (const auto& name : list_crystal_names()) {
    const auto m = load_crystal_by_name(name);
    for (const auto& [key, form] : m.axes) {
      const auto spec = pure_axis(m, key);
      const double lo = m.validity_lo_um(), hi = m.validity_hi_um();
      for (double f : {0.25, 0.5, 0.75}) {
        const double lam = lo + f * (hi - lo);
        const double w = omega_from_um(lam);
        const double dw = w * 1e-7;
        const double kp = wavenumber(m, spec, um_from_omega(w + dw));
        const double km = wavenumber(m, spec, um_from_omega(w - dw));
        const double fd = (kp - km) / (2.0 * dw);
        const double an = group_velocity_inverse(m, spec, lam);
        CHECK(an == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("analytic and finite-difference derivative paths agree") {
  for (const auto& name : list_crystal_names()) {
    const auto m = load_crystal_by_name(name);
    for (const auto& key : m.symmetry == Symmetry::Uniaxial
                               ? std::vector<std::string>{"o", "e"}
                               : std::vector<std::string>{"X", "Y", "Z"}) {
      const auto spec = pure_axis(m, key);
      const double lo = m.validity_lo_um(), hi = m.validity_hi_um();
      for (double f : {0.2, 0.5, 0.8}) {
        const double lam = lo + f * (hi - lo);
        CHECK(group_index(m, spec, lam, DerivativeMethod::Analytic) ==
              doctest::Approx(group_index(m, spec, lam, DerivativeMethod::FiniteDifference))
                  .epsilon(1e-6));
        CHECK(gvd(m, spec, lam, DerivativeMethod::Analytic) ==
              doctest::Approx(gvd(m, spec, lam, DerivativeMethod::FiniteDifference))
                  .epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("biaxial axis ordering nX < nY < nZ across validity") {
  for (const auto& name : list_crystal_names()) {
    const auto m = load_crystal_by_name(name);
    if (m.symmetry != Symmetry::Biaxial) continue;
    const double lo = m.validity_lo_um(), hi = m.validity_hi_um();
    for (int k = 0; k < 10; ++k) {
      const double lam = lo + (k + 0.5) * (hi - lo) / 10.0;
      const double nx = m.axis("X").n(lam);
      const double ny = m.axis("Y").n(lam);
      const double nz = m.axis("Z").n(lam);
      CHECK(nx < ny);
      CHECK(ny < nz);
    }
  }
}

TEST_CASE("index is continuous in wavelength") {
  const auto m = load_crystal_by_name("ktp_kato_2002");
  const auto spec = pure_axis(m, "Y");
  for (double lam : {0.5, 1.0, 2.0}) {
    const double d = std::abs(refractive_index(m, spec, lam + 1e-6) -
                              refractive_index(m, spec, lam));
    CHECK(d < 1e-5);
  }
}

TEST_CASE("validity range is enforced") {
  const auto m = load_crystal_by_name("ktp_kato_2002");
  OpticalAxisSpec s;
  s.principal_plane = PrincipalPlane::XZ;
  CHECK_THROWS_AS(refractive_index(m, s, 0.2), OutOfValidityRange);
  CHECK_THROWS_AS(refractive_index(m, s, 5.0), OutOfValidityRange);
}

TEST_CASE("biaxial geometry requires a principal plane") {
  const auto m = load_crystal_by_name("ktp_kato_2002");
  OpticalAxisSpec s;  // no plane
  CHECK_THROWS_AS(refractive_index(m, s, 1.0), InvalidGeometry);
  const auto u = load_crystal_by_name("bbo_kato_1986");
  OpticalAxisSpec s2;
  s2.principal_plane = PrincipalPlane::XZ;
  CHECK_THROWS_AS(refractive_index(u, s2, 1.0), InvalidGeometry);
}

TEST_CASE("tabulated index files interpolate a sampled fit") {
  const auto m = load_crystal_by_name("ktp_kato_2002");
  const auto& form = m.axis("Z");
  std::vector<double> xs, ys;
  for (double lam = 0.5; lam <= 3.2; lam += 0.02) {
    xs.push_back(lam);
    ys.push_back(form.n(lam));
  }
  const auto tab = make_tabulated_form(xs, ys);
  for (double lam : {0.7, 1.55, 2.5}) {
    CHECK(tab.n(lam) == doctest::Approx(form.n(lam)).epsilon(1e-8));
    CHECK(tab.dn_dlambda(lam) == doctest::Approx(form.dn_dlambda(lam)).epsilon(1e-4));
  }
}
