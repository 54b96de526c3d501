#include "qfh/phasematch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "qfh/constants.hpp"
#include "qfh/errors.hpp"

namespace qfh {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double grating_term(const InteractionConfig& cfg) {
  if (!cfg.poling_period_um) return 0.0;
  return cfg.qpm_order * 2.0 * pi / (*cfg.poling_period_um * 1e-6);
}

// in-plane tuning angle for a polarization/plane combination
void set_angle(OpticalAxisSpec& s, double angle_deg) {
  if (s.principal_plane && *s.principal_plane == PrincipalPlane::XY) {
    s.theta_deg = 90.0;
    s.phi_deg = angle_deg;
  } else {
    s.theta_deg = angle_deg;
    s.phi_deg = s.principal_plane && *s.principal_plane == PrincipalPlane::YZ ? 90.0 : 0.0;
  }
}

double get_angle(const OpticalAxisSpec& s) {
  if (s.principal_plane && *s.principal_plane == PrincipalPlane::XY) return s.phi_deg;
  return s.theta_deg;
}

}  // namespace

OpticalAxisSpec axis_spec_for(const CrystalModel& crystal, Polarization pol,
                              std::optional<PrincipalPlane> plane, double angle_deg) {
  OpticalAxisSpec s;
  s.polarization = pol;
  if (crystal.symmetry == Symmetry::Biaxial) {
    if (!plane) throw InvalidGeometry("biaxial crystal needs a principal plane");
    s.principal_plane = plane;
  } else if (plane) {
    throw InvalidGeometry("uniaxial crystal takes no principal plane");
  }
  set_angle(s, angle_deg);
  return s;
}

InteractionConfig make_config(CrystalModel crystal, OpticalAxisSpec gi, OpticalAxisSpec go,
                              OpticalAxisSpec gp, double lambda_i_um, double lambda_o_um,
                              double length_m, std::optional<double> poling_period_um,
                              int qpm_order) {
  if (length_m <= 0.0) throw ConfigInvalid("crystal length must be positive");
  if (poling_period_um && *poling_period_um == 0.0)
    throw ConfigInvalid("poling period must be nonzero");
  if (qpm_order % 2 == 0) throw ConfigInvalid("QPM order must be odd");
  if (lambda_o_um <= lambda_i_um)
    throw NonpositivePumpFrequency("output carrier must be below the input in frequency");
  InteractionConfig cfg;
  cfg.crystal = std::move(crystal);
  cfg.geom_i = gi;
  cfg.geom_o = go;
  cfg.geom_p = gp;
  cfg.lambda_i_um = lambda_i_um;
  cfg.lambda_o_um = lambda_o_um;
  cfg.lambda_p_um = 1.0 / (1.0 / lambda_i_um - 1.0 / lambda_o_um);
  cfg.length_m = length_m;
  cfg.poling_period_um = poling_period_um;
  cfg.qpm_order = qpm_order;
  return cfg;
}

double delta_k(const InteractionConfig& cfg, double omega_i, double omega_o) {
  const double omega_p = omega_i - omega_o;
  if (omega_p <= 0.0) throw NonpositivePumpFrequency("omega_i - omega_o <= 0");
  const double ki = wavenumber(cfg.crystal, cfg.geom_i, um_from_omega(omega_i));
  const double ko = wavenumber(cfg.crystal, cfg.geom_o, um_from_omega(omega_o));
  const double kp = wavenumber(cfg.crystal, cfg.geom_p, um_from_omega(omega_p));
  return ki - ko - kp - grating_term(cfg);
}

double delta_k_linearized(const InteractionConfig& cfg, double Omega_i, double Omega_o) {
  const double dk0 = delta_k(cfg, omega_from_um(cfg.lambda_i_um), omega_from_um(cfg.lambda_o_um));
  const double vi = group_velocity_inverse(cfg.crystal, cfg.geom_i, cfg.lambda_i_um);
  const double vo = group_velocity_inverse(cfg.crystal, cfg.geom_o, cfg.lambda_o_um);
  const double vp = group_velocity_inverse(cfg.crystal, cfg.geom_p, cfg.lambda_p_um);
  return dk0 + (vi - vp) * Omega_i + (vp - vo) * Omega_o;
}

std::complex<double> pmf(const InteractionConfig& cfg, double omega_i, double omega_o) {
  return {sinc(delta_k(cfg, omega_i, omega_o) * cfg.length_m / 2.0), 0.0};
}

double pmf_angle(const InteractionConfig& cfg) {
  const double vi = group_velocity_inverse(cfg.crystal, cfg.geom_i, cfg.lambda_i_um);
  const double vo = group_velocity_inverse(cfg.crystal, cfg.geom_o, cfg.lambda_o_um);
  const double vp = group_velocity_inverse(cfg.crystal, cfg.geom_p, cfg.lambda_p_um);
  const double num = vi - vp, den = vp - vo;
  if (std::abs(den) < 1e-18)
    throw DegenerateDenominator("|1/v_p - 1/v_o| < 1e-18 s/m: ridge angle is +-90 deg");
  double th = std::atan2(num, den) * 180.0 / pi;
  if (th > 90.0) th -= 180.0;
  if (th <= -90.0) th += 180.0;
  return th;
}

namespace {

struct CarrierContext {
  const CrystalModel& crystal;
  std::optional<PrincipalPlane> plane;
  Polarization pi_, po_, pp_;
  double li, lo, lp;

  double dk0(double angle_deg) const {
    const auto gi = axis_spec_for(crystal, pi_, plane, angle_deg);
    const auto go = axis_spec_for(crystal, po_, plane, angle_deg);
    const auto gp = axis_spec_for(crystal, pp_, plane, angle_deg);
    return wavenumber(crystal, gi, li) - wavenumber(crystal, go, lo) -
           wavenumber(crystal, gp, lp);
  }

  double gvm(double angle_deg) const {
    const auto gi = axis_spec_for(crystal, pi_, plane, angle_deg);
    const auto gp = axis_spec_for(crystal, pp_, plane, angle_deg);
    return group_velocity_inverse(crystal, gi, li) - group_velocity_inverse(crystal, gp, lp);
  }
};

// bisection refined by secant steps on a bracketed sign change
double refine_root(const std::function<double(double)>& f, double a, double b, double fa,
                   double fb, double xtol) {
  for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
    double m = 0.5 * (a + b);
    if (std::abs(fb - fa) > 0.0) {
      const double s = b - fb * (b - a) / (fb - fa);  // secant candidate
      if (s > a + 0.1 * (b - a) && s < b - 0.1 * (b - a)) m = s;
    }
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> all_angle_roots(const CarrierContext& ctx) {
  constexpr int n_scan = 181;
  std::vector<double> roots;
  double prev_a = 0.0, prev_f = 0.0;
  bool have_prev = false;
  for (int k = 0; k < n_scan; ++k) {
    const double a = 90.0 * k / (n_scan - 1);
    double fv;
    try {
      fv = ctx.dk0(a);
    } catch (const Error&) {
      have_prev = false;
      continue;
    }
    if (have_prev && (prev_f < 0.0) != (fv < 0.0)) {
      const double r = refine_root([&](double x) { return ctx.dk0(x); }, prev_a, a, prev_f, fv,
                                   1e-11);
      roots.push_back(r);
    }
    prev_a = a;
    prev_f = fv;
    have_prev = true;
  }
  return roots;
}

}  // namespace

double solve_carrier_phasematch(const CrystalModel& crystal, std::optional<PrincipalPlane> plane,
                                Polarization pol_i, Polarization pol_o, Polarization pol_p,
                                double lambda_i_um, double lambda_o_um) {
  const double lp = 1.0 / (1.0 / lambda_i_um - 1.0 / lambda_o_um);
  CarrierContext ctx{crystal, plane, pol_i, pol_o, pol_p, lambda_i_um, lambda_o_um, lp};
  const auto roots = all_angle_roots(ctx);
  if (roots.empty())
    throw NoBracket("no phase-matching angle on [0, 90] deg for " + crystal.name);
  const double th = roots.front();
  if (std::abs(ctx.dk0(th)) > dk0_tol)
    throw NumericalFailure("phase-match refinement left |dk0| above tolerance");
  return th;
}

double solve_qpm_period_um(const InteractionConfig& cfg, int order) {
  InteractionConfig c = cfg;
  c.poling_period_um.reset();
  const double dk0 = delta_k(c, omega_from_um(c.lambda_i_um), omega_from_um(c.lambda_o_um));
  if (dk0 == 0.0) throw DegenerateDenominator("carrier mismatch already zero; no grating needed");
  return order * 2.0 * pi / dk0 * 1e6;
}

std::vector<GVMSolution> solve_gvm_operating_points(const CrystalModel& crystal,
                                                    std::optional<PrincipalPlane> plane,
                                                    Polarization pol_i, Polarization pol_o,
                                                    Polarization pol_p, double lambda_o_um,
                                                    const GVMSearchOptions& opt) {
  std::vector<GVMSolution> out;

  // residual of branch `b` (b-th phase-matching angle) at trial lambda_i;
  // NaN when the branch does not exist there
  auto branch_residual = [&](double li, std::size_t b, double* theta_out) -> double {
    const double lp = 1.0 / (1.0 / li - 1.0 / lambda_o_um);
    CarrierContext ctx{crystal, plane, pol_i, pol_o, pol_p, li, lambda_o_um, lp};
    try {
      if (opt.fixed_angle_deg) {
        if (theta_out) *theta_out = *opt.fixed_angle_deg;
        return ctx.gvm(*opt.fixed_angle_deg);
      }
      const auto roots = all_angle_roots(ctx);
      if (b >= roots.size()) return std::nan("");
      if (theta_out) *theta_out = roots[b];
      return ctx.gvm(roots[b]);
    } catch (const Error&) {
      return std::nan("");
    }
  };

  const std::size_t max_branches = opt.fixed_angle_deg ? 1 : 3;
  for (std::size_t b = 0; b < max_branches; ++b) {
    double prev_li = 0.0, prev_res = 0.0;
    bool have_prev = false;
    for (int k = 0; k < opt.scan_points; ++k) {
      const double li =
          opt.lambda_i_lo_um + (opt.lambda_i_hi_um - opt.lambda_i_lo_um) * k / (opt.scan_points - 1);
      if (li >= lambda_o_um) break;
      const double res = branch_residual(li, b, nullptr);
      if (std::isnan(res)) {
        have_prev = false;
        continue;
      }
      if (have_prev && (prev_res < 0.0) != (res < 0.0)) {
        const double li_root = refine_root(
            [&](double x) {
              const double r = branch_residual(x, b, nullptr);
              return std::isnan(r) ? prev_res : r;  // keep the bracket on branch loss
            },
            prev_li, li, prev_res, res, 1e-9);
        double theta = 0.0;
        const double gvm_res = branch_residual(li_root, b, &theta);
        if (!std::isnan(gvm_res) && std::abs(gvm_res) < gvm_tol) {
          GVMSolution s;
          s.crystal = crystal.name;
          s.lambda_i_um = li_root;
          s.lambda_o_um = lambda_o_um;
          s.lambda_p_um = 1.0 / (1.0 / li_root - 1.0 / lambda_o_um);
          const auto spec = axis_spec_for(crystal, pol_p, plane, theta);
          s.theta_deg = spec.theta_deg;
          s.phi_deg = spec.phi_deg;
          s.plane = plane;
          s.pol_i = pol_i;
          s.pol_o = pol_o;
          s.pol_p = pol_p;
          s.gvm_residual = gvm_res;
          const double lp = s.lambda_p_um;
          CarrierContext ctx{crystal, plane, pol_i, pol_o, pol_p, li_root, lambda_o_um, lp};
          s.dk0_residual = opt.fixed_angle_deg ? 0.0 : ctx.dk0(theta);
          if (opt.fixed_angle_deg) {
            // poling cancels the carrier mismatch by construction
            s.theta_deg = axis_spec_for(crystal, pol_p, plane, *opt.fixed_angle_deg).theta_deg;
            s.phi_deg = axis_spec_for(crystal, pol_p, plane, *opt.fixed_angle_deg).phi_deg;
          }
          if (std::abs(s.dk0_residual) <= dk0_tol) out.push_back(s);
        }
      }
      prev_li = li;
      prev_res = res;
      have_prev = true;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GVMSolution& a, const GVMSolution& b) { return a.lambda_i_um < b.lambda_i_um; });
  // branch tracking can revisit the same crossing; drop near-duplicates
  out.erase(std::unique(out.begin(), out.end(),
                        [](const GVMSolution& a, const GVMSolution& b) {
                          return std::abs(a.lambda_i_um - b.lambda_i_um) < 1e-6 &&
                                 std::abs(a.theta_deg - b.theta_deg) < 1e-5 &&
                                 std::abs(a.phi_deg - b.phi_deg) < 1e-5;
                        }),
            out.end());
  return out;
}

GVMSolution solve_gvm_operating_point(const CrystalModel& crystal,
                                      std::optional<PrincipalPlane> plane, Polarization pol_i,
                                      Polarization pol_o, Polarization pol_p, double lambda_o_um,
                                      const GVMSearchOptions& opt) {
  const auto all =
      solve_gvm_operating_points(crystal, plane, pol_i, pol_o, pol_p, lambda_o_um, opt);
  if (all.empty())
    throw NoBracket("no GVM operating point for " + crystal.name + " in the scan window");
  return all.front();
}

std::vector<GVMTableEntry> gvm_table(double lambda_o_um, const std::vector<CrystalModel>& crystals,
                                     const GVMSearchOptions& opt, int threads) {
  struct Combo {
    const CrystalModel* crystal;
    std::optional<PrincipalPlane> plane;
    Polarization pi_, po_, pp_;
  };
  std::vector<Combo> combos;
  const Polarization P[2] = {Polarization::Ordinary, Polarization::Extraordinary};
  for (const auto& c : crystals) {
    std::vector<std::optional<PrincipalPlane>> planes;
    if (c.symmetry == Symmetry::Uniaxial)
      planes = {std::nullopt};
    else
      planes = {PrincipalPlane::XY, PrincipalPlane::XZ, PrincipalPlane::YZ};
    for (const auto& pl : planes)
      for (auto a : P)
        for (auto b : P)
          for (auto d : P) {
            // all-ordinary leaves no angle to tune
            if (a == Polarization::Ordinary && b == Polarization::Ordinary &&
                d == Polarization::Ordinary)
              continue;
            combos.push_back({&c, pl, a, b, d});
          }
  }

  std::vector<std::vector<GVMTableEntry>> results(combos.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= combos.size()) return;
      const auto& cb = combos[k];
      std::vector<GVMTableEntry> local;
      try {
        const auto sols = solve_gvm_operating_points(*cb.crystal, cb.plane, cb.pi_, cb.po_,
                                                     cb.pp_, lambda_o_um, opt);
        if (sols.empty()) throw NoBracket("no sign change in scan window");
        for (const auto& s : sols) {
          GVMTableEntry e;
          e.solution = s;
          e.converged = true;
          e.plane = cb.plane;
          e.pol_i = cb.pi_;
          e.pol_o = cb.po_;
          e.pol_p = cb.pp_;
          e.crystal = cb.crystal->name;
          local.push_back(e);
        }
      } catch (const Error& err) {
        GVMTableEntry e;
        e.converged = false;
        e.failure = err.what();
        e.plane = cb.plane;
        e.pol_i = cb.pi_;
        e.pol_o = cb.po_;
        e.pol_p = cb.pp_;
        e.crystal = cb.crystal->name;
        local.push_back(e);
      }
      results[k] = std::move(local);
    }
  };
  const int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<GVMTableEntry> out;
  for (auto& r : results)
    for (auto& e : r) out.push_back(std::move(e));
  return out;
}

}  // namespace qfh
