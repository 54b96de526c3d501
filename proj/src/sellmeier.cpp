#include "qfh/sellmeier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qfh/errors.hpp"

namespace qfh {

SellmeierVariant variant_from_string(const std::string& s) {
  static const std::map<std::string, SellmeierVariant> names = {
      {"constant", SellmeierVariant::Constant},     {"kato2", SellmeierVariant::Kato2},
      {"kato3", SellmeierVariant::Kato3},           {"twopole", SellmeierVariant::TwoPole},
      {"sellmeier3", SellmeierVariant::Sellmeier3}, {"tabulated", SellmeierVariant::Tabulated}};
  auto it = names.find(s);
  if (it == names.end()) throw ConfigInvalid("unknown sellmeier variant: " + s);
  return it->second;
}

std::string to_string(SellmeierVariant v) {
  switch (v) {
    case SellmeierVariant::Constant: return "constant";
    case SellmeierVariant::Kato2: return "kato2";
    case SellmeierVariant::Kato3: return "kato3";
    case SellmeierVariant::TwoPole: return "twopole";
    case SellmeierVariant::Sellmeier3: return "sellmeier3";
    case SellmeierVariant::Tabulated: return "tabulated";
  }
  return "?";
}

namespace detail {

// natural cubic spline through (x, y)
struct Spline {
  std::vector<double> x, y, m;  // m = second derivatives at knots

  void build() {
    const std::size_t n = x.size();
    m.assign(n, 0.0);
    std::vector<double> u(n, 0.0), v(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hi = x[i] - x[i - 1], hi1 = x[i + 1] - x[i];
      const double a = hi / 6.0, b = (hi + hi1) / 3.0, cc = hi1 / 6.0;
      const double d = (y[i + 1] - y[i]) / hi1 - (y[i] - y[i - 1]) / hi;
      const double w = b - a * v[i - 1];
      v[i] = cc / w;
      u[i] = (d - a * u[i - 1]) / w;
    }
    for (std::size_t i = n - 2; i >= 1; --i) m[i] = u[i] - v[i] * m[i + 1];
  }

  void eval(double xq, double& f, double& fp, double& fpp) const {
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    auto jj = it - x.begin();
    const std::size_t j = std::min<std::size_t>(std::max<long>(1, jj), x.size() - 1);
    const double h = x[j] - x[j - 1];
    const double a = (x[j] - xq) / h, b = (xq - x[j - 1]) / h;
    f = a * y[j - 1] + b * y[j] +
        ((a * a * a - a) * m[j - 1] + (b * b * b - b) * m[j]) * h * h / 6.0;
    fp = (y[j] - y[j - 1]) / h +
         h / 6.0 * (-(3.0 * a * a - 1.0) * m[j - 1] + (3.0 * b * b - 1.0) * m[j]);
    fpp = a * m[j - 1] + b * m[j];
  }
};

}  // namespace detail

namespace {

// n^2 = F(s), s = lambda^2, along with dF/ds and d2F/ds2
struct F2 {
  double f, fp, fpp;
};

F2 eval_f(const SellmeierForm& sf, double s) {
  const auto& c = sf.coefficients;
  switch (sf.variant) {
    case SellmeierVariant::Constant:
      return {c[0] * c[0], 0.0, 0.0};
    case SellmeierVariant::Kato2: {
      const double d = s - c[2];
      return {c[0] + c[1] / d + c[3] * s, -c[1] / (d * d) + c[3], 2.0 * c[1] / (d * d * d)};
    }
    case SellmeierVariant::Kato3: {
      const double d = s - c[2];
      return {c[0] + c[1] / d + c[3] * s + c[4] * s * s + c[5] * s * s * s,
              -c[1] / (d * d) + c[3] + 2.0 * c[4] * s + 3.0 * c[5] * s * s,
              2.0 * c[1] / (d * d * d) + 2.0 * c[4] + 6.0 * c[5] * s};
    }
    case SellmeierVariant::TwoPole: {
      const double d1 = s - c[2], d2 = s - c[4];
      return {c[0] + c[1] / d1 + c[3] / d2, -c[1] / (d1 * d1) - c[3] / (d2 * d2),
              2.0 * c[1] / (d1 * d1 * d1) + 2.0 * c[3] / (d2 * d2 * d2)};
    }
    case SellmeierVariant::Sellmeier3: {
      // Bk s/(s-Ck) = Bk + Bk Ck/(s-Ck)
      double f = 1.0, fp = 0.0, fpp = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double B = c[2 * k], C = c[2 * k + 1];
        const double d = s - C;
        f += B + B * C / d;
        fp += -B * C / (d * d);
        fpp += 2.0 * B * C / (d * d * d);
      }
      return {f, fp, fpp};
    }
    case SellmeierVariant::Tabulated:
      throw NumericalFailure("eval_f called on tabulated form");
  }
  throw NumericalFailure("unreachable");
}

}  // namespace

void SellmeierForm::finalize() {
  std::size_t want = 0;
  switch (variant) {
    case SellmeierVariant::Constant: want = 1; break;
    case SellmeierVariant::Kato2: want = 4; break;
    case SellmeierVariant::Kato3: want = 6; break;
    case SellmeierVariant::TwoPole: want = 5; break;
    case SellmeierVariant::Sellmeier3: want = 6; break;
    case SellmeierVariant::Tabulated: {
      if (coefficients.size() < 8 || coefficients.size() % 2 != 0)
        throw ConfigInvalid("tabulated form needs >= 4 (lambda, n) pairs");
      auto sp = std::make_shared<detail::Spline>();
      const std::size_t n = coefficients.size() / 2;
      sp->x.resize(n);
      sp->y.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        sp->x[i] = coefficients[2 * i];
        sp->y[i] = coefficients[2 * i + 1];
        if (i > 0 && sp->x[i] <= sp->x[i - 1])
          throw ConfigInvalid("tabulated wavelengths must be strictly increasing");
      }
      sp->build();
      spline = std::move(sp);
      return;
    }
  }
  if (coefficients.size() != want)
    throw ConfigInvalid("variant " + to_string(variant) + " expects " + std::to_string(want) +
                        " coefficients, got " + std::to_string(coefficients.size()));
}

double SellmeierForm::n(double lambda_um) const {
  if (variant == SellmeierVariant::Tabulated) {
    double f, fp, fpp;
    spline->eval(lambda_um, f, fp, fpp);
    return f;
  }
  const double n2 = eval_f(*this, lambda_um * lambda_um).f;
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw OutOfValidityRange("n^2 not positive/finite at lambda = " + std::to_string(lambda_um) +
                             " um");
  return std::sqrt(n2);
}

double SellmeierForm::dn_dlambda(double lambda_um) const {
  if (variant == SellmeierVariant::Tabulated) {
    double f, fp, fpp;
    spline->eval(lambda_um, f, fp, fpp);
    return fp;
  }
  const double s = lambda_um * lambda_um;
  const F2 F = eval_f(*this, s);
  return lambda_um * F.fp / std::sqrt(F.f);  // dn/dl = l F'(s)/n
}

double SellmeierForm::d2n_dlambda2(double lambda_um) const {
  if (variant == SellmeierVariant::Tabulated) {
    double f, fp, fpp;
    spline->eval(lambda_um, f, fp, fpp);
    return fpp;
  }
  const double s = lambda_um * lambda_um;
  const F2 F = eval_f(*this, s);
  const double nn = std::sqrt(F.f);
  const double np = lambda_um * F.fp / nn;
  // d2(n^2)/dl^2 = 2 F' + 4 s F'' = 2 (n n'' + n'^2)
  return (F.fp + 2.0 * s * F.fpp - np * np) / nn;
}

SellmeierForm make_constant_form(double n0, double lo_um, double hi_um) {
  SellmeierForm sf;
  sf.variant = SellmeierVariant::Constant;
  sf.coefficients = {n0};
  sf.validity_lo_um = lo_um;
  sf.validity_hi_um = hi_um;
  sf.finalize();
  return sf;
}

SellmeierForm make_tabulated_form(std::vector<double> lambda_um, std::vector<double> n) {
  if (lambda_um.size() != n.size())
    throw ConfigInvalid("tabulated form: lambda/n size mismatch");
  SellmeierForm sf;
  sf.variant = SellmeierVariant::Tabulated;
  sf.coefficients.reserve(2 * n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    sf.coefficients.push_back(lambda_um[i]);
    sf.coefficients.push_back(n[i]);
  }
  sf.validity_lo_um = lambda_um.front();
  sf.validity_hi_um = lambda_um.back();
  sf.finalize();
  return sf;
}

}  // namespace qfh
