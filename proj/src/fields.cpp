#include "cscrack/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "cscrack/error.hpp"

namespace cscrack {

namespace {
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);
}  // namespace

const char* to_string(Field f) noexcept {
  switch (f) {
    case Field::w: return "w";
    case Field::p3: return "p3";
    case Field::sigma23: return "sigma23";
    case Field::tau23: return "tau23";
    case Field::mu22: return "mu22";
    case Field::t23: return "t23";
  }
  return "unknown";
}

Field field_from_string(const char* name) {
  for (Field f : {Field::w, Field::p3, Field::sigma23, Field::tau23, Field::mu22, Field::t23})
    if (std::strcmp(name, to_string(f)) == 0) return f;
  throw Error(ErrorKind::invalid_parameter, std::string("unknown field '") + name + "'");
}

FieldSolver::FieldSolver(const FactorizedKernel& fk, const QuadratureSpec& spec)
    : fk_(fk), ctx_(fk.kernel()), spec_(spec), lambda_(fk.L_over_ell()), F_(fk.F()), xi_(fk.xi()) {
  check_spec(spec);
  const double F = F_;
  const double f_sens = std::max(1.0 / std::abs(1.0 - F), 1.0 / std::abs(F));
  factor_rel_error_ = fk.theta_interpolation_error() + fk.F_error() * f_sens +
                      fk.xi_error() / std::abs(xi_);

  // With vanishing rotational inertia the general skew-stress transform must
  // collapse onto its static arrangement.
  if (ctx_.h0() == 0.0) {
    for (double z : {1e-3, 0.1, 0.7, 1.0, 3.0, 10.0, 100.0}) {
      const double g = ctx_.tau_factor(z), s = ctx_.tau_factor_static(z);
      if (std::abs(g - s) > 1e-10 * std::max(1.0, std::abs(s))) {
        std::ostringstream os;
        os << "skew-stress transform forms disagree at xi = " << z << ": " << g << " vs " << s;
        throw Error(ErrorKind::domain, os.str());
      }
    }
  }
}

cplx FieldSolver::common_factor(double xi) const {
  const cplx load(1.0, lambda_ * xi);
  return (1.0 - F_ * load) / (split_sqrt_minus(xi) * load * ctx_.psi(xi) * fk_.k_minus_axis(xi));
}

cplx FieldSolver::w_transform(double xi) const { return 2.0 * xi_ * common_factor(xi); }

cplx FieldSolver::load_transform(double xi) const { return 1.0 / cplx(1.0, lambda_ * xi); }

cplx FieldSolver::p3_transform(double xi) const {
  return integrand(Field::p3, xi) * -xi_ + load_transform(xi);
}

std::pair<cplx, cplx> FieldSolver::halfplane_coefficients(double xi) const {
  const auto [a, b] = ctx_.alpha_beta(xi);
  const double diff = 2.0 * ctx_.chi(xi);  // alpha^2 - beta^2
  if (!(diff > 0.0)) throw Error(ErrorKind::domain, "alpha^2 = beta^2 on the real axis");
  const double ez2 = ctx_.eta() * xi * xi;
  const cplx wm = w_transform(xi);
  return {-(b * b + ez2) * wm / diff, (a * a + ez2) * wm / diff};
}

double FieldSolver::lead_power(Field f) const {
  switch (f) {
    case Field::w: return -2.5;
    case Field::sigma23: return -1.5;
    case Field::mu22: return -0.5;
    case Field::tau23:
    case Field::t23:
    case Field::p3: return 0.5;
  }
  return 0.5;
}

cplx FieldSolver::prefactor(Field f) const {
  switch (f) {
    case Field::w: return xi_ / kPi;
    case Field::sigma23: return -xi_ / kPi;
    case Field::tau23:
    case Field::t23:
    case Field::p3: return -xi_ / (2.0 * kPi);
    case Field::mu22: return -kI * xi_ * (1.0 + ctx_.eta()) / kPi;
  }
  return 0.0;
}

cplx FieldSolver::integrand(Field f, double xi) const {
  switch (f) {
    case Field::w: return common_factor(xi);
    case Field::sigma23: return ctx_.sigma_factor(xi) * common_factor(xi);
    case Field::tau23: return ctx_.tau_factor(xi) * common_factor(xi);
    case Field::mu22: return xi * ctx_.sigma_factor(xi) * common_factor(xi);
    case Field::t23:
      return (2.0 * ctx_.sigma_factor(xi) + ctx_.tau_factor(xi)) * common_factor(xi);
    case Field::p3: {
      const cplx load(1.0, lambda_ * xi);
      return (1.0 - F_ * load) / load * split_sqrt_plus(xi) / fk_.k_plus_axis(xi);
    }
  }
  return 0.0;
}

FieldSample FieldSolver::finish(double X, const InversionResult& r, cplx pref) const {
  const cplx v = pref * r.value;
  FieldSample s;
  s.X = X;
  s.value = v.real();
  s.imag_residual = v.imag();
  s.error = std::abs(pref) * (r.error + factor_rel_error_ * r.l1);
  s.tail_dominated = r.tail_dominated;
  return s;
}

FieldSample FieldSolver::invert(Field f, double X) const {
  if (!std::isfinite(X)) throw Error(ErrorKind::domain, "X must be finite");
  const ComplexFn g = [this, f](double xi) { return integrand(f, xi); };
  const auto r = oscillatory_inverse(g, X, spec_, lead_power(f), fk_.scale());
  FieldSample s = finish(X, r, prefactor(f));
  if (f == Field::p3 && X < 0.0) s.value += std::exp(X / lambda_) / lambda_;
  return s;
}

FieldSample FieldSolver::crack_opening(double X) const {
  if (!(X < 0.0)) throw Error(ErrorKind::domain, "crack opening is defined for X < 0");
  return invert(Field::w, X);
}

FieldSample FieldSolver::traction_ahead(double X) const {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "traction ahead of the tip needs X > 0");
  return invert(Field::p3, X);
}

FieldSample FieldSolver::sigma23(double X) const {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "sigma23 is evaluated ahead of the tip (X > 0)");
  return invert(Field::sigma23, X);
}

FieldSample FieldSolver::tau23(double X) const {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "tau23 is evaluated ahead of the tip (X > 0)");
  return invert(Field::tau23, X);
}

FieldSample FieldSolver::mu22(double X) const {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "mu22 is evaluated ahead of the tip (X > 0)");
  return invert(Field::mu22, X);
}

FieldSample FieldSolver::total_shear(double X, ShearMode mode) const {
  if (!(X > 0.0)) throw Error(ErrorKind::domain, "t23 is evaluated ahead of the tip (X > 0)");
  if (mode == ShearMode::combined) return invert(Field::t23, X);
  const auto s = invert(Field::sigma23, X);
  const auto t = invert(Field::tau23, X);
  FieldSample out;
  out.X = X;
  out.value = s.value + t.value;
  out.imag_residual = s.imag_residual + t.imag_residual;
  out.error = s.error + t.error;
  out.tail_dominated = s.tail_dominated || t.tail_dominated;
  return out;
}

FieldSample FieldSolver::halfplane_displacement(double X, double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) throw Error(ErrorKind::domain, "y must be finite and >= 0");
  if (y == 0.0) return invert(Field::w, X);

  // The exp(-beta y) factor decays like exp(-sqrt(1 - 2 h0^2 m^2) |xi| y);
  // cut where it is below 1e-20.
  QuadratureSpec s = spec_;
  const double rate = std::sqrt(ctx_.inertia_factor()) * y;
  s.truncation = std::max(30.0 * fk_.scale(), 46.0 / rate);
  const ComplexFn g = [this, y](double xi) -> cplx {
    const auto [a, b] = ctx_.alpha_beta(xi);
    const auto [C, D] = halfplane_coefficients(xi);
    return C * std::exp(-a * y) + D * std::exp(-b * y);
  };
  const auto r = oscillatory_inverse(g, X, s, -2.5, fk_.scale());
  return finish(X, r, 1.0 / (2.0 * kPi));
}

double physical_scale(Field f, const ProblemSetup& setup) {
  const double T0 = setup.T0, ell = setup.material.ell;
  switch (f) {
    case Field::w: return T0 / setup.material.G;
    case Field::mu22: return T0;
    case Field::p3:
    case Field::sigma23:
    case Field::tau23:
    case Field::t23: return T0 / ell;
  }
  return 1.0;
}

}  // namespace cscrack
