#include "cscrack/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cscrack/error.hpp"

namespace cscrack {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr int kThetaNodes = 20;
constexpr double kXMin = 1e-6;
constexpr double kXMax = 1e8;

cplx sqrt_with_arg(double r, double arg) { return std::polar(std::sqrt(r), 0.5 * arg); }

// Integral of h over [0, inf): [0, T] with decade and feature breakpoints,
// then t = 1/u on the remainder. Decade breakpoints keep the O(1) structure
// of the kernel visible to the first pass even when a feature point sits at
// a huge t.
template <class T, class Fn>
QuadResult<T> half_axis(const Fn& h, const std::vector<double>& features, const QuadratureSpec& spec) {
  double top = 10.0;
  for (double f : features) top = std::max(top, 2.0 * f);
  std::vector<double> pts = features;
  for (double d = 1e-7; d < top; d *= 10.0) pts.push_back(d);

  QuadResult<T> out;
  if constexpr (std::is_same_v<T, double>) {
    out = integrate_adaptive(RealFn(h), 0.0, top, spec, pts);
  } else {
    out = integrate_adaptive(ComplexFn(h), 0.0, top, spec, pts);
  }
  std::vector<double> upts;
  for (double d = 1.0 / top / 10.0; d > 1e-9; d /= 10.0) upts.push_back(d);
  auto inv = [&](double u) -> T { return h(1.0 / u) / (u * u); };
  QuadResult<T> tail;
  if constexpr (std::is_same_v<T, double>) {
    tail = integrate_adaptive(RealFn(inv), 0.0, 1.0 / top, spec, upts);
  } else {
    tail = integrate_adaptive(ComplexFn(inv), 0.0, 1.0 / top, spec, upts);
  }
  out.value += tail.value;
  out.error += tail.error;
  out.l1 += tail.l1;
  out.evaluations += tail.evaluations;
  return out;
}

QuadratureSpec tighter(const QuadratureSpec& s) {
  QuadratureSpec t = s;
  t.rel_tol = s.rel_tol * 1e-2;
  t.abs_tol = 1e-300;
  return t;
}

double clenshaw(const std::vector<double>& c, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = c[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + t * b1 - b2;
}

}  // namespace

cplx split_sqrt_plus(cplx z) {
  // arg in (-pi/2, 3pi/2]
  double a = std::arg(z);
  if (a <= -kPi / 2) a += 2.0 * kPi;
  return sqrt_with_arg(std::abs(z), a);
}

cplx split_sqrt_minus(cplx z) {
  // arg in [-3pi/2, pi/2)
  double a = std::arg(z);
  if (a >= kPi / 2) a -= 2.0 * kPi;
  return sqrt_with_arg(std::abs(z), a);
}

cplx split_sqrt_plus(double x) {
  return x >= 0.0 ? cplx(std::sqrt(x), 0.0) : cplx(0.0, std::sqrt(-x));
}

cplx split_sqrt_minus(double x) {
  return x >= 0.0 ? cplx(std::sqrt(x), 0.0) : cplx(0.0, -std::sqrt(-x));
}

FactorizedKernel::FactorizedKernel(const KernelContext& ctx, double L_over_ell, const QuadratureSpec& spec)
    : ctx_(ctx), lambda_(L_over_ell), spec_(spec) {
  if (!(L_over_ell > 0.0) || !std::isfinite(L_over_ell))
    throw Error(ErrorKind::invalid_parameter, "L/ell must be positive and finite");
  check_spec(spec);
  build_theta_table();
  compute_constants();
}

double FactorizedKernel::scale() const {
  return std::max(ctx_.characteristic_scale(), 1.0 / lambda_);
}

double FactorizedKernel::theta_direct(double x) const {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -theta_direct(-x);
  const double lkx = ctx_.log_k(x);
  // PV int_0^inf dt/(t^2 - x^2) = 0, so subtracting log k(x) leaves a regular
  // integrand with a removable point at t = x.
  auto h = [&](double t) {
    const double d = (t - x) * (t + x);
    if (d == 0.0) return 0.0;
    return (ctx_.log_k(t) - lkx) / d;
  };
  // Absolute floor: theta itself is wanted to ~1e-15, which for tiny x is
  // far coarser than the rounding noise of log k near the origin.
  QuadratureSpec s = tighter(spec_);
  s.abs_tol = 1e-15 * kPi / x;
  const auto r = half_axis<double>(h, {x, 2.0 * x}, s);
  return x / kPi * r.value;
}

cplx FactorizedKernel::R(cplx z) const {
  if (z == cplx(0.0)) return 0.0;
  if (z.imag() == 0.0) return {0.0, theta_direct(z.real())};
  const double x0 = std::abs(z.real());
  const double y0 = std::abs(z.imag());
  std::vector<double> features{x0, std::abs(z)};
  for (double f : {1.0, 4.0, 16.0, 64.0}) {
    if (x0 - f * y0 > 0.0) features.push_back(x0 - f * y0);
    features.push_back(x0 + f * y0);
  }
  const cplx z2 = z * z;
  auto h = [&](double t) -> cplx { return ctx_.log_k(t) / (t * t - z2); };
  // Same absolute floor as theta_direct: the prefactor |z| scales it away.
  QuadratureSpec s = tighter(spec_);
  s.abs_tol = std::max(s.abs_tol, 1e-15 * kPi / std::abs(z));
  const auto r = half_axis<cplx>(h, features, s);
  return -z / cplx(0.0, kPi) * r.value;
}

cplx FactorizedKernel::k_plus(cplx z) const {
  if (z.imag() < 0.0) throw Error(ErrorKind::domain, "k_plus is analytic only for Im z >= 0");
  if (z.imag() == 0.0) return std::exp(R(z)) / std::sqrt(ctx_.k(z.real()));
  return std::exp(R(z));
}

cplx FactorizedKernel::k_minus(cplx z) const {
  if (z.imag() > 0.0) throw Error(ErrorKind::domain, "k_minus is analytic only for Im z <= 0");
  if (z.imag() == 0.0) return std::exp(R(z)) * std::sqrt(ctx_.k(z.real()));
  return std::exp(R(z));
}

double FactorizedKernel::theta(double x) const {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  const double s = std::log(ax);
  double v;
  if (s <= s_min_) {
    v = theta_lo_ * ax / kXMin;
  } else if (s >= s_max_) {
    v = theta_hi_ * kXMax / ax;
  } else {
    auto it = std::upper_bound(panels_.begin(), panels_.end(), s,
                               [](double v, const ThetaPanel& p) { return v < p.s0; });
    const ThetaPanel& p = *(it - 1);
    v = clenshaw(p.c, (2.0 * s - p.s0 - p.s1) / (p.s1 - p.s0));
  }
  return x > 0.0 ? v : -v;
}

cplx FactorizedKernel::k_plus_axis(double x) const {
  return std::polar(1.0 / std::sqrt(ctx_.k(x)), theta(x));
}

cplx FactorizedKernel::k_minus_axis(double x) const {
  return std::polar(std::sqrt(ctx_.k(x)), theta(x));
}

void FactorizedKernel::build_theta_table() {
  s_min_ = std::log(kXMin);
  s_max_ = std::log(kXMax);
  theta_lo_ = theta_direct(kXMin);
  theta_hi_ = theta_direct(kXMax);

  double magnitude = std::max(std::abs(theta_lo_), std::abs(theta_hi_));
  for (double x = 1e-5; x < kXMax; x *= 10.0) magnitude = std::max(magnitude, std::abs(theta_direct(x)));
  const double target = std::max(1e-2 * spec_.rel_tol * magnitude, 1e-16);

  constexpr int n = kThetaNodes;
  auto fit = [&](double s0, double s1) {
    ThetaPanel p{s0, s1, std::vector<double>(n, 0.0)};
    std::vector<double> v(n), ang(n);
    for (int j = 0; j < n; ++j) {
      ang[j] = (2.0 * j + 1.0) * kPi / (2.0 * n);
      const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * std::cos(ang[j]);
      v[j] = theta_direct(std::exp(s));
    }
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += v[j] * std::cos(k * ang[j]);
      p.c[k] = (k == 0 ? 1.0 : 2.0) * acc / n;
    }
    double err = 0.0;
    for (int j = 1; j < n; ++j) {
      const double t = std::cos(j * kPi / n);
      const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * t;
      err = std::max(err, std::abs(clenshaw(p.c, t) - theta_direct(std::exp(s))));
    }
    return std::pair{p, err};
  };

  const double decade = std::log(10.0);
  std::vector<std::pair<double, double>> todo;
  for (double s = s_min_; s < s_max_ - 1e-9; s += decade) todo.emplace_back(s, std::min(s + decade, s_max_));
  std::reverse(todo.begin(), todo.end());
  while (!todo.empty()) {
    auto [s0, s1] = todo.back();
    todo.pop_back();
    auto [p, err] = fit(s0, s1);
    if (err > target && (s1 - s0) > decade / 64.0) {
      const double mid = 0.5 * (s0 + s1);
      todo.emplace_back(mid, s1);
      todo.emplace_back(s0, mid);
      continue;
    }
    theta_error_ = std::max(theta_error_, err);
    panels_.push_back(std::move(p));
  }
}

void FactorizedKernel::compute_constants() {
  // Xi = k_plus(i/lambda) / (i/lambda)_+^(1/2); R is real on the positive
  // imaginary axis.
  const double a = 1.0 / lambda_;
  auto h = [&](double t) { return ctx_.log_k(t) / (t * t + a * a); };
  const auto r = half_axis<double>(h, {a}, tighter(spec_));
  const double Ria = -a / kPi * r.value;
  xi_ = std::exp(Ria) * std::polar(std::sqrt(lambda_), -kPi / 4.0);
  xi_error_ = std::abs(xi_) * (a / kPi * r.error);

  // F = N / D with both integrands decaying like |xi|^-5/2.
  auto dfun = [&](double x) -> cplx {
    return 1.0 / (split_sqrt_minus(x) * ctx_.psi(x) * k_minus_axis(x));
  };
  auto nfun = [&](double x) -> cplx { return dfun(x) / cplx(1.0, lambda_ * x); };
  const auto D = oscillatory_inverse(dfun, 0.0, spec_, -2.5, scale());
  const auto N = oscillatory_inverse(nfun, 0.0, spec_, -2.5, scale());
  if (std::abs(D.value) <= std::max(D.error, spec_.abs_tol)) {
    std::ostringstream os;
    os << "Liouville constant: denominator integral " << std::abs(D.value)
       << " is not resolved above its error " << D.error;
    throw Error(ErrorKind::degenerate_denominator, os.str());
  }
  const cplx F = N.value / D.value;
  F_ = F.real();
  F_imag_ = std::abs(F.imag()) / std::abs(F);
  F_error_ = std::abs(F) * (N.error / std::abs(N.value) + D.error / std::abs(D.value));
}

double FactorizedKernel::log_k_integral() const {
  // log k = c2/t^2 + O(t^-4) far out, where log k itself is mostly rounding
  // noise; the tail past T is taken from that form.
  const double T = 1e4 * std::max(1.0, scale());
  std::vector<double> pts;
  for (double d = 1e-7; d < T; d *= 10.0) pts.push_back(d);
  const auto body = integrate_adaptive(RealFn([&](double t) { return ctx_.log_k(t); }), 0.0, T,
                                       tighter(spec_), pts);
  return 2.0 * (body.value + ctx_.log_k(T) * T);
}

double FactorizedKernel::log_k_over_t2_integral() const {
  // log k ~ c0 t^2 near the origin; below t0 the quotient is taken as flat.
  const double t0 = 1e-3 / std::max(1.0, scale());
  const double head = ctx_.log_k(t0) / t0;
  auto h = [&](double t) { return t < t0 ? 0.0 : ctx_.log_k(t) / (t * t); };
  return 2.0 * (head + half_axis<double>(h, {t0}, tighter(spec_)).value);
}

}  // namespace cscrack
