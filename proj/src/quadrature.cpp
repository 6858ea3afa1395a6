#include "cscrack/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cscrack/error.hpp"

namespace cscrack {

QuadratureSpec constants_spec() {
  QuadratureSpec s;
  s.rel_tol = 1e-8;
  return s;
}

QuadratureSpec field_spec() {
  QuadratureSpec s;
  s.rel_tol = 1e-6;
  return s;
}

void check_spec(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol >= 0.0) || spec.max_subdivisions < 1 || !(spec.truncation >= 0.0))
    throw Error(ErrorKind::invalid_parameter,
                "quadrature spec needs rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1, truncation >= 0");
}

namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// 21-point Kronrod rule with its embedded 10-point Gauss rule. Node tables
// come from Boost; the adaptive driver below is ours because it has to work
// on complex integrands and on a caller-supplied initial partition.
struct Rule {
  std::array<double, 11> x{};
  std::array<double, 11> wk{};
  std::array<double, 11> wg{};
};

const Rule& rule() {
  static const Rule r = [] {
    namespace bq = boost::math::quadrature;
    Rule out;
    const auto& xk = bq::gauss_kronrod<double, 21>::abscissa();
    const auto& wk = bq::gauss_kronrod<double, 21>::weights();
    const auto& xg = bq::gauss<double, 10>::abscissa();
    const auto& wg = bq::gauss<double, 10>::weights();
    for (std::size_t i = 0; i < 11; ++i) {
      out.x[i] = xk[i];
      out.wk[i] = wk[i];
      for (std::size_t j = 0; j < xg.size(); ++j)
        if (std::abs(xg[j] - xk[i]) < 1e-14) out.wg[i] = wg[j];
    }
    return out;
  }();
  return r;
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  double l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21(const F& g, double a, double b) {
  const Rule& r = rule();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = g(c);
  T k = r.wk[0] * fc;
  T gs = r.wg[0] * fc;
  double l1 = r.wk[0] * std::abs(fc);
  for (std::size_t i = 1; i < 11; ++i) {
    const T f1 = g(c - h * r.x[i]);
    const T f2 = g(c + h * r.x[i]);
    k += r.wk[i] * (f1 + f2);
    gs += r.wg[i] * (f1 + f2);
    l1 += r.wk[i] * (std::abs(f1) + std::abs(f2));
  }
  Panel<T> p{a, b, k * h, std::abs(k - gs) * std::abs(h), l1 * std::abs(h)};
  if (!std::isfinite(std::abs(p.value)) || !std::isfinite(p.error)) {
    std::ostringstream os;
    os << "non-finite integrand on [" << a << ", " << b << "]";
    throw Error(ErrorKind::quadrature_failure, os.str());
  }
  return p;
}

template <class T, class F>
QuadResult<T> adaptive(const F& g, double a, double b, const QuadratureSpec& spec,
                       std::span<const double> breakpoints, ToleranceBase base) {
  check_spec(spec);
  QuadResult<T> res;
  if (a == b) return res;
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);

  std::vector<double> edges{lo};
  for (double p : breakpoints)
    if (p > lo && p < hi) edges.push_back(p);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel<T>> heap;
  T total{};
  double err = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto p = gk21<T>(g, edges[i], edges[i + 1]);
    total += p.value;
    err += p.error;
    l1 += p.l1;
    heap.push(p);
  }
  int evals = static_cast<int>(21 * heap.size());

  auto target = [&] {
    double t = std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
    if (base == ToleranceBase::l1) t = std::max(t, 1e-3 * spec.rel_tol * l1);
    // Nothing below the rounding level of the summation is attainable.
    return std::max(t, 50.0 * kEps * l1);
  };

  int splits = 0;
  while (err > target()) {
    if (splits >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "adaptive quadrature on [" << lo << ", " << hi << "] did not converge after "
         << splits << " subdivisions (error " << err << ", target " << target() << ")";
      throw Error(ErrorKind::quadrature_failure, os.str());
    }
    Panel<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    auto left = gk21<T>(g, worst.a, mid);
    auto right = gk21<T>(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    evals += 42;
    ++splits;
  }

  // Re-sum from the panels so that running-update drift does not leak into
  // the result.
  T sum{};
  double esum = 0.0, lsum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    lsum += heap.top().l1;
    heap.pop();
  }
  res.value = sign * sum;
  res.error = esum + 50.0 * kEps * lsum;
  res.l1 = lsum;
  res.evaluations = evals;
  return res;
}

template <class T>
void accumulate(QuadResult<T>& into, const QuadResult<T>& part) {
  into.value += part.value;
  into.error += part.error;
  into.l1 += part.l1;
  into.evaluations += part.evaluations;
}

template <class T, class F>
QuadResult<T> semi_infinite(const F& g, double a, const QuadratureSpec& spec) {
  QuadResult<T> out;
  double start = a;
  if (a < 1.0) {
    out = adaptive<T>(g, a, 1.0, spec, {}, ToleranceBase::value);
    start = 1.0;
  }
  auto inv = [&](double u) -> T { return g(1.0 / u) / (u * u); };
  accumulate(out, adaptive<T>(inv, 0.0, 1.0 / start, spec, {}, ToleranceBase::value));
  return out;
}

// Chebyshev interpolant on u in [0, 1], evaluated by Clenshaw at real or
// complex u.
struct ChebFit {
  std::vector<cplx> c;

  template <class U>
  cplx operator()(U u) const {
    const U x = U(2.0) * u - U(1.0);
    cplx b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
      const cplx b0 = c[k] + cplx(2.0) * cplx(x) * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return c[0] + cplx(x) * b1 - b2;
  }
};

struct TailResult {
  cplx value;
  double error;
};

// Integral over [B, inf) of q(xi) exp(-i omega xi), with q(xi) xi^-p fitted
// as a polynomial in u = B/xi.
TailResult fitted_tail(const ComplexFn& q, double omega, double B, double p) {
  constexpr int n = 12;
  ChebFit fit;
  fit.c.assign(n, 0.0);
  std::array<cplx, n> v{};
  std::array<double, n> ang{};
  for (int j = 0; j < n; ++j) {
    ang[j] = (2.0 * j + 1.0) * kPi / (2.0 * n);
    const double u = 0.5 * (1.0 + std::cos(ang[j]));
    const double xi = B / u;
    v[j] = q(xi) * std::pow(xi, -p);
  }
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += v[j] * std::cos(k * ang[j]);
    fit.c[k] = (k == 0 ? 1.0 : 2.0) * s / static_cast<double>(n);
  }
  // Interlaced check nodes: residual of the fit between interpolation nodes.
  double resid = 0.0, scale = 0.0;
  for (int j = 1; j < n; ++j) {
    const double u = 0.5 * (1.0 + std::cos(j * kPi / n));
    const double xi = B / u;
    const cplx exact = q(xi) * std::pow(xi, -p);
    resid = std::max(resid, std::abs(fit(u) - exact));
    scale = std::max(scale, std::abs(exact));
  }
  resid += 1e3 * kEps * scale;

  TailResult out{};
  if (omega == 0.0) {
    // B^(p+1) * integral_0^1 u^(-p-2) P(u) du, convergent for p < -1.
    auto h = [&](double u) -> cplx { return std::pow(u, -p - 2.0) * fit(u); };
    QuadratureSpec ts;
    ts.rel_tol = 1e-12;
    ts.abs_tol = 1e-300;
    auto r = adaptive<cplx>(h, 0.0, 1.0, ts, {}, ToleranceBase::value);
    const double bp = std::pow(B, p + 1.0);
    out.value = bp * r.value;
    out.error = bp * (r.error + 4.0 * resid / (-p - 1.0));
    return out;
  }
  // Rotate onto xi = B - i s/omega, where exp(-i omega xi) decays like e^-s.
  auto h = [&](double s) -> cplx {
    const cplx xi(B, -s / omega);
    return std::pow(xi, p) * fit(cplx(B) / xi) * std::exp(-s);
  };
  QuadratureSpec ts;
  ts.rel_tol = 1e-12;
  ts.abs_tol = 1e-300;
  const std::array<double, 3> bps{2.0, 8.0, 20.0};
  auto r = adaptive<cplx>(h, 0.0, 48.0, ts, bps, ToleranceBase::value);
  const cplx pref = cplx(0.0, -1.0 / omega) * std::exp(cplx(0.0, -omega * B));
  out.value = pref * r.value;
  // |xi^p| along the contour stays within a factor ~2^|p| of B^p for s <= 48
  // because |omega| B >= 30.
  const double growth = std::pow(2.0, std::abs(p));
  out.error = std::abs(pref) * r.error + 4.0 * growth * resid * std::pow(B, p) / std::abs(omega);
  return out;
}

struct HalfResult {
  cplx value;
  double core_error = 0.0;
  double tail_error = 0.0;
  double l1 = 0.0;
  double cutoff = 0.0;
};

std::vector<double> core_breakpoints(double a, double b, double omega) {
  std::vector<double> pts;
  for (double x = 2.0 * a; x < b; x *= 2.0) pts.push_back(x);
  if (omega != 0.0) {
    const double step = kPi / std::abs(omega);
    for (double x = a + step; x < b; x += step) pts.push_back(x);
  }
  return pts;
}

HalfResult half_line(const ComplexFn& q, double omega, const QuadratureSpec& spec, double p,
                     double scale) {
  constexpr double kPhaseCut = 30.0;  // |omega| B at the first cutoff
  double B = spec.truncation > 0.0 ? spec.truncation : std::max(20.0, 30.0 * scale);
  if (omega != 0.0 && spec.truncation <= 0.0) B = std::max(B, kPhaseCut / std::abs(omega));
  B = std::max(B, 2.0);

  QuadratureSpec cs = spec;
  HalfResult out;

  // [0, 1] with xi = u^2 to absorb the |xi|^-1/2 endpoint behaviour.
  {
    auto h = [&](double u) -> cplx {
      const double xi = u * u;
      return q(xi) * std::exp(cplx(0.0, -omega * xi)) * (2.0 * u);
    };
    std::vector<double> pts;
    if (omega != 0.0)
      for (int k = 1; k * kPi < std::abs(omega); ++k) pts.push_back(std::sqrt(k * kPi / std::abs(omega)));
    auto r = adaptive<cplx>(h, 0.0, 1.0, cs, pts, ToleranceBase::l1);
    out.value += r.value;
    out.core_error += r.error;
    out.l1 += r.l1;
  }

  auto h = [&](double xi) -> cplx { return q(xi) * std::exp(cplx(0.0, -omega * xi)); };
  auto core = [&](double a, double b) {
    const auto pts = core_breakpoints(a, b, omega);
    auto r = adaptive<cplx>(h, a, b, cs, pts, ToleranceBase::l1);
    out.value += r.value;
    out.core_error += r.error;
    out.l1 += r.l1;
  };
  core(1.0, B);

  TailResult tail{};
  for (int iter = 0;; ++iter) {
    tail = fitted_tail(q, omega, B, p);
    const double target = std::max({spec.rel_tol * std::abs(out.value + tail.value), spec.abs_tol,
                                    1e-3 * spec.rel_tol * out.l1});
    if (tail.error <= 0.5 * target || iter >= 5 || spec.truncation > 0.0) break;
    core(B, 2.0 * B);
    B *= 2.0;
  }
  out.value += tail.value;
  out.tail_error = tail.error;
  out.cutoff = B;
  return out;
}

}  // namespace

QuadResult<double> integrate_adaptive(const RealFn& g, double a, double b, const QuadratureSpec& spec,
                                      std::span<const double> breakpoints, ToleranceBase base) {
  return adaptive<double>(g, a, b, spec, breakpoints, base);
}

QuadResult<std::complex<double>> integrate_adaptive(const ComplexFn& g, double a, double b,
                                                    const QuadratureSpec& spec,
                                                    std::span<const double> breakpoints,
                                                    ToleranceBase base) {
  return adaptive<cplx>(g, a, b, spec, breakpoints, base);
}

QuadResult<double> integrate_sqrt_endpoint(const RealFn& g, double a, double b,
                                           const QuadratureSpec& spec) {
  if (!(b > a)) throw Error(ErrorKind::invalid_parameter, "integrate_sqrt_endpoint needs b > a");
  auto h = [&](double u) { return g(a + u * u) * 2.0 * u; };
  return adaptive<double>(h, 0.0, std::sqrt(b - a), spec, {}, ToleranceBase::value);
}

QuadResult<double> integrate_semi_infinite(const RealFn& g, double a, const QuadratureSpec& spec) {
  if (!(a >= 0.0)) throw Error(ErrorKind::invalid_parameter, "semi-infinite integral needs a >= 0");
  return semi_infinite<double>(g, a, spec);
}

QuadResult<std::complex<double>> integrate_semi_infinite(const ComplexFn& g, double a,
                                                         const QuadratureSpec& spec) {
  if (!(a >= 0.0)) throw Error(ErrorKind::invalid_parameter, "semi-infinite integral needs a >= 0");
  return semi_infinite<cplx>(g, a, spec);
}

QuadResult<double> principal_value(const RealFn& g, double pole, double a, double b,
                                   const QuadratureSpec& spec) {
  if (!(a < pole && pole < b))
    throw Error(ErrorKind::invalid_parameter, "principal value needs a < pole < b");
  const double gp = g(pole);
  auto h = [&](double t) { return (g(t) - gp) / (t - pole); };
  const std::array<double, 1> bp{pole};
  auto r = adaptive<double>(h, a, b, spec, bp, ToleranceBase::value);
  r.value += gp * std::log((b - pole) / (pole - a));
  return r;
}

InversionResult oscillatory_inverse(const ComplexFn& g, double X, const QuadratureSpec& spec,
                                    double lead_power, double scale) {
  if (X == 0.0 && lead_power >= -1.0)
    throw Error(ErrorKind::domain, "inversion at X = 0 needs an integrable tail (lead_power < -1)");
  if (!std::isfinite(X)) throw Error(ErrorKind::domain, "inversion point must be finite");

  const ComplexFn qm = [&](double xi) { return g(-xi); };
  const auto plus = half_line(g, X, spec, lead_power, scale);
  const auto minus = half_line(qm, -X, spec, lead_power, scale);

  InversionResult out;
  out.value = plus.value + minus.value;
  const double core = plus.core_error + minus.core_error;
  const double tail = plus.tail_error + minus.tail_error;
  out.error = core + tail;
  out.l1 = plus.l1 + minus.l1;
  out.cutoff = std::max(plus.cutoff, minus.cutoff);
  const double target = std::max({spec.rel_tol * std::abs(out.value), spec.abs_tol,
                                  1e-3 * spec.rel_tol * out.l1});
  out.tail_dominated = tail > core && tail > target;
  return out;
}

}  // namespace cscrack
