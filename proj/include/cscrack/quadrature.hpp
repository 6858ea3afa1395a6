#pragma once

#include <complex>
#include <functional>
#include <span>

namespace cscrack {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-15;
  int max_subdivisions = 20000;
  /// Cutoff between the resolved core and the fitted tail of an inversion.
  /// Zero selects it automatically from the phase and the integrand scale.
  double truncation = 0.0;
};

/// rel_tol 1e-8; used for R, Xi and F.
QuadratureSpec constants_spec();
/// rel_tol 1e-6; used for field inversions.
QuadratureSpec field_spec();

/// Throws Error(invalid_parameter) unless rel_tol > 0, abs_tol >= 0,
/// max_subdivisions >= 1 and truncation >= 0.
void check_spec(const QuadratureSpec& spec);

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  double l1 = 0.0;  ///< estimate of the integral of |g|
  int evaluations = 0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

/// What the requested relative tolerance is measured against. Oscillatory
/// integrands whose value is much smaller than their L1 norm cannot be
/// resolved to a tolerance relative to the value itself.
enum class ToleranceBase { value, l1 };

/// Globally adaptive Gauss-Kronrod (21 point) over [a, b], optionally
/// seeded with interior breakpoints. Throws Error(quadrature_failure) when
/// max_subdivisions bisections do not reach the tolerance.
QuadResult<double> integrate_adaptive(const RealFn& g, double a, double b,
                                      const QuadratureSpec& spec,
                                      std::span<const double> breakpoints = {},
                                      ToleranceBase base = ToleranceBase::value);
QuadResult<std::complex<double>> integrate_adaptive(const ComplexFn& g, double a, double b,
                                                    const QuadratureSpec& spec,
                                                    std::span<const double> breakpoints = {},
                                                    ToleranceBase base = ToleranceBase::value);

/// Integral over [a, b] of g with an integrable (t - a)^(-1/2) endpoint
/// singularity, via t = a + u^2.
QuadResult<double> integrate_sqrt_endpoint(const RealFn& g, double a, double b,
                                           const QuadratureSpec& spec);

/// Integral over [a, inf): [a, max(a,1)] directly, the rest via t = 1/u.
QuadResult<double> integrate_semi_infinite(const RealFn& g, double a, const QuadratureSpec& spec);
QuadResult<std::complex<double>> integrate_semi_infinite(const ComplexFn& g, double a,
                                                         const QuadratureSpec& spec);

/// PV integral of g(t)/(t - pole) over [a, b], a < pole < b, computed as
/// the regular integral of [g(t) - g(pole)]/(t - pole) plus the closed form
/// g(pole) log((b - pole)/(pole - a)).
QuadResult<double> principal_value(const RealFn& g, double pole, double a, double b,
                                   const QuadratureSpec& spec);

struct InversionResult {
  std::complex<double> value;
  double error = 0.0;
  /// Estimate of the integral of |g| over the resolved core; the scale that
  /// cancellation errors are measured against.
  double l1 = 0.0;
  double cutoff = 0.0;
  /// The fitted-tail error estimate exceeded the core error at the final
  /// cutoff: the result is limited by the slow algebraic decay of g.
  bool tail_dominated = false;
};

/// Integral over the real line of g(xi) exp(-i X xi).
///
/// g must behave like C xi^lead_power (1 + O(1/xi)) as xi -> +inf and like
/// C' |xi|^lead_power (1 + O(1/|xi|)) as xi -> -inf, and may carry an
/// integrable |xi|^(-1/2) singularity at 0. Divergent tails (lead_power >= -1)
/// are taken in the Abel sense, which requires X != 0. `scale` is the largest
/// transform-variable length scale of g; the cutoff is kept well beyond it.
InversionResult oscillatory_inverse(const ComplexFn& g, double X, const QuadratureSpec& spec,
                                    double lead_power, double scale = 1.0);

}  // namespace cscrack
