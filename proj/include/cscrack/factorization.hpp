#pragma once

#include <complex>
#include <vector>

#include "cscrack/kernel.hpp"
#include "cscrack/quadrature.hpp"

namespace cscrack {

/// Limit values of z_+^(1/2) (cut along the negative imaginary axis) and
/// z_-^(1/2) (cut along the positive imaginary axis). For real z < 0 they
/// are i sqrt(-z) and -i sqrt(-z); their product is |z| on the real line.
std::complex<double> split_sqrt_plus(std::complex<double> z);
std::complex<double> split_sqrt_minus(std::complex<double> z);
std::complex<double> split_sqrt_plus(double x);
std::complex<double> split_sqrt_minus(double x);

/// Product split k = k_minus / k_plus of the kernel, together with the load
/// constants Xi and F.
///
/// On the real axis the Cauchy integral reduces to R = i theta(x), with
/// theta real and odd; theta is tabulated once on construction as a
/// piecewise Chebyshev interpolant in log x so that field inversions never
/// re-run the principal-value quadrature.
class FactorizedKernel {
 public:
  FactorizedKernel(const KernelContext& ctx, double L_over_ell = 1.0,
                   const QuadratureSpec& spec = constants_spec());

  const KernelContext& kernel() const { return ctx_; }
  double L_over_ell() const { return lambda_; }
  const QuadratureSpec& spec() const { return spec_; }

  /// R(z) = -(z/(pi i)) int_0^inf log k(t)/(t^2 - z^2) dt; the principal value
  /// i theta(x) on the real axis.
  std::complex<double> R(std::complex<double> z) const;

  /// theta(x) by direct principal-value quadrature.
  double theta_direct(double x) const;
  /// theta(x) from the tabulated interpolant.
  double theta(double x) const;
  /// Largest absolute interpolation error seen at the check points.
  double theta_interpolation_error() const { return theta_error_; }

  /// Direct evaluation; k_plus needs Im z >= 0 and k_minus needs Im z <= 0,
  /// otherwise Error(domain). On the real axis these use theta_direct.
  std::complex<double> k_plus(std::complex<double> z) const;
  std::complex<double> k_minus(std::complex<double> z) const;
  /// Real-axis limit values through the interpolant.
  std::complex<double> k_plus_axis(double x) const;
  std::complex<double> k_minus_axis(double x) const;

  std::complex<double> xi() const { return xi_; }
  double F() const { return F_; }
  /// |Im F| / |F| as obtained from the two quadratures.
  double F_imag_residual() const { return F_imag_; }
  double F_error() const { return F_error_; }
  double xi_error() const { return xi_error_; }

  /// int_{-inf}^{inf} log k(t) dt; k_pm(z) = 1 + (1/(2 pi i z)) * this + O(z^-2).
  double log_k_integral() const;
  /// int_{-inf}^{inf} log k(t)/t^2 dt; k_pm(z) = 1 - (z/(2 pi i)) * this + O(z^2).
  double log_k_over_t2_integral() const;

  /// Largest length scale of the transformed fields, including the load
  /// pole at i/L_over_ell.
  double scale() const;

 private:
  struct ThetaPanel {
    double s0, s1;  // log(x) bounds
    std::vector<double> c;
  };

  void build_theta_table();
  void compute_constants();

  KernelContext ctx_;
  double lambda_;
  QuadratureSpec spec_;
  std::vector<ThetaPanel> panels_;
  double theta_error_ = 0.0;
  double s_min_ = 0.0, s_max_ = 0.0;
  double theta_lo_ = 0.0, theta_hi_ = 0.0;  // values at the table ends
  std::complex<double> xi_;
  double xi_error_ = 0.0;
  double F_ = 0.0, F_imag_ = 0.0, F_error_ = 0.0;
};

}  // namespace cscrack
