#pragma once

#include <complex>
#include <utility>

#include "cscrack/factorization.hpp"
#include "cscrack/model.hpp"
#include "cscrack/quadrature.hpp"

namespace cscrack {

/// Crack-line quantities, normalized as w G/T0, p3 ell/T0, sigma23 ell/T0,
/// tau23 ell/T0, t23 ell/T0 and mu22/T0, all versus X/ell.
enum class Field { w, p3, sigma23, tau23, mu22, t23 };

const char* to_string(Field f) noexcept;
/// Parses the names produced by to_string; throws Error(invalid_parameter).
Field field_from_string(const char* name);

struct FieldSample {
  double X = 0.0;
  double value = 0.0;
  /// Imaginary part left over by the inversion; zero in exact arithmetic.
  double imag_residual = 0.0;
  /// Error estimate for `value` (quadrature, fitted tail, and the
  /// propagated uncertainty of theta, F and Xi).
  double error = 0.0;
  bool tail_dominated = false;
};

enum class ShearMode { combined, sum };

/// Inverts the transformed fields for one factorized problem. Holds a
/// reference to `fk`, which must outlive the solver. Read-only after
/// construction, so a single solver may be shared between threads.
class FieldSolver {
 public:
  explicit FieldSolver(const FactorizedKernel& fk, const QuadratureSpec& spec = field_spec());

  const FactorizedKernel& factorized() const { return fk_; }
  const QuadratureSpec& spec() const { return spec_; }

  /// w(X, 0) for X < 0. Error(domain) otherwise.
  FieldSample crack_opening(double X) const;
  /// p3(X) for X > 0.
  FieldSample traction_ahead(double X) const;
  FieldSample sigma23(double X) const;
  FieldSample tau23(double X) const;
  FieldSample mu22(double X) const;
  FieldSample total_shear(double X, ShearMode mode = ShearMode::combined) const;

  /// Raw inversion of a transform at any X != 0 (X = 0 is allowed for w and
  /// sigma23, whose transforms decay fast enough). For Field::w this inverts
  /// the minus function, which vanishes for X > 0; for Field::p3 it inverts
  /// the plus function including the crack-face load term, which vanishes
  /// for X < 0. Used for the support checks.
  FieldSample invert(Field f, double X) const;

  /// w(X, y) in the upper half-plane, y >= 0.
  FieldSample halfplane_displacement(double X, double y) const;

  // Transforms on the real axis, for consistency checks.
  /// Common factor (1 - F(1 + i lambda xi)) / (xi_-^(1/2) (1 + i lambda xi) Psi k_minus).
  std::complex<double> common_factor(double xi) const;
  /// Transform of the crack opening (a minus function).
  std::complex<double> w_transform(double xi) const;
  /// Transform of the reduced traction ahead of the tip (a plus function).
  std::complex<double> p3_transform(double xi) const;
  /// Transform of the crack-face load (T0 / L) e^{X/L}, X < 0.
  std::complex<double> load_transform(double xi) const;
  /// Half-plane coefficients C(xi), D(xi) of w = C e^{-alpha y} + D e^{-beta y}.
  std::pair<std::complex<double>, std::complex<double>> halfplane_coefficients(double xi) const;

 private:
  FieldSample finish(double X, const InversionResult& r, std::complex<double> prefactor) const;
  std::complex<double> prefactor(Field f) const;
  double lead_power(Field f) const;
  std::complex<double> integrand(Field f, double xi) const;

  const FactorizedKernel& fk_;
  const KernelContext& ctx_;
  QuadratureSpec spec_;
  double lambda_;
  double F_;
  std::complex<double> xi_;
  double factor_rel_error_;  // relative uncertainty of every integrand factor
};

/// Multiplier taking a normalized field value to physical units.
double physical_scale(Field f, const ProblemSetup& setup);

}  // namespace cscrack
