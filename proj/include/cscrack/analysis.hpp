#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cscrack/error.hpp"
#include "cscrack/fields.hpp"
#include "cscrack/model.hpp"
#include "cscrack/quadrature.hpp"

namespace cscrack {

struct ScanOptions {
  double x_min = 1e-3;  ///< scan window, in units of ell
  double x_max = 20.0;
  int points = 200;       ///< log-spaced coarse samples
  double root_tol = 1e-6; ///< bisection width for X0
  double peak_tol = 1e-6; ///< golden-section width for X_max, relative to X_max
  /// Shrink the window by max(1, c/sqrt(2)). Near the inertia bound c grows
  /// without limit and the whole near-tip structure contracts like 1/c.
  bool scale_with_c = false;
};

struct ShearMaximum {
  double t23_max = 0.0;
  double X_max = 0.0;
  /// Size of the near-tip zone where t23 < 0; 0 when no sign change is
  /// resolved inside the scan window.
  double X0 = 0.0;
  bool sign_change = false;
  double t23_max_error = 0.0;
  double X_max_error = 0.0;
  double X0_error = 0.0;
};

/// Peak of t23 ahead of the tip and the extent of the negative zone.
/// Throws Error(no_interior_max) when the largest coarse sample sits on the
/// right end of the window.
ShearMaximum locate_max_shear(const FieldSolver& solver, const ScanOptions& opts = {});

enum class SweepParam { m, eta, h0 };
const char* to_string(SweepParam p) noexcept;
SweepParam sweep_param_from_string(const char* name);

struct SweepOptions {
  ScanOptions scan;
  QuadratureSpec constants = constants_spec();
  QuadratureSpec fields = field_spec();
  int jobs = 1;
};

struct SweepRecord {
  double param = 0.0;
  NormalizedSetup setup;
  bool ok = false;
  std::string error;  ///< diagnostic for failed points
  std::optional<ErrorKind> error_kind;  ///< empty for non-library failures
  ShearMaximum result;
};

/// Factorizes and scans one setup.
ShearMaximum analyze_setup(const NormalizedSetup& setup, const SweepOptions& opts);

/// One record per grid value, in grid order; failures (including
/// inadmissible points) are flagged rather than dropped. Points run on
/// `opts.jobs` threads; the output does not depend on the thread count.
std::vector<SweepRecord> sweep(SweepParam param, std::span<const double> grid,
                               const NormalizedSetup& base, const SweepOptions& opts);

std::vector<double> linspace(double a, double b, int n);

struct StabilityPoint {
  double param = 0.0;
  double slope = 0.0;  ///< d t23_max / d param
  bool stable = false; ///< slope < 0
};

/// Finite-difference slope of t23_max over the successful records of an m
/// sweep (centered inside, one-sided three-point at the ends). Throws
/// Error(insufficient_points) with fewer than three usable records.
std::vector<StabilityPoint> stability_report(std::span<const SweepRecord> records);

/// Smallest m on the grid range with t23_max(m) = tau_c, refined by
/// bisection; nullopt when tau_c is never reached. Throws
/// Error(not_bracketed) when failed sweep points leave the answer open.
std::optional<double> critical_speed(const NormalizedSetup& base, double tau_c,
                                     std::span<const double> m_grid, const SweepOptions& opts,
                                     double m_tol = 1e-4);

struct GrowthCheck {
  double reference = 0.0;  ///< t23_max at m_ref
  double largest = 0.0;
  double m_at_largest = 0.0;
  std::optional<double> m_exceeded;  ///< first grid m past the threshold
};

/// Evaluates t23_max over `m_grid` and reports whether it exceeds `factor`
/// times its value at m_ref. The scan window follows c (scale_with_c).
GrowthCheck unbounded_growth(const NormalizedSetup& base, std::span<const double> m_grid,
                             const SweepOptions& opts, double m_ref = 0.01, double factor = 50.0);

}  // namespace cscrack
