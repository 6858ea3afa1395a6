#include "cscrack/dispersion.hpp"

#include <cmath>

#include "cscrack/error.hpp"

namespace cscrack {

namespace {

// a + sqrt(a^2 + b) with b >= 0, without cancellation when a < 0.
double plus_root(double a, double b) {
  const double r = std::sqrt(a * a + b);
  return a >= 0.0 ? a + r : b / (r - a);
}

// -a + sqrt(a^2 + b), the positive root of x^2 + 2ax - b.
double minus_root(double a, double b) {
  const double r = std::sqrt(a * a + b);
  return a <= 0.0 ? r - a : b / (r + a);
}

}  // namespace

double phase_speed_of_frequency(double omega, double h0) {
  if (omega < 0.0) throw Error(ErrorKind::domain, "omega must be non-negative");
  const double a = 1.0 - omega * omega * h0 * h0;
  return std::sqrt(0.5 * plus_root(a, 2.0 * omega * omega));
}

double phase_speed_of_wavenumber(double k, double h0) {
  if (!(k > 0.0)) throw Error(ErrorKind::domain, "wavenumber must be positive");
  const double k2 = k * k;
  return std::sqrt(0.5 * (k2 + 2.0) / (k2 * h0 * h0 + 1.0));
}

double wavenumber_of_frequency(double omega, double h0) {
  if (omega < 0.0) throw Error(ErrorKind::domain, "omega must be non-negative");
  const double a = 1.0 - omega * omega * h0 * h0;
  return std::sqrt(minus_root(a, 2.0 * omega * omega));
}

double dispersion_residual(double k, double omega, double h0) {
  const double k2 = k * k;
  const double w2 = omega * omega;
  return k2 * k2 + 2.0 * (1.0 - w2 * h0 * h0) * k2 - 2.0 * w2;
}

DispersionClass classify(double h0) {
  constexpr double tol = 1e-12;
  const double critical = 1.0 / std::sqrt(2.0);
  if (std::abs(h0 - critical) <= tol) return DispersionClass::nondispersive;
  return h0 < critical ? DispersionClass::increasing : DispersionClass::decreasing;
}

std::vector<DispersionPoint> dispersion_curve(double h0, double omega_max, int points) {
  if (points < 2) throw Error(ErrorKind::invalid_parameter, "dispersion curve needs at least 2 points");
  if (!(omega_max > 0.0)) throw Error(ErrorKind::invalid_parameter, "omega_max must be positive");
  if (!(h0 >= 0.0)) throw Error(ErrorKind::invalid_parameter, "h0 must be non-negative");

  std::vector<DispersionPoint> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    DispersionPoint p;
    p.omega = omega_max * i / (points - 1);
    p.k = wavenumber_of_frequency(p.omega, h0);
    p.c_tilde = phase_speed_of_frequency(p.omega, h0);
    out.push_back(p);
  }
  return out;
}

}  // namespace cscrack
