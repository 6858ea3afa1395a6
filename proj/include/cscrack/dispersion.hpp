#pragma once

#include <vector>

#include "cscrack/model.hpp"

// Antiplane shear waves in a couple-stress solid. Every quantity is
// normalized: frequency by c_s/ell, wavenumber by 1/ell, speeds by c_s.
namespace cscrack {

struct DispersionPoint {
  double omega = 0.0;
  double k = 0.0;
  double c_tilde = 1.0;
};

double phase_speed_of_frequency(double omega, double h0);
double phase_speed_of_wavenumber(double k, double h0);

/// Positive k of the propagating branch at a given frequency.
double wavenumber_of_frequency(double omega, double h0);

/// k^4 + 2(1 - omega^2 h0^2) k^2 - 2 omega^2; zero on the dispersion curve.
double dispersion_residual(double k, double omega, double h0);

DispersionClass classify(double h0);

/// `points` frequencies evenly spaced on [0, omega_max].
std::vector<DispersionPoint> dispersion_curve(double h0, double omega_max, int points);

}  // namespace cscrack
