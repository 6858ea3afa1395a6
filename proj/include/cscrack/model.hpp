#pragma once

#include <string>

namespace cscrack {

/// Physical material description (SI units).
struct MaterialParams {
  double G = 1.0;    ///< shear modulus [Pa]
  double rho = 1.0;  ///< mass density [kg/m^3]
  double ell = 1.0;  ///< couple-stress length [m]
  double eta = 0.0;  ///< torsion/bending ratio, -1 < eta < 1
  double J = 0.0;    ///< rotational inertia [kg/m]
};

struct DerivedConstants {
  double c_s = 0.0;    ///< classical shear wave speed sqrt(G/rho)
  double theta = 0.0;  ///< sqrt(4G/J); +inf when J == 0
  double h = 0.0;      ///< c_s / theta
  double h0 = 0.0;     ///< h / ell
  double ell_b = 0.0;  ///< bending length ell/sqrt(2)
  double ell_t = 0.0;  ///< torsion length ell*sqrt(1+eta)
};

/// Throws Error(invalid_parameter) when the material is not admissible.
DerivedConstants derive_constants(const MaterialParams& material);

/// Rotational inertia producing the requested h0 for given rho and ell.
double inertia_for_h0(double h0, double rho, double ell);

struct ProblemSetup {
  MaterialParams material;
  double m = 0.0;   ///< crack speed V / c_s
  double T0 = 1.0;  ///< load resultant [N/m]
  double L = 1.0;   ///< load decay length [m]
};

/// Dimensionless parameters the solution actually depends on.
struct NormalizedSetup {
  double m = 0.0;
  double eta = 0.0;
  double h0 = 0.0;
  double L_over_ell = 1.0;
};

NormalizedSetup normalize(const ProblemSetup& setup);

/// min{1, 1/(sqrt(2) h0)}; equals 1 for h0 <= 1/sqrt(2).
double subsonic_bound(double h0);

/// Leading coefficient of f(z) at infinity. Throws Error(domain) when
/// hm >= 1/sqrt(2).
double upsilon(double eta, double hm);

enum class DispersionClass { increasing, nondispersive, decreasing };

const char* to_string(DispersionClass c) noexcept;

struct RegimeReport {
  bool subsonic = false;
  double subsonic_bound = 1.0;
  double upsilon = 0.0;  ///< NaN when the square root in upsilon is not real
  bool admissible = false;
  DispersionClass dispersion_class = DispersionClass::increasing;
  std::string diagnostic;  ///< empty when admissible
};

RegimeReport validate(const NormalizedSetup& setup) noexcept;
RegimeReport validate(const ProblemSetup& setup) noexcept;

/// Throws Error(inadmissible) carrying the report diagnostic.
void require_admissible(const NormalizedSetup& setup);

}  // namespace cscrack
