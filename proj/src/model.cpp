#include "cscrack/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cscrack/dispersion.hpp"
#include "cscrack/error.hpp"

namespace cscrack {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::inadmissible: return "inadmissible";
    case ErrorKind::domain: return "domain";
    case ErrorKind::quadrature_failure: return "quadrature-failure";
    case ErrorKind::degenerate_denominator: return "degenerate-denominator";
    case ErrorKind::no_sign_change: return "no-sign-change";
    case ErrorKind::no_interior_max: return "no-interior-max";
    case ErrorKind::not_bracketed: return "not-bracketed";
    case ErrorKind::insufficient_points: return "insufficient-points";
    case ErrorKind::unknown_figure: return "unknown-figure";
  }
  return "unknown";
}

const char* to_string(DispersionClass c) noexcept {
  switch (c) {
    case DispersionClass::increasing: return "increasing";
    case DispersionClass::nondispersive: return "nondispersive";
    case DispersionClass::decreasing: return "decreasing";
  }
  return "unknown";
}

namespace {

std::string material_problem(const MaterialParams& p) {
  std::ostringstream os;
  if (!(p.G > 0.0)) os << "G must be positive (got " << p.G << "); ";
  if (!(p.rho > 0.0)) os << "rho must be positive (got " << p.rho << "); ";
  if (!(p.ell > 0.0)) os << "ell must be positive (got " << p.ell << "); ";
  if (!(p.J >= 0.0)) os << "J must be non-negative (got " << p.J << "); ";
  if (!(p.eta > -1.0 && p.eta < 1.0))
    os << "eta must lie in (-1, 1) (got " << p.eta << "); ";
  return os.str();
}

}  // namespace

DerivedConstants derive_constants(const MaterialParams& material) {
  if (auto msg = material_problem(material); !msg.empty())
    throw Error(ErrorKind::invalid_parameter, msg);

  DerivedConstants d;
  d.c_s = std::sqrt(material.G / material.rho);
  if (material.J > 0.0) {
    d.theta = std::sqrt(4.0 * material.G / material.J);
    d.h = d.c_s / d.theta;
  } else {
    d.theta = std::numeric_limits<double>::infinity();
    d.h = 0.0;
  }
  d.h0 = d.h / material.ell;
  d.ell_b = material.ell / std::sqrt(2.0);
  d.ell_t = material.ell * std::sqrt(1.0 + material.eta);
  return d;
}

double inertia_for_h0(double h0, double rho, double ell) {
  // h0 = (c_s/ell) sqrt(J/(4G))  =>  J = 4 rho h0^2 ell^2
  return 4.0 * rho * h0 * h0 * ell * ell;
}

NormalizedSetup normalize(const ProblemSetup& setup) {
  const auto d = derive_constants(setup.material);
  return {setup.m, setup.material.eta, d.h0, setup.L / setup.material.ell};
}

double subsonic_bound(double h0) {
  if (h0 <= 1.0 / std::sqrt(2.0)) return 1.0;
  return 1.0 / (std::sqrt(2.0) * h0);
}

namespace {
std::string trim_separator(std::string s) {
  if (s.size() >= 2 && s.ends_with("; ")) s.resize(s.size() - 2);
  return s;
}
}  // namespace

double upsilon(double eta, double hm) {
  const double hm2 = hm * hm;
  const double disc = 1.0 - 2.0 * hm2;
  if (!(disc > 0.0)) {
    std::ostringstream os;
    os << "upsilon requires h0*m < 1/sqrt(2) (got h0*m = " << hm << ")";
    throw Error(ErrorKind::domain, os.str());
  }
  const double r = std::sqrt(disc);
  return (1.0 - eta * eta - 2.0 * hm2 + 2.0 * r * (1.0 + eta - hm2)) / (1.0 + r);
}

RegimeReport validate(const NormalizedSetup& s) noexcept {
  RegimeReport rep;
  std::ostringstream diag;

  const bool h0_ok = s.h0 >= 0.0 && std::isfinite(s.h0);
  rep.subsonic_bound = h0_ok ? subsonic_bound(s.h0) : 0.0;
  rep.subsonic = h0_ok && s.m >= 0.0 && s.m < rep.subsonic_bound;
  rep.dispersion_class = h0_ok ? classify(s.h0) : DispersionClass::increasing;

  const double hm = s.h0 * s.m;
  rep.upsilon = (h0_ok && 2.0 * hm * hm < 1.0)
                    ? upsilon(s.eta, hm)
                    : std::numeric_limits<double>::quiet_NaN();

  const bool eta_ok = s.eta > -1.0 && s.eta < 1.0;
  if (!h0_ok) diag << "h0 must be finite and non-negative (got " << s.h0 << "); ";
  if (!(s.m >= 0.0)) diag << "m must be non-negative (got " << s.m << "); ";
  if (h0_ok && s.m >= rep.subsonic_bound)
    diag << "crack speed m = " << s.m << " is not subsonic (bound "
         << rep.subsonic_bound << "); ";
  if (!eta_ok)
    diag << "eta must lie strictly inside (-1, 1) (got " << s.eta << "); ";
  if (!(rep.upsilon > 0.0) && rep.subsonic)
    diag << "Upsilon(eta, h0*m) = " << rep.upsilon
         << " is not positive; this regime is excluded; ";
  if (!(s.L_over_ell > 0.0) || !std::isfinite(s.L_over_ell))
    diag << "L/ell must be positive (got " << s.L_over_ell << "); ";

  rep.diagnostic = trim_separator(diag.str());
  rep.admissible = rep.diagnostic.empty() && rep.subsonic && eta_ok && rep.upsilon > 0.0;
  return rep;
}

RegimeReport validate(const ProblemSetup& setup) noexcept {
  std::string extra = material_problem(setup.material);
  if (setup.T0 == 0.0 || !std::isfinite(setup.T0))
    extra += "T0 must be finite and non-zero; ";
  if (!(setup.L > 0.0)) extra += "L must be positive; ";

  if (!extra.empty()) {
    RegimeReport rep;
    rep.diagnostic = trim_separator(extra);
    rep.admissible = false;
    return rep;
  }
  return validate(normalize(setup));
}

void require_admissible(const NormalizedSetup& setup) {
  const auto rep = validate(setup);
  if (!rep.admissible) throw Error(ErrorKind::inadmissible, rep.diagnostic);
}

}  // namespace cscrack
