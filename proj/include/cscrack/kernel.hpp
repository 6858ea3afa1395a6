#pragma once

#include <complex>
#include <optional>

#include "cscrack/model.hpp"

namespace cscrack {

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Psi(z) = quad z^2 + constant; its zeros +-i d are the poles of k.
struct PsiCoefficients {
  double quad = 0.0;
  double constant = 0.0;
};

/// Real-axis evaluators of the Wiener-Hopf kernel ingredients for one
/// admissible (m, eta, h0). Every function of z is even and evaluated on the
/// branch that is positive along the real axis.
///
/// Branch cuts of chi (and hence alpha, beta) run along the imaginary axis
/// for h0 < 1/sqrt(2) and from the four off-axis branch points to +-i inf
/// otherwise; only real arguments are ever needed downstream.
class KernelContext {
 public:
  /// Throws Error(inadmissible) for setups outside the admissible regime.
  KernelContext(double m, double eta, double h0);
  explicit KernelContext(const NormalizedSetup& s) : KernelContext(s.m, s.eta, s.h0) {}

  double m() const { return m_; }
  double eta() const { return eta_; }
  double h0() const { return h0_; }

  /// sqrt(2(1-m^2)/(1-2 h0^2 m^2)): branch points +-ic of alpha or beta.
  double c() const { return c_; }
  /// Branch point 1/(sqrt(2) m) of chi when h0 == 0; empty if h0 > 0 or m == 0.
  std::optional<double> b() const;
  /// Branch points of chi divided by i; complex when h0 > 1/sqrt(2).
  /// Empty when h0 == 0 or m == 0.
  std::optional<std::complex<double>> b1() const;
  std::optional<std::complex<double>> b2() const;
  /// Poles of k are at +-i d.
  double d() const { return d_; }
  double upsilon() const { return psi_.quad; }
  PsiCoefficients psi_coefficients() const { return psi_; }
  /// 1 - 2 h0^2 m^2
  double inertia_factor() const { return one_minus_2hm2_; }

  double chi(double z) const;
  AlphaBeta alpha_beta(double z) const;
  /// beta evaluated as sqrt(1 + (1-h0^2 m^2) z^2 - chi) directly; reference
  /// only, it loses accuracy for small |z|.
  double beta_naive(double z) const;

  double f(double z) const;
  /// [alpha beta (alpha+beta)^2 - (alpha beta - eta z^2)^2]/(alpha+beta):
  /// the vanishing-inertia arrangement of f, algebraically identical to f.
  double f_static_form(double z) const;
  double psi(double z) const { return psi_.quad * z * z + psi_.constant; }
  std::complex<double> psi(std::complex<double> z) const {
    return psi_.quad * z * z + psi_.constant;
  }
  /// f(z) / (|z| Psi(z)); limit value 1 at z = 0.
  double k(double z) const;
  double log_k(double z) const;

  /// (alpha beta - eta z^2)/(alpha + beta), the symmetric-stress factor.
  double sigma_factor(double z) const;
  /// Skew-symmetric stress factor {...}/(alpha+beta), general inertia form.
  double tau_factor(double z) const;
  /// Same factor in the vanishing-inertia arrangement; only meaningful for h0 == 0.
  double tau_factor_static(double z) const;

  /// Largest length scale in the transform variable: structure of every
  /// integrand is resolved once |xi| exceeds a few multiples of this.
  double characteristic_scale() const;

 private:
  double m_, eta_, h0_;
  double hm2_;             // (h0 m)^2
  double one_minus_hm2_;   // 1 - h0^2 m^2
  double one_minus_2hm2_;  // 1 - 2 h0^2 m^2
  double c_;
  double d_;
  PsiCoefficients psi_;
};

}  // namespace cscrack
