#include "cscrack/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "cscrack/error.hpp"

namespace cscrack {

namespace {
// Below this |z| the quotient f/|z| is replaced by its leading term.
constexpr double kSeriesCutoff = 1e-6;
}  // namespace

KernelContext::KernelContext(double m, double eta, double h0)
    : m_(m), eta_(eta), h0_(h0) {
  require_admissible(NormalizedSetup{m, eta, h0, 1.0});
  hm2_ = h0 * h0 * m * m;
  one_minus_hm2_ = 1.0 - hm2_;
  one_minus_2hm2_ = 1.0 - 2.0 * hm2_;
  c_ = std::sqrt(2.0 * (1.0 - m * m) / one_minus_2hm2_);
  psi_.quad = cscrack::upsilon(eta, h0 * m);
  psi_.constant = 2.0 * std::sqrt(1.0 - m * m);
  d_ = std::sqrt(psi_.constant / psi_.quad);
}

std::optional<double> KernelContext::b() const {
  if (h0_ != 0.0 || m_ == 0.0) return std::nullopt;
  return 1.0 / (std::sqrt(2.0) * m_);
}

std::optional<std::complex<double>> KernelContext::b1() const {
  if (h0_ == 0.0 || m_ == 0.0) return std::nullopt;
  const std::complex<double> inner = std::sqrt(std::complex<double>(1.0 - 2.0 * h0_ * h0_));
  return std::sqrt(1.0 - h0_ * h0_ + inner) / (h0_ * h0_ * m_);
}

std::optional<std::complex<double>> KernelContext::b2() const {
  if (h0_ == 0.0 || m_ == 0.0) return std::nullopt;
  const std::complex<double> inner = std::sqrt(std::complex<double>(1.0 - 2.0 * h0_ * h0_));
  return std::sqrt(1.0 - h0_ * h0_ - inner) / (h0_ * h0_ * m_);
}

double KernelContext::chi(double z) const {
  const double z2 = z * z;
  const double m2 = m_ * m_;
  const double h02 = h0_ * h0_;
  return std::sqrt(1.0 + 2.0 * (1.0 - h02) * m2 * z2 + hm2_ * hm2_ * z2 * z2);
}

AlphaBeta KernelContext::alpha_beta(double z) const {
  const double z2 = z * z;
  const double chi_v = chi(z);
  const double a = 1.0 + one_minus_hm2_ * z2;
  // a^2 - chi^2 = z^2 [2(1-m^2) + (1-2h0^2m^2) z^2], so beta^2 needs no
  // subtraction of nearly equal numbers.
  const double prod = z2 * (2.0 * (1.0 - m_ * m_) + one_minus_2hm2_ * z2);
  return {std::sqrt(a + chi_v), std::sqrt(prod / (a + chi_v))};
}

double KernelContext::beta_naive(double z) const {
  const double a = 1.0 + one_minus_hm2_ * z * z;
  return std::sqrt(std::max(0.0, a - chi(z)));
}

double KernelContext::f(double z) const {
  const double az = std::abs(z);
  if (az < kSeriesCutoff) return psi_.constant * az;
  const double z2 = z * z;
  const auto [alpha, beta] = alpha_beta(z);
  const double ab = alpha * beta;
  const double a2b2 = z2 * (2.0 * (1.0 - m_ * m_) + one_minus_2hm2_ * z2);
  const double sum_sq = 2.0 * (1.0 + one_minus_hm2_ * z2);  // alpha^2 + beta^2
  return (ab * (sum_sq + 2.0 * eta_ * z2) + a2b2 - eta_ * eta_ * z2 * z2) / (alpha + beta);
}

double KernelContext::f_static_form(double z) const {
  const double az = std::abs(z);
  if (az < kSeriesCutoff) return psi_.constant * az;
  const double z2 = z * z;
  const auto [alpha, beta] = alpha_beta(z);
  const double ab = alpha * beta;
  const double s = alpha + beta;
  const double t = ab - eta_ * z2;
  return (ab * s * s - t * t) / s;
}

double KernelContext::k(double z) const {
  const double az = std::abs(z);
  if (az < kSeriesCutoff) return 1.0;
  return f(z) / (az * psi(z));
}

double KernelContext::log_k(double z) const {
  const double az = std::abs(z);
  if (az < kSeriesCutoff) return 0.0;
  // log k = O(z^-2); products of z^4 overflow long before this matters.
  if (az > 1e40) return 0.0;
  return std::log(k(z));
}

double KernelContext::sigma_factor(double z) const {
  const auto [alpha, beta] = alpha_beta(z);
  return (alpha * beta - eta_ * z * z) / (alpha + beta);
}

double KernelContext::tau_factor(double z) const {
  const double z2 = z * z;
  const auto [alpha, beta] = alpha_beta(z);
  const double ab = alpha * beta;
  const double a2b2 = z2 * (2.0 * (1.0 - m_ * m_) + one_minus_2hm2_ * z2);
  const double sum_sq = 2.0 * (1.0 + one_minus_hm2_ * z2);
  const double num = a2b2 + (sum_sq + ab) * eta_ * z2 - one_minus_2hm2_ * z2 * (eta_ * z2 - ab);
  return num / (alpha + beta);
}

double KernelContext::tau_factor_static(double z) const {
  const double z2 = z * z;
  const auto [alpha, beta] = alpha_beta(z);
  const double c2 = c_ * c_;
  const double num = (1.0 + eta_) * z2 * z2 +
                     z2 * (c2 + 2.0 * eta_ + (1.0 + eta_) * std::abs(z) * std::sqrt(z2 + c2));
  return num / (alpha + beta);
}

double KernelContext::characteristic_scale() const {
  return std::max({1.0, c_, d_});
}

}  // namespace cscrack
