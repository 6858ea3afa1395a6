#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cscrack/fields.hpp"

using namespace cscrack;
using cplx = std::complex<double>;

namespace {

struct Setup {
  FactorizedKernel fk;
  FieldSolver fs;
  explicit Setup(const NormalizedSetup& n) : fk(KernelContext(n), n.L_over_ell), fs(fk) {}
};

std::vector<NormalizedSetup> setups() {
  return {{0.5, 0.0, 0.0, 1.0}, {0.9, 0.5, 0.3, 2.0}, {0.2, -0.9, 0.0, 0.5}, {0.6, 0.3, 1.0, 1.0}};
}

}  // namespace

TEST_CASE("Wiener-Hopf functional equation holds on the real axis") {
  for (const auto& n : setups()) {
    Setup s(n);
    for (double xi : {-30.0, -2.0, -0.3, -1e-3, 1e-3, 0.4, 1.0, 5.0, 80.0}) {
      const cplx lhs = s.fs.p3_transform(xi) - s.fs.load_transform(xi);
      const cplx rhs = -0.5 * s.fk.kernel().f(xi) * s.fs.w_transform(xi);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("couple traction vanishes on the crack line") {
  for (const auto& n : setups()) {
    Setup s(n);
    const auto& k = s.fk.kernel();
    for (double xi : {-10.0, -0.5, 0.05, 1.0, 20.0}) {
      const auto [C, D] = s.fs.halfplane_coefficients(xi);
      const auto [a, b] = k.alpha_beta(xi);
      const double es2 = k.eta() * xi * xi;
      const cplx q1 = C * (a * a + es2) + D * (b * b + es2);
      CHECK(std::abs(q1) <= 1e-12 * (std::abs(C) + std::abs(D)) * (a * a + std::abs(es2)));
      CHECK(std::abs(C + D - s.fs.w_transform(xi)) <= 1e-12 * std::abs(s.fs.w_transform(xi)));
    }
  }
}

TEST_CASE("reduced traction equals t23 plus half the couple-stress gradient") {
  for (const auto& n : setups()) {
    Setup s(n);
    for (double X : {0.3, 1.0, 2.5}) {
      const double h = 1e-2 * X;
      const double dmu = (s.fs.mu22(X + h).value - s.fs.mu22(X - h).value) / (2.0 * h);
      const double p3 = s.fs.traction_ahead(X).value;
      const double t23 = s.fs.total_shear(X).value;
      CHECK(std::abs(p3 - (t23 + 0.5 * dmu)) < 1e-4 * std::max(1.0, std::abs(p3)));
    }
  }
}

TEST_CASE("every field sample is real") {
  for (const auto& n : setups()) {
    Setup s(n);
    for (double X : {0.01, 0.2, 1.0, 4.0}) {
      for (const auto& r : {s.fs.crack_opening(-X), s.fs.traction_ahead(X), s.fs.sigma23(X), s.fs.tau23(X),
                            s.fs.mu22(X), s.fs.total_shear(X)})
        CHECK(std::abs(r.imag_residual) <= 1e-6 * std::max(1.0, std::abs(r.value)));
    }
  }
}

TEST_CASE("crack opening vanishes at the tip") {
  for (const auto& n : setups()) {
    Setup s(n);
    const double w1 = s.fs.crack_opening(-1e-4).value, w2 = s.fs.crack_opening(-2e-4).value;
    // Linear extrapolation to X = 0.
    CHECK(std::abs(2.0 * w1 - w2) < 1e-5);
  }
}

TEST_CASE("fields scale linearly with T0") {
  ProblemSetup p;
  p.m = 0.4;
  for (Field f : {Field::w, Field::p3, Field::sigma23, Field::tau23, Field::mu22, Field::t23}) {
    const double a = physical_scale(f, p);
    p.T0 *= 2.0;
    CHECK(physical_scale(f, p) == 2.0 * a);
    p.T0 /= 2.0;
  }
  // The normalized problem does not see T0 at all.
  ProblemSetup q = p;
  q.T0 = 7.0;
  CHECK(normalize(q).m == normalize(p).m);
  CHECK(normalize(q).L_over_ell == normalize(p).L_over_ell);
}

TEST_CASE("slow cracks approach the static solution") {
  Setup a({1e-3, 0.0, 0.0, 1.0}), b({1e-2, 0.0, 0.0, 1.0});
  for (Field f : {Field::t23, Field::sigma23, Field::mu22}) {
    double diff = 0.0, sup = 0.0;
    for (int i = 0; i <= 30; ++i) {
      const double X = 0.01 * std::pow(1000.0, i / 30.0);
      auto eval = [&](const FieldSolver& fs) {
        return f == Field::t23 ? fs.total_shear(X).value : f == Field::sigma23 ? fs.sigma23(X).value : fs.mu22(X).value;
      };
      const double va = eval(a.fs), vb = eval(b.fs);
      diff = std::max(diff, std::abs(va - vb));
      sup = std::max(sup, std::abs(va));
    }
    CHECK(diff < 0.01 * sup);
  }
}

TEST_CASE("trends with crack speed and eta") {
  // Opening grows with m and shrinks with eta; sigma23 and mu22 stay positive
  // ahead of the tip while tau23 is negative and grows in magnitude with m.
  double w_prev_eta = INFINITY;
  for (double eta : {-0.9, 0.0, 0.9}) {
    double w_prev = 0.0, tau_prev = 0.0;
    for (double m : {0.01, 0.5, 0.9}) {
      Setup s({m, eta, 0.0, 1.0});
      const double w = s.fs.crack_opening(-1.0).value;
      CHECK(w > w_prev);
      w_prev = w;
      const double tau = s.fs.tau23(0.05).value;
      CHECK(tau < tau_prev);
      tau_prev = tau;
      CHECK(s.fs.sigma23(0.1).value > 0.0);
      CHECK(s.fs.sigma23(3.0).value > 0.0);
      CHECK(s.fs.mu22(0.1).value > 0.0);
      CHECK(s.fs.mu22(20.0).value < 0.1 * s.fs.mu22(5.0).value);
      if (m == 0.5) {
        CHECK(w < w_prev_eta);
        w_prev_eta = w;
      }
    }
  }
}

TEST_CASE("load profile") {
  Setup s({0.5, 0.0, 0.0, 2.0});
  // Transform of (1/L) e^{X/L}: equals 1 at xi = 0, decays like 1/xi.
  CHECK(std::abs(s.fs.load_transform(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(s.fs.load_transform(1e6)) < 1e-6);
}
