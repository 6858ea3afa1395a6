#include <doctest.h>

#include <cmath>
#include <limits>

#include "cscrack/dispersion.hpp"
#include "cscrack/error.hpp"
#include "cscrack/model.hpp"

using namespace cscrack;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("derived constants") {
  MaterialParams p;
  p.G = 4.0;
  p.rho = 1.0;
  p.ell = 2.0;
  p.eta = 0.0;
  auto d = derive_constants(p);
  CHECK(d.c_s == doctest::Approx(2.0));
  CHECK(d.h == 0.0);
  CHECK(d.h0 == 0.0);
  CHECK(std::isinf(d.theta));
  CHECK(d.ell_t == doctest::Approx(2.0));
  CHECK(d.ell_t == doctest::Approx(std::sqrt(2.0) * d.ell_b));

  p.ell = 1.0;
  p.eta = -0.5;
  d = derive_constants(p);
  CHECK(d.ell_t == doctest::Approx(d.ell_b));
  CHECK(d.ell_t == doctest::Approx(kInvSqrt2));

  p.J = 0.25;  // theta = sqrt(16/0.25) = 8, h = 2/8
  d = derive_constants(p);
  CHECK(d.theta == doctest::Approx(8.0));
  CHECK(d.h == doctest::Approx(0.25));
  CHECK(d.h0 == doctest::Approx(0.25));
}

TEST_CASE("inertia_for_h0 inverts derive_constants") {
  for (double h0 : {0.0, 0.1, 0.7071, 1.0, 3.0}) {
    MaterialParams p;
    p.G = 3e9;
    p.rho = 2500.0;
    p.ell = 1e-3;
    p.J = inertia_for_h0(h0, p.rho, p.ell);
    CHECK(derive_constants(p).h0 == doctest::Approx(h0).epsilon(1e-12));
  }
}

TEST_CASE("material validation") {
  MaterialParams p;
  p.G = -1.0;
  CHECK_THROWS_AS(derive_constants(p), Error);
  p = {};
  p.eta = -1.0;
  CHECK_THROWS_AS(derive_constants(p), Error);
  p = {};
  p.eta = 1.0;
  CHECK_THROWS_AS(derive_constants(p), Error);
  p = {};
  p.J = -1e-3;
  try {
    derive_constants(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_parameter);
  }
}

TEST_CASE("normalize") {
  ProblemSetup s;
  s.material.ell = 0.5;
  s.material.eta = 0.3;
  s.material.J = inertia_for_h0(0.4, s.material.rho, s.material.ell);
  s.m = 0.6;
  s.L = 2.0;
  const auto n = normalize(s);
  CHECK(n.m == 0.6);
  CHECK(n.eta == 0.3);
  CHECK(n.h0 == doctest::Approx(0.4));
  CHECK(n.L_over_ell == doctest::Approx(4.0));
}

TEST_CASE("subsonic bound") {
  CHECK(subsonic_bound(0.0) == 1.0);
  CHECK(subsonic_bound(kInvSqrt2) == 1.0);
  CHECK(subsonic_bound(1.0) == doctest::Approx(0.70711).epsilon(1e-5));
  double prev = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double h0 = 0.01 * i;
    const double b = subsonic_bound(h0);
    CHECK(b <= prev);
    if (h0 <= kInvSqrt2) CHECK(b == 1.0);
    prev = b;
  }
}

TEST_CASE("upsilon") {
  CHECK(upsilon(0.0, 0.0) == doctest::Approx(1.5));
  CHECK(upsilon(-1.0, 0.0) == doctest::Approx(0.0));
  CHECK(upsilon(0.9, 0.5) > 0.0);
  // Reduces to (1 + eta)(3 - eta)/2 without rotational inertia.
  for (int i = -99; i <= 99; ++i) {
    const double eta = i / 100.0;
    CHECK(upsilon(eta, 0.0) == doctest::Approx(0.5 * (1.0 + eta) * (3.0 - eta)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(upsilon(0.0, 0.75), Error);
  // eta = 0 keeps Upsilon positive on the whole subsonic range.
  for (int i = 0; i < 70; ++i) CHECK(upsilon(0.0, i / 100.0) > 0.0);
}

TEST_CASE("validate") {
  NormalizedSetup s{0.99, 0.0, 0.0, 1.0};
  auto r = validate(s);
  CHECK(r.subsonic);
  CHECK(r.admissible);
  CHECK(r.diagnostic.empty());

  s = {0.8, 0.0, 1.0, 1.0};
  r = validate(s);
  CHECK_FALSE(r.subsonic);
  CHECK_FALSE(r.admissible);
  CHECK(r.diagnostic.find("subsonic") != std::string::npos);

  s = {0.7, -0.99, 1.0, 1.0};  // Upsilon < 0
  r = validate(s);
  CHECK(r.subsonic);
  CHECK(r.upsilon < 0.0);
  CHECK_FALSE(r.admissible);

  s = {0.5, -1.0, 0.0, 1.0};
  CHECK_FALSE(validate(s).admissible);
  CHECK_THROWS_AS(require_admissible(s), Error);

  // Pure function.
  s = {0.3, 0.2, 0.4, 2.0};
  const auto a = validate(s), b = validate(s);
  CHECK(a.upsilon == b.upsilon);
  CHECK(a.diagnostic == b.diagnostic);
  CHECK(a.dispersion_class == DispersionClass::increasing);

  // admissible <=> subsonic and Upsilon > 0 and -1 < eta < 1
  for (double m : {0.0, 0.3, 0.69, 0.9})
    for (double eta : {-0.99, -0.5, 0.0, 0.9})
      for (double h0 : {0.0, 0.5, 1.0, 2.0}) {
        const auto rep = validate(NormalizedSetup{m, eta, h0, 1.0});
        CHECK(rep.admissible == (rep.subsonic && rep.upsilon > 0.0));
      }
}

TEST_CASE("validate physical setup") {
  ProblemSetup p;
  p.m = 0.5;
  CHECK(validate(p).admissible);
  p.T0 = 0.0;
  CHECK_FALSE(validate(p).admissible);
  p.T0 = 1.0;
  p.L = -1.0;
  CHECK_FALSE(validate(p).admissible);
}

TEST_CASE("dispersion closed forms") {
  for (double h0 : {0.0, 0.2, kInvSqrt2, 1.0, 2.0})
    for (double k : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
      const double c = phase_speed_of_wavenumber(k, h0);
      CHECK(c == doctest::Approx(std::sqrt((k * k + 2.0) / (2.0 * (k * k * h0 * h0 + 1.0)))).epsilon(1e-14));
      CHECK(std::abs(dispersion_residual(k, k * c, h0)) < 1e-10 * std::max(1.0, std::pow(k, 4)));
      // Round trip through the frequency form.
      const double w = k * c;
      CHECK(phase_speed_of_frequency(w, h0) == doctest::Approx(c).epsilon(1e-12));
      CHECK(wavenumber_of_frequency(w, h0) == doctest::Approx(k).epsilon(1e-10));
    }
}

TEST_CASE("dispersion regimes") {
  CHECK(classify(0.0) == DispersionClass::increasing);
  CHECK(classify(kInvSqrt2) == DispersionClass::nondispersive);
  CHECK(classify(1.0) == DispersionClass::decreasing);
  for (double h0 : {0.0, 0.3, kInvSqrt2, 1.0, 2.0}) {
    double prev = phase_speed_of_wavenumber(1e-3, h0);
    for (int i = 1; i < 60; ++i) {
      const double c = phase_speed_of_wavenumber(1e-3 * std::pow(10.0, i / 10.0), h0);
      if (h0 < kInvSqrt2) CHECK(c > prev);
      if (h0 > kInvSqrt2) CHECK(c < prev);
      if (h0 == kInvSqrt2) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));
      prev = c;
    }
  }
  for (double h0 : {0.2, 1.0, 2.0})
    CHECK(phase_speed_of_wavenumber(1e6, h0) == doctest::Approx(1.0 / (std::sqrt(2.0) * h0)).epsilon(1e-6));
  CHECK(phase_speed_of_frequency(0.0, 0.5) == 1.0);
}

TEST_CASE("dispersion curve") {
  const auto c = dispersion_curve(1.0, 10.0, 11);
  REQUIRE(c.size() == 11);
  CHECK(c.front().omega == 0.0);
  CHECK(c.back().omega == doctest::Approx(10.0));
  for (const auto& p : c) {
    CHECK(p.c_tilde > 0.0);
    if (p.k > 0.0) CHECK(p.c_tilde == doctest::Approx(p.omega / p.k));
  }
}
