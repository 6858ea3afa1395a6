#include "cscrack/cscrack.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "cscrack/analysis.hpp"
#include "cscrack/dispersion.hpp"
#include "cscrack/error.hpp"
#include "cscrack/factorization.hpp"
#include "cscrack/fields.hpp"
#include "cscrack/kernel.hpp"
#include "cscrack/model.hpp"
#include "cscrack/quadrature.hpp"

using namespace cscrack;

struct cscrack_solution {
  KernelContext ctx;
  FactorizedKernel fk;
  FieldSolver fs;
  NormalizedSetup setup;

  cscrack_solution(const NormalizedSetup& s, const QuadratureSpec& cs, const QuadratureSpec& fspec)
      : ctx(s), fk(ctx, s.L_over_ell, cs), fs(fk, fspec), setup(s) {}
};

namespace {

thread_local std::string g_last_error;

cscrack_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_parameter: return CSCRACK_E_INVALID_ARGUMENT;
    case ErrorKind::inadmissible: return CSCRACK_E_INADMISSIBLE;
    case ErrorKind::domain: return CSCRACK_E_DOMAIN;
    case ErrorKind::quadrature_failure: return CSCRACK_E_QUADRATURE;
    case ErrorKind::degenerate_denominator: return CSCRACK_E_DEGENERATE_DENOMINATOR;
    case ErrorKind::no_sign_change: return CSCRACK_E_NO_SIGN_CHANGE;
    case ErrorKind::no_interior_max: return CSCRACK_E_NO_INTERIOR_MAX;
    case ErrorKind::not_bracketed: return CSCRACK_E_NOT_BRACKETED;
    case ErrorKind::insufficient_points: return CSCRACK_E_INSUFFICIENT_POINTS;
    case ErrorKind::unknown_figure: return CSCRACK_E_UNKNOWN_FIGURE;
  }
  return CSCRACK_E_INTERNAL;
}

cscrack_status fail(cscrack_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

// Runs `f`, translating exceptions into status codes.
template <class Fn>
cscrack_status guarded(Fn&& f) {
  try {
    f();
    g_last_error.clear();
    return CSCRACK_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CSCRACK_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CSCRACK_E_INTERNAL, e.what());
  } catch (...) {
    return fail(CSCRACK_E_INTERNAL, "unknown exception");
  }
}

#define CSCRACK_REQUIRE(p) \
  if (!(p)) return fail(CSCRACK_E_INVALID_ARGUMENT, "null pointer argument: " #p)

MaterialParams to_cpp(const cscrack_material& m) { return {m.G, m.rho, m.ell, m.eta, m.J}; }

ProblemSetup to_cpp(const cscrack_problem& p) {
  ProblemSetup s;
  s.material = to_cpp(p.material);
  s.m = p.m;
  s.T0 = p.T0;
  s.L = p.L;
  return s;
}

NormalizedSetup to_cpp(const cscrack_normalized& n) { return {n.m, n.eta, n.h0, n.L_over_ell}; }

cscrack_normalized to_c(const NormalizedSetup& n) { return {n.m, n.eta, n.h0, n.L_over_ell}; }

QuadratureSpec to_cpp(const cscrack_quad_spec& q) {
  QuadratureSpec s;
  s.rel_tol = q.rel_tol;
  s.abs_tol = q.abs_tol;
  s.max_subdivisions = q.max_subdivisions;
  s.truncation = q.truncation;
  return s;
}

cscrack_quad_spec to_c(const QuadratureSpec& s) {
  return {s.rel_tol, s.abs_tol, s.max_subdivisions, s.truncation};
}

ScanOptions to_cpp(const cscrack_scan_options& o) {
  ScanOptions s;
  s.x_min = o.x_min;
  s.x_max = o.x_max;
  s.points = o.points;
  s.root_tol = o.root_tol;
  s.peak_tol = o.peak_tol;
  s.scale_with_c = o.scale_with_c != 0;
  return s;
}

SweepOptions to_cpp(const cscrack_sweep_options& o) {
  SweepOptions s;
  s.scan = to_cpp(o.scan);
  s.constants = to_cpp(o.constants);
  s.fields = to_cpp(o.fields);
  s.jobs = o.jobs;
  return s;
}

SweepOptions sweep_opts(const cscrack_sweep_options* o) { return o ? to_cpp(*o) : SweepOptions{}; }

cscrack_shear_max to_c(const ShearMaximum& r) {
  return {r.t23_max, r.X_max, r.X0, r.sign_change ? 1 : 0, r.t23_max_error, r.X_max_error, r.X0_error};
}

cscrack_sample to_c(const FieldSample& s) {
  return {s.X, s.value, s.imag_residual, s.error, s.tail_dominated ? 1 : 0};
}

cscrack_regime to_c(const RegimeReport& r) {
  cscrack_regime o;
  o.subsonic = r.subsonic;
  o.subsonic_bound = r.subsonic_bound;
  o.upsilon = r.upsilon;
  o.admissible = r.admissible;
  o.dispersion_class = static_cast<cscrack_dispersion_class>(r.dispersion_class);
  return o;
}

void copy_text(const std::string& s, char* buf, size_t n) {
  if (!buf || n == 0) return;
  const size_t k = std::min(s.size(), n - 1);
  std::memcpy(buf, s.data(), k);
  buf[k] = '\0';
}

Field field_of(cscrack_field f) {
  if (f < CSCRACK_FIELD_W || f > CSCRACK_FIELD_T23) throw Error(ErrorKind::invalid_parameter, "unknown field id");
  return static_cast<Field>(f);
}

cscrack_sweep_record to_c(const SweepRecord& r) {
  cscrack_sweep_record o{};
  o.param = r.param;
  o.setup = to_c(r.setup);
  o.ok = r.ok ? 1 : 0;
  o.status = r.ok ? CSCRACK_OK : (r.error_kind ? status_of(*r.error_kind) : CSCRACK_E_INTERNAL);
  o.result = to_c(r.result);
  copy_text(r.error, o.error, sizeof o.error);
  return o;
}

SweepRecord to_cpp(const cscrack_sweep_record& r) {
  SweepRecord o;
  o.param = r.param;
  o.setup = to_cpp(r.setup);
  o.ok = r.ok != 0;
  o.result.t23_max = r.result.t23_max;
  o.result.X_max = r.result.X_max;
  o.result.X0 = r.result.X0;
  o.result.sign_change = r.result.sign_change != 0;
  return o;
}

}  // namespace

extern "C" {

const char* cscrack_version(void) { return "1.0.0"; }

const char* cscrack_status_string(cscrack_status s) {
  switch (s) {
    case CSCRACK_OK: return "ok";
    case CSCRACK_E_INVALID_ARGUMENT: return "invalid-parameter";
    case CSCRACK_E_INADMISSIBLE: return "inadmissible";
    case CSCRACK_E_DOMAIN: return "domain";
    case CSCRACK_E_QUADRATURE: return "quadrature-failure";
    case CSCRACK_E_DEGENERATE_DENOMINATOR: return "degenerate-denominator";
    case CSCRACK_E_NO_SIGN_CHANGE: return "no-sign-change";
    case CSCRACK_E_NO_INTERIOR_MAX: return "no-interior-max";
    case CSCRACK_E_NOT_BRACKETED: return "not-bracketed";
    case CSCRACK_E_INSUFFICIENT_POINTS: return "insufficient-points";
    case CSCRACK_E_UNKNOWN_FIGURE: return "unknown-figure";
    case CSCRACK_E_INTERNAL: return "internal";
  }
  return "unknown-status";
}

const char* cscrack_last_error(void) { return g_last_error.c_str(); }

void cscrack_material_default(cscrack_material* out) {
  if (!out) return;
  const MaterialParams m;
  *out = {m.G, m.rho, m.ell, m.eta, m.J};
}

void cscrack_problem_default(cscrack_problem* out) {
  if (!out) return;
  const ProblemSetup p;
  cscrack_material_default(&out->material);
  out->m = p.m;
  out->T0 = p.T0;
  out->L = p.L;
}

cscrack_status cscrack_derive_constants(const cscrack_material* material, cscrack_derived* out) {
  CSCRACK_REQUIRE(material);
  CSCRACK_REQUIRE(out);
  return guarded([&] {
    const auto d = derive_constants(to_cpp(*material));
    *out = {d.c_s, d.theta, d.h, d.h0, d.ell_b, d.ell_t};
  });
}

cscrack_status cscrack_inertia_for_h0(double h0, double rho, double ell, double* J_out) {
  CSCRACK_REQUIRE(J_out);
  return guarded([&] { *J_out = inertia_for_h0(h0, rho, ell); });
}

cscrack_status cscrack_normalize(const cscrack_problem* problem, cscrack_normalized* out) {
  CSCRACK_REQUIRE(problem);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = to_c(normalize(to_cpp(*problem))); });
}

double cscrack_subsonic_bound(double h0) { return subsonic_bound(h0); }

cscrack_status cscrack_upsilon(double eta, double hm, double* out) {
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = upsilon(eta, hm); });
}

cscrack_status cscrack_validate(const cscrack_normalized* setup, cscrack_regime* out, char* diagnostic,
                                size_t diagnostic_size) {
  CSCRACK_REQUIRE(setup);
  CSCRACK_REQUIRE(out);
  return guarded([&] {
    const auto r = validate(to_cpp(*setup));
    *out = to_c(r);
    copy_text(r.diagnostic, diagnostic, diagnostic_size);
  });
}

cscrack_status cscrack_validate_problem(const cscrack_problem* problem, cscrack_regime* out, char* diagnostic,
                                        size_t diagnostic_size) {
  CSCRACK_REQUIRE(problem);
  CSCRACK_REQUIRE(out);
  return guarded([&] {
    const auto r = validate(to_cpp(*problem));
    *out = to_c(r);
    copy_text(r.diagnostic, diagnostic, diagnostic_size);
  });
}

cscrack_status cscrack_phase_speed_of_frequency(double omega, double h0, double* out) {
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = phase_speed_of_frequency(omega, h0); });
}

cscrack_status cscrack_phase_speed_of_wavenumber(double k, double h0, double* out) {
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = phase_speed_of_wavenumber(k, h0); });
}

cscrack_status cscrack_wavenumber_of_frequency(double omega, double h0, double* out) {
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = wavenumber_of_frequency(omega, h0); });
}

double cscrack_dispersion_residual(double k, double omega, double h0) { return dispersion_residual(k, omega, h0); }

cscrack_dispersion_class cscrack_classify(double h0) { return static_cast<cscrack_dispersion_class>(classify(h0)); }

void cscrack_constants_spec_default(cscrack_quad_spec* out) {
  if (out) *out = to_c(constants_spec());
}

void cscrack_field_spec_default(cscrack_quad_spec* out) {
  if (out) *out = to_c(field_spec());
}

cscrack_status cscrack_solution_create(const cscrack_normalized* setup, const cscrack_quad_spec* cs,
                                       const cscrack_quad_spec* fspec, cscrack_solution** out) {
  CSCRACK_REQUIRE(setup);
  CSCRACK_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const NormalizedSetup s = to_cpp(*setup);
    require_admissible(s);
    *out = new cscrack_solution(s, cs ? to_cpp(*cs) : constants_spec(), fspec ? to_cpp(*fspec) : field_spec());
  });
}

cscrack_status cscrack_solution_create_physical(const cscrack_problem* problem, const cscrack_quad_spec* cs,
                                                const cscrack_quad_spec* fspec, cscrack_solution** out) {
  CSCRACK_REQUIRE(problem);
  CSCRACK_REQUIRE(out);
  *out = nullptr;
  cscrack_normalized n;
  const cscrack_status st = cscrack_normalize(problem, &n);
  if (st != CSCRACK_OK) return st;
  return cscrack_solution_create(&n, cs, fspec, out);
}

void cscrack_solution_destroy(cscrack_solution* solution) { delete solution; }

cscrack_status cscrack_solution_constants(const cscrack_solution* s, cscrack_constants* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  return guarded([&] {
    const auto& fk = s->fk;
    cscrack_constants c;
    c.c = s->ctx.c();
    c.d = s->ctx.d();
    c.upsilon = s->ctx.upsilon();
    c.F = fk.F();
    c.F_imag_residual = fk.F_imag_residual();
    c.F_error = fk.F_error();
    c.xi_re = fk.xi().real();
    c.xi_im = fk.xi().imag();
    c.theta_interpolation_error = fk.theta_interpolation_error();
    *out = c;
  });
}

cscrack_status cscrack_solution_setup(const cscrack_solution* s, cscrack_normalized* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  *out = to_c(s->setup);
  return CSCRACK_OK;
}

const char* cscrack_field_name(cscrack_field field) {
  if (field < CSCRACK_FIELD_W || field > CSCRACK_FIELD_T23) return "unknown";
  return to_string(static_cast<Field>(field));
}

cscrack_status cscrack_field_from_name(const char* name, cscrack_field* out) {
  CSCRACK_REQUIRE(name);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = static_cast<cscrack_field>(field_from_string(name)); });
}

cscrack_status cscrack_field_eval(const cscrack_solution* s, cscrack_field field, double X, cscrack_sample* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  return guarded([&] {
    const FieldSolver& fs = s->fs;
    FieldSample r;
    switch (field_of(field)) {
      case Field::w: r = fs.crack_opening(X); break;
      case Field::p3: r = fs.traction_ahead(X); break;
      case Field::sigma23: r = fs.sigma23(X); break;
      case Field::tau23: r = fs.tau23(X); break;
      case Field::mu22: r = fs.mu22(X); break;
      case Field::t23: r = fs.total_shear(X); break;
    }
    *out = to_c(r);
  });
}

cscrack_status cscrack_total_shear_sum(const cscrack_solution* s, double X, cscrack_sample* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = to_c(s->fs.total_shear(X, ShearMode::sum)); });
}

cscrack_status cscrack_field_invert(const cscrack_solution* s, cscrack_field field, double X, cscrack_sample* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = to_c(s->fs.invert(field_of(field), X)); });
}

cscrack_status cscrack_halfplane_displacement(const cscrack_solution* s, double X, double y, cscrack_sample* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = to_c(s->fs.halfplane_displacement(X, y)); });
}

cscrack_status cscrack_physical_scale(cscrack_field field, const cscrack_problem* problem, double* out) {
  CSCRACK_REQUIRE(problem);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = physical_scale(field_of(field), to_cpp(*problem)); });
}

void cscrack_scan_options_default(cscrack_scan_options* out) {
  if (!out) return;
  const ScanOptions s;
  *out = {s.x_min, s.x_max, s.points, s.root_tol, s.peak_tol, s.scale_with_c ? 1 : 0};
}

void cscrack_sweep_options_default(cscrack_sweep_options* out) {
  if (!out) return;
  const SweepOptions s;
  cscrack_scan_options_default(&out->scan);
  out->constants = to_c(s.constants);
  out->fields = to_c(s.fields);
  out->jobs = s.jobs;
}

cscrack_status cscrack_locate_max_shear(const cscrack_solution* s, const cscrack_scan_options* options,
                                        cscrack_shear_max* out) {
  CSCRACK_REQUIRE(s);
  CSCRACK_REQUIRE(out);
  return guarded([&] { *out = to_c(locate_max_shear(s->fs, options ? to_cpp(*options) : ScanOptions{})); });
}

cscrack_status cscrack_sweep(cscrack_sweep_param param, const double* grid, size_t n, const cscrack_normalized* base,
                             const cscrack_sweep_options* options, cscrack_sweep_record* out) {
  CSCRACK_REQUIRE(grid || n == 0);
  CSCRACK_REQUIRE(base);
  CSCRACK_REQUIRE(out || n == 0);
  if (param < CSCRACK_SWEEP_M || param > CSCRACK_SWEEP_H0)
    return fail(CSCRACK_E_INVALID_ARGUMENT, "unknown sweep parameter");
  return guarded([&] {
    const auto recs = sweep(static_cast<SweepParam>(param), std::span<const double>(grid, n), to_cpp(*base),
                            sweep_opts(options));
    for (size_t i = 0; i < n; ++i) out[i] = to_c(recs[i]);
  });
}

cscrack_status cscrack_stability_report(const cscrack_sweep_record* records, size_t n, cscrack_stability_point* out,
                                        size_t* n_out) {
  CSCRACK_REQUIRE(records || n == 0);
  CSCRACK_REQUIRE(out);
  CSCRACK_REQUIRE(n_out);
  return guarded([&] {
    std::vector<SweepRecord> recs;
    recs.reserve(n);
    for (size_t i = 0; i < n; ++i) recs.push_back(to_cpp(records[i]));
    const auto pts = stability_report(recs);
    for (size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i].param, pts[i].slope, pts[i].stable ? 1 : 0};
    *n_out = pts.size();
  });
}

cscrack_status cscrack_critical_speed(const cscrack_normalized* base, double tau_c, const double* m_grid, size_t n,
                                      const cscrack_sweep_options* options, double m_tol, int* found,
                                      double* m_out) {
  CSCRACK_REQUIRE(base);
  CSCRACK_REQUIRE(m_grid || n == 0);
  CSCRACK_REQUIRE(found);
  CSCRACK_REQUIRE(m_out);
  return guarded([&] {
    const auto r = critical_speed(to_cpp(*base), tau_c, std::span<const double>(m_grid, n), sweep_opts(options),
                                  m_tol > 0.0 ? m_tol : 1e-4);
    *found = r ? 1 : 0;
    *m_out = r ? *r : std::nan("");
  });
}

cscrack_status cscrack_unbounded_growth(const cscrack_normalized* base, const double* m_grid, size_t n,
                                        const cscrack_sweep_options* options, double m_ref, double factor,
                                        cscrack_growth* out) {
  CSCRACK_REQUIRE(base);
  CSCRACK_REQUIRE(m_grid || n == 0);
  CSCRACK_REQUIRE(out);
  return guarded([&] {
    const auto g = unbounded_growth(to_cpp(*base), std::span<const double>(m_grid, n), sweep_opts(options), m_ref,
                                    factor);
    *out = {g.reference, g.largest, g.m_at_largest, g.m_exceeded ? 1 : 0,
            g.m_exceeded ? *g.m_exceeded : std::nan("")};
  });
}

}  // extern "C"
