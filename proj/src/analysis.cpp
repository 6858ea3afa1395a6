#include "cscrack/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <sstream>
#include <thread>

#include "cscrack/error.hpp"
#include "cscrack/factorization.hpp"
#include "cscrack/kernel.hpp"

namespace cscrack {

namespace {

struct Sample {
  double x, t, err;
};

Sample shear_at(const FieldSolver& s, double x) {
  const auto f = s.total_shear(x);
  return {x, f.value, f.error};
}

// Derivative at `at` of the parabola through three points.
double parabola_slope(double x0, double x1, double x2, double f0, double f1, double f2, double at) {
  const double l0 = ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2));
  const double l1 = ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2));
  const double l2 = ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1));
  return f0 * l0 + f1 * l1 + f2 * l2;
}

}  // namespace

const char* to_string(SweepParam p) noexcept {
  switch (p) {
    case SweepParam::m: return "m";
    case SweepParam::eta: return "eta";
    case SweepParam::h0: return "h0";
  }
  return "unknown";
}

SweepParam sweep_param_from_string(const char* name) {
  for (SweepParam p : {SweepParam::m, SweepParam::eta, SweepParam::h0})
    if (std::strcmp(name, to_string(p)) == 0) return p;
  throw Error(ErrorKind::invalid_parameter, std::string("unknown sweep parameter '") + name + "'");
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "linspace needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

ShearMaximum locate_max_shear(const FieldSolver& solver, const ScanOptions& o) {
  if (!(o.x_min > 0.0 && o.x_max > o.x_min) || o.points < 3)
    throw Error(ErrorKind::invalid_parameter, "scan window needs 0 < x_min < x_max and >= 3 points");

  std::vector<Sample> s;
  s.reserve(static_cast<std::size_t>(o.points));
  const double r = std::log(o.x_max / o.x_min);
  for (int i = 0; i < o.points; ++i) s.push_back(shear_at(solver, o.x_min * std::exp(r * i / (o.points - 1))));

  ShearMaximum out;
  std::size_t first = 0;  // first index past the negative zone
  if (s[0].t < 0.0) {
    std::size_t i = 0;
    while (i + 1 < s.size() && !(s[i].t < 0.0 && s[i + 1].t >= 0.0)) ++i;
    if (i + 1 == s.size())
      throw Error(ErrorKind::no_interior_max, "t23 stays negative over the whole scan window");
    Sample a = s[i], b = s[i + 1];
    while (b.x - a.x > o.root_tol) {
      const Sample m = shear_at(solver, 0.5 * (a.x + b.x));
      (m.t < 0.0 ? a : b) = m;
    }
    const double slope = (b.t - a.t) / (b.x - a.x);
    out.sign_change = true;
    out.X0 = a.t == b.t ? 0.5 * (a.x + b.x) : a.x - a.t / slope;
    out.X0_error = (b.x - a.x) + std::max(a.err, b.err) / std::abs(slope);
    first = i + 1;
  }

  std::size_t j = first;
  for (std::size_t i = first; i < s.size(); ++i)
    if (s[i].t > s[j].t) j = i;
  if (j + 1 == s.size()) {
    std::ostringstream os;
    os << "t23 is still rising at the end of the scan window X = " << o.x_max;
    throw Error(ErrorKind::no_interior_max, os.str());
  }
  if (!(s[j].t > 0.0)) throw Error(ErrorKind::no_interior_max, "no positive maximum of t23 ahead of the tip");

  // Golden-section search inside the coarse bracket around the best sample.
  double a = j > 0 ? s[j - 1].x : 0.5 * s[j].x;
  double b = s[j + 1].x;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  Sample fc = shear_at(solver, c), fd = shear_at(solver, d);
  while (b - a > o.peak_tol * std::max(1e-3, 0.5 * (a + b))) {
    if (fc.t > fd.t) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = shear_at(solver, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = shear_at(solver, d);
    }
  }
  const Sample best = fc.t > fd.t ? fc : fd;
  out.X_max = best.x;
  out.t23_max = best.t;
  out.t23_max_error = best.err;

  // Position uncertainty of a quadratic peak whose height is known to err.
  double curv = 0.0;
  if (j > 0) {
    const double h1 = s[j].x - s[j - 1].x, h2 = s[j + 1].x - s[j].x;
    curv = 2.0 * (s[j - 1].t / (h1 * (h1 + h2)) - s[j].t / (h1 * h2) + s[j + 1].t / (h2 * (h1 + h2)));
  }
  out.X_max_error = (b - a) + (curv < 0.0 ? std::sqrt(2.0 * best.err / -curv) : std::abs(b - a) * 10.0);
  return out;
}

ShearMaximum analyze_setup(const NormalizedSetup& setup, const SweepOptions& opts) {
  const KernelContext ctx(setup);
  const FactorizedKernel fk(ctx, setup.L_over_ell, opts.constants);
  const FieldSolver fs(fk, opts.fields);
  ScanOptions scan = opts.scan;
  if (scan.scale_with_c) {
    const double s = std::max(1.0, ctx.c() / std::sqrt(2.0));
    scan.x_min /= s;
    scan.x_max /= s;
  }
  return locate_max_shear(fs, scan);
}

std::vector<SweepRecord> sweep(SweepParam param, std::span<const double> grid, const NormalizedSetup& base,
                               const SweepOptions& opts) {
  std::vector<SweepRecord> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i].param = grid[i];
    out[i].setup = base;
    switch (param) {
      case SweepParam::m: out[i].setup.m = grid[i]; break;
      case SweepParam::eta: out[i].setup.eta = grid[i]; break;
      case SweepParam::h0: out[i].setup.h0 = grid[i]; break;
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      try {
        out[i].result = analyze_setup(out[i].setup, opts);
        out[i].ok = true;
      } catch (const Error& e) {
        out[i].error = std::string(to_string(e.kind())) + ": " + e.what();
        out[i].error_kind = e.kind();
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  const int jobs = std::clamp(opts.jobs, 1, static_cast<int>(std::max<std::size_t>(1, out.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::vector<StabilityPoint> stability_report(std::span<const SweepRecord> records) {
  std::vector<const SweepRecord*> ok;
  for (const auto& r : records)
    if (r.ok) ok.push_back(&r);
  if (ok.size() < 3) {
    std::ostringstream os;
    os << "stability needs at least 3 successful sweep points (got " << ok.size() << ")";
    throw Error(ErrorKind::insufficient_points, os.str());
  }
  std::vector<StabilityPoint> out;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const std::size_t c = std::clamp<std::size_t>(i, 1, ok.size() - 2);
    const auto *a = ok[c - 1], *b = ok[c], *d = ok[c + 1];
    StabilityPoint p;
    p.param = ok[i]->param;
    p.slope = parabola_slope(a->param, b->param, d->param, a->result.t23_max, b->result.t23_max,
                             d->result.t23_max, p.param);
    p.stable = p.slope < 0.0;
    out.push_back(p);
  }
  return out;
}

std::optional<double> critical_speed(const NormalizedSetup& base, double tau_c, std::span<const double> m_grid,
                                     const SweepOptions& opts, double m_tol) {
  if (!(tau_c > 0.0)) throw Error(ErrorKind::invalid_parameter, "tau_C must be positive");
  const auto recs = sweep(SweepParam::m, m_grid, base, opts);

  const SweepRecord* prev = nullptr;
  bool failures = false;
  for (const auto& r : recs) {
    if (!r.ok) {
      failures = true;
      continue;
    }
    if (r.result.t23_max == tau_c) return r.param;
    if (prev && (prev->result.t23_max - tau_c) * (r.result.t23_max - tau_c) < 0.0) {
      double a = prev->param, b = r.param;
      const double fa = prev->result.t23_max - tau_c;
      while (b - a > m_tol) {
        NormalizedSetup s = base;
        s.m = 0.5 * (a + b);
        const double fm = analyze_setup(s, opts).t23_max - tau_c;
        (fm * fa > 0.0 ? a : b) = s.m;
      }
      return 0.5 * (a + b);
    }
    prev = &r;
  }
  if (failures)
    throw Error(ErrorKind::not_bracketed, "failed sweep points leave the critical speed undetermined");
  return std::nullopt;
}

GrowthCheck unbounded_growth(const NormalizedSetup& base, std::span<const double> m_grid,
                             const SweepOptions& opts, double m_ref, double factor) {
  SweepOptions o = opts;
  o.scan.scale_with_c = true;
  NormalizedSetup ref = base;
  ref.m = m_ref;
  GrowthCheck g;
  g.reference = analyze_setup(ref, o).t23_max;
  const auto recs = sweep(SweepParam::m, m_grid, base, o);
  for (const auto& r : recs) {
    if (!r.ok) continue;
    if (r.result.t23_max > g.largest) {
      g.largest = r.result.t23_max;
      g.m_at_largest = r.param;
    }
    if (!g.m_exceeded && r.result.t23_max >= factor * g.reference) g.m_exceeded = r.param;
  }
  return g;
}

}  // namespace cscrack
