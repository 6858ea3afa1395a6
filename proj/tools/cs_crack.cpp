// cs-crack: command-line front end over the C API.
//
// Physical inputs are SI; every emitted column is normalized (lengths by ell,
// stresses by T0/ell, couple stress by T0, displacement by T0/G).

#include <cscrack/cscrack.h>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace {

// ---- errors --------------------------------------------------------------

struct UsageError {
  std::string msg;
};

struct StageError {
  std::string stage;  // validation | factorization | inversion | analysis
  cscrack_status status;
  std::string msg;
};

void check(cscrack_status s, const char* stage) {
  if (s != CSCRACK_OK) throw StageError{stage, s, cscrack_last_error()};
}

// ---- CSV -----------------------------------------------------------------

using Cell = std::variant<double, std::string>;

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}

  void row(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      if (const double* d = std::get_if<double>(&cells[i]))
        put(*d);
      else
        os_ << std::get<std::string>(cells[i]);
    }
    os_ << '\n';
  }

  void header(const std::vector<std::string>& names) {
    std::vector<Cell> c(names.begin(), names.end());
    row(c);
  }

 private:
  void put(double v) {
    if (std::isnan(v)) {
      os_ << "nan";
      return;
    }
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);  // shortest round trip
    os_.write(buf, r.ptr - buf);
  }

  std::ostream& os_;
};

// ---- configuration -------------------------------------------------------

struct Common {
  std::string config;
  std::optional<double> G, rho, ell, eta, J, h0, m, T0, L, L_over_ell;
  std::optional<double> rel_tol, abs_tol, truncation;
  std::string output;
  std::string plot_script;
  int jobs = 1;
};

void add_common(CLI::App* app, Common& c, bool with_setup = true) {
  app->add_option("--config", c.config, "INI file with [material], [problem] and [quad] sections")
      ->check(CLI::ExistingFile);
  if (with_setup) {
    app->add_option("--G", c.G, "shear modulus [Pa]");
    app->add_option("--rho", c.rho, "density [kg/m^3]");
    app->add_option("--ell", c.ell, "couple-stress length [m]");
    app->add_option("--eta", c.eta, "torsion/bending ratio in (-1, 1)");
    app->add_option("--J", c.J, "rotational inertia [kg/m]");
    app->add_option("--h0", c.h0, "normalized rotational inertia; overrides J");
    app->add_option("--m", c.m, "crack speed / c_s");
    app->add_option("--T0", c.T0, "load resultant [N/m]");
    app->add_option("--L", c.L, "load decay length [m]");
    app->add_option("--L-over-ell", c.L_over_ell, "load decay length / ell; overrides L");
  }
  app->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance (quad.rel_tol)");
  app->add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance (quad.abs_tol)");
  app->add_option("--truncation", c.truncation, "inversion cutoff, 0 = automatic (quad.truncation)");
  app->add_option("-o,--output", c.output, "CSV output file (default: stdout)");
  app->add_option("--plot-script", c.plot_script, "also write a gnuplot script for the CSV (needs --output)");
  app->add_option("-j,--jobs", c.jobs, "worker threads for sweeps")
      ->envname("CS_CRACK_JOBS")
      ->check(CLI::PositiveNumber);
}

struct Config {
  cscrack_problem problem;
  cscrack_quad_spec constants, fields;
};

std::optional<double> ini_value(const boost::property_tree::ptree& pt, const char* section, const char* key) {
  for (const std::string& path : {std::string(section) + "." + key, std::string(key)}) {
    if (auto v = pt.get_optional<std::string>(path)) {
      double d = 0.0;
      const char* b = v->data();
      const char* e = b + v->size();
      while (b < e && *b == ' ') ++b;
      const auto r = std::from_chars(b, e, d);
      if (r.ec != std::errc() || r.ptr != e)
        throw UsageError{"config key '" + path + "' is not a number: '" + *v + "'"};
      return d;
    }
  }
  return std::nullopt;
}

Config resolve(const Common& c) {
  Config cfg;
  cscrack_problem_default(&cfg.problem);
  cscrack_constants_spec_default(&cfg.constants);
  cscrack_field_spec_default(&cfg.fields);
  auto& p = cfg.problem;
  auto& mat = p.material;

  std::optional<double> h0 = c.h0, L_over_ell = c.L_over_ell;
  std::optional<double> rel = c.rel_tol, abs = c.abs_tol, trunc = c.truncation;
  if (!c.config.empty()) {
    boost::property_tree::ptree pt;
    try {
      boost::property_tree::read_ini(c.config, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw UsageError{std::string("cannot parse config: ") + e.what()};
    }
    auto set = [&](double& dst, const char* sec, const char* key) {
      if (auto v = ini_value(pt, sec, key)) dst = *v;
    };
    set(mat.G, "material", "G");
    set(mat.rho, "material", "rho");
    set(mat.ell, "material", "ell");
    set(mat.eta, "material", "eta");
    set(mat.J, "material", "J");
    set(p.m, "problem", "m");
    set(p.T0, "problem", "T0");
    set(p.L, "problem", "L");
    if (!h0) h0 = ini_value(pt, "material", "h0");
    if (!L_over_ell) L_over_ell = ini_value(pt, "problem", "L_over_ell");
    if (!rel) rel = ini_value(pt, "quad", "rel_tol");
    if (!abs) abs = ini_value(pt, "quad", "abs_tol");
    if (!trunc) trunc = ini_value(pt, "quad", "truncation");
  }
  if (c.G) mat.G = *c.G;
  if (c.rho) mat.rho = *c.rho;
  if (c.ell) mat.ell = *c.ell;
  if (c.eta) mat.eta = *c.eta;
  if (c.J) mat.J = *c.J;
  if (c.m) p.m = *c.m;
  if (c.T0) p.T0 = *c.T0;
  if (c.L) p.L = *c.L;
  if (h0) check(cscrack_inertia_for_h0(*h0, mat.rho, mat.ell, &mat.J), "validation");
  if (L_over_ell) p.L = *L_over_ell * mat.ell;

  // The user tolerance drives the field inversions; the constants keep their
  // tighter default unless asked for something tighter still.
  if (rel) {
    if (!(*rel > 0.0)) throw UsageError{"rel_tol must be positive"};
    cfg.fields.rel_tol = *rel;
    cfg.constants.rel_tol = std::min(cfg.constants.rel_tol, *rel);
  }
  if (abs) {
    if (!(*abs >= 0.0)) throw UsageError{"abs_tol must be non-negative"};
    cfg.fields.abs_tol = *abs;
    cfg.constants.abs_tol = std::min(cfg.constants.abs_tol, *abs);
  }
  if (trunc) {
    if (!(*trunc >= 0.0)) throw UsageError{"truncation must be non-negative"};
    cfg.fields.truncation = *trunc;
  }
  return cfg;
}

cscrack_normalized admissible_setup(const Config& cfg) {
  cscrack_regime reg;
  char diag[512];
  check(cscrack_validate_problem(&cfg.problem, &reg, diag, sizeof diag), "validation");
  if (!reg.admissible) throw StageError{"validation", CSCRACK_E_INADMISSIBLE, diag};
  cscrack_normalized n;
  check(cscrack_normalize(&cfg.problem, &n), "validation");
  return n;
}

double material_h0(const Config& cfg) {
  cscrack_derived d;
  check(cscrack_derive_constants(&cfg.problem.material, &d), "validation");
  return d.h0;
}

// ---- output plumbing ----------------------------------------------------

class Output {
 public:
  explicit Output(const Common& c) {
    if (!c.plot_script.empty() && c.output.empty()) throw UsageError{"--plot-script needs --output"};
    if (!c.output.empty()) {
      file_.open(c.output, std::ios::binary);
      if (!file_) throw UsageError{"cannot open output file '" + c.output + "'"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_plot_script(const Common& c, const std::string& x, const std::vector<std::string>& ys,
                       const std::string& title) {
  if (c.plot_script.empty()) return;
  std::ofstream os(c.plot_script);
  if (!os) throw UsageError{"cannot open plot script '" + c.plot_script + "'"};
  os << "# gnuplot script for " << c.output << "\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set title '" << title << "'\n"
     << "set xlabel '" << x << "'\n";
  if (ys.size() > 1) os << "set multiplot layout " << ys.size() << ",1\n";
  for (const auto& y : ys)
    os << "set ylabel '" << y << "'\nplot '" << c.output << "' using '" << x << "':'" << y
       << "' with linespoints pt 7 ps 0.4\n";
  if (ys.size() > 1) os << "unset multiplot\n";
}

struct SolutionDeleter {
  void operator()(cscrack_solution* s) const { cscrack_solution_destroy(s); }
};
using Solution = std::unique_ptr<cscrack_solution, SolutionDeleter>;

Solution make_solution(const cscrack_normalized& n, const Config& cfg) {
  cscrack_solution* s = nullptr;
  check(cscrack_solution_create(&n, &cfg.constants, &cfg.fields, &s), "factorization");
  return Solution(s);
}

std::vector<double> grid(double a, double b, int n, bool log_spaced) {
  if (n < 1) throw UsageError{"--points must be at least 1"};
  if (log_spaced && !(a > 0.0 && b > 0.0)) throw UsageError{"--log-x needs a positive range"};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[i] = log_spaced ? a * std::pow(b / a, t) : a + (b - a) * t;
  }
  return v;
}

cscrack_sweep_options sweep_options(const Common& c, const Config& cfg) {
  cscrack_sweep_options o;
  cscrack_sweep_options_default(&o);
  o.constants = cfg.constants;
  o.fields = cfg.fields;
  o.jobs = c.jobs;
  // Near the inertia bound the structure contracts like 1/c; follow it.
  o.scan.scale_with_c = 1;
  return o;
}

// ---- subcommand bodies ---------------------------------------------------

struct DispersionArgs {
  double omega_max = 10.0;
  int points = 101;
};

void dispersion_rows(Csv& csv, double h0, const DispersionArgs& a, bool with_h0) {
  for (double w : grid(0.0, a.omega_max, a.points, false)) {
    double c = 0.0;
    check(cscrack_phase_speed_of_frequency(w, h0, &c), "analysis");
    if (with_h0)
      csv.row({h0, w, c});
    else
      csv.row({w, c});
  }
}

int run_dispersion(const Common& c, const DispersionArgs& a) {
  const Config cfg = resolve(c);
  const double h0 = material_h0(cfg);
  if (!(a.omega_max >= 0.0)) throw UsageError{"--omega-max must be non-negative"};
  Output out(c);
  Csv csv(out.stream());
  csv.header({"omega", "c_tilde"});
  dispersion_rows(csv, h0, a, false);
  write_plot_script(c, "omega", {"c_tilde"}, "phase speed");
  return 0;
}

struct FieldArgs {
  std::string what = "t23";
  double x_min = 1e-3;
  double x_max = 5.0;
  int points = 200;
  bool log_x = false;
};

// w lives behind the tip: a positive range is mirrored onto X = -x.
std::vector<double> field_grid(const FieldArgs& a, cscrack_field f) {
  auto xs = grid(a.x_min, a.x_max, a.points, a.log_x);
  if (f == CSCRACK_FIELD_W)
    for (double& x : xs)
      if (x > 0.0) x = -x;
  return xs;
}

void field_rows(Csv& csv, const cscrack_solution* s, cscrack_field f, const std::vector<double>& xs,
                const std::vector<Cell>& prefix) {
  for (double x : xs) {
    cscrack_sample smp;
    check(cscrack_field_eval(s, f, x, &smp), "inversion");
    std::vector<Cell> row = prefix;
    row.insert(row.end(), {smp.X, smp.value, smp.imag_residual});
    csv.row(row);
  }
}

cscrack_field parse_field(const std::string& name) {
  cscrack_field f;
  if (cscrack_field_from_name(name.c_str(), &f) != CSCRACK_OK) throw UsageError{"unknown field '" + name + "'"};
  return f;
}

int run_fields(const Common& c, const FieldArgs& a) {
  const cscrack_field f = parse_field(a.what);
  const Config cfg = resolve(c);
  const auto n = admissible_setup(cfg);
  const auto xs = field_grid(a, f);
  auto s = make_solution(n, cfg);
  Output out(c);
  Csv csv(out.stream());
  csv.header({"X_over_ell", "value", "imag_residual"});
  field_rows(csv, s.get(), f, xs, {});
  write_plot_script(c, "X_over_ell", {"value"}, a.what);
  return 0;
}

struct ProfileArgs {
  double x_min = -5.0;
  double x_max = 5.0;
  double y = 0.0;
  int points = 201;
};

int run_profile(const Common& c, const ProfileArgs& a) {
  const Config cfg = resolve(c);
  const auto n = admissible_setup(cfg);
  if (!(a.y >= 0.0)) throw UsageError{"--y must be non-negative"};
  const auto xs = grid(a.x_min, a.x_max, a.points, false);
  auto s = make_solution(n, cfg);
  Output out(c);
  Csv csv(out.stream());
  csv.header({"X_over_ell", "y_over_ell", "value", "imag_residual"});
  for (double x : xs) {
    cscrack_sample smp;
    check(cscrack_halfplane_displacement(s.get(), x, a.y, &smp), "inversion");
    csv.row({smp.X, a.y, smp.value, smp.imag_residual});
  }
  write_plot_script(c, "X_over_ell", {"value"}, "displacement profile");
  return 0;
}

struct SweepArgs {
  std::string param = "m";
  double from = 0.0, to = 0.0;
  int points = 19;
};

cscrack_sweep_param parse_param(const std::string& p) {
  if (p == "m") return CSCRACK_SWEEP_M;
  if (p == "eta") return CSCRACK_SWEEP_ETA;
  if (p == "h0") return CSCRACK_SWEEP_H0;
  throw UsageError{"unknown sweep parameter '" + p + "'"};
}

// Runs one sweep; failed points are reported on stderr and kept as rows.
std::vector<cscrack_sweep_record> do_sweep(cscrack_sweep_param param, const std::vector<double>& g,
                                           const cscrack_normalized& base, const cscrack_sweep_options& o) {
  std::vector<cscrack_sweep_record> recs(g.size());
  check(cscrack_sweep(param, g.data(), g.size(), &base, &o, recs.data()), "analysis");
  std::size_t ok = 0;
  for (const auto& r : recs) {
    if (r.ok) {
      ++ok;
      continue;
    }
    std::fprintf(stderr, "warning [analysis] point %g: %s\n", r.param, r.error);
  }
  if (ok == 0) throw StageError{"analysis", recs.empty() ? CSCRACK_E_INVALID_ARGUMENT : recs[0].status,
                                "every sweep point failed"};
  return recs;
}

// Stability flags aligned with `recs`; empty cells for failed points and for
// sweeps over anything but m.
std::vector<std::string> stable_flags(const std::vector<cscrack_sweep_record>& recs, bool is_m) {
  std::vector<std::string> flags(recs.size());
  if (!is_m) return flags;
  std::vector<cscrack_stability_point> pts(recs.size());
  std::size_t n = 0;
  if (cscrack_stability_report(recs.data(), recs.size(), pts.data(), &n) != CSCRACK_OK) {
    std::fprintf(stderr, "warning [analysis] %s\n", cscrack_last_error());
    return flags;
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < recs.size() && k < n; ++i)
    if (recs[i].ok) flags[i] = pts[k++].stable ? "1" : "0";
  return flags;
}

const std::vector<std::string> kSweepColumns{"param", "t23_max", "X_max", "X0", "stable_flag", "status"};

void sweep_rows(Csv& csv, const std::vector<cscrack_sweep_record>& recs, bool is_m,
                std::vector<Cell> (*prefix)(const cscrack_sweep_record&)) {
  const auto flags = stable_flags(recs, is_m);
  const double nan = std::nan("");
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    std::vector<Cell> row = prefix ? prefix(r) : std::vector<Cell>{r.param};
    if (r.ok)
      row.insert(row.end(), {r.result.t23_max, r.result.X_max, r.result.X0, flags[i], std::string("ok")});
    else
      row.insert(row.end(), {nan, nan, nan, std::string(), std::string(cscrack_status_string(r.status))});
    csv.row(row);
  }
}

int run_sweep(const Common& c, const SweepArgs& a) {
  const auto param = parse_param(a.param);
  const Config cfg = resolve(c);
  cscrack_normalized base;
  check(cscrack_normalize(&cfg.problem, &base), "validation");
  const auto g = grid(a.from, a.to, a.points, false);
  const auto recs = do_sweep(param, g, base, sweep_options(c, cfg));
  Output out(c);
  Csv csv(out.stream());
  csv.header(kSweepColumns);
  sweep_rows(csv, recs, param == CSCRACK_SWEEP_M, nullptr);
  write_plot_script(c, "param", {"t23_max", "X_max", "X0"}, "sweep over " + a.param);
  return 0;
}

struct StabilityArgs {
  std::optional<double> from, to;
  int points = 19;
};

int run_stability(const Common& c, const StabilityArgs& a) {
  const Config cfg = resolve(c);
  cscrack_normalized base;
  check(cscrack_normalize(&cfg.problem, &base), "validation");
  const double bound = cscrack_subsonic_bound(base.h0);
  const double from = a.from.value_or(0.01);
  const double to = a.to.value_or(0.95 * bound);
  if (a.points < 3) throw UsageError{"stability needs at least 3 points"};
  const auto g = grid(from, to, a.points, false);
  const auto recs = do_sweep(CSCRACK_SWEEP_M, g, base, sweep_options(c, cfg));
  Output out(c);
  Csv csv(out.stream());
  csv.header(kSweepColumns);
  sweep_rows(csv, recs, true, nullptr);
  write_plot_script(c, "param", {"t23_max"}, "stability");
  return 0;
}

// ---- presets ---------------------------------------------------------------

const std::vector<double> kEtaGrid{-0.9, 0.0, 0.9};
const std::vector<double> kSpeedGrid{0.01, 0.5, 0.99};
// The h0 values are not listed numerically; these straddle 1/sqrt(2) while
// keeping m = 0.8 subsonic (bound 1/(sqrt(2) h0) = 0.884 at h0 = 0.8).
const std::vector<double> kInertiaGrid{0.1, 0.5, 0.8};
// Speed sweeps: one small, one moderate, one past the non-dispersive point.
const std::vector<double> kSweepInertia{0.1, 0.5, 1.0};
const std::vector<double> kDispersionInertia{0.0, 0.3, 0.7071067811865476, 1.0, 2.0};

struct Preset {
  const char* id;
  const char* description;
};

const Preset kPresets[] = {
    {"fig01", "t23 ahead of the tip, eta x m grid, h0 = 0"},
    {"fig02", "sigma23 ahead of the tip, eta x m grid, h0 = 0"},
    {"fig03", "tau23 ahead of the tip, eta x m grid, h0 = 0"},
    {"fig04", "mu22 ahead of the tip, eta x m grid, h0 = 0"},
    {"fig05", "crack opening w behind the tip, eta x m grid, h0 = 0"},
    {"figtmax01", "t23_max, X_max, X0 versus eta for m in {0.01, 0.5, 0.99}, h0 = 0"},
    {"figj01", "t23 at m = 0.8, eta x h0 grid"},
    {"figj02", "sigma23 at m = 0.8, eta x h0 grid"},
    {"figj03", "tau23 at m = 0.8, eta x h0 grid"},
    {"figj04", "mu22 at m = 0.8, eta x h0 grid"},
    {"figj05", "crack opening w at m = 0.8, eta x h0 grid"},
    {"figjtmax01", "t23_max, X_max, X0 versus eta at m = 0.8 for the h0 grid"},
    {"figjtmax02_eta-09", "t23_max, X_max, X0 versus m at eta = -0.9 for h0 in {0.1, 0.5, 1}"},
    {"figjtmax02_eta0", "t23_max, X_max, X0 versus m at eta = 0 for h0 in {0.1, 0.5, 1}"},
    {"figjtmax02_eta09", "t23_max, X_max, X0 versus m at eta = 0.9 for h0 in {0.1, 0.5, 1}"},
    {"fig01new", "phase speed versus frequency for h0 in {0, 0.3, 1/sqrt(2), 1, 2}"},
};

struct PresetArgs {
  std::string id;
  bool list = false;
};

std::vector<Cell> setup_prefix(const cscrack_sweep_record& r) { return {r.setup.eta, r.setup.m, r.setup.h0}; }

void preset_fields(Csv& csv, const Config& cfg, double lambda, cscrack_field f, const std::vector<double>& etas,
                   const std::vector<double>& ms, const std::vector<double>& h0s) {
  FieldArgs fa;
  fa.x_min = 0.01;
  fa.x_max = 5.0;
  fa.points = 100;
  fa.log_x = true;
  const auto xs = field_grid(fa, f);
  csv.header({"eta", "m", "h0", "X_over_ell", "value", "imag_residual"});
  for (double h0 : h0s)
    for (double eta : etas)
      for (double m : ms) {
        const cscrack_normalized n{m, eta, h0, lambda};
        auto s = make_solution(n, cfg);
        field_rows(csv, s.get(), f, xs, {eta, m, h0});
      }
}

int run_preset(const Common& c, const PresetArgs& a) {
  if (a.list) {
    for (const auto& p : kPresets) std::cout << p.id << "\t" << p.description << "\n";
    return 0;
  }
  if (a.id.empty()) throw UsageError{"preset needs a figure id (see --list)"};
  const auto* it = std::find_if(std::begin(kPresets), std::end(kPresets),
                                [&](const Preset& p) { return a.id == p.id; });
  if (it == std::end(kPresets)) throw UsageError{"unknown-figure: '" + a.id + "' (see --list)"};

  const Config cfg = resolve(c);
  const double lambda = c.L_over_ell.value_or(1.0);
  if (!(lambda > 0.0)) throw UsageError{"--L-over-ell must be positive"};
  const auto opts = sweep_options(c, cfg);
  const std::string id = a.id;

  Output out(c);
  Csv csv(out.stream());
  const cscrack_field fig_fields[] = {CSCRACK_FIELD_T23, CSCRACK_FIELD_SIGMA23, CSCRACK_FIELD_TAU23,
                                      CSCRACK_FIELD_MU22, CSCRACK_FIELD_W};

  if (id.size() == 5 && id.rfind("fig0", 0) == 0) {
    preset_fields(csv, cfg, lambda, fig_fields[id[4] - '1'], kEtaGrid, kSpeedGrid, {0.0});
    write_plot_script(c, "X_over_ell", {"value"}, id);
  } else if (id.size() == 6 && id.rfind("figj0", 0) == 0) {
    preset_fields(csv, cfg, lambda, fig_fields[id[5] - '1'], kEtaGrid, {0.8}, kInertiaGrid);
    write_plot_script(c, "X_over_ell", {"value"}, id);
  } else if (id == "figtmax01" || id == "figjtmax01") {
    const bool inertia = id == "figjtmax01";
    const auto etas = grid(-0.9, 0.9, 19, false);
    std::vector<cscrack_normalized> bases;
    if (inertia)
      for (double h0 : kInertiaGrid) bases.push_back({0.8, 0.0, h0, lambda});
    else
      for (double m : kSpeedGrid) bases.push_back({m, 0.0, 0.0, lambda});
    std::vector<std::string> cols{"eta", "m", "h0"};
    cols.insert(cols.end(), kSweepColumns.begin() + 1, kSweepColumns.end());
    csv.header(cols);
    for (const auto& b : bases) sweep_rows(csv, do_sweep(CSCRACK_SWEEP_ETA, etas, b, opts), false, setup_prefix);
    write_plot_script(c, "eta", {"t23_max", "X_max", "X0"}, id);
  } else if (id.rfind("figjtmax02_", 0) == 0) {
    const double eta = id == "figjtmax02_eta-09" ? -0.9 : id == "figjtmax02_eta0" ? 0.0 : 0.9;
    std::vector<std::string> cols{"eta", "m", "h0"};
    cols.insert(cols.end(), kSweepColumns.begin() + 1, kSweepColumns.end());
    csv.header(cols);
    for (double h0 : kSweepInertia) {
      const double bound = cscrack_subsonic_bound(h0);
      const auto ms = grid(0.01, 0.98 * bound, 25, false);
      const cscrack_normalized b{0.0, eta, h0, lambda};
      sweep_rows(csv, do_sweep(CSCRACK_SWEEP_M, ms, b, opts), true, setup_prefix);
    }
    write_plot_script(c, "m", {"t23_max", "X_max", "X0"}, id);
  } else {  // fig01new
    csv.header({"h0", "omega", "c_tilde"});
    for (double h0 : kDispersionInertia) dispersion_rows(csv, h0, DispersionArgs{}, true);
    write_plot_script(c, "omega", {"c_tilde"}, id);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady Mode III crack propagation in couple-stress media"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cscrack_version());

  Common common;

  DispersionArgs da;
  auto* disp = app.add_subcommand("dispersion", "phase speed versus frequency (CSV: omega, c_tilde)");
  add_common(disp, common);
  disp->add_option("--omega-max", da.omega_max, "largest normalized frequency omega ell / c_s");
  disp->add_option("--points", da.points, "number of frequencies on [0, omega-max]");

  FieldArgs fa;
  auto* fields = app.add_subcommand(
      "fields", "crack-line field (CSV: X_over_ell, value, imag_residual). X below 1e-3 is slow and less accurate");
  add_common(fields, common);
  fields->add_option("--what", fa.what, "field")
      ->check(CLI::IsMember({"t23", "sigma23", "tau23", "mu22", "w", "p3"}));
  fields->add_option("--x-min", fa.x_min, "start of the X/ell range (w: mirrored to X < 0)");
  fields->add_option("--x-max", fa.x_max, "end of the X/ell range");
  fields->add_option("--points", fa.points, "number of samples");
  fields->add_flag("--log-x", fa.log_x, "log-spaced samples");

  ProfileArgs pa;
  auto* profile = app.add_subcommand(
      "profile", "displacement w(X, y) along a line y = const (CSV: X_over_ell, y_over_ell, value, imag_residual)");
  add_common(profile, common);
  profile->add_option("--x-min", pa.x_min, "start of the X/ell range");
  profile->add_option("--x-max", pa.x_max, "end of the X/ell range");
  profile->add_option("--y", pa.y, "height y/ell >= 0");
  profile->add_option("--points", pa.points, "number of samples");

  SweepArgs sa;
  auto* sweep = app.add_subcommand(
      "sweep", "t23_max, X_max, X0 over one parameter (CSV: param, t23_max, X_max, X0, stable_flag, status)");
  add_common(sweep, common);
  sweep->add_option("--param", sa.param, "swept parameter")->check(CLI::IsMember({"m", "eta", "h0"}));
  sweep->add_option("--from", sa.from, "first grid value")->required();
  sweep->add_option("--to", sa.to, "last grid value")->required();
  sweep->add_option("--points", sa.points, "grid size");

  StabilityArgs sta;
  auto* stab = app.add_subcommand("stability", "speed sweep with stability flags (same CSV as sweep)");
  add_common(stab, common);
  stab->add_option("--from", sta.from, "smallest m (default 0.01)");
  stab->add_option("--to", sta.to, "largest m (default 0.95 x subsonic bound)");
  stab->add_option("--points", sta.points, "grid size");

  PresetArgs pra;
  auto* preset = app.add_subcommand("preset", "reproduce a figure's parameter set");
  add_common(preset, common, false);
  preset->add_option("--L-over-ell", common.L_over_ell, "load decay length / ell (default 1)");
  preset->add_option("id", pra.id, "figure id");
  preset->add_flag("--list", pra.list, "list the known figure ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*disp) return run_dispersion(common, da);
    if (*fields) return run_fields(common, fa);
    if (*profile) return run_profile(common, pa);
    if (*sweep) return run_sweep(common, sa);
    if (*stab) return run_stability(common, sta);
    if (*preset) return run_preset(common, pra);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.msg << "\n";
    return 2;
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage << "] " << cscrack_status_string(e.status) << ": " << e.msg << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
