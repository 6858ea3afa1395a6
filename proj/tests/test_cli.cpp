#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`; stderr is discarded unless `merge` is set.
Run run(const std::string& args, bool merge = false) {
  const std::string cmd = std::string(CS_CRACK_EXE) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string kTmp = CS_CRACK_TMP;

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("nosuchcommand").code == 2);
  CHECK(run("fields --what bogus").code == 2);
  CHECK(run("fields --points 0").code == 2);
  CHECK(run("sweep --param m").code == 2);  // --from/--to required
}

TEST_CASE("dispersion CSV") {
  const auto r = run("dispersion --h0 0.7071067811865476 --points 5 --omega-max 4");
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "omega,c_tilde");
  CHECK(lines(r.out) == 6);
  CHECK(r.out.find("\n2,1\n") != std::string::npos);
}

TEST_CASE("field CSV") {
  const auto r = run("fields --what t23 --m 0.5 --points 4 --x-min 0.5 --x-max 2");
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "X_over_ell,value,imag_residual");
  CHECK(lines(r.out) == 5);
  const auto w = run("fields --what w --m 0.5 --points 3 --x-min 0.5 --x-max 1");
  REQUIRE(w.code == 0);
  CHECK(w.out.find("\n-0.5,") != std::string::npos);
  const auto p = run("profile --m 0.5 --points 3 --y 0.5");
  REQUIRE(p.code == 0);
  CHECK(first_line(p.out) == "X_over_ell,y_over_ell,value,imag_residual");
}

TEST_CASE("inadmissible input exits with 1 and names the stage") {
  const auto r = run("fields --m 0.9 --h0 1", true);
  CHECK(r.code == 1);
  CHECK(r.out.find("[validation]") != std::string::npos);
  CHECK(r.out.find("subsonic") != std::string::npos);
  const auto d = run("fields --what w --m 0.5 --x-min 0 --x-max 1 --points 2", true);
  CHECK(d.code != 0);
}

TEST_CASE("sweeps flag failed points and keep going") {
  const auto r = run("sweep --param m --from 0.3 --to 1.1 --points 3", true);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("param,t23_max,X_max,X0,stable_flag,status") != std::string::npos);
  CHECK(r.out.find("1.1,nan,nan,nan,,inadmissible") != std::string::npos);
  CHECK(r.out.find("warning") != std::string::npos);
}

TEST_CASE("stability flags") {
  const auto r = run("stability --eta 0 --h0 0 --from 0.1 --to 0.9 --points 5");
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 6);
  // t23_max falls with m here, so every point is stable.
  CHECK(r.out.find(",0,ok") == std::string::npos);
  CHECK(r.out.find(",1,ok") != std::string::npos);
}

TEST_CASE("presets") {
  const auto l = run("preset --list");
  REQUIRE(l.code == 0);
  for (const char* id : {"fig01", "fig05", "figj01", "figtmax01", "figjtmax01", "figjtmax02_eta09", "fig01new"})
    CHECK(l.out.find(id) != std::string::npos);
  const auto bad = run("preset fig99", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("unknown-figure") != std::string::npos);
  const auto d = run("preset fig01new");
  REQUIRE(d.code == 0);
  CHECK(first_line(d.out).find("h0") != std::string::npos);
}

TEST_CASE("config file and byte-identical output") {
  const std::string cfg = kTmp + "/cli_test.ini";
  {
    std::ofstream f(cfg);
    f << "[material]\neta = 0.5\nh0 = 0.3\n\n[problem]\nm = 0.9\nL_over_ell = 2\n\n[quad]\nrel_tol = 1e-6\n";
  }
  const std::string args = "sweep --config " + cfg + " --param eta --from -0.5 --to 0.5 --points 3";
  const auto a = run(args);
  const auto b = run(args + " --jobs 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  // Command-line options override the file.
  const auto c = run("fields --config " + cfg + " --m 0.5 --points 2");
  const auto d = run("fields --eta 0.5 --h0 0.3 --L-over-ell 2 --m 0.5 --points 2");
  CHECK(c.out == d.out);
  CHECK(run("fields --config " + kTmp + "/missing.ini").code == 2);
}

TEST_CASE("output file and plot script") {
  const std::string csv = kTmp + "/cli_test.csv", gp = kTmp + "/cli_test.gp";
  std::remove(csv.c_str());
  std::remove(gp.c_str());
  const auto r = run("fields --what mu22 --m 0.5 --points 3 -o " + csv + " --plot-script " + gp);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(first_line(slurp(csv)) == "X_over_ell,value,imag_residual");
  CHECK(slurp(gp).find(csv) != std::string::npos);
  CHECK(run("fields --points 3 --plot-script " + gp).code == 2);
}
