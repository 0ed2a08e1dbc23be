#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gme/gme.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "gme_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + GME_CLI_PATH + "\" " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

double field_after(const std::string& text, const std::string& label) {
  const std::size_t pos = text.find(label);
  REQUIRE(pos != std::string::npos);
  const std::size_t eq = text.find('=', pos);
  REQUIRE(eq != std::string::npos);
  return std::stod(text.substr(eq + 1));
}

}  // namespace

TEST_CASE("eval prints the corner values") {
  const RunResult r = run_cli("eval 1 0");
  CHECK(r.exit_code == 0);
  CHECK(std::abs(field_after(r.out, "Lambda(x,y)") - 0.7071067811865476) < 1e-9);
  CHECK(std::abs(field_after(r.out, "E_psi(x,y)") - 0.5) < 1e-9);
  CHECK(std::abs(field_after(r.out, "N(rho(x,y))") - 1.0) < 1e-9);
}

TEST_CASE("eval reports the separable point as unentangled") {
  const RunResult r = run_cli("eval 0.25 0.375");
  CHECK(r.exit_code == 0);
  CHECK(std::abs(field_after(r.out, "N(rho(x,y))")) <= 1e-10);
  CHECK(std::abs(field_after(r.out, "E_rho(x,y)")) <= 2e-3);
}

TEST_CASE("eval rejects out-of-simplex points with exit code 2") {
  const RunResult r = run_cli("eval 0.7 0.4");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("x + y exceeds 1") != std::string::npos);
}

TEST_CASE("surface export round-trips and honors corner values") {
  const fs::path csv = scratch_dir() / "epsi.csv";
  const RunResult r =
      run_cli("surface e-psi-xy --nx 41 --ny 41 --out " + csv.string());
  REQUIRE(r.exit_code == 0);

  std::ifstream is(csv);
  const gme::SurfaceGrid g = gme::read_surface_csv(is);
  CHECK(g.nx == 41);
  CHECK(g.ny == 41);
  CHECK(std::abs(g.at(40, 0) - 0.5) < 1e-11);
  CHECK(!g.valid(40, 40));  // out-of-simplex sentinel

  // Round trip: rewriting the parsed grid reproduces the file byte for byte.
  std::ostringstream rewritten;
  gme::write_surface_csv(rewritten, g);
  CHECK(rewritten.str() == slurp(csv));

  // Row count: header plus nx * ny data rows.
  std::istringstream count_lines(slurp(csv));
  std::string line;
  int rows = 0;
  while (std::getline(count_lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1 + 41 * 41);
}

TEST_CASE("negativity surface carries the w corner value") {
  const fs::path csv = scratch_dir() / "neg.csv";
  const RunResult r =
      run_cli("surface negativity --nx 21 --ny 21 --out " + csv.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream is(csv);
  const gme::SurfaceGrid g = gme::read_surface_csv(is);
  CHECK(std::abs(g.at(0, 20) - 0.942809041582063) < 1e-11);
}

TEST_CASE("xr surface is symmetric about the r midline") {
  const fs::path csv = scratch_dir() / "xr.csv";
  const RunResult r =
      run_cli("surface e-psi-xr --nx 11 --ny 11 --out " + csv.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream is(csv);
  const gme::SurfaceGrid g = gme::read_surface_csv(is);
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j)
      CHECK(std::abs(g.at(i, j) - g.at(i, 10 - j)) < 1e-10);
}

TEST_CASE("surface export fails with exit code 3 on an unwritable path") {
  const RunResult r =
      run_cli("surface e-psi-xy --nx 11 --ny 11 --out /nonexistent/dir/a.csv");
  CHECK(r.exit_code == 3);
}

TEST_CASE("eval and surface agree at shared grid points") {
  const fs::path csv = scratch_dir() / "epsi_fine.csv";
  REQUIRE(run_cli("surface e-psi-xy --nx 21 --ny 21 --out " + csv.string())
              .exit_code == 0);
  std::ifstream is(csv);
  const gme::SurfaceGrid g = gme::read_surface_csv(is);

  const RunResult r = run_cli("eval 0.4 0.2");
  REQUIRE(r.exit_code == 0);
  const double from_eval = field_after(r.out, "E_psi(x,y)");
  CHECK(std::abs(from_eval - g.at(8, 4)) < 1e-12);

  const fs::path neg = scratch_dir() / "neg_fine.csv";
  REQUIRE(run_cli("surface negativity --nx 21 --ny 21 --out " + neg.string())
              .exit_code == 0);
  std::ifstream isn(neg);
  const gme::SurfaceGrid gn = gme::read_surface_csv(isn);
  CHECK(std::abs(field_after(r.out, "N(rho(x,y))") - gn.at(8, 4)) < 1e-12);
}

TEST_CASE("slice endpoints match the known corner values") {
  const fs::path f2 = scratch_dir() / "fig2.csv";
  REQUIRE(run_cli("slice fig2 --resolution 101 --out " + f2.string()).exit_code == 0);
  std::ifstream is2(f2);
  std::string header;
  std::getline(is2, header);
  CHECK(header == "y,E_psi");
  std::vector<double> first, last;
  std::string line;
  double endpoint0 = -1, endpoint1 = -1;
  while (std::getline(is2, line)) {
    const auto comma = line.find(',');
    const double v = std::stod(line.substr(comma + 1));
    if (endpoint0 < 0) endpoint0 = v;
    endpoint1 = v;
  }
  CHECK(std::abs(endpoint0 - 5.0 / 9.0) < 1e-9);
  CHECK(std::abs(endpoint1 - 5.0 / 9.0) < 1e-9);

  const fs::path f3 = scratch_dir() / "fig3.csv";
  REQUIRE(run_cli("slice fig3 --resolution 101 --out " + f3.string()).exit_code == 0);
  std::ifstream is3(f3);
  std::getline(is3, header);
  double x0val = -1, x1val = -1;
  while (std::getline(is3, line)) {
    const auto comma = line.find(',');
    const double v = std::stod(line.substr(comma + 1));
    if (x0val < 0) x0val = v;
    x1val = v;
  }
  CHECK(std::abs(x0val - 5.0 / 9.0) < 1e-9);
  CHECK(std::abs(x1val - 0.5) < 1e-9);
}

TEST_CASE("fig8 slice dips to zero at x = 1/4") {
  const fs::path f8 = scratch_dir() / "fig8.csv";
  REQUIRE(run_cli("slice fig8 --resolution 201 --out " + f8.string()).exit_code == 0);
  std::ifstream is(f8);
  std::string line;
  std::getline(is, line);  // header
  double min_v = 1e9, min_x = -1;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    if (v < min_v) {
      min_v = v;
      min_x = x;
    }
  }
  CHECK(min_v <= 2e-3);
  CHECK(std::abs(min_x - 0.25) < 5e-3);
}

TEST_CASE("fig5 and fig6 use the documented default parameter sets") {
  const fs::path f5 = scratch_dir() / "fig5.csv";
  REQUIRE(run_cli("slice fig5 --resolution 41 --out " + f5.string()).exit_code == 0);
  std::ifstream is(f5);
  std::string header;
  std::getline(is, header);
  CHECK(header == "r,x=0.8,x=0.85,x=0.9,x=0.92,x=0.94,x=0.96,x=0.98,x=1");

  const fs::path f6 = scratch_dir() / "fig6.csv";
  REQUIRE(run_cli("slice fig6 --resolution 41 --out " + f6.string()).exit_code == 0);
  std::ifstream is6(f6);
  std::getline(is6, header);
  CHECK(header == "x,r=0,r=0.1,r=0.2,r=0.3,r=0.5");
}

TEST_CASE("unknown slice kinds exit with code 2") {
  CHECK(run_cli("slice fig99 --out " + (scratch_dir() / "x.csv").string()).exit_code ==
        2);
}

TEST_CASE("plot script emission is opt-in and references the data file") {
  const fs::path csv = scratch_dir() / "rho.csv";
  REQUIRE(run_cli("surface e-rho --nx 21 --ny 21 --plot-script --out " + csv.string())
              .exit_code == 0);
  const std::string script = slurp(csv.string() + ".gp");
  CHECK(script.find(csv.string()) != std::string::npos);
  CHECK(script.find("splot") != std::string::npos);
}

TEST_CASE("ordering output lists the pure reversal and self-consistent rows") {
  const fs::path csv = scratch_dir() / "ordering.csv";
  const RunResult r =
      run_cli("ordering --resolution 21 --out " + csv.string());
  REQUIRE(r.exit_code == 0);

  std::ifstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "x1,y1,x2,y2,N1,N2,E1,E2");
  bool corner = false;
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    std::array<double, 8> f{};
    std::stringstream ss(line);
    std::string tok;
    for (double& v : f) {
      std::getline(ss, tok, ',');
      v = std::stod(tok);
    }
    const bool fwd = f[0] == 1.0 && f[1] == 0.0 && f[2] == 0.0 && f[3] == 1.0;
    const bool rev = f[2] == 1.0 && f[3] == 0.0 && f[0] == 0.0 && f[1] == 1.0;
    if (fwd || rev) corner = true;
    const bool dis = (f[4] - f[5] > 1e-6 && f[7] - f[6] > 1e-6) ||
                     (f[5] - f[4] > 1e-6 && f[6] - f[7] > 1e-6);
    CHECK(dis);
  }
  CHECK(rows >= 1);
  CHECK(corner);
}

TEST_CASE("csv reader rejects malformed input") {
  {
    std::istringstream is("a,b,c\n0,0,1\n");
    CHECK_THROWS_AS(gme::read_surface_csv(is), gme::IoError);
  }
  {
    std::istringstream is("x,y,value\n0,0\n");
    CHECK_THROWS_AS(gme::read_surface_csv(is), gme::IoError);
  }
  {
    std::istringstream is("x,y,value\n0,0,not-a-number\n");
    CHECK_THROWS_AS(gme::read_surface_csv(is), gme::IoError);
  }
  {
    std::istringstream is("x,y,value\n");
    CHECK_THROWS_AS(gme::read_surface_csv(is), gme::IoError);
  }
  CHECK(gme::format_value(std::numeric_limits<double>::quiet_NaN()) == "NA");
  CHECK(std::isnan(gme::parse_value("NA")));
}

TEST_CASE("verify passes, is deterministic, and fails on a corrupted surface") {
  const RunResult a = run_cli("verify --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("[FAIL]") == std::string::npos);
  CHECK(a.out.find("[PASS]") != std::string::npos);

  const RunResult b = run_cli("verify --seed 7");
  CHECK(b.out == a.out);

  const RunResult c = run_cli("verify --seed 7 --corrupt-surface");
  CHECK(c.exit_code == 1);
  CHECK(c.out.find("[FAIL] mixed surface convexity") != std::string::npos);
}
