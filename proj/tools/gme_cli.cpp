// Command-line front end: point evaluation, surface and slice export,
// ordering comparisons, and a self-check battery.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gme/gme.hpp"

namespace {

using gme::SurfaceGrid;

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw gme::IoError("cannot open '" + path + "' for writing");
  return os;
}

std::vector<double> linspace(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = static_cast<double>(i) / (n - 1);
  return v;
}

void write_surface_plot_script(const std::string& csv_path, const std::string& kind) {
  std::ofstream os = open_output(csv_path + ".gp");
  os << "set datafile separator ','\n";
  os << "set datafile missing 'NA'\n";
  os << "set xlabel 'x'\n";
  os << "set ylabel '" << (kind == "e-psi-xr" ? "r" : "y") << "'\n";
  os << "set zlabel '" << (kind == "negativity" ? "N" : "E") << "'\n";
  os << "set dgrid3d\n";
  os << "splot '" << csv_path << "' using 1:2:3 with lines notitle\n";
  if (!os) throw gme::IoError("failed writing plot script");
}

void write_curves_plot_script(const std::string& csv_path, const std::string& xlabel,
                              std::size_t n_curves) {
  std::ofstream os = open_output(csv_path + ".gp");
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set xlabel '" << xlabel << "'\n";
  os << "set ylabel 'E'\n";
  os << "plot";
  for (std::size_t c = 0; c < n_curves; ++c)
    os << (c ? ", " : " ") << "'" << csv_path << "' using 1:" << (c + 2)
       << " with lines";
  os << "\n";
  if (!os) throw gme::IoError("failed writing plot script");
}

SurfaceGrid e_psi_xy_surface(int nx, int ny) {
  SurfaceGrid g(SurfaceGrid::Param::XYSimplex, nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double x = g.x_at(i), y = g.y_at(j);
      if (gme::in_simplex(x, y)) g.at(i, j) = gme::e_psi(x, std::min(y, 1.0 - x));
    }
  return g;
}

int run_eval(double x, double y, int resolution) {
  gme::require_simplex(x, y);
  const gme::CubicSolution cubic = gme::cubic_roots_nonneg(x, y);
  const double lambda = cubic.lambda_at_chosen;
  const double epsi = std::max(0.0, 1.0 - lambda * lambda);
  const SurfaceGrid mixed = gme::mixed_gme_surface(resolution, resolution);
  const double erho = gme::bilinear_value(mixed, x, y);
  const double neg = gme::negativity_of(
      gme::family_density_matrix(gme::FamilyPoint(gme::clamp01(x), gme::clamp01(y))));

  std::cout << "x                = " << gme::format_value(x) << "\n";
  std::cout << "y                = " << gme::format_value(y) << "\n";
  std::cout << "t (chosen root)  = " << gme::format_value(cubic.chosen_t) << "\n";
  std::cout << "Lambda(x,y)      = " << gme::format_value(lambda) << "\n";
  std::cout << "E_psi(x,y)       = " << gme::format_value(epsi) << "\n";
  std::cout << "E_rho(x,y)       = " << gme::format_value(erho) << " ("
            << resolution << "x" << resolution << " surface)\n";
  std::cout << "N(rho(x,y))      = " << gme::format_value(neg) << "\n";
  return 0;
}

int run_surface(const std::string& kind, int nx, int ny, const std::string& out,
                bool plot_script) {
  SurfaceGrid g;
  if (kind == "e-psi-xy")
    g = e_psi_xy_surface(nx, ny);
  else if (kind == "e-psi-xr")
    g = gme::sample_e_psi_xr(nx, ny);
  else if (kind == "e-rho")
    g = gme::mixed_gme_surface(nx, ny);
  else if (kind == "negativity")
    g = gme::negativity_surface(nx, ny);
  else
    throw std::domain_error("unknown surface kind '" + kind + "'");

  std::ofstream os = open_output(out);
  gme::write_surface_csv(os, g);
  if (plot_script) write_surface_plot_script(out, kind);
  return 0;
}

int run_slice(const std::string& kind, int resolution, std::vector<double> params,
              const std::string& out, bool plot_script) {
  if (resolution < 3) throw std::domain_error("slice resolution must be at least 3");
  const std::vector<double> grid = linspace(resolution);
  std::string xlabel;
  std::vector<std::string> names;
  std::vector<std::vector<double>> curves;

  if (kind == "fig2") {
    xlabel = "y";
    names = {"E_psi"};
    curves.emplace_back();
    for (double y : grid) curves[0].push_back(gme::e_psi(0.0, y));
  } else if (kind == "fig3") {
    xlabel = "x";
    names = {"E_psi"};
    curves.emplace_back();
    for (double x : grid) curves[0].push_back(gme::e_psi(x, 1.0 - x));
  } else if (kind == "fig5") {
    xlabel = "r";
    if (params.empty()) params = {0.8, 0.85, 0.9, 0.92, 0.94, 0.96, 0.98, 1.0};
    for (double x : params) {
      if (x < 0.0 || x > 1.0) throw std::domain_error("fig5 x values must be in [0,1]");
      names.push_back("x=" + gme::format_value(x));
      std::vector<double> col;
      for (double r : grid) col.push_back(gme::e_psi(x, (1.0 - x) * r));
      curves.push_back(std::move(col));
    }
  } else if (kind == "fig6") {
    xlabel = "x";
    if (params.empty()) params = {0.0, 0.1, 0.2, 0.3, 0.5};
    for (double r : params) {
      if (r < 0.0 || r > 1.0) throw std::domain_error("fig6 r values must be in [0,1]");
      names.push_back("r=" + gme::format_value(r));
      std::vector<double> col;
      for (double x : grid) col.push_back(gme::e_psi(x, (1.0 - x) * r));
      curves.push_back(std::move(col));
    }
  } else if (kind == "fig8") {
    xlabel = "x";
    names = {"E_rho"};
    const SurfaceGrid mixed = gme::mixed_gme_surface(resolution, resolution);
    curves.emplace_back();
    for (double x : grid)
      curves[0].push_back(gme::bilinear_value(mixed, x, (1.0 - x) / 2.0));
  } else {
    throw std::domain_error("unknown slice kind '" + kind + "'");
  }

  std::ofstream os = open_output(out);
  gme::write_curves_csv(os, xlabel, grid, names, curves);
  if (plot_script) write_curves_plot_script(out, xlabel, curves.size());
  return 0;
}

int run_ordering(int resolution, int max_report, const std::string& out,
                 std::uint64_t seed) {
  if (resolution < 11) throw std::domain_error("ordering resolution must be at least 11");
  const SurfaceGrid gme_s = gme::mixed_gme_surface(resolution, resolution);
  const SurfaceGrid neg_s = gme::negativity_surface(resolution, resolution);
  std::vector<gme::OrderingPair> pairs =
      gme::ordering_search(gme_s, neg_s, 2000000, seed);
  if (static_cast<int>(pairs.size()) > max_report) pairs.resize(max_report);

  std::ostringstream body;
  body << "x1,y1,x2,y2,N1,N2,E1,E2\n";
  for (const gme::OrderingPair& p : pairs)
    body << gme::format_value(p.x1) << ',' << gme::format_value(p.y1) << ','
         << gme::format_value(p.x2) << ',' << gme::format_value(p.y2) << ','
         << gme::format_value(p.n1) << ',' << gme::format_value(p.n2) << ','
         << gme::format_value(p.e1) << ',' << gme::format_value(p.e2) << "\n";
  if (out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream os = open_output(out);
    os << body.str();
    if (!os) throw gme::IoError("failed writing ordering CSV");
  }
  return 0;
}

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

int run_verify(std::uint64_t seed, bool corrupt_surface) {
  std::vector<CheckOutcome> checks;
  char buf[160];

  {
    const double eg = gme::solve_gme(gme::make_ghz()).e_sin2;
    const double ew = gme::solve_gme(gme::make_w()).e_sin2;
    const double et = gme::solve_gme(gme::make_w_tilde()).e_sin2;
    const double fg = gme::e_psi(1.0, 0.0);
    const double fw = gme::e_psi(0.0, 1.0);
    const double ft = gme::e_psi(0.0, 0.0);
    const bool ok = std::abs(eg - 0.5) < 1e-9 && std::abs(fg - 0.5) < 1e-9 &&
                    std::abs(ew - 5.0 / 9) < 1e-9 && std::abs(fw - 5.0 / 9) < 1e-9 &&
                    std::abs(et - 5.0 / 9) < 1e-9 && std::abs(ft - 5.0 / 9) < 1e-9;
    std::snprintf(buf, sizeof(buf), "solver %.10f/%.10f/%.10f formula %.10f/%.10f/%.10f",
                  eg, ew, et, fg, fw, ft);
    checks.push_back({"pure corner values", ok, buf});
  }
  {
    const double ng = gme::negativity_of(gme::DensityMatrix::from_pure(gme::make_ghz()));
    const double nw = gme::negativity_of(gme::DensityMatrix::from_pure(gme::make_w()));
    const bool ok = std::abs(ng - 1.0) < 1e-10 &&
                    std::abs(nw - 2.0 * std::sqrt(2.0) / 3.0) < 1e-10;
    std::snprintf(buf, sizeof(buf), "N = %.12f / %.12f", ng, nw);
    checks.push_back({"negativity corner values", ok, buf});
  }
  {
    const int n = 24;
    gme::SolverConfig cfg;
    cfg.seed = seed;
    double worst = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        const double x = double(i) / n, y = double(j) / n;
        const double solver =
            gme::solve_gme(gme::family_pure_state(gme::FamilyPoint(x, y)), cfg).e_sin2;
        worst = std::max(worst, std::abs(solver - gme::e_psi(x, y)));
      }
    std::snprintf(buf, sizeof(buf), "max |formula - solver| = %.3e on 25x25", worst);
    checks.push_back({"closed form vs variational solver", worst <= 1e-7, buf});
  }
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int n = 24;
    double worst = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        const gme::FamilyPoint p(double(i) / n, double(j) / n);
        const gme::DensityMatrix rho = gme::family_density_matrix(p);
        worst = std::max(worst,
                         gme::max_abs_difference(gme::twirl(rho).matrix, rho.matrix));
      }
    for (int trial = 0; trial < 20; ++trial) {
      double x = uni(rng), y = uni(rng);
      if (x + y > 1.0) {
        x = 1.0 - x;
        y = 1.0 - y;
      }
      const std::array<double, 3> phases = {2 * M_PI * uni(rng), 2 * M_PI * uni(rng),
                                            2 * M_PI * uni(rng)};
      const gme::DensityMatrix proj = gme::DensityMatrix::from_pure(
          gme::family_pure_state(gme::FamilyPoint(x, y, phases)));
      const gme::DensityMatrix rho = gme::family_density_matrix(gme::FamilyPoint(x, y));
      worst = std::max(worst,
                       gme::max_abs_difference(gme::twirl(proj).matrix, rho.matrix));
    }
    std::snprintf(buf, sizeof(buf), "max entrywise drift = %.3e", worst);
    checks.push_back({"twirl invariance and phased preimages", worst <= 1e-12, buf});
  }
  SurfaceGrid mixed = gme::mixed_gme_surface(201, 201);
  if (corrupt_surface) {
    // test hook: plant a bump in the corner region so the convexity
    // check must fail
    mixed.at(190, 4) += 0.05;
  }
  {
    const gme::HullReport rep = gme::verify_convexity(mixed, 100000, seed);
    std::snprintf(buf, sizeof(buf), "max violation = %.3e over %ld segments",
                  rep.max_violation, rep.n_segments_tested);
    checks.push_back({"mixed surface convexity (201x201)", rep.max_violation <= 5e-3, buf});
  }
  {
    const SurfaceGrid oracle = gme::hull_oracle(101, 101);
    const SurfaceGrid surgical = gme::mixed_gme_surface(101, 101);
    double worst = 0.0;
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j)
        if (oracle.valid(i, j))
          worst = std::max(worst, std::abs(oracle.at(i, j) - surgical.at(i, j)));
    std::snprintf(buf, sizeof(buf), "max |surgical - hull| = %.3e at 101x101", worst);
    checks.push_back({"lower convex hull cross-check", worst <= 5e-3, buf});
  }
  {
    const double n0 =
        gme::negativity_of(gme::family_density_matrix(gme::FamilyPoint(0.25, 0.375)));
    const double e0 = mixed.at(50, 75);
    double min_far_e = 1e9, min_far_n = 1e9;
    const SurfaceGrid neg = gme::negativity_surface(101, 101);
    for (int i = 0; i < 101; ++i)
      for (int j = 0; j < 101; ++j) {
        if (!neg.valid(i, j)) continue;
        const double dx = neg.x_at(i) - 0.25, dy = neg.y_at(j) - 0.375;
        if (std::sqrt(dx * dx + dy * dy) > 0.05)
          min_far_n = std::min(min_far_n, neg.at(i, j));
      }
    for (int i = 0; i < 201; ++i)
      for (int j = 0; j < 201; ++j) {
        if (!mixed.valid(i, j)) continue;
        const double dx = mixed.x_at(i) - 0.25, dy = mixed.y_at(j) - 0.375;
        if (std::sqrt(dx * dx + dy * dy) > 0.05)
          min_far_e = std::min(min_far_e, mixed.at(i, j));
      }
    const bool ok = n0 <= 1e-10 && e0 <= 2e-3 && min_far_e > 1e-3 && min_far_n > 1e-6;
    std::snprintf(buf, sizeof(buf),
                  "N = %.2e, E_rho = %.2e at (1/4, 3/8); elsewhere E >= %.2e, N >= %.2e",
                  n0, e0, min_far_e, min_far_n);
    checks.push_back({"separable point is the unique zero", ok, buf});
  }

  bool all = true;
  for (const CheckOutcome& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " — " << c.detail
              << "\n";
    all = all && c.pass;
  }
  std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric measure of entanglement for three-qubit mixtures"};
  app.require_subcommand(1);

  double eval_x = 0.0, eval_y = 0.0;
  int eval_resolution = 201;
  CLI::App* eval = app.add_subcommand("eval", "evaluate all measures at one point");
  eval->add_option("x", eval_x, "GHZ weight")->required();
  eval->add_option("y", eval_y, "W weight")->required();
  eval->add_option("--resolution", eval_resolution, "mixed-surface resolution")
      ->default_val(201);

  std::string surface_kind, surface_out;
  int surface_nx = 201, surface_ny = 201;
  bool surface_plot = false;
  CLI::App* surface = app.add_subcommand("surface", "export a surface as CSV");
  surface->add_option("kind", surface_kind, "e-psi-xy | e-psi-xr | e-rho | negativity")
      ->required();
  surface->add_option("--nx", surface_nx, "x resolution")->default_val(201);
  surface->add_option("--ny", surface_ny, "y (or r) resolution")->default_val(201);
  surface->add_option("--out", surface_out, "output CSV path")->required();
  surface->add_flag("--plot-script", surface_plot, "also write a gnuplot script");

  std::string slice_kind, slice_out;
  int slice_resolution = 201;
  std::vector<double> slice_params;
  bool slice_plot = false;
  CLI::App* slice = app.add_subcommand("slice", "export a named 1D slice as CSV");
  slice->add_option("kind", slice_kind, "fig2 | fig3 | fig5 | fig6 | fig8")->required();
  slice->add_option("--resolution", slice_resolution, "points per curve")
      ->default_val(201);
  slice->add_option("--params", slice_params,
                    "curve parameters (x values for fig5, r values for fig6)")
      ->delimiter(',');
  slice->add_option("--out", slice_out, "output CSV path")->required();
  slice->add_flag("--plot-script", slice_plot, "also write a gnuplot script");

  std::uint64_t verify_seed = 12345;
  bool verify_corrupt = false;
  CLI::App* verify = app.add_subcommand("verify", "run the self-check battery");
  verify->add_option("--seed", verify_seed, "seed for randomized checks")
      ->default_val(12345);
  verify->add_flag("--corrupt-surface", verify_corrupt,
                   "test hook: perturb the surface so convexity must fail");

  int ordering_resolution = 101, ordering_max_report = 10000;
  std::string ordering_out;
  std::uint64_t ordering_seed = 1;
  CLI::App* ordering =
      app.add_subcommand("ordering", "list pairs on which the measures disagree");
  ordering->add_option("--resolution", ordering_resolution, "grid resolution")
      ->default_val(101);
  ordering->add_option("--max-report", ordering_max_report, "maximum pairs to list")
      ->default_val(10000);
  ordering->add_option("--out", ordering_out, "output CSV path (stdout if absent)");
  ordering->add_option("--seed", ordering_seed, "seed for sampled pair scans")
      ->default_val(1);

  try {
    app.parse(argc, argv);
    if (eval->parsed()) return run_eval(eval_x, eval_y, eval_resolution);
    if (surface->parsed())
      return run_surface(surface_kind, surface_nx, surface_ny, surface_out,
                         surface_plot);
    if (slice->parsed())
      return run_slice(slice_kind, slice_resolution, slice_params, slice_out,
                       slice_plot);
    if (verify->parsed()) return run_verify(verify_seed, verify_corrupt);
    if (ordering->parsed())
      return run_ordering(ordering_resolution, ordering_max_report, ordering_out,
                          ordering_seed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const gme::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
