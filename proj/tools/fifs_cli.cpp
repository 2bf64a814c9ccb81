// fifs command line: attractors, distances, diagnostics, experiments.
// Talks to the library exclusively through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fifs/fifs.h"

namespace {

int exit_code(int status) {
  switch (status) {
    case FIFS_OK:
      return 0;
    case FIFS_EDOMAIN:
    case FIFS_ENOCONV:
    case FIFS_EBUDGET:
      return 1;
    default:
      return 2;
  }
}

int report_failure(int status) {
  std::fprintf(stderr, "error: %s\n", fifs_last_error());
  return exit_code(status);
}

void print_and_free(char* text) {
  if (text == nullptr) return;
  std::fputs(text, stdout);
  fifs_string_free(text);
}

// Loads a system config, applying --grid / --levels overrides when given.
int load_system(const std::string& path, int grid, int levels,
                fifs_system** out) {
  fifs_system* sys = nullptr;
  int rc = fifs_system_load(path.c_str(), &sys);
  if (rc != FIFS_OK) return rc;
  if (grid >= 0 || levels >= 0) {
    fifs_system* adj = nullptr;
    rc = fifs_system_override(sys, grid, levels, &adj);
    fifs_system_free(sys);
    if (rc != FIFS_OK) return rc;
    sys = adj;
  }
  *out = sys;
  return FIFS_OK;
}

struct AttractArgs {
  std::string system;
  std::string method = "iterate";
  std::string u0;
  std::string kind = "dhf";
  std::string metric = "euclid";
  double tol = -1.0;
  int max_iter = 1000;
  int depth = 10;
  std::vector<double> seed;
  long budget = 0;
  int grid = -1;
  int levels = -1;
  std::string out;
  std::string render;
};

int run_attract(const AttractArgs& a) {
  fifs_system* sys = nullptr;
  int rc = load_system(a.system, a.grid, a.levels, &sys);
  if (rc != FIFS_OK) return report_failure(rc);

  fifs_set* result = nullptr;
  char* report = nullptr;
  if (a.method == "iterate") {
    fifs_set* u0 = nullptr;
    if (!a.u0.empty()) {
      rc = fifs_set_load(a.u0.c_str(), &u0);
      if (rc != FIFS_OK) {
        fifs_system_free(sys);
        return report_failure(rc);
      }
    }
    rc = fifs_attract_iterate(sys, u0, a.kind.c_str(), a.metric.c_str(), a.tol,
                              a.max_iter, &result, &report);
    fifs_set_free(u0);
  } else if (a.method == "project") {
    double seed_xy[2] = {0.0, 0.0};
    const double* seed = nullptr;
    if (!a.seed.empty()) {
      seed_xy[0] = a.seed[0];
      if (a.seed.size() > 1) seed_xy[1] = a.seed[1];
      seed = seed_xy;
    }
    rc = fifs_attract_project(sys, a.depth, seed, a.budget, &result, &report);
  } else {
    std::fprintf(stderr, "error: unknown method '%s' (use iterate, project)\n",
                 a.method.c_str());
    fifs_system_free(sys);
    return 2;
  }
  fifs_system_free(sys);
  if (rc != FIFS_OK) return report_failure(rc);

  print_and_free(report);
  if (!a.out.empty()) {
    rc = fifs_set_save(result, a.out.c_str());
    if (rc != FIFS_OK) {
      fifs_set_free(result);
      return report_failure(rc);
    }
  }
  if (!a.render.empty()) {
    rc = fifs_set_render_pgm(result, a.render.c_str());
    if (rc != FIFS_OK) {
      fifs_set_free(result);
      return report_failure(rc);
    }
  }
  fifs_set_free(result);
  return 0;
}

int run_distance(const std::string& a_path, const std::string& b_path,
                 const std::string& kind, const std::string& metric) {
  fifs_set* a = nullptr;
  fifs_set* b = nullptr;
  int rc = fifs_set_load(a_path.c_str(), &a);
  if (rc == FIFS_OK) rc = fifs_set_load(b_path.c_str(), &b);
  double value = 0.0;
  if (rc == FIFS_OK)
    rc = fifs_distance(a, b, kind.c_str(), metric.c_str(), &value);
  fifs_set_free(a);
  fifs_set_free(b);
  if (rc != FIFS_OK) return report_failure(rc);
  std::printf("%.9f\n", value);
  return 0;
}

int run_verify(const std::string& system, int grid, int levels, int samples,
               unsigned long long seed) {
  fifs_system* sys = nullptr;
  int rc = load_system(system, grid, levels, &sys);
  if (rc != FIFS_OK) return report_failure(rc);
  char* report = nullptr;
  rc = fifs_verify(sys, samples, seed, &report);
  fifs_system_free(sys);
  print_and_free(report);
  if (rc != FIFS_OK) return report_failure(rc);
  return 0;
}

int run_render(const std::string& in, const std::string& out) {
  fifs_set* u = nullptr;
  int rc = fifs_set_load(in.c_str(), &u);
  if (rc == FIFS_OK) rc = fifs_set_render_pgm(u, out.c_str());
  fifs_set_free(u);
  if (rc != FIFS_OK) return report_failure(rc);
  return 0;
}

int run_project(const std::string& system, int grid, int levels,
                const std::string& address) {
  fifs_system* sys = nullptr;
  int rc = load_system(system, grid, levels, &sys);
  if (rc != FIFS_OK) return report_failure(rc);
  double xy[2] = {0.0, 0.0};
  int level = 0;
  rc = fifs_project_address(sys, address.c_str(), xy, &level);
  fifs_system_free(sys);
  if (rc != FIFS_OK) return report_failure(rc);
  std::printf("point: %.9f %.9f\nlevel: %d\n", xy[0], xy[1], level);
  return 0;
}

int run_experiment(const std::string& name,
                   const std::vector<std::string>& options) {
  std::string joined;
  for (const std::string& opt : options) {
    if (!joined.empty()) joined += ' ';
    joined += opt;
  }
  char* report = nullptr;
  const int rc = fifs_experiment(name.c_str(), joined.c_str(), &report);
  print_and_free(report);
  if (rc != FIFS_OK) return report_failure(rc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy iterated function systems on discretized domains"};
  app.set_version_flag("--version", fifs_version());
  app.require_subcommand(1);
  int rc = 0;

  AttractArgs at;
  CLI::App* attract =
      app.add_subcommand("attract", "compute an attractor for a system");
  attract->add_option("--system", at.system, "system config file")
      ->required();
  attract->add_option("--method", at.method,
                      "iterate (fixed point) or project (code space)");
  attract->add_option("--u0", at.u0, "start set (FZY1), default Dirac at the "
                                     "domain center");
  attract->add_option("--kind", at.kind,
                      "distance for the stop rule: dhf dh dh0 dinf hausdorff");
  attract->add_option("--metric", at.metric,
                      "base pseudometric: euclid, proj:N, wmax:w1,w2");
  attract->add_option("--tol", at.tol,
                      "stop tolerance, negative = one cell diagonal");
  attract->add_option("--max-iter", at.max_iter, "iteration cap");
  attract->add_option("--depth", at.depth, "projection: address depth");
  attract->add_option("--seed", at.seed, "projection: seed point coordinates")
      ->expected(1, 2);
  attract->add_option("--budget", at.budget,
                      "projection: max addresses, 0 = default");
  attract->add_option("--grid", at.grid, "override cells per axis");
  attract->add_option("--levels", at.levels, "override level count");
  attract->add_option("--out", at.out, "write the attractor (FZY1)");
  attract->add_option("--render", at.render, "write a PGM image");
  attract->callback([&] { rc = run_attract(at); });

  std::string da, db, dkind = "dhf", dmetric = "euclid";
  CLI::App* distance =
      app.add_subcommand("distance", "distance between two FZY1 sets");
  distance->add_option("a", da, "first set")->required();
  distance->add_option("b", db, "second set")->required();
  distance->add_option("--kind", dkind, "dhf dh dh0 dinf hausdorff");
  distance->add_option("--metric", dmetric, "base pseudometric");
  distance->callback([&] { rc = run_distance(da, db, dkind, dmetric); });

  std::string vsystem;
  int vgrid = -1, vlevels = -1, vsamples = 500;
  unsigned long long vseed = 1;
  CLI::App* verify = app.add_subcommand(
      "verify", "check contraction witnesses and fiber decay");
  verify->add_option("--system", vsystem, "system config file")->required();
  verify->add_option("--grid", vgrid, "override cells per axis");
  verify->add_option("--levels", vlevels, "override level count");
  verify->add_option("--samples", vsamples, "point pairs per witness");
  verify->add_option("--seed", vseed, "sampling seed");
  verify->callback(
      [&] { rc = run_verify(vsystem, vgrid, vlevels, vsamples, vseed); });

  std::string rin, rout;
  CLI::App* render = app.add_subcommand("render", "FZY1 to PGM");
  render->add_option("in", rin, "input set (FZY1)")->required();
  render->add_option("out", rout, "output image (PGM)")->required();
  render->callback([&] { rc = run_render(rin, rout); });

  std::string psystem, paddress;
  int pgrid = -1, plevels = -1;
  CLI::App* project = app.add_subcommand(
      "project", "project one code-space address to the grid");
  project->add_option("--system", psystem, "system config file")->required();
  project->add_option("--address", paddress, "branch address, e.g. 121 or "
                                             "1,2,1")
      ->required();
  project->add_option("--grid", pgrid, "override cells per axis");
  project->add_option("--levels", plevels, "override level count");
  project->callback(
      [&] { rc = run_project(psystem, pgrid, plevels, paddress); });

  std::string ename;
  std::vector<std::string> eopts;
  CLI::App* experiment =
      app.add_subcommand("experiment", "run a named experiment and report");
  experiment->add_option("name", ename,
                         "hypo_vs_dhf, dirac_pair, halving, "
                         "multimetric_agreement")
      ->required();
  experiment->add_option("options", eopts, "key=value overrides");
  experiment->callback([&] { rc = run_experiment(ename, eopts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
