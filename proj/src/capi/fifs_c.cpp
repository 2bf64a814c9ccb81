#include "fifs/fifs.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/codespace.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/hutchinson.hpp"
#include "core/pgm.hpp"
#include "core/system_config.hpp"

struct fifs_system {
  fifs::FuzzyIFS S;
};

struct fifs_set {
  fifs::FuzzySet u;
};

namespace {

thread_local std::string g_error;

int fail(int code, const std::string& msg) {
  g_error = msg;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const fifs::ParseError& e) {
    return fail(FIFS_EPARSE, e.what());
  } catch (const fifs::IoError& e) {
    return fail(FIFS_EIO, e.what());
  } catch (const fifs::ConvergenceError& e) {
    return fail(FIFS_ENOCONV, e.what());
  } catch (const fifs::BudgetError& e) {
    return fail(FIFS_EBUDGET, e.what());
  } catch (const fifs::DomainError& e) {
    return fail(FIFS_EDOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(FIFS_EINVAL, e.what());
  }
}

fifs::Vec domain_center(const fifs::Grid& g) {
  fifs::Vec c{0.0, 0.0};
  for (int a = 0; a < g.ndim; ++a) c[a] = g.origin[a] + 0.5 * g.extent[a];
  return c;
}

fifs::FuzzySet center_dirac(const fifs::FuzzyIFS& S) {
  std::int64_t flat = 0;
  if (!S.grid.snap(domain_center(S.grid), flat))
    throw fifs::DomainError("domain center escapes the grid box");
  return fifs::FuzzySet::dirac(S.grid, S.scale, flat);
}

}  // namespace

#define FIFS_REQUIRE(p) \
  if ((p) == nullptr) return fail(FIFS_EINVAL, "null argument: " #p)

extern "C" {

const char* fifs_version(void) { return "1.0.0"; }

const char* fifs_last_error(void) { return g_error.c_str(); }

void fifs_string_free(char* s) { std::free(s); }

/* --- systems ------------------------------------------------------- */

int fifs_system_load(const char* path, fifs_system** out) {
  FIFS_REQUIRE(path);
  FIFS_REQUIRE(out);
  return guarded([&] {
    *out = new fifs_system{fifs::load_system(path)};
    return FIFS_OK;
  });
}

int fifs_system_parse(const char* text, fifs_system** out) {
  FIFS_REQUIRE(text);
  FIFS_REQUIRE(out);
  return guarded([&] {
    *out = new fifs_system{fifs::parse_system(text)};
    return FIFS_OK;
  });
}

int fifs_system_format(const fifs_system* sys, char** out_text) {
  FIFS_REQUIRE(sys);
  FIFS_REQUIRE(out_text);
  return guarded([&] {
    *out_text = dup_string(fifs::format_system(sys->S));
    return FIFS_OK;
  });
}

int fifs_system_override(const fifs_system* sys, int grid_cells, int levels,
                         fifs_system** out) {
  FIFS_REQUIRE(sys);
  FIFS_REQUIRE(out);
  return guarded([&] {
    const int cells = grid_cells < 0 ? sys->S.grid.cells[0] : grid_cells;
    const int L = levels < 0 ? sys->S.scale.L : levels;
    *out = new fifs_system{fifs::override_system(sys->S, cells, L)};
    return FIFS_OK;
  });
}

int fifs_system_branches(const fifs_system* sys) {
  if (sys == nullptr) return -1;
  return sys->S.branches();
}

void fifs_system_free(fifs_system* sys) { delete sys; }

/* --- fuzzy sets ----------------------------------------------------- */

int fifs_set_load(const char* path, fifs_set** out) {
  FIFS_REQUIRE(path);
  FIFS_REQUIRE(out);
  return guarded([&] {
    *out = new fifs_set{fifs::FuzzySet::load_fzy(path)};
    return FIFS_OK;
  });
}

int fifs_set_save(const fifs_set* set, const char* path) {
  FIFS_REQUIRE(set);
  FIFS_REQUIRE(path);
  return guarded([&] {
    set->u.save_fzy(path);
    return FIFS_OK;
  });
}

int fifs_set_format(const fifs_set* set, char** out_text) {
  FIFS_REQUIRE(set);
  FIFS_REQUIRE(out_text);
  return guarded([&] {
    *out_text = dup_string(set->u.format_fzy());
    return FIFS_OK;
  });
}

int fifs_set_render_pgm(const fifs_set* set, const char* path) {
  FIFS_REQUIRE(set);
  FIFS_REQUIRE(path);
  return guarded([&] {
    fifs::save_pgm(set->u, path);
    return FIFS_OK;
  });
}

int fifs_set_equal(const fifs_set* a, const fifs_set* b, int* out) {
  FIFS_REQUIRE(a);
  FIFS_REQUIRE(b);
  FIFS_REQUIRE(out);
  *out = a->u == b->u ? 1 : 0;
  return FIFS_OK;
}

void fifs_set_free(fifs_set* set) { delete set; }

/* --- distances ------------------------------------------------------ */

int fifs_distance(const fifs_set* u, const fifs_set* v, const char* kind,
                  const char* metric, double* out) {
  FIFS_REQUIRE(u);
  FIFS_REQUIRE(v);
  FIFS_REQUIRE(kind);
  FIFS_REQUIRE(metric);
  FIFS_REQUIRE(out);
  return guarded([&] {
    if (!u->u.same_frame(v->u))
      throw fifs::DomainError("sets live on different grids or level scales");
    const fifs::DistanceKind k = fifs::parse_distance_kind(kind);
    const fifs::Pseudometric d = fifs::Pseudometric::parse(metric);
    *out = fifs::evaluate_distance(k, d, u->u, v->u);
    return FIFS_OK;
  });
}

/* --- attractors ----------------------------------------------------- */

int fifs_attract_iterate(const fifs_system* sys, const fifs_set* u0,
                         const char* kind, const char* metric, double tol,
                         int max_iter, fifs_set** out_set, char** out_report) {
  FIFS_REQUIRE(sys);
  FIFS_REQUIRE(kind);
  FIFS_REQUIRE(metric);
  return guarded([&] {
    if (max_iter <= 0) throw fifs::DomainError("max_iter must be positive");
    fifs::MetricChoice mc;
    mc.kind = fifs::parse_distance_kind(kind);
    mc.d = fifs::Pseudometric::parse(metric);
    const double eff_tol = tol < 0.0 ? sys->S.grid.cell_diagonal() : tol;
    const fifs::FuzzySet start = u0 != nullptr ? u0->u : center_dirac(sys->S);
    if (!start.same_frame(fifs::FuzzySet(sys->S.grid, sys->S.scale)))
      throw fifs::DomainError("start set does not match the system frame");
    const fifs::FixpointResult r =
        fifs::iterate_to_fixpoint(sys->S, start, mc, eff_tol, max_iter);
    if (out_report != nullptr) {
      std::ostringstream os;
      os << "# attract: iterate\n";
      os << "# kind: " << fifs::distance_kind_name(mc.kind) << "\n";
      os << "# metric: " << mc.d.name() << "\n";
      os << "# tol: " << fmt9(eff_tol) << "\n";
      os << "# iterations: " << r.iterations << "\n";
      os << "# certificate: " << fmt9(r.certificate) << "\n";
      os << "n\tdist\tdh\n";
      for (const auto& row : r.trace.rows)
        os << row.step << "\t" << fmt9(row.dist) << "\t" << fmt9(row.dh)
           << "\n";
      *out_report = dup_string(os.str());
    }
    if (out_set != nullptr) *out_set = new fifs_set{r.fixed};
    return FIFS_OK;
  });
}

int fifs_attract_project(const fifs_system* sys, int depth,
                         const double* seed_xy, long budget,
                         fifs_set** out_set, char** out_report) {
  FIFS_REQUIRE(sys);
  return guarded([&] {
    fifs::Vec seed = domain_center(sys->S.grid);
    if (seed_xy != nullptr)
      for (int a = 0; a < sys->S.grid.ndim; ++a) seed[a] = seed_xy[a];
    const std::int64_t eff_budget =
        budget <= 0 ? (std::int64_t{1} << 22) : static_cast<std::int64_t>(budget);
    const fifs::ProjectionResult r =
        fifs::attractor_via_projection(sys->S, depth, seed, eff_budget);
    if (out_report != nullptr) {
      std::ostringstream os;
      os << "# attract: project\n";
      os << "# depth: " << depth << "\n";
      os << "# seed:";
      for (int a = 0; a < sys->S.grid.ndim; ++a) os << " " << fmt9(seed[a]);
      os << "\n";
      os << "# addresses: " << r.addresses << "\n";
      os << "# pruned: " << r.pruned << "\n";
      os << "# spatial_error_bound: " << fmt9(r.spatial_error_bound) << "\n";
      os << "# nonstabilized_max_level: " << r.nonstabilized_max_level << "\n";
      *out_report = dup_string(os.str());
    }
    if (out_set != nullptr) *out_set = new fifs_set{r.set};
    return FIFS_OK;
  });
}

/* --- diagnostics ----------------------------------------------------- */

int fifs_verify(const fifs_system* sys, int samples, unsigned long long seed,
                char** out_report) {
  FIFS_REQUIRE(sys);
  return guarded([&] {
    if (samples <= 0) throw fifs::DomainError("samples must be positive");
    const fifs::FuzzyIFS& S = sys->S;
    std::ostringstream os;
    bool all_pass = true;
    os << "# verify: " << S.branches() << " branches, " << samples
       << " samples per pair, seed " << seed << "\n";

    std::set<std::string> metric_names{"euclid"};
    for (const auto& cm : S.maps)
      for (const auto& [name, phi] : cm.declared) metric_names.insert(name);

    os << "branch\tmetric\twitness\tsamples\tviolations\tworst_slack\t"
          "max_pair_dist\n";
    int total_violations = 0;
    std::uint64_t run = seed;
    for (int i = 0; i < S.branches(); ++i) {
      for (const std::string& name : metric_names) {
        const fifs::Pseudometric d = fifs::Pseudometric::parse(name);
        const fifs::ComparisonFunction phi = S.maps[i].witness_for(d);
        const fifs::WitnessReport w =
            fifs::verify_matkowski(S.maps[i].map, d, phi, S.grid, samples,
                                   run++);
        total_violations += w.violations;
        os << (i + 1) << "\t" << name << "\t" << phi.describe() << "\t"
           << w.samples << "\t" << w.violations << "\t" << fmt9(w.worst_slack)
           << "\t" << fmt9(w.max_pair_distance) << "\n";
      }
    }

    std::vector<fifs::AffineMap> maps;
    for (const auto& cm : S.maps) maps.push_back(cm.map);
    std::int64_t center = 0;
    if (!S.grid.snap(domain_center(S.grid), center))
      throw fifs::DomainError("domain center escapes the grid box");
    const auto ci = S.grid.unflat(center);
    const fifs::InvariantBox ib =
        fifs::invariant_box(S.grid, maps, fifs::IndexBox{ci, ci});
    os << "# invariant box: [" << ib.box.lo[0] << ".." << ib.box.hi[0] << "]";
    if (S.grid.ndim == 2)
      os << " x [" << ib.box.lo[1] << ".." << ib.box.hi[1] << "]";
    os << " (grow steps " << ib.grow_steps << ")\n";

    // Max snapped fiber diameter over all branch prefixes of each depth,
    // capped so the enumeration stays small.
    const fifs::Pseudometric euclid = fifs::Pseudometric::euclid();
    int depth_max = 0;
    for (std::int64_t n = 1; depth_max < 8; ++depth_max) {
      n *= S.branches();
      if (n > 4096) break;
    }
    os << "depth\tfiber_diameter\n";
    std::vector<double> diam;
    std::vector<std::vector<int>> prefixes{{}};
    for (int n = 0; n <= depth_max; ++n) {
      double worst = 0.0;
      for (const auto& pfx : prefixes)
        worst = std::max(worst,
                         fifs::fiber_diameter(S.grid, maps, pfx, ib.box, euclid));
      diam.push_back(worst);
      os << n << "\t" << fmt9(worst) << "\n";
      if (n == depth_max) break;
      std::vector<std::vector<int>> next;
      for (const auto& pfx : prefixes)
        for (int s = 1; s <= S.branches(); ++s) {
          next.push_back(pfx);
          next.back().push_back(s);
        }
      prefixes = std::move(next);
    }

    const bool witnesses_ok = total_violations == 0;
    all_pass = all_pass && witnesses_ok;
    os << "VERDICT: witness violations total = " << total_violations
       << " -> " << (witnesses_ok ? "PASS" : "FAIL") << "\n";
    bool shrinking = true;
    const double slack = 2.0 * S.grid.cell_diagonal();
    for (size_t n = 1; n < diam.size(); ++n)
      if (diam[n] > diam[n - 1] + slack) shrinking = false;
    all_pass = all_pass && shrinking;
    os << "VERDICT: fiber diameters nonincreasing within 2 cells -> "
       << (shrinking ? "PASS" : "FAIL") << "\n";

    if (out_report != nullptr) *out_report = dup_string(os.str());
    if (!all_pass) {
      g_error = "verification reported failing verdicts";
      return static_cast<int>(FIFS_EDOMAIN);
    }
    return static_cast<int>(FIFS_OK);
  });
}

int fifs_project_address(const fifs_system* sys, const char* address,
                         double* out_xy, int* out_level) {
  FIFS_REQUIRE(sys);
  FIFS_REQUIRE(address);
  return guarded([&] {
    const fifs::Address addr =
        fifs::Address::parse(address, sys->S.branches());
    const fifs::ProjectedPoint p =
        fifs::project(sys->S, addr, domain_center(sys->S.grid));
    if (out_xy != nullptr) {
      const fifs::Vec w = fifs::world_point(sys->S.grid, p.snapped);
      out_xy[0] = w[0];
      out_xy[1] = sys->S.grid.ndim == 2 ? w[1] : 0.0;
    }
    if (out_level != nullptr) *out_level = p.level;
    return FIFS_OK;
  });
}

int fifs_experiment(const char* name, const char* options, char** out_report) {
  FIFS_REQUIRE(name);
  return guarded([&] {
    const fifs::ExperimentParams p =
        fifs::parse_experiment_options(options != nullptr ? options : "");
    const fifs::ExperimentReport r = fifs::run_experiment(name, p);
    if (out_report != nullptr) *out_report = dup_string(r.to_text());
    if (!r.all_pass()) {
      g_error = "experiment reported failing verdicts";
      return static_cast<int>(FIFS_EDOMAIN);
    }
    return static_cast<int>(FIFS_OK);
  });
}

}  // extern "C"
