#include "core/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

void check_n_list(const std::vector<int>& ns) {
  if (ns.empty()) throw ParseError("empty n list");
  for (size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw ParseError("n must be positive");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw ParseError("n list must be strictly increasing");
  }
}

ExperimentReport::Row distances_row(const std::string& tag, int n,
                                    const Pseudometric& d, const FuzzySet& u,
                                    const FuzzySet& v) {
  return {tag, n, fuzzy_hausdorff(d, u, v), hypo_distance(d, u, v),
          hypo0_distance(d, u, v), linf_distance(u, v)};
}

}  // namespace

ExperimentParams parse_experiment_options(const std::string& options) {
  ExperimentParams p;
  std::istringstream is(options);
  std::string tok;
  while (is >> tok) {
    const size_t eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      if (key == "grid") {
        p.grid_cells = std::stoi(val);
      } else if (key == "levels") {
        p.levels = std::stoi(val);
      } else if (key == "nmax") {
        p.n_max = std::stoi(val);
      } else if (key == "a") {
        p.a = std::stod(val);
      } else if (key == "b") {
        p.b = std::stod(val);
      } else if (key == "metric") {
        p.metric = val;
      } else if (key == "nlist") {
        p.n_list.clear();
        std::istringstream ls(val);
        std::string item;
        while (std::getline(ls, item, ','))
          p.n_list.push_back(std::stoi(item));
      } else {
        throw ParseError("unknown experiment option '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad value for option '" + key + "': " + val);
    } catch (const std::out_of_range&) {
      throw ParseError("value out of range for option '" + key + "'");
    }
  }
  if (p.grid_cells < 1 || p.levels < 1 || p.n_max < 1)
    throw ParseError("grid, levels and nmax must be positive");
  return p;
}

bool ExperimentReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.pass; });
}

std::string ExperimentReport::to_text() const {
  std::ostringstream os;
  os << "# params\n";
  os << "# experiment: " << name << "\n";
  for (const auto& [k, v] : params) os << "# " << k << ": " << v << "\n";
  os << "n\tdhf\tdh\tdh0\tdinf\n";
  std::string tag;
  for (const Row& r : rows) {
    if (r.tag != tag) {
      tag = r.tag;
      if (!tag.empty()) os << "# sequence: " << tag << "\n";
    }
    os << r.n << "\t" << fmt9(r.dhf) << "\t" << fmt9(r.dh) << "\t"
       << fmt9(r.dh0) << "\t" << fmt9(r.dinf) << "\n";
  }
  for (const Verdict& v : verdicts)
    os << "VERDICT: " << v.text << " -> " << (v.pass ? "PASS" : "FAIL")
       << "\n";
  return os.str();
}

namespace {

// Level of the ramp profile at grid index i: membership 1-x up to x = 1/n,
// constant 1 - 1/n beyond, scaled by L and truncated. All-integer so the
// quantization is exact.
int ramp_level(int i, int cells, int L, int n) {
  if (static_cast<long>(i) * n <= cells)
    return static_cast<int>((static_cast<long>(L) * (cells - i)) / cells);
  return static_cast<int>((static_cast<long>(L) * (n - 1)) / n);
}

FuzzySet ramp_set_1d(const Grid& g, LevelScale s, int n) {
  FuzzySet u(g, s);
  for (int i = 0; i <= g.cells[0]; ++i)
    u.set(i, ramp_level(i, g.cells[0], s.L, n));
  return u;
}

}  // namespace

ExperimentReport exp_hypo_vs_dhf(const ExperimentParams& p) {
  check_n_list(p.n_list);
  for (int n : p.n_list) {
    if (p.grid_cells % n != 0)
      throw ParseError("n=" + std::to_string(n) +
                       " must divide the grid cell count " +
                       std::to_string(p.grid_cells));
    if (p.levels % n != 0)
      throw ParseError("n=" + std::to_string(n) +
                       " must divide the level count " +
                       std::to_string(p.levels) +
                       " (keeps the quantized values exact)");
  }
  const Grid g = Grid::line(p.grid_cells, 0.0, 1.0);
  const LevelScale s{p.levels};
  const Pseudometric d = Pseudometric::parse(p.metric);
  const double cell = g.cell_size(0);

  ExperimentReport rep;
  rep.name = "hypo_vs_dhf";
  rep.params = {{"grid", std::to_string(p.grid_cells)},
                {"levels", std::to_string(p.levels)},
                {"metric", d.name()},
                {"nlist", join_ints(p.n_list)}};

  const FuzzySet u0 = FuzzySet::constant(g, s, s.L);
  std::vector<double> dh_seq;
  for (int n : p.n_list) {
    const FuzzySet un = ramp_set_1d(g, s, n);
    const auto row = distances_row("", n, d, un, u0);
    rep.rows.push_back(row);
    dh_seq.push_back(row.dh);
    rep.verdicts.push_back({"dhf[n=" + std::to_string(n) + "] = " +
                                fmt9(row.dhf) + " == 1 exactly",
                            row.dhf == 1.0});
    const double bound = 1.0 / n + cell;
    rep.verdicts.push_back({"dh[n=" + std::to_string(n) + "] = " +
                                fmt9(row.dh) + " <= 1/n + cell = " +
                                fmt9(bound),
                            row.dh <= bound});
  }
  bool decreasing = true;
  for (size_t i = 1; i < dh_seq.size(); ++i)
    decreasing = decreasing && dh_seq[i] < dh_seq[i - 1];
  rep.verdicts.push_back(
      {"dh strictly decreasing along n: " + fmt9(dh_seq.front()) + " .. " +
           fmt9(dh_seq.back()),
       decreasing});
  return rep;
}

ExperimentReport exp_dirac_pair(const ExperimentParams& p) {
  check_n_list(p.n_list);
  const Grid g = Grid::line(p.grid_cells, 0.0, 1.0);
  const LevelScale s{p.levels};
  const Pseudometric d = Pseudometric::parse(p.metric);

  std::int64_t ia, ib;
  if (!g.snap({p.a, 0.0}, ia) || !g.snap({p.b, 0.0}, ib))
    throw DomainError("dirac positions fall outside the grid");
  if (ia == ib) throw DomainError("dirac positions snap to the same point");
  const double dab = d(g.point_at(ia), g.point_at(ib));

  ExperimentReport rep;
  rep.name = "dirac_pair";
  rep.params = {{"grid", std::to_string(p.grid_cells)},
                {"levels", std::to_string(p.levels)},
                {"metric", d.name()},
                {"a", fmt9(p.a)},
                {"b", fmt9(p.b)},
                {"nlist", join_ints(p.n_list)}};

  const FuzzySet v = FuzzySet::dirac(g, s, ia);
  for (int n : p.n_list) {
    const int q = static_cast<int>(std::llround(static_cast<double>(s.L) / n));
    FuzzySet u = v;
    if (q > 0) u.set(ib, q);
    const auto row = distances_row("", n, d, u, v);
    rep.rows.push_back(row);
    if (q == 0) {
      rep.verdicts.push_back(
          {"n=" + std::to_string(n) +
               " boundary case (1/n below one level): all distances " +
               fmt9(std::max({row.dhf, row.dh, row.dh0, row.dinf})),
           row.dhf == 0.0 && row.dh == 0.0 && row.dh0 == 0.0 &&
               row.dinf == 0.0});
      continue;
    }
    const double qa = s.alpha(q);
    rep.verdicts.push_back({"dinf[n=" + std::to_string(n) + "] = " +
                                fmt9(row.dinf) + " == quantized 1/n = " +
                                fmt9(qa),
                            row.dinf == qa});
    rep.verdicts.push_back({"dh0[n=" + std::to_string(n) + "] = " +
                                fmt9(row.dh0) + " <= quantized 1/n = " +
                                fmt9(qa),
                            row.dh0 <= qa});
    rep.verdicts.push_back({"dh[n=" + std::to_string(n) + "] = " +
                                fmt9(row.dh) + " == d(a,b) = " + fmt9(dab),
                            row.dh == dab});
    rep.verdicts.push_back({"dhf[n=" + std::to_string(n) + "] = " +
                                fmt9(row.dhf) + " == d(a,b) = " + fmt9(dab),
                            row.dhf == dab});
  }
  return rep;
}

ExperimentReport exp_halving(const ExperimentParams& p) {
  const Grid g = Grid::line(p.grid_cells, 0.0, 1.0);
  const LevelScale s{p.levels};
  const Pseudometric d = Pseudometric::parse(p.metric);
  const double cell = g.cell_size(0);

  FuzzyIFS S;
  S.grid = g;
  S.scale = s;
  S.maps.push_back({AffineMap{{{{0.5, 0.0}, {0.0, 0.0}}}, {0.0, 0.0}}, {}});
  S.greys.maps.push_back(GreyLevelMap::identity(s));
  S.validate();

  ExperimentReport rep;
  rep.name = "halving";
  rep.params = {{"grid", std::to_string(p.grid_cells)},
                {"levels", std::to_string(p.levels)},
                {"metric", d.name()},
                {"nmax", std::to_string(p.n_max)}};

  const FuzzySet target = FuzzySet::dirac(g, s, 0);
  FuzzySet u = FuzzySet::dirac(g, s, g.cells[0]);
  bool marching_ok = true;
  bool gap_ok = true;
  for (int n = 1; n <= p.n_max; ++n) {
    u = fuzzy_hutchinson_pointwise(S, u);
    const auto sup = u.support();
    const bool dirac = sup.size() == 1 && u.at(sup[0]) == s.L;
    marching_ok = marching_ok && dirac;
    const double pos = g.point_at(sup[0])[0];
    marching_ok = marching_ok && std::abs(pos - std::pow(0.5, n)) <= cell;
    if (sup[0] != 0) {
      // Sup gap at the moving point: the iterate carries the top level where
      // the limit has zero.
      gap_ok = gap_ok && pointwise_gap(u, target, sup[0]) == 1.0;
    }
    rep.rows.push_back(distances_row("", n, d, u, target));
  }
  rep.verdicts.push_back(
      {"every iterate is a full-level Dirac within one cell of 1/2^n",
       marching_ok});
  rep.verdicts.push_back(
      {"sup gap at the moving point stays 1 until it reaches 0", gap_ok});
  const bool reached = u == target;
  rep.verdicts.push_back(
      {"iterate at nmax equals chi_0: dhf = " + fmt9(rep.rows.back().dhf),
       reached && rep.rows.back().dhf == 0.0});
  const double cert =
      fuzzy_hausdorff(d, fuzzy_hutchinson_pointwise(S, u), u);
  rep.verdicts.push_back(
      {"fixed point certificate dhf(S(u*), u*) = " + fmt9(cert) + " == 0",
       cert == 0.0});
  return rep;
}

namespace {

struct Sequence {
  std::string tag;
  std::vector<FuzzySet> items;
  FuzzySet limit;
  bool expect_converge;
  double floor_bound;  // diverging sequences stay above this
};

// The sequence families live on the x axis of a 2D grid so the projection
// family has a genuine second axis to ignore.
std::vector<Sequence> agreement_sequences(const Grid& g, LevelScale s,
                                          const std::vector<int>& ns) {
  auto at_x = [&g](int ix) { return g.flat({ix, 0}); };
  std::vector<Sequence> out;

  Sequence ramp;
  ramp.tag = "ramp";
  ramp.limit = FuzzySet(g, s);
  for (int i = 0; i <= g.cells[0]; ++i) ramp.limit.set(at_x(i), s.L);
  for (int n : ns) {
    FuzzySet u(g, s);
    for (int i = 0; i <= g.cells[0]; ++i)
      u.set(at_x(i), ramp_level(i, g.cells[0], s.L, n));
    ramp.items.push_back(std::move(u));
  }
  ramp.expect_converge = false;
  ramp.floor_bound = 1.0;
  out.push_back(std::move(ramp));

  Sequence dirac;
  dirac.tag = "dirac_pair";
  dirac.limit = FuzzySet::dirac(g, s, at_x(0));
  for (int n : ns) {
    FuzzySet u = dirac.limit;
    const int q = static_cast<int>(std::llround(static_cast<double>(s.L) / n));
    if (q > 0) u.set(at_x(g.cells[0]), q);
    dirac.items.push_back(std::move(u));
  }
  dirac.expect_converge = false;
  dirac.floor_bound = 1.0;
  out.push_back(std::move(dirac));

  Sequence halving;
  halving.tag = "halving";
  halving.limit = FuzzySet::dirac(g, s, at_x(0));
  for (int n : ns) {
    std::int64_t t;
    g.snap({std::pow(0.5, n), 0.0}, t);
    halving.items.push_back(FuzzySet::dirac(g, s, t));
  }
  halving.expect_converge = true;
  halving.floor_bound = 0.0;
  out.push_back(std::move(halving));

  Sequence constant;
  constant.tag = "const";
  constant.limit = FuzzySet::dirac(g, s, at_x(0));
  for (size_t i = 0; i < ns.size(); ++i)
    constant.items.push_back(constant.limit);
  constant.expect_converge = true;
  constant.floor_bound = 0.0;
  out.push_back(std::move(constant));

  return out;
}

double family_gauge(const PseudometricFamily& fam, const FuzzySet& u,
                    const FuzzySet& v) {
  double m = 0.0;
  for (const auto& d : fam.members)
    m = std::max(m, fuzzy_hausdorff(d, u, v));
  return m;
}

}  // namespace

ExperimentReport exp_multimetric_agreement(const ExperimentParams& p) {
  check_n_list(p.n_list);
  for (int n : p.n_list)
    if (p.grid_cells % n != 0 || p.levels % n != 0)
      throw ParseError("n=" + std::to_string(n) +
                       " must divide both grid and levels");
  const Grid g =
      Grid::plane(p.grid_cells, p.grid_cells, {0.0, 0.0}, {1.0, 1.0});
  const LevelScale s{p.levels};
  const double conv_tol = 2.0 * g.cell_size(0);

  PseudometricFamily fam_a{{Pseudometric::euclid()}};
  PseudometricFamily fam_b = directed_closure(
      PseudometricFamily{
          {Pseudometric::projection(0), Pseudometric::projection(1)}},
      2);

  ExperimentReport rep;
  rep.name = "multimetric_agreement";
  rep.params = {{"grid", std::to_string(p.grid_cells)},
                {"levels", std::to_string(p.levels)},
                {"family_a", "euclid"},
                {"family_b", "closure(proj:0, proj:1)"},
                {"nlist", join_ints(p.n_list)},
                {"conv_tol", fmt9(conv_tol)}};

  const Pseudometric euclid = Pseudometric::euclid();
  for (const Sequence& seq : agreement_sequences(g, s, p.n_list)) {
    std::vector<double> ga, gb;
    for (size_t i = 0; i < seq.items.size(); ++i) {
      rep.rows.push_back(distances_row(seq.tag, p.n_list[i], euclid,
                                       seq.items[i], seq.limit));
      ga.push_back(family_gauge(fam_a, seq.items[i], seq.limit));
      gb.push_back(family_gauge(fam_b, seq.items[i], seq.limit));
    }
    const bool conv_a = ga.back() <= conv_tol;
    const bool conv_b = gb.back() <= conv_tol;
    rep.verdicts.push_back(
        {seq.tag + ": family_a " + (conv_a ? "converges" : "diverges") +
             " (last gauge " + fmt9(ga.back()) + "), family_b " +
             (conv_b ? "converges" : "diverges") + " (last gauge " +
             fmt9(gb.back()) + "), verdicts agree",
         conv_a == conv_b});
    if (seq.expect_converge) {
      rep.verdicts.push_back(
          {seq.tag + ": both gauges <= conv_tol " + fmt9(conv_tol) +
               " at the last n (a=" + fmt9(ga.back()) +
               ", b=" + fmt9(gb.back()) + ")",
           conv_a && conv_b});
    } else {
      const double amin = *std::min_element(ga.begin(), ga.end());
      const double bmin = *std::min_element(gb.begin(), gb.end());
      rep.verdicts.push_back(
          {seq.tag + ": both gauges stay >= " + fmt9(seq.floor_bound) +
               " for all n (min a=" + fmt9(amin) + ", b=" + fmt9(bmin) + ")",
           amin >= seq.floor_bound && bmin >= seq.floor_bound});
    }
  }
  return rep;
}

ExperimentReport run_experiment(const std::string& name,
                                const ExperimentParams& p) {
  if (name == "hypo_vs_dhf") return exp_hypo_vs_dhf(p);
  if (name == "dirac_pair") return exp_dirac_pair(p);
  if (name == "halving") return exp_halving(p);
  if (name == "multimetric_agreement") return exp_multimetric_agreement(p);
  throw ParseError("unknown experiment '" + name +
                   "' (hypo_vs_dhf, dirac_pair, halving, "
                   "multimetric_agreement)");
}

}  // namespace fifs
