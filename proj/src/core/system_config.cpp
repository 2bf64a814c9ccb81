#include "core/system_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct LineReader {
  std::istringstream is;
  int line_no;
  explicit LineReader(const std::string& s, int n) : is(s), line_no(n) {}

  double want_double(const char* what) {
    double v;
    if (!(is >> v))
      throw ParseError(std::string("expected ") + what, line_no);
    return v;
  }
  long want_int(const char* what) {
    long v;
    if (!(is >> v))
      throw ParseError(std::string("expected ") + what, line_no);
    return v;
  }
  void want_end() {
    std::string extra;
    if (is >> extra)
      throw ParseError("unexpected trailing token '" + extra + "'", line_no);
  }
};

}  // namespace

FuzzyIFS parse_system(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  bool have_grid = false, have_domain = false, have_levels = false;
  std::vector<int> grid_cells;
  std::vector<double> domain;
  FuzzyIFS S;
  bool pending_grey = false;  // a map line awaits its grey line
  int grey_line_guess = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::istringstream probe(body);
    std::string word;
    if (!(probe >> word)) continue;

    LineReader lr(body, line_no);
    std::string directive;
    lr.is >> directive;

    if (directive == "grid") {
      if (have_grid) throw ParseError("duplicate grid directive", line_no);
      long v;
      while (lr.is >> v) grid_cells.push_back(static_cast<int>(v));
      if (grid_cells.empty() || grid_cells.size() > kMaxAxes)
        throw ParseError("grid needs 1 or 2 cell counts", line_no);
      for (int c : grid_cells)
        if (c < 1) throw ParseError("grid cells must be >= 1", line_no);
      have_grid = true;
    } else if (directive == "domain") {
      if (have_domain) throw ParseError("duplicate domain directive", line_no);
      double v;
      while (lr.is >> v) domain.push_back(v);
      if (domain.size() != 2 && domain.size() != 4)
        throw ParseError("domain needs <origin...> <extent...>", line_no);
      have_domain = true;
    } else if (directive == "levels") {
      if (have_levels) throw ParseError("duplicate levels directive", line_no);
      const long L = lr.want_int("level count");
      lr.want_end();
      if (L < 1) throw ParseError("levels must be >= 1", line_no);
      S.scale = LevelScale{static_cast<int>(L)};
      have_levels = true;
    } else if (directive == "map") {
      if (!have_grid || !have_domain || !have_levels)
        throw ParseError("map before grid/domain/levels", line_no);
      if (pending_grey)
        throw ParseError("map on line " + std::to_string(grey_line_guess) +
                             " still needs its grey table",
                         line_no);
      ContractionMap m;
      m.map.a[0][0] = lr.want_double("a11");
      m.map.a[0][1] = lr.want_double("a12");
      m.map.a[1][0] = lr.want_double("a21");
      m.map.a[1][1] = lr.want_double("a22");
      m.map.b[0] = lr.want_double("b1");
      m.map.b[1] = lr.want_double("b2");
      lr.want_end();
      S.maps.push_back(m);
      pending_grey = true;
      grey_line_guess = line_no;
    } else if (directive == "grey") {
      if (!pending_grey)
        throw ParseError("grey without a preceding map", line_no);
      std::string first;
      if (!(lr.is >> first)) throw ParseError("empty grey table", line_no);
      GreyLevelMap gm;
      if (first == "id") {
        lr.want_end();
        gm = GreyLevelMap::identity(S.scale);
      } else if (first == "half") {
        lr.want_end();
        gm = GreyLevelMap::half_scale(S.scale);
      } else {
        std::vector<int> t;
        try {
          size_t used = 0;
          t.push_back(std::stoi(first, &used));
          if (used != first.size()) throw std::invalid_argument(first);
        } catch (const std::exception&) {
          throw ParseError("bad grey entry '" + first + "'", line_no);
        }
        long v;
        while (lr.is >> v) t.push_back(static_cast<int>(v));
        if (t.size() != static_cast<size_t>(S.scale.L) + 1)
          throw ParseError("grey table needs L+1 = " +
                               std::to_string(S.scale.L + 1) + " entries, got " +
                               std::to_string(t.size()),
                           line_no);
        if (t[0] != 0)
          throw ParseError("grey table: rho(0)=0 violated (g0 = " +
                               std::to_string(t[0]) + ")",
                           line_no);
        for (size_t j = 1; j < t.size(); ++j) {
          if (t[j] < t[j - 1])
            throw ParseError("grey table decreases at level " +
                                 std::to_string(j),
                             line_no);
          if (t[j] < 0 || t[j] > S.scale.L)
            throw ParseError("grey entry " + std::to_string(t[j]) +
                                 " out of range 0.." +
                                 std::to_string(S.scale.L),
                             line_no);
        }
        gm = GreyLevelMap::from_levels(S.scale, t);
      }
      S.greys.maps.push_back(std::move(gm));
      pending_grey = false;
    } else if (directive == "witness") {
      if (S.maps.empty())
        throw ParseError("witness without a preceding map", line_no);
      std::string metric, shape;
      if (!(lr.is >> metric >> shape) || shape != "linear")
        throw ParseError("witness needs: witness <metric> linear <c>",
                         line_no);
      const double c = lr.want_double("witness factor");
      lr.want_end();
      if (!(c >= 0.0) || c >= 1.0)
        throw ParseError("witness factor must lie in [0, 1)", line_no);
      Pseudometric::parse(metric);  // validates the spelling
      S.maps.back().declared.emplace(metric, ComparisonFunction::linear(c));
    } else {
      throw ParseError("unknown directive '" + directive + "'", line_no);
    }
  }

  if (!have_grid) throw ParseError("missing grid directive");
  if (!have_domain) throw ParseError("missing domain directive");
  if (!have_levels) throw ParseError("missing levels directive");
  if (pending_grey)
    throw ParseError("map on line " + std::to_string(grey_line_guess) +
                     " has no grey table");
  if (S.maps.empty()) throw ParseError("system has no map");

  const int ndim = static_cast<int>(grid_cells.size());
  if (domain.size() != static_cast<size_t>(2 * ndim))
    throw ParseError("domain has " + std::to_string(domain.size()) +
                     " numbers but grid is " + std::to_string(ndim) + "D");
  S.grid.ndim = ndim;
  for (int a = 0; a < ndim; ++a) {
    S.grid.cells[a] = grid_cells[static_cast<size_t>(a)];
    S.grid.origin[a] = domain[static_cast<size_t>(a)];
    S.grid.extent[a] = domain[static_cast<size_t>(ndim + a)];
    if (!(S.grid.extent[a] > 0.0))
      throw ParseError("domain extent must be positive");
  }
  try {
    S.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return S;
}

FuzzyIFS load_system(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_system(ss.str());
}

std::string format_system(const FuzzyIFS& S) {
  std::ostringstream os;
  os << "grid";
  for (int a = 0; a < S.grid.ndim; ++a) os << " " << S.grid.cells[a];
  os << "\ndomain";
  for (int a = 0; a < S.grid.ndim; ++a) os << " " << fmt_double(S.grid.origin[a]);
  for (int a = 0; a < S.grid.ndim; ++a) os << " " << fmt_double(S.grid.extent[a]);
  os << "\nlevels " << S.scale.L << "\n";
  for (size_t i = 0; i < S.maps.size(); ++i) {
    const auto& m = S.maps[i].map;
    os << "map " << fmt_double(m.a[0][0]) << " " << fmt_double(m.a[0][1])
       << " " << fmt_double(m.a[1][0]) << " " << fmt_double(m.a[1][1]) << " "
       << fmt_double(m.b[0]) << " " << fmt_double(m.b[1]) << "\n";
    os << "grey";
    for (Level v : S.greys.maps[i].table) os << " " << v;
    os << "\n";
    for (const auto& [metric, w] : S.maps[i].declared) {
      if (w.is_linear())
        os << "witness " << metric << " linear " << fmt_double(w.linear_factor())
           << "\n";
    }
  }
  return os.str();
}

namespace {

bool is_identity_table(const GreyLevelMap& g) {
  return g == GreyLevelMap::identity(g.scale);
}

bool is_half_table(const GreyLevelMap& g) {
  return g == GreyLevelMap::half_scale(g.scale);
}

}  // namespace

FuzzyIFS override_system(const FuzzyIFS& S, int grid_cells, int levels) {
  FuzzyIFS out = S;
  if (grid_cells > 0)
    for (int a = 0; a < out.grid.ndim; ++a) out.grid.cells[a] = grid_cells;
  if (levels > 0 && levels != S.scale.L) {
    const LevelScale ns{levels};
    out.scale = ns;
    out.greys.maps.clear();
    for (const auto& g : S.greys.maps) {
      if (is_identity_table(g))
        out.greys.maps.push_back(GreyLevelMap::identity(ns));
      else if (is_half_table(g))
        out.greys.maps.push_back(GreyLevelMap::half_scale(ns));
      else
        throw DomainError(
            "levels override needs symbolic grey tables (id/half); this "
            "system has an explicit table tied to L=" +
            std::to_string(S.scale.L));
    }
  }
  out.validate();
  return out;
}

}  // namespace fifs
