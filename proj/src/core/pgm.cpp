#include "core/pgm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace fifs {

std::string format_pgm(const FuzzySet& u) {
  const Grid& g = u.grid();
  const int nx = g.points(0);
  const int ny = g.ndim > 1 ? g.points(1) : 1;
  std::ostringstream os;
  os << "P2\n" << nx << " " << ny << "\n255\n";
  for (int r = 0; r < ny; ++r) {
    const int iy = ny - 1 - r;
    for (int ix = 0; ix < nx; ++ix) {
      const long pix =
          std::lround(255.0 * u.at(g.flat({ix, iy})) / u.levels());
      os << pix << (ix + 1 < nx ? " " : "");
    }
    os << "\n";
  }
  return os.str();
}

void save_pgm(const FuzzySet& u, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << format_pgm(u);
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace fifs
