#pragma once

#include <string>

#include "core/fuzzy_set.hpp"

namespace fifs {

// Plain (P2) PGM, maxval 255, pixel = round(255 * level / L). Row 0 is the
// top of the image and carries the highest y index, so the y axis points up;
// 1D sets render as a single row.
std::string format_pgm(const FuzzySet& u);
void save_pgm(const FuzzySet& u, const std::string& path);

}  // namespace fifs
