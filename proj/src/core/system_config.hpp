#pragma once

#include <string>

#include "core/hutchinson.hpp"

namespace fifs {

// Text config format, '#' comments, one directive per line:
//
//   grid <cx> [<cy>]              cells per axis (1 or 2 axes)
//   domain <o...> <e...>          origins then extents, one pair per axis
//   levels <L>
//   map a11 a12 a21 a22 b1 b2     starts a branch
//   grey g0 g1 ... gL             its grey table (or: grey id | grey half)
//   witness <metric> linear <c>   optional, attaches to the last branch
//
// grid/domain/levels must precede the first map; every map needs exactly one
// grey line. Errors carry 1-based line numbers.
FuzzyIFS parse_system(const std::string& text);
FuzzyIFS load_system(const std::string& path);

// Canonical re-emission (numeric grey tables, %.17g numbers). Parsing the
// output reproduces the system exactly.
std::string format_system(const FuzzyIFS& S);

// Rebuild with a different resolution and/or level count. Changing levels
// requires symbolic grey tables, so it only works on systems whose tables
// equal identity or half-scale; otherwise DomainError.
FuzzyIFS override_system(const FuzzyIFS& S, int grid_cells, int levels);

}  // namespace fifs
