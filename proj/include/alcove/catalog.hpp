#pragma once

#include "alcove/algebroid.hpp"

namespace alcove {

// Built-in examples exercised by the test suites and the CLI.
std::vector<std::string> catalog_names();
InvariantAlgebroid catalog_algebroid(const std::string& name);

// Bracket tables used across the catalog.
Bracket bracket_abelian(int n);
Bracket bracket_sl2();    // basis (h, e, f)
Bracket bracket_borel();  // basis (h, e)
Bracket bracket_heis3();  // basis (x, y, z), [x, y] = z
Bracket bracket_aff1();   // basis (a, b), [a, b] = b

}  // namespace alcove
