#pragma once

#include <ostream>

// One PASS/FAIL line per invariant; true when all pass.
bool run_selfcheck(std::ostream& os);
