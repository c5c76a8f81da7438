#pragma once

#include <iosfwd>

#include "ordcensus/census.hpp"

namespace ordc {

// Embedded oracle suites: cyclotomic product identity, factorization
// round-trips, multiplicative order vs exhaustive powers on small fields,
// Fibonacci period corpus, hand-checked order examples. Prints one line
// per suite; returns true iff every suite passes.
bool run_selftest(std::ostream& os);

}  // namespace ordc
