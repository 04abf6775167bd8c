#pragma once

#include <cstdint>
#include <ostream>

namespace tools {

// Oracle-equivalence and invariant checks on seeded small circuits: exact
// expectation and distribution agreement, path-count law, normalisation,
// window/dense-cut consistency and adjoint-matrix properties. Prints one
// line per check; returns false if anything failed.
bool run_verify_suite(int max_n, uint64_t seed, std::ostream& out);

}  // namespace tools
