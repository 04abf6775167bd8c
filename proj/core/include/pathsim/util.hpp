#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pathsim {

// Deterministic pairwise summation with a fixed reduction tree. The result
// depends only on the element order, never on thread count, so evaluations
// are bit-reproducible.
double pairwise_sum(std::span<const double> xs);

// FNV-1a 64-bit; used for stable circuit/noise fingerprints in stats dumps.
uint64_t fnv1a(std::string_view s);

std::string to_hex(uint64_t v);

// Shortest round-trip decimal formatting for doubles (CSV output).
std::string format_double(double v);

}  // namespace pathsim
