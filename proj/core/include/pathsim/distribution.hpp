#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathsim/circuit.hpp"
#include "pathsim/expectation.hpp"
#include "pathsim/rng.hpp"

namespace pathsim {

// Independent generating set of the subgroup of Paulis left invariant by
// every parametrized layer in a slice: commuting with each rotation axis
// and identity on each Haar block. An empty list generates {I}.
struct TrivialGroup {
  std::vector<PauliString> generators;
};

// Generators for the given slice; non-parametrized layers in the slice are
// ignored (no conjugation — see contract_full for the conjugation-aware
// segment walk).
TrivialGroup trivial_generators(std::span<const Layer> slice, int n);

// Matched operator pair across a circuit segment that stays invariant at
// every parametrized layer inside it: `right` is the segment image of
// `left`, and value records the sign together with any in-segment noise
// eigenvalues (so it is exactly +-1 for noiseless Clifford segments).
struct ContractionTerm {
  PauliString left;   // at the segment's input-side edge
  PauliString right;  // at the segment's output-side edge
  double value = 1.0;
};

// Thrown when a segment's surviving generator count exceeds the cap; the
// efficient-contraction hypothesis fails for this cut and the caller must
// pick a different one (or a larger budget).
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int generators, int cap, size_t begin, size_t end)
      : std::runtime_error("contraction cap exceeded: " + std::to_string(generators) +
                           " generators > cap " + std::to_string(cap) + " in layers [" +
                           std::to_string(begin) + ", " + std::to_string(end) + ")"),
        generators_(generators),
        layer_begin_(begin),
        layer_end_(end) {}
  int generators() const { return generators_; }
  size_t layer_begin() const { return layer_begin_; }
  size_t layer_end() const { return layer_end_; }

 private:
  int generators_;
  size_t layer_begin_, layer_end_;
};

// Tracks the invariant subgroup through c.layers[begin, end), conjugating
// generators through Clifford layers and intersecting at each parametrized
// layer; enumerates the surviving subgroup once it has at most `cap`
// generators. The identity term is always present.
std::vector<ContractionTerm> contract_full(const CircuitIR& c, size_t layer_begin,
                                           size_t layer_end, int cap);

struct DistOptions {
  int cap = 14;  // max surviving generators per window (2^cap terms)
  enum class Mode {
    Auto,           // windowed when the circuit has more parametrized layers
                    // than the budget, dense cut otherwise
    Bidirectional,  // windowed; degenerates to the dense cut when no
                    // positive window length exists
    DenseRoot,      // cut at the input state: one forward tree per {I,Z}^n
                    // root (cross-validation mode, n <= 16)
  };
  Mode mode = Mode::Auto;
};

struct DistStats {
  std::string mode_used;
  int window_len = 0;
  size_t window_count = 0;
  size_t block_count = 0;
  size_t left_paths = 0;
  size_t right_paths = 0;
  size_t dedup_pruned = 0;
  size_t pruned_budget = 0;
  size_t zero_left_leaves = 0;
  std::vector<std::string> warnings;
};

// Truncated representation of the full output distribution p(x, params) and
// its prefix marginals: contraction blocks with trees grown toward the
// input (left, contracted on |0..0>) and toward the measurement (right,
// contracted on the queried outcome), combined under a shared branch
// budget. Build once, query for any outcome, marginal and parameter point.
class TruncatedDistribution {
 public:
  struct LeftPath {
    double constant = 1.0;  // includes the |0..0> contraction
    std::vector<PathFactor> factors;
    int branches = 0;
  };
  struct RightPath {
    double constant = 1.0;
    std::vector<PathFactor> factors;
    PauliString final_pauli;  // contracted against the outcome at query time
    int branches = 0;
  };
  struct Block {
    double value = 1.0;
    std::vector<LeftPath> left;
    std::vector<RightPath> right;
  };

  int n() const { return n_; }
  int budget() const { return budget_; }
  int theta_count() const { return theta_count_; }
  int su4_count() const { return su4_count_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const DistStats& stats() const { return stats_; }

 private:
  friend TruncatedDistribution build_distribution(const CircuitIR&, int, const DistOptions&);
  int n_ = 0, budget_ = 0, theta_count_ = 0, su4_count_ = 0;
  std::vector<Block> blocks_;
  DistStats stats_;
};

TruncatedDistribution build_distribution(const CircuitIR& c, int L,
                                         const DistOptions& opt = {});

// p^T(x, params); x is a bitstring with qubit 0 at bit 0.
double prob_value(const TruncatedDistribution& d, uint64_t x, const ParamPoint& params);

// Marginal over the unconstrained suffix: sum of p^T over all outcomes
// whose first `prefix_len` bits equal prefix_bits.
double marginal_value(const TruncatedDistribution& d, uint64_t prefix_bits, int prefix_len,
                      const ParamPoint& params);

// All 2^n outcome values in one pass (n <= 16).
std::vector<double> prob_vector(const TruncatedDistribution& d, const ParamPoint& params);

struct SampleRecord {
  uint64_t bits = 0;
  std::vector<double> conditionals;  // per-bit conditional actually used
  int clamp_events = 0;              // negative masses clamped to zero
  int uniform_fallbacks = 0;         // zero-mass prefixes resolved uniformly
  int marginal_calls = 0;            // exactly 2n per sample
};

// Sequential conditional sampling through marginal ratios, two marginal
// evaluations per bit. Truncated quasi-probabilities are clamped to [0, 1]
// and renormalised; every clamp is recorded.
SampleRecord sample_bitstring(const TruncatedDistribution& d, const ParamPoint& params,
                              RngStream& rng);

// Clamping rule for one conditional step: negative masses go to zero (each
// recorded), the pair is renormalised to sum 1, and a non-positive total
// falls back to uniform (recorded separately).
std::pair<double, double> clamp_conditional_pair(double m0, double m1, SampleRecord& rec);

// The distribution the sampler actually realises: the product of clamped
// conditionals along every branch of the bit-by-bit chain (n <= 16).
std::vector<double> sampling_distribution(const TruncatedDistribution& d,
                                          const ParamPoint& params);

std::string stats_json(const TruncatedDistribution& d);

}  // namespace pathsim
