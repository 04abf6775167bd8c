#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathsim/circuit.hpp"
#include "pathsim/observable.hpp"

namespace pathsim {

enum class NormFactor {
  NormalizedHS,  // sqrt(sum c_i^2); equals 1 for a single bare Pauli
  CoeffL1,       // sum |c_i|
  One,
};

struct ErrorSweepRow {
  int L = 0;
  double rms = 0.0;
  double bound = 0.0;
  double stderr_ = 0.0;  // sample std of per-draw |error| / sqrt(draws)
  size_t draws = 0;
};

struct ErrorSweep {
  std::vector<ErrorSweepRow> rows;
  uint64_t seed = 0;
  double gamma = 1.0;
  double norm_factor = 1.0;

  std::string to_csv() const;  // columns: L, rms, bound, stderr, draws, seed
};

// (1 - gamma)^L * norm_factor
double error_bound(double gamma, int L, double norm_factor);

// Monte-Carlo L2 error of the truncated series against the exact noisy
// oracle, over uniform parameter draws. The same draws are reused for every
// L (common random numbers), so the decay in L is directly comparable
// across rows; so is the exact oracle value, computed once per draw.
ErrorSweep mc_l2_error(const CircuitIR& c, const Observable& obs, std::span<const int> L_values,
                       size_t draws, uint64_t seed, NormFactor nf = NormFactor::NormalizedHS);

// Half the l1 distance between two distributions of equal length.
double tv_distance(std::span<const double> p, std::span<const double> q);

struct AntiConcEstimate {
  double value = 0.0;    // 2^n * E[ sum_x p(x)^2 ], Monte Carlo
  double stderr_ = 0.0;  // sample std / sqrt(draws)
  size_t draws = 0;
};

// Second-moment estimator of the (noiseless) output-distribution ensemble
// generated by drawing the circuit's parameters uniformly/Haar. A value of
// O(1) as n grows is the anti-concentration regime; 2^n is maximal
// concentration (deterministic output).
AntiConcEstimate anticoncentration_estimate(const CircuitIR& c, size_t draws, uint64_t seed);

}  // namespace pathsim
