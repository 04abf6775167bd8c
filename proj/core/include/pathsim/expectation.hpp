#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pathsim/circuit.hpp"
#include "pathsim/irrep.hpp"
#include "pathsim/observable.hpp"

namespace pathsim {

// Weight of one block-mixing branch: the (row, col) entry of the adjoint
// matrix of the indexed block parameter.
struct AdjointFactor {
  int param_index = 0;
  int row = 0, col = 0;
  friend bool operator==(const AdjointFactor&, const AdjointFactor&) = default;
};

using PathFactor = std::variant<TrigFactor, AdjointFactor>;

// One retained path: a parameter-independent constant (observable
// coefficient, Clifford and branching signs, noise eigenvalues, input-state
// contraction) times a product of parametric factors, at most L of them.
struct PathTerm {
  double constant = 1.0;
  std::vector<PathFactor> factors;
};

struct SeriesStats {
  size_t path_count = 0;
  size_t pruned_budget = 0;  // branch events suppressed by an exhausted budget
  size_t zero_leaves = 0;    // paths dropped at a vanishing leaf contraction
  int max_branches = 0;
  std::vector<size_t> per_budget_histogram;  // paths by branch-event count
  std::vector<std::string> warnings;
};

// Truncated sum-over-paths representation of <O>(params) for one circuit:
// built once, evaluated at any number of parameter points. Immutable after
// construction; evaluation is a pure fold with a fixed reduction tree.
class ExpectationSeries {
 public:
  int n() const { return n_; }
  int budget() const { return budget_; }
  int theta_count() const { return theta_count_; }
  int su4_count() const { return su4_count_; }
  uint64_t circuit_fingerprint() const { return circuit_fp_; }
  uint64_t noise_fingerprint() const { return noise_fp_; }
  const std::vector<PathTerm>& paths() const { return paths_; }
  const SeriesStats& stats() const { return stats_; }

 private:
  friend ExpectationSeries build_series(const CircuitIR&, const Observable&, int);
  int n_ = 0, budget_ = 0, theta_count_ = 0, su4_count_ = 0;
  uint64_t circuit_fp_ = 0, noise_fp_ = 0;
  std::vector<PathTerm> paths_;
  SeriesStats stats_;
};

// Heisenberg tree growth over the circuit with at most L branch events per
// path. Noise enters only the path constants, through the channel
// eigenvalue at the operator present when the channel applies.
ExpectationSeries build_series(const CircuitIR& c, const Observable& obs, int L);

// Sum of constant * prod(factors) over all paths. adjoint_epsilon > 0 skips
// paths through adjoint entries of magnitude <= epsilon (a lossy shortcut;
// the default keeps everything).
double evaluate_expectation(const ExpectationSeries& s, const ParamPoint& params,
                            double adjoint_epsilon = 0.0);

// (total retained paths, branch events pruned by the budget)
std::pair<size_t, size_t> path_count(const ExpectationSeries& s);

std::string stats_json(const ExpectationSeries& s);

}  // namespace pathsim
