#include "pathsim/expectation.hpp"

#include <sstream>

#include "eval_internal.hpp"
#include "gtt_internal.hpp"
#include "pathsim/util.hpp"

#include "json.hpp"

namespace pathsim {

using detail::EvalTables;
using detail::eval_path;

ExpectationSeries build_series(const CircuitIR& c, const Observable& obs, int L) {
  require_valid(c);
  obs.check(c.n);
  if (L < 0) throw std::invalid_argument("truncation budget must be non-negative");

  CircuitIR rc = resolved(c);
  ExpectationSeries s;
  s.n_ = c.n;
  s.budget_ = L;
  s.theta_count_ = c.theta_count();
  s.su4_count_ = c.su4_count();
  s.circuit_fp_ = circuit_fingerprint(c);
  s.noise_fp_ = noise_fingerprint(c);
  s.stats_.per_budget_histogram.assign(size_t(L) + 1, 0);

  for (const Layer& l : rc.layers)
    if (auto* nz = std::get_if<NoiseLayer>(&l))
      if (!nz->channel.noise_penalisation_holds())
        s.stats_.warnings.push_back("channel " + nz->channel.describe() +
                                    " fixes a non-trivial Pauli; decay guarantees do not apply");

  detail::WalkStats wstats;
  detail::Walker walker;
  walker.layers = std::span<const Layer>(rc.layers);
  walker.heisenberg = true;
  walker.budget = L;
  walker.stats = &wstats;

  for (const auto& [coeff, root] : obs.terms) {
    walker.on_leaf = [&](const PauliString& leaf, double constant,
                         const std::vector<PathFactor>& factors, int branches) {
      int overlap = diag_at_zero(leaf);
      if (overlap == 0) {
        ++s.stats_.zero_leaves;
        return;
      }
      s.paths_.push_back(PathTerm{coeff * constant * overlap, factors});
      ++s.stats_.per_budget_histogram[branches];
      s.stats_.max_branches = std::max(s.stats_.max_branches, branches);
    };
    walker.run(root);
  }
  s.stats_.path_count = s.paths_.size();
  s.stats_.pruned_budget = wstats.pruned_budget;
  return s;
}

double evaluate_expectation(const ExpectationSeries& s, const ParamPoint& params,
                            double adjoint_epsilon) {
  if (int(params.thetas.size()) != s.theta_count() || int(params.su4s.size()) != s.su4_count())
    throw std::invalid_argument("parameter count does not match the series");
  EvalTables tables = EvalTables::from(params);
  std::vector<double> values(s.paths().size());
  for (size_t i = 0; i < s.paths().size(); ++i)
    values[i] = eval_path(s.paths()[i], tables, adjoint_epsilon);
  return pairwise_sum(values);
}

std::pair<size_t, size_t> path_count(const ExpectationSeries& s) {
  return {s.stats().path_count, s.stats().pruned_budget};
}

std::string stats_json(const ExpectationSeries& s) {
  nlohmann::json j;
  j["n"] = s.n();
  j["budget"] = s.budget();
  j["path_count"] = s.stats().path_count;
  j["pruned_budget"] = s.stats().pruned_budget;
  j["zero_leaves"] = s.stats().zero_leaves;
  j["max_branches"] = s.stats().max_branches;
  j["per_budget_histogram"] = s.stats().per_budget_histogram;
  j["circuit_fingerprint"] = to_hex(s.circuit_fingerprint());
  j["noise_fingerprint"] = to_hex(s.noise_fingerprint());
  j["warnings"] = s.stats().warnings;
  return j.dump(2);
}

}  // namespace pathsim
