#pragma once

// Parameter-point evaluation tables shared by the path engines. Internal.

#include <cmath>
#include <vector>

#include "pathsim/circuit.hpp"
#include "pathsim/expectation.hpp"
#include "pathsim/irrep.hpp"

namespace pathsim::detail {

struct EvalTables {
  std::vector<double> cos2, sin2;
  std::vector<AdjointMatrix> adj;

  static EvalTables from(const ParamPoint& p) {
    EvalTables t;
    t.cos2.reserve(p.thetas.size());
    t.sin2.reserve(p.thetas.size());
    for (double th : p.thetas) {
      auto [c, s] = u1_pair_coeffs(th);
      t.cos2.push_back(c);
      t.sin2.push_back(s);
    }
    t.adj.reserve(p.su4s.size());
    for (const Mat4c& g : p.su4s) t.adj.push_back(su4_adjoint(g));
    return t;
  }
};

inline double eval_path(const PathTerm& path, const EvalTables& t, double adjoint_epsilon = 0.0) {
  double v = path.constant;
  for (const PathFactor& f : path.factors) {
    if (auto* trig = std::get_if<TrigFactor>(&f)) {
      double base = trig->kind == TrigFactor::Kind::Cos ? t.cos2[trig->param_index]
                                                        : t.sin2[trig->param_index];
      v *= double(trig->sign) * base;
    } else {
      const auto& a = std::get<AdjointFactor>(f);
      double w = t.adj[a.param_index](a.row, a.col);
      if (adjoint_epsilon > 0.0 && std::abs(w) <= adjoint_epsilon) return 0.0;
      v *= w;
    }
    if (v == 0.0) return 0.0;
  }
  return v;
}

}  // namespace pathsim::detail
