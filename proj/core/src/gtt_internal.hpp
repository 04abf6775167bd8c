#pragma once

// Shared recursive tree growth for the path engines. Walks a slice of
// resolved layers in either direction, branching at parametrized layers
// where the operator transforms non-trivially, and hands every surviving
// leaf to a callback. Not part of the installed API.

#include <functional>
#include <span>
#include <vector>

#include "pathsim/circuit.hpp"
#include "pathsim/expectation.hpp"

namespace pathsim::detail {

// Index of a two-qubit Pauli on block (a, b) in the fixed 15-element
// enumeration, or -1 when the operator is the identity there.
inline int block_index(const PauliString& p, int a, int b) {
  auto letter = [&](int q) {
    bool xb = p.x_mask().test(q), zb = p.z_mask().test(q);
    return xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
  };
  return letter(a) * 4 + letter(b) - 1;
}

// Rebuild a path operator with new letters on block (a, b); the canonical
// (+1 sign) representative is returned, the caller extracts the old sign.
inline PauliString with_block_letters(const PauliString& p, int a, int b, int index) {
  BitVec x = p.x_mask(), z = p.z_mask();
  int code_a = (index + 1) >> 2, code_b = (index + 1) & 3;
  auto put = [&](int q, int code) {
    x.set(q, code == 1 || code == 2);
    z.set(q, code == 2 || code == 3);
  };
  put(a, code_a);
  put(b, code_b);
  PauliString s(std::move(x), std::move(z), 0);
  return PauliString(s.x_mask(), s.z_mask(), s.y_count());
}

// Prunes left-tree branches whose inclusion belongs to an earlier window:
// the parametrized site adjacent to the window must branch, and no run of
// `len` consecutive trivial parametrized sites may appear further out.
struct DedupRule {
  int len = 0;
  bool require_first_branch = false;
};

struct WalkStats {
  size_t pruned_budget = 0;
  size_t dedup_pruned = 0;
};

// on_leaf(p, constant, factors, branches_used)
using LeafFn =
    std::function<void(const PauliString&, double, const std::vector<PathFactor>&, int)>;

struct Walker {
  std::span<const Layer> layers;
  bool heisenberg = true;  // reverse-time walk with adjoint conjugation
  int budget = 0;
  const DedupRule* dedup = nullptr;
  WalkStats* stats = nullptr;
  LeafFn on_leaf;

  void run(const PauliString& root) {
    std::vector<PathFactor> factors;
    factors.reserve(budget);
    descend(0, root, 1.0, factors, budget, 0, true);
  }

 private:
  const Layer& layer_at(size_t step) const {
    return heisenberg ? layers[layers.size() - 1 - step] : layers[step];
  }

  void descend(size_t step, PauliString p, double constant, std::vector<PathFactor>& factors,
               int budget_left, int trivial_run, bool first_site) {
    for (; step < layers.size(); ++step) {
      const Layer& l = layer_at(step);
      if (auto* cl = std::get_if<CliffordLayer>(&l)) {
        p = cl->tableau.conjugate(p,
                                  heisenberg ? Direction::Adjoint : Direction::Forward);
      } else if (auto* nz = std::get_if<NoiseLayer>(&l)) {
        constant *= nz->channel.eigenvalue(p);
        if (constant == 0.0) return;
      } else if (auto* r = std::get_if<RotationLayer>(&l)) {
        if (commutes(r->axis, p)) {
          if (dedup) {
            if (first_site && dedup->require_first_branch) {
              if (stats) ++stats->dedup_pruned;
              return;
            }
            if (++trivial_run >= dedup->len) {
              if (stats) ++stats->dedup_pruned;
              return;
            }
          }
          first_site = false;
          continue;
        }
        if (budget_left == 0) {
          if (stats) ++stats->pruned_budget;
          return;
        }
        first_site = false;
        trivial_run = 0;
        // sin branch sign flips in the Heisenberg direction:
        //   U^dag p U = cos(2t) p - sin(2t) * (i axis p)
        int8_t sin_sign = heisenberg ? int8_t(-1) : int8_t(1);
        factors.push_back(TrigFactor{r->param_index, TrigFactor::Kind::Cos, 1});
        descend(step + 1, p, constant, factors, budget_left - 1, 0, false);
        factors.back() = TrigFactor{r->param_index, TrigFactor::Kind::Sin, sin_sign};
        descend(step + 1, branch_partner(r->axis, p), constant, factors, budget_left - 1, 0,
                false);
        factors.pop_back();
        return;
      } else if (auto* h = std::get_if<HaarLayer>(&l)) {
        int k_in = block_index(p, h->a, h->b);
        if (k_in < 0) {
          if (dedup) {
            if (first_site && dedup->require_first_branch) {
              if (stats) ++stats->dedup_pruned;
              return;
            }
            if (++trivial_run >= dedup->len) {
              if (stats) ++stats->dedup_pruned;
              return;
            }
          }
          first_site = false;
          continue;
        }
        if (budget_left == 0) {
          if (stats) ++stats->pruned_budget;
          return;
        }
        double signed_constant = constant * p.sign();
        for (int k_out = 0; k_out < 15; ++k_out) {
          int row = heisenberg ? k_in : k_out;
          int col = heisenberg ? k_out : k_in;
          factors.push_back(AdjointFactor{h->param_index, row, col});
          descend(step + 1, with_block_letters(p, h->a, h->b, k_out), signed_constant, factors,
                  budget_left - 1, 0, false);
          factors.pop_back();
        }
        return;
      }
    }
    on_leaf(p, constant, factors, budget - budget_left);
  }
};

}  // namespace pathsim::detail
