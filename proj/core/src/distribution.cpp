#include "pathsim/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "eval_internal.hpp"
#include "gtt_internal.hpp"
#include "pathsim/util.hpp"

#include "json.hpp"

namespace pathsim {

namespace {

using detail::EvalTables;

// Generator pair: the element at the segment input edge and its image at
// the current point of the walk.
struct GenPair {
  PauliString at_edge;
  PauliString current;
};

// Remove the group directions violating a linear (mod-2) constraint on the
// current-point image. The subgroup halves per removed generator.
template <typename Pred>
void eliminate(std::vector<GenPair>& gens, Pred&& violates) {
  int pivot = -1;
  for (size_t j = 0; j < gens.size(); ++j)
    if (violates(gens[j].current)) {
      pivot = int(j);
      break;
    }
  if (pivot < 0) return;
  for (size_t j = pivot + 1; j < gens.size(); ++j)
    if (violates(gens[j].current)) {
      gens[j].at_edge = mul(gens[j].at_edge, gens[pivot].at_edge);
      gens[j].current = mul(gens[j].current, gens[pivot].current);
    }
  gens.erase(gens.begin() + pivot);
}

void intersect_with_layer_trivial(std::vector<GenPair>& gens, const Layer& l) {
  if (auto* r = std::get_if<RotationLayer>(&l)) {
    eliminate(gens, [&](const PauliString& p) { return !commutes(p, r->axis); });
  } else if (auto* h = std::get_if<HaarLayer>(&l)) {
    for (int step = 0; step < 4; ++step) {
      int q = (step < 2) ? h->a : h->b;
      bool use_x = (step % 2 == 0);
      eliminate(gens, [&](const PauliString& p) {
        return use_x ? p.x_mask().test(q) : p.z_mask().test(q);
      });
    }
  }
}

std::vector<GenPair> full_group_generators(int n) {
  std::vector<GenPair> gens;
  gens.reserve(2 * n);
  for (int j = 0; j < n; ++j) {
    gens.push_back({PauliString::pauli_x(n, j), PauliString::pauli_x(n, j)});
    gens.push_back({PauliString::pauli_z(n, j), PauliString::pauli_z(n, j)});
  }
  return gens;
}

std::vector<ContractionTerm> contract_window(std::span<const Layer> window, int n, int cap,
                                             size_t begin_for_error, size_t end_for_error) {
  std::vector<GenPair> gens = full_group_generators(n);
  for (const Layer& l : window) {
    if (auto* cl = std::get_if<CliffordLayer>(&l)) {
      for (GenPair& g : gens) g.current = cl->tableau.conjugate(g.current);
    } else {
      intersect_with_layer_trivial(gens, l);
    }
  }
  int k = int(gens.size());
  if (k > cap) throw CapExceeded(k, cap, begin_for_error, end_for_error);

  std::vector<ContractionTerm> terms;
  terms.reserve(size_t(1) << k);
  for (uint64_t subset = 0; subset < (uint64_t(1) << k); ++subset) {
    PauliString q = PauliString::identity(n);
    for (int j = 0; j < k; ++j)
      if ((subset >> j) & 1) q = mul(q, gens[j].at_edge);
    PauliString left = q.canonical();

    // Push the canonical element through the segment once more to collect
    // the exact sign and the in-segment noise eigenvalues.
    PauliString cur = left;
    double value = 1.0;
    for (const Layer& l : window) {
      if (auto* cl = std::get_if<CliffordLayer>(&l)) {
        cur = cl->tableau.conjugate(cur);
      } else if (auto* nz = std::get_if<NoiseLayer>(&l)) {
        value *= nz->channel.eigenvalue(cur);
      }
      // Parametrized layers act trivially on subgroup elements by
      // construction.
    }
    value *= cur.sign();
    terms.push_back({std::move(left), cur.canonical(), value});
  }
  return terms;
}

}  // namespace

TrivialGroup trivial_generators(std::span<const Layer> slice, int n) {
  std::vector<GenPair> gens = full_group_generators(n);
  for (const Layer& l : slice) intersect_with_layer_trivial(gens, l);
  TrivialGroup out;
  out.generators.reserve(gens.size());
  for (GenPair& g : gens) out.generators.push_back(g.at_edge.canonical());
  return out;
}

std::vector<ContractionTerm> contract_full(const CircuitIR& c, size_t layer_begin,
                                           size_t layer_end, int cap) {
  if (layer_begin > layer_end || layer_end > c.layers.size())
    throw std::invalid_argument("bad layer range in contract_full");
  std::span<const Layer> window(c.layers.data() + layer_begin, layer_end - layer_begin);
  return contract_window(window, c.n, cap, layer_begin, layer_end);
}

TruncatedDistribution build_distribution(const CircuitIR& c, int L, const DistOptions& opt) {
  require_valid(c);
  if (L < 0) throw std::invalid_argument("truncation budget must be non-negative");

  CircuitIR rc = resolved(c);
  TruncatedDistribution d;
  d.n_ = c.n;
  d.budget_ = L;
  d.theta_count_ = c.theta_count();
  d.su4_count_ = c.su4_count();

  for (const Layer& l : rc.layers)
    if (auto* nz = std::get_if<NoiseLayer>(&l))
      if (!nz->channel.noise_penalisation_holds())
        d.stats_.warnings.push_back("channel " + nz->channel.describe() +
                                    " fixes a non-trivial Pauli; decay guarantees do not apply");

  std::vector<size_t> param_pos;
  for (size_t i = 0; i < rc.layers.size(); ++i)
    if (std::holds_alternative<RotationLayer>(rc.layers[i]) ||
        std::holds_alternative<HaarLayer>(rc.layers[i]))
      param_pos.push_back(i);
  int dp = int(param_pos.size());

  // A path with at most L branch events over dp parametrized sites always
  // contains a run of floor(dp/(L+1)) consecutive trivial sites; that is
  // the longest window guaranteeing the sliding enumeration sees every
  // retained path.
  int len = (L + 1 > 0) ? dp / (L + 1) : 0;
  bool windowed = (opt.mode != DistOptions::Mode::DenseRoot) && len >= 1;

  detail::WalkStats wstats;

  if (!windowed) {
    // Dense cut at the input state: |0><0| expands over the {I,Z}^n roots,
    // each grown forward toward the measurement.
    if (c.n > 16) throw std::invalid_argument("dense-root mode limited to n <= 16");
    d.stats_.mode_used = (opt.mode == DistOptions::Mode::DenseRoot)
                             ? "dense_root"
                             : "dense_root (degenerate window)";
    d.stats_.window_len = 0;
    d.stats_.window_count = 1;

    detail::Walker walker;
    walker.layers = std::span<const Layer>(rc.layers);
    walker.heisenberg = false;
    walker.budget = L;
    walker.stats = &wstats;

    for (uint64_t zbits = 0; zbits < (uint64_t(1) << c.n); ++zbits) {
      TruncatedDistribution::Block block;
      block.value = 1.0;
      block.left.push_back({1.0, {}, 0});
      walker.on_leaf = [&](const PauliString& leaf, double constant,
                           const std::vector<PathFactor>& factors, int branches) {
        block.right.push_back({constant, factors, leaf, branches});
      };
      PauliString root(BitVec(c.n), BitVec::from_u64(c.n, zbits), 0);
      walker.run(root);
      if (!block.right.empty()) d.blocks_.push_back(std::move(block));
    }
  } else {
    d.stats_.mode_used = "bidirectional";
    d.stats_.window_len = len;

    for (int s = 0; s + len <= dp; ++s) {
      size_t begin_layer = (s == 0) ? 0 : param_pos[s - 1] + 1;
      size_t end_layer = (s + len == dp) ? rc.layers.size() : param_pos[s + len];
      std::span<const Layer> window(rc.layers.data() + begin_layer, end_layer - begin_layer);
      auto terms = contract_window(window, c.n, opt.cap, begin_layer, end_layer);
      ++d.stats_.window_count;

      detail::DedupRule dedup{len, s > 0};
      detail::Walker left_walker;
      left_walker.layers = std::span<const Layer>(rc.layers.data(), begin_layer);
      left_walker.heisenberg = true;
      left_walker.budget = L;
      left_walker.dedup = &dedup;
      left_walker.stats = &wstats;

      detail::Walker right_walker;
      right_walker.layers =
          std::span<const Layer>(rc.layers.data() + end_layer, rc.layers.size() - end_layer);
      right_walker.heisenberg = false;
      right_walker.budget = L;
      right_walker.stats = &wstats;

      for (const ContractionTerm& term : terms) {
        TruncatedDistribution::Block block;
        block.value = term.value;
        left_walker.on_leaf = [&](const PauliString& leaf, double constant,
                                  const std::vector<PathFactor>& factors, int branches) {
          int overlap = diag_at_zero(leaf);
          if (overlap == 0) {
            ++d.stats_.zero_left_leaves;
            return;
          }
          block.left.push_back({constant * overlap, factors, branches});
        };
        left_walker.run(term.left);
        if (block.left.empty()) continue;

        right_walker.on_leaf = [&](const PauliString& leaf, double constant,
                                   const std::vector<PathFactor>& factors, int branches) {
          block.right.push_back({constant, factors, leaf, branches});
        };
        right_walker.run(term.right);
        if (!block.right.empty()) d.blocks_.push_back(std::move(block));
      }
    }
  }

  d.stats_.block_count = d.blocks_.size();
  d.stats_.dedup_pruned = wstats.dedup_pruned;
  d.stats_.pruned_budget = wstats.pruned_budget;
  for (const auto& b : d.blocks_) {
    d.stats_.left_paths += b.left.size();
    d.stats_.right_paths += b.right.size();
  }
  return d;
}

namespace {

// Parameter-dependent, outcome-independent prework: per block, prefix sums
// of left-path values by branch count and the factor product of every
// right path. A query then only contracts right leaves.
struct Prepared {
  const TruncatedDistribution* d = nullptr;
  std::vector<std::vector<double>> left_prefix;  // [block][b] = sum over b_l <= b
  std::vector<std::vector<double>> right_vals;   // [block][path]
  double scale = 0.0;                            // 2^{-n}

  static Prepared from(const TruncatedDistribution& d, const ParamPoint& params) {
    if (int(params.thetas.size()) != d.theta_count() ||
        int(params.su4s.size()) != d.su4_count())
      throw std::invalid_argument("parameter count does not match the distribution");
    EvalTables tables = EvalTables::from(params);
    Prepared p;
    p.d = &d;
    p.scale = std::ldexp(1.0, -d.n());
    int L = d.budget();
    p.left_prefix.reserve(d.blocks().size());
    p.right_vals.reserve(d.blocks().size());
    for (const auto& block : d.blocks()) {
      std::vector<double> sums(size_t(L) + 1, 0.0);
      for (const auto& lp : block.left)
        sums[lp.branches] += detail::eval_path({lp.constant, lp.factors}, tables);
      for (size_t b = 1; b < sums.size(); ++b) sums[b] += sums[b - 1];
      p.left_prefix.push_back(std::move(sums));
      std::vector<double> rv;
      rv.reserve(block.right.size());
      for (const auto& rp : block.right)
        rv.push_back(detail::eval_path({rp.constant, rp.factors}, tables));
      p.right_vals.push_back(std::move(rv));
    }
    return p;
  }

  template <typename LeafFn>
  double query(LeafFn&& leaf_of) const {
    int L = d->budget();
    std::vector<double> contributions;
    contributions.reserve(d->blocks().size());
    for (size_t bi = 0; bi < d->blocks().size(); ++bi) {
      const auto& block = d->blocks()[bi];
      double acc = 0.0;
      for (size_t pi = 0; pi < block.right.size(); ++pi) {
        const auto& rp = block.right[pi];
        double leaf = leaf_of(rp.final_pauli);
        if (leaf == 0.0) continue;
        acc += right_vals[bi][pi] * leaf * left_prefix[bi][size_t(L - rp.branches)];
      }
      contributions.push_back(block.value * acc);
    }
    return scale * pairwise_sum(contributions);
  }

  double prob(uint64_t x) const {
    return query([x](const PauliString& p) { return double(diag_element(p, x)); });
  }

  double marginal(uint64_t prefix_bits, int prefix_len) const {
    int n = d->n();
    if (prefix_len < 0 || prefix_len > n) throw std::invalid_argument("bad prefix length");
    uint64_t all = (n >= 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    uint64_t fixed_mask = (prefix_len >= 64) ? ~uint64_t(0) : ((uint64_t(1) << prefix_len) - 1);
    fixed_mask &= all;
    uint64_t free_mask = all & ~fixed_mask;
    return query([&](const PauliString& p) {
      return double(marginal_sum(p, prefix_bits & fixed_mask, fixed_mask, free_mask));
    });
  }
};

}  // namespace

std::pair<double, double> clamp_conditional_pair(double m0, double m1, SampleRecord& rec) {
  if (m0 < 0.0) {
    m0 = 0.0;
    ++rec.clamp_events;
  }
  if (m1 < 0.0) {
    m1 = 0.0;
    ++rec.clamp_events;
  }
  double total = m0 + m1;
  if (total <= 0.0) {
    ++rec.uniform_fallbacks;
    return {0.5, 0.5};
  }
  return {m0 / total, m1 / total};
}

double prob_value(const TruncatedDistribution& d, uint64_t x, const ParamPoint& params) {
  return Prepared::from(d, params).prob(x);
}

double marginal_value(const TruncatedDistribution& d, uint64_t prefix_bits, int prefix_len,
                      const ParamPoint& params) {
  return Prepared::from(d, params).marginal(prefix_bits, prefix_len);
}

std::vector<double> prob_vector(const TruncatedDistribution& d, const ParamPoint& params) {
  if (d.n() > 16) throw std::invalid_argument("prob_vector limited to n <= 16");
  Prepared p = Prepared::from(d, params);
  std::vector<double> out(size_t(1) << d.n());
  for (uint64_t x = 0; x < out.size(); ++x) out[x] = p.prob(x);
  return out;
}

SampleRecord sample_bitstring(const TruncatedDistribution& d, const ParamPoint& params,
                              RngStream& rng) {
  Prepared p = Prepared::from(d, params);
  SampleRecord rec;
  uint64_t bits = 0;
  for (int q = 0; q < d.n(); ++q) {
    double m0 = p.marginal(bits, q + 1);
    double m1 = p.marginal(bits | (uint64_t(1) << q), q + 1);
    rec.marginal_calls += 2;
    auto [p0, p1] = clamp_conditional_pair(m0, m1, rec);
    bool one = rng.next_double() < p1;
    if (one) bits |= uint64_t(1) << q;
    rec.conditionals.push_back(one ? p1 : p0);
  }
  rec.bits = bits;
  return rec;
}

std::vector<double> sampling_distribution(const TruncatedDistribution& d,
                                          const ParamPoint& params) {
  if (d.n() > 16) throw std::invalid_argument("sampling_distribution limited to n <= 16");
  Prepared p = Prepared::from(d, params);
  std::vector<double> probs(size_t(1) << d.n(), 1.0);
  // Walk the conditional chain for every prefix; q(x) is the product of the
  // clamped conditionals along x's branch.
  for (int q = 0; q < d.n(); ++q) {
    for (uint64_t prefix = 0; prefix < (uint64_t(1) << q); ++prefix) {
      SampleRecord scratch;
      double m0 = p.marginal(prefix, q + 1);
      double m1 = p.marginal(prefix | (uint64_t(1) << q), q + 1);
      auto [p0, p1] = clamp_conditional_pair(m0, m1, scratch);
      uint64_t stride = uint64_t(1) << (q + 1);
      for (uint64_t x = prefix; x < probs.size(); x += stride) probs[x] *= p0;
      for (uint64_t x = prefix | (uint64_t(1) << q); x < probs.size(); x += stride)
        probs[x] *= p1;
    }
  }
  return probs;
}

std::string stats_json(const TruncatedDistribution& d) {
  nlohmann::json j;
  j["n"] = d.n();
  j["budget"] = d.budget();
  j["mode"] = d.stats().mode_used;
  j["window_len"] = d.stats().window_len;
  j["window_count"] = d.stats().window_count;
  j["block_count"] = d.stats().block_count;
  j["left_paths"] = d.stats().left_paths;
  j["right_paths"] = d.stats().right_paths;
  j["dedup_pruned"] = d.stats().dedup_pruned;
  j["pruned_budget"] = d.stats().pruned_budget;
  j["zero_left_leaves"] = d.stats().zero_left_leaves;
  j["warnings"] = d.stats().warnings;
  return j.dump(2);
}

}  // namespace pathsim
