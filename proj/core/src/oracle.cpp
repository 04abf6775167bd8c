#include "pathsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsim {

namespace {

using C = std::complex<double>;
using CVec = std::vector<C>;

// Generic dense kernels over the flattened index of a state vector (or a
// row-major density matrix treated as a vector over ket|bra bits).

void apply_1q(CVec& v, int bit, const C m[2][2]) {
  size_t mask = size_t(1) << bit;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i & mask) continue;
    C a = v[i], b = v[i | mask];
    v[i] = m[0][0] * a + m[0][1] * b;
    v[i | mask] = m[1][0] * a + m[1][1] * b;
  }
}

// 4x4 kernel; `hi` is the first block qubit (most significant of the pair).
void apply_2q(CVec& v, int hi_bit, int lo_bit, const Mat4c& m) {
  size_t hm = size_t(1) << hi_bit, lm = size_t(1) << lo_bit;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i & (hm | lm)) continue;
    size_t idx[4] = {i, i | lm, i | hm, i | hm | lm};
    C a0 = v[idx[0]], a1 = v[idx[1]], a2 = v[idx[2]], a3 = v[idx[3]];
    for (int r = 0; r < 4; ++r)
      v[idx[r]] = m[r * 4 + 0] * a0 + m[r * 4 + 1] * a1 + m[r * 4 + 2] * a2 + m[r * 4 + 3] * a3;
  }
}

// P|y> = i^phase (-1)^{z.y} |y ^ x>, applied over the given bit offset,
// optionally conjugated (i^phase -> i^-phase).
void apply_pauli_bits(CVec& v, const PauliString& p, int bit_offset, bool conj) {
  uint64_t x = p.x_mask().low64() << bit_offset;
  uint64_t z = p.z_mask().low64() << bit_offset;
  int ph = conj ? (4 - p.phase_exp()) & 3 : p.phase_exp();
  static const C phases[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  C base = phases[ph];
  CVec out(v.size());
  for (size_t y = 0; y < v.size(); ++y) {
    C amp = base * v[y];
    if (std::popcount(uint64_t(y) & z) & 1) amp = -amp;
    out[y ^ x] = amp;
  }
  v = std::move(out);
}

constexpr C I1[2][2] = {{1, 0}, {0, 1}};
constexpr C H_[2][2] = {{C(0.70710678118654752440, 0), C(0.70710678118654752440, 0)},
                        {C(0.70710678118654752440, 0), C(-0.70710678118654752440, 0)}};
constexpr C S_[2][2] = {{1, 0}, {0, C(0, 1)}};
constexpr C X_[2][2] = {{0, 1}, {1, 0}};
constexpr C Y_[2][2] = {{0, C(0, -1)}, {C(0, 1), 0}};
constexpr C Z_[2][2] = {{1, 0}, {0, -1}};

Mat4c gate_matrix_2q(GateKind k) {
  Mat4c m{};
  auto set = [&](int r, int c, C val) { m[r * 4 + c] = val; };
  switch (k) {
    case GateKind::CX:  // first (high) qubit controls
      set(0, 0, 1); set(1, 1, 1); set(2, 3, 1); set(3, 2, 1);
      break;
    case GateKind::CZ:
      set(0, 0, 1); set(1, 1, 1); set(2, 2, 1); set(3, 3, -1);
      break;
    case GateKind::SWAP:
      set(0, 0, 1); set(1, 2, 1); set(2, 1, 1); set(3, 3, 1);
      break;
    default:
      throw std::logic_error("not a two-qubit gate");
  }
  return m;
}

Mat4c conj4(const Mat4c& m) {
  Mat4c c;
  for (int i = 0; i < 16; ++i) c[i] = std::conj(m[i]);
  return c;
}

struct Evolver {
  int n;
  bool density;
  CVec v;  // statevector (2^n) or row-major density (idx = ket*2^n + bra)

  // With row-major rho[ket*dim + bra], left multiplication acts on the high
  // bits and right multiplication on the low bits.
  int ket_bit(int q) const { return density ? q + n : q; }
  int bra_bit(int q) const { return q; }

  void init_zero_state() {
    v.assign(size_t(1) << (density ? 2 * n : n), C(0, 0));
    v[0] = 1.0;
  }

  void unitary_1q(int q, const C m[2][2]) {
    apply_1q(v, ket_bit(q), m);
    if (density) {
      C mc[2][2] = {{std::conj(m[0][0]), std::conj(m[0][1])},
                    {std::conj(m[1][0]), std::conj(m[1][1])}};
      apply_1q(v, bra_bit(q), mc);
    }
  }

  void unitary_2q(int a, int b, const Mat4c& m) {
    apply_2q(v, ket_bit(a), ket_bit(b), m);
    if (density) apply_2q(v, bra_bit(a), bra_bit(b), conj4(m));
  }

  void gate(const Gate& g) {
    switch (g.kind) {
      case GateKind::H: unitary_1q(g.q0, H_); break;
      case GateKind::S: unitary_1q(g.q0, S_); break;
      case GateKind::X: unitary_1q(g.q0, X_); break;
      case GateKind::Y: unitary_1q(g.q0, Y_); break;
      case GateKind::Z: unitary_1q(g.q0, Z_); break;
      default: unitary_2q(g.q0, g.q1, gate_matrix_2q(g.kind)); break;
    }
  }

  // exp(i theta A) = cos(theta) I + i sin(theta) A for a Hermitian Pauli A.
  void rotation(const PauliString& axis, double theta) {
    C c = std::cos(theta), is = C(0, 1) * std::sin(theta);
    {
      CVec av = v;
      apply_pauli_bits(av, axis, density ? n : 0, false);
      for (size_t i = 0; i < v.size(); ++i) v[i] = c * v[i] + is * av[i];
    }
    if (density) {  // right-multiply by exp(-i theta A): bra kernel conj(A)
      CVec av = v;
      apply_pauli_bits(av, axis, 0, true);
      for (size_t i = 0; i < v.size(); ++i) v[i] = c * v[i] - is * av[i];
    }
  }

  void pauli_sandwich(const PauliString& local_full) {
    // rho -> P rho P for Hermitian P (given over all n qubits).
    apply_pauli_bits(v, local_full, n, false);
    apply_pauli_bits(v, local_full, 0, true);
  }

  void channel(const NoiseChannel& ch) {
    if (!density) throw std::logic_error("channels need the density path");
    std::vector<int> qs;
    ch.support().for_each_set([&](int q) { qs.push_back(q); });
    int k = int(qs.size());
    int dim = 1 << (2 * k);

    // Mixture weights over local Pauli conjugations. For depolarizing this
    // is (1-p) on I plus p * uniform twirl; for an explicit table it is the
    // Walsh transform of the eigenvalue vector.
    std::vector<double> weights(dim, 0.0);
    if (ch.rule() == NoiseChannel::Rule::Depolarizing) {
      double p = ch.depolarizing_p();
      for (int m = 0; m < dim; ++m) weights[m] = p / dim;
      weights[0] += 1.0 - p;
    } else {
      std::vector<double> evals(dim);
      for (int m = 0; m < dim; ++m) {
        PauliString local = PauliString::from_literal(local_pauli_literal(k, m));
        evals[m] = ch.eigenvalue(embed(local, qs));
      }
      for (int q = 0; q < dim; ++q) {
        double w = 0.0;
        PauliString pq = PauliString::from_literal(local_pauli_literal(k, q));
        for (int m = 0; m < dim; ++m) {
          PauliString pm = PauliString::from_literal(local_pauli_literal(k, m));
          w += evals[m] * (commutes(pq, pm) ? 1.0 : -1.0);
        }
        weights[q] = w / dim;
      }
    }

    CVec acc(v.size(), C(0, 0));
    for (int m = 0; m < dim; ++m) {
      if (weights[m] == 0.0) continue;
      CVec tmp = v;
      Evolver sub{n, density, std::move(tmp)};
      PauliString local = PauliString::from_literal(local_pauli_literal(k, m));
      sub.pauli_sandwich(embed(local, qs));
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += weights[m] * sub.v[i];
    }
    v = std::move(acc);
  }

  PauliString embed(const PauliString& local, const std::vector<int>& qs) const {
    BitVec x(n), z(n);
    for (int j = 0; j < local.n(); ++j) {
      if (local.x_mask().test(j)) x.set(qs[j]);
      if (local.z_mask().test(j)) z.set(qs[j]);
    }
    return PauliString(std::move(x), std::move(z), local.phase_exp());
  }

  void run(const CircuitIR& rc, const ParamPoint& params, bool noisy) {
    init_zero_state();
    for (const Layer& l : rc.layers) {
      if (auto* cl = std::get_if<CliffordLayer>(&l)) {
        for (const Gate& g : cl->gates) gate(g);
      } else if (auto* r = std::get_if<RotationLayer>(&l)) {
        rotation(r->axis, params.thetas[r->param_index]);
      } else if (auto* h = std::get_if<HaarLayer>(&l)) {
        unitary_2q(h->a, h->b, params.su4s[h->param_index]);
      } else if (auto* nz = std::get_if<NoiseLayer>(&l)) {
        if (noisy) channel(nz->channel);
      }
    }
  }

  double pauli_expectation(const PauliString& p) const {
    uint64_t x = p.x_mask().low64(), z = p.z_mask().low64();
    static const C phases[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
    C base = phases[p.phase_exp()];
    C acc = 0.0;
    size_t dim = size_t(1) << n;
    if (density) {
      // tr(P rho) = sum_y P_{y, y^x} rho[(y^x)*dim + y]
      for (size_t y = 0; y < dim; ++y) {
        C ph = base;
        if (std::popcount((y ^ x) & z) & 1) ph = -ph;
        acc += ph * v[(y ^ x) * dim + y];
      }
    } else {
      for (size_t y = 0; y < dim; ++y) {
        C ph = base;
        if (std::popcount(y & z) & 1) ph = -ph;
        acc += std::conj(v[y ^ x]) * ph * v[y];
      }
    }
    if (std::abs(acc.imag()) > 1e-9)
      throw std::runtime_error("non-real expectation of a Hermitian observable");
    return acc.real();
  }
};

Evolver make_evolver(const CircuitIR& c, const ParamPoint& params, bool noisy) {
  require_params_match(c, params);
  CircuitIR rc = resolved(c);
  bool density = noisy;
  int cap = density ? kOracleDensityCap : kOracleStatevectorCap;
  if (c.n > cap) throw std::invalid_argument("oracle size cap exceeded");
  Evolver e{c.n, density, {}};
  e.run(rc, params, noisy);
  return e;
}

}  // namespace

double exact_expectation(const CircuitIR& c, const Observable& obs, const ParamPoint& params,
                         bool noisy) {
  obs.check(c.n);
  Evolver e = make_evolver(c, params, noisy);
  double acc = 0.0;
  for (const auto& [coeff, p] : obs.terms) acc += coeff * e.pauli_expectation(p);
  return acc;
}

std::vector<double> exact_distribution(const CircuitIR& c, const ParamPoint& params, bool noisy) {
  Evolver e = make_evolver(c, params, noisy);
  size_t dim = size_t(1) << c.n;
  std::vector<double> probs(dim);
  for (size_t y = 0; y < dim; ++y) {
    if (e.density) {
      C d = e.v[y * dim + y];
      probs[y] = d.real();
    } else {
      probs[y] = std::norm(e.v[y]);
    }
  }
  return probs;
}

std::vector<std::complex<double>> exact_density(const CircuitIR& c, const ParamPoint& params,
                                                bool noisy) {
  require_params_match(c, params);
  CircuitIR rc = resolved(c);
  if (c.n > kOracleDensityCap) throw std::invalid_argument("oracle size cap exceeded");
  Evolver e{c.n, true, {}};
  e.run(rc, params, noisy);
  return e.v;
}

}  // namespace pathsim
