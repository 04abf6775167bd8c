#pragma once

// Test-only dense complex-matrix oracle, independent of the symplectic
// implementation: Pauli matrices are assembled from the (x, z, phase)
// definition by Kronecker products, gates from their 2x2/4x4 entries, and
// channels from Kraus mixtures. Everything the fast path computes can be
// cross-checked against literal matrix algebra here.

#include <complex>
#include <random>
#include <vector>

#include "pathsim/clifford.hpp"
#include "pathsim/pauli.hpp"

namespace dense {

using C = std::complex<double>;

struct CMat {
  int dim = 0;
  std::vector<C> a;  // row-major

  static CMat zero(int d) { return {d, std::vector<C>(size_t(d) * d, C(0, 0))}; }
  static CMat id(int d) {
    CMat m = zero(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
  C& at(int r, int c) { return a[size_t(r) * dim + c]; }
  const C& at(int r, int c) const { return a[size_t(r) * dim + c]; }
};

inline CMat matmul(const CMat& x, const CMat& y) {
  CMat z = CMat::zero(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int k = 0; k < x.dim; ++k) {
      C v = x.at(i, k);
      if (v == C(0, 0)) continue;
      for (int j = 0; j < x.dim; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

inline CMat dagger(const CMat& x) {
  CMat z = CMat::zero(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j) z.at(i, j) = std::conj(x.at(j, i));
  return z;
}

inline CMat kron(const CMat& hi, const CMat& lo) {
  CMat z = CMat::zero(hi.dim * lo.dim);
  for (int i = 0; i < hi.dim; ++i)
    for (int j = 0; j < hi.dim; ++j)
      for (int k = 0; k < lo.dim; ++k)
        for (int l = 0; l < lo.dim; ++l)
          z.at(i * lo.dim + k, j * lo.dim + l) = hi.at(i, j) * lo.at(k, l);
  return z;
}

inline CMat scaled(CMat x, C s) {
  for (C& v : x.a) v *= s;
  return x;
}

inline CMat add(const CMat& x, const CMat& y) {
  CMat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

inline double max_abs_diff(const CMat& x, const CMat& y) {
  double d = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

inline CMat pauli_1q(int code) {  // 0..3 = I, X, Y, Z
  CMat m = CMat::zero(2);
  switch (code) {
    case 0: m.at(0, 0) = 1; m.at(1, 1) = 1; break;
    case 1: m.at(0, 1) = 1; m.at(1, 0) = 1; break;
    case 2: m.at(0, 1) = C(0, -1); m.at(1, 0) = C(0, 1); break;
    case 3: m.at(0, 0) = 1; m.at(1, 1) = -1; break;
  }
  return m;
}

// i^phase * prod_q X_q^{x} Z_q^{z}; qubit 0 at the least significant bit.
inline CMat pauli_matrix(const pathsim::PauliString& p) {
  CMat m = CMat::id(1);
  for (int q = 0; q < p.n(); ++q) {
    CMat local = CMat::id(2);
    if (p.x_mask().test(q)) local = pauli_1q(1);
    if (p.z_mask().test(q)) local = matmul(local, pauli_1q(3));
    m = kron(local, m);
  }
  static const C phases[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  return scaled(m, phases[p.phase_exp()]);
}

inline CMat embed_1q(const CMat& g, int q, int n) {
  CMat m = CMat::id(1);
  for (int j = 0; j < n; ++j) m = kron(j == q ? g : CMat::id(2), m);
  return m;
}

// 4x4 matrix indexed with qubit a as the high bit, embedded on n qubits.
inline CMat embed_2q(const CMat& g4, int a, int b, int n) {
  int dim = 1 << n;
  CMat m = CMat::zero(dim);
  for (int y = 0; y < dim; ++y) {
    int ya = (y >> a) & 1, yb = (y >> b) & 1;
    int col = (ya << 1) | yb;
    for (int r = 0; r < 4; ++r) {
      C v = g4.at(r, col);
      if (v == C(0, 0)) continue;
      int yp = y;
      yp = (yp & ~(1 << a)) | (((r >> 1) & 1) << a);
      yp = (yp & ~(1 << b)) | ((r & 1) << b);
      m.at(yp, y) += v;
    }
  }
  return m;
}

inline CMat gate_unitary(const pathsim::Gate& g, int n) {
  using pathsim::GateKind;
  double s = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H: {
      CMat h = CMat::zero(2);
      h.at(0, 0) = s; h.at(0, 1) = s; h.at(1, 0) = s; h.at(1, 1) = -s;
      return embed_1q(h, g.q0, n);
    }
    case GateKind::S: {
      CMat m = CMat::zero(2);
      m.at(0, 0) = 1; m.at(1, 1) = C(0, 1);
      return embed_1q(m, g.q0, n);
    }
    case GateKind::X: return embed_1q(pauli_1q(1), g.q0, n);
    case GateKind::Y: return embed_1q(pauli_1q(2), g.q0, n);
    case GateKind::Z: return embed_1q(pauli_1q(3), g.q0, n);
    case GateKind::CX: {
      CMat m = CMat::zero(4);
      m.at(0, 0) = 1; m.at(1, 1) = 1; m.at(2, 3) = 1; m.at(3, 2) = 1;
      return embed_2q(m, g.q0, g.q1, n);
    }
    case GateKind::CZ: {
      CMat m = CMat::id(4);
      m.at(3, 3) = -1;
      return embed_2q(m, g.q0, g.q1, n);
    }
    case GateKind::SWAP: {
      CMat m = CMat::zero(4);
      m.at(0, 0) = 1; m.at(1, 2) = 1; m.at(2, 1) = 1; m.at(3, 3) = 1;
      return embed_2q(m, g.q0, g.q1, n);
    }
  }
  return CMat::id(1 << n);
}

inline CMat gates_unitary(const std::vector<pathsim::Gate>& gates, int n) {
  CMat u = CMat::id(1 << n);
  for (const auto& g : gates) u = matmul(gate_unitary(g, n), u);  // apply in order
  return u;
}

inline CMat conj_by(const CMat& u, const CMat& p) { return matmul(matmul(u, p), dagger(u)); }

// Pauli transfer matrix of a channel given as a Kraus mixture, over the
// local base-4 Pauli enumeration (I..Z / II..ZZ), entries tr(P_i E(P_j))/2^k.
inline std::vector<double> kraus_ptm(const std::vector<std::pair<double, CMat>>& kraus, int k) {
  int dim = 1 << (2 * k);
  // First letter of the local literal is the high tensor factor.
  auto local_pauli = [&](int idx) {
    std::vector<int> codes(k);
    for (int j = k - 1; j >= 0; --j) {
      codes[j] = idx & 3;
      idx >>= 2;
    }
    CMat out = CMat::id(1);
    for (int j = 0; j < k; ++j) out = kron(out, pauli_1q(codes[j]));
    return out;
  };
  std::vector<double> ptm(size_t(dim) * dim, 0.0);
  for (int j = 0; j < dim; ++j) {
    CMat pj = local_pauli(j);
    CMat out = CMat::zero(1 << k);
    for (const auto& [w, m] : kraus) out = add(out, scaled(conj_by(m, pj), C(w, 0)));
    for (int i = 0; i < dim; ++i) {
      CMat pi = local_pauli(i);
      C tr = 0.0;
      CMat prod = matmul(pi, out);
      for (int r = 0; r < prod.dim; ++r) tr += prod.at(r, r);
      ptm[size_t(i) * dim + j] = tr.real() / double(1 << k);
    }
  }
  return ptm;
}

inline pathsim::PauliString random_pauli(int n, std::mt19937_64& rng, bool hermitian = true) {
  std::uniform_int_distribution<int> bit(0, 1);
  pathsim::BitVec x(n), z(n);
  for (int q = 0; q < n; ++q) {
    x.set(q, bit(rng));
    z.set(q, bit(rng));
  }
  pathsim::PauliString raw(x, z, 0);
  int phase = hermitian ? (raw.y_count() + 2 * bit(rng)) & 3
                        : std::uniform_int_distribution<int>(0, 3)(rng);
  return pathsim::PauliString(x, z, phase);
}

}  // namespace dense
