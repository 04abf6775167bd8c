#include "pathsim/clifford.hpp"

#include <stdexcept>

namespace pathsim {

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
  }
  return "?";
}

CliffordTableau CliffordTableau::identity(int n) {
  CliffordTableau t;
  t.n_ = n;
  t.x_images_.reserve(n);
  t.z_images_.reserve(n);
  for (int j = 0; j < n; ++j) {
    t.x_images_.push_back(PauliString::pauli_x(n, j));
    t.z_images_.push_back(PauliString::pauli_z(n, j));
  }
  t.x_inv_images_ = t.x_images_;
  t.z_inv_images_ = t.z_images_;
  return t;
}

namespace {

// Conjugation action G p G^dag of a single gate, applied in place.
void apply_gate(PauliString& p, const Gate& g) {
  int n = p.n();
  auto X = [&](int q) { return PauliString::pauli_x(n, q); };
  auto Y = [&](int q) { return PauliString::pauli_y(n, q); };
  auto Z = [&](int q) { return PauliString::pauli_z(n, q); };

  int a = g.q0, b = g.q1;
  bool xa = p.x_mask().test(a), za = p.z_mask().test(a);
  bool xb = false, zb = false;
  if (g.is_two_qubit()) {
    xb = p.x_mask().test(b);
    zb = p.z_mask().test(b);
  }

  // Strip the local letters off p, then multiply back their images in
  // canonical X-then-Z order.
  BitVec x = p.x_mask(), z = p.z_mask();
  int phase = p.phase_exp();
  // Removing X^xa Z^za (and the b copies) from the canonical product leaves
  // the phase untouched: per-qubit factors commute across qubits and the
  // stored phase refers to the X-then-Z order we re-expand in.
  if (xa) x.set(a, false);
  if (za) z.set(a, false);
  if (g.is_two_qubit()) {
    if (xb) x.set(b, false);
    if (zb) z.set(b, false);
  }
  PauliString rest(std::move(x), std::move(z), phase);

  auto img = [&](const PauliString& generator_image, bool present, PauliString acc) {
    return present ? mul(acc, generator_image) : acc;
  };

  PauliString ix(PauliString::identity(n)), iz(PauliString::identity(n));
  PauliString ixb(PauliString::identity(n)), izb(PauliString::identity(n));
  switch (g.kind) {
    case GateKind::H:
      ix = Z(a); iz = X(a); break;
    case GateKind::S:
      ix = Y(a); iz = Z(a); break;
    case GateKind::X:
      ix = X(a); iz = Z(a).negated(); break;
    case GateKind::Y:
      ix = X(a).negated(); iz = Z(a).negated(); break;
    case GateKind::Z:
      ix = X(a).negated(); iz = Z(a); break;
    case GateKind::CX:
      ix = mul(X(a), X(b)); iz = Z(a); ixb = X(b); izb = mul(Z(a), Z(b)); break;
    case GateKind::CZ:
      ix = mul(X(a), Z(b)); iz = Z(a); ixb = mul(Z(a), X(b)); izb = Z(b); break;
    case GateKind::SWAP:
      ix = X(b); iz = Z(b); ixb = X(a); izb = Z(a); break;
  }

  PauliString acc = PauliString::identity(n);
  acc = img(ix, xa, acc);
  acc = img(iz, za, acc);
  if (g.is_two_qubit()) {
    acc = img(ixb, xb, acc);
    acc = img(izb, zb, acc);
  }
  p = mul(acc, rest);
}

}  // namespace

CliffordTableau CliffordTableau::from_gates(int n, const std::vector<Gate>& gates) {
  for (const Gate& g : gates) {
    if (g.q0 < 0 || g.q0 >= n || (g.is_two_qubit() && (g.q1 < 0 || g.q1 >= n)))
      throw std::invalid_argument("gate qubit index out of range");
    if (g.is_two_qubit() && g.q0 == g.q1)
      throw std::invalid_argument("two-qubit gate with duplicate qubit");
  }
  CliffordTableau t;
  t.n_ = n;
  t.x_images_.reserve(n);
  t.z_images_.reserve(n);
  for (int j = 0; j < n; ++j) {
    PauliString px = PauliString::pauli_x(n, j);
    PauliString pz = PauliString::pauli_z(n, j);
    for (const Gate& g : gates) {
      apply_gate(px, g);
      apply_gate(pz, g);
    }
    t.x_images_.push_back(std::move(px));
    t.z_images_.push_back(std::move(pz));
  }
  t.build_inverse_images();
  return t;
}

PauliString CliffordTableau::map_through(const std::vector<PauliString>& xi,
                                         const std::vector<PauliString>& zi,
                                         const PauliString& p) {
  int n = int(xi.size());
  PauliString acc = PauliString::identity(n);
  // Multiply generator images in canonical order; afterwards re-apply the
  // stored phase of p (the bare-product phase transfers unchanged).
  for (int j = 0; j < n; ++j) {
    if (p.x_mask().test(j)) acc = mul(acc, xi[j]);
    if (p.z_mask().test(j)) acc = mul(acc, zi[j]);
  }
  return PauliString(acc.x_mask(), acc.z_mask(), acc.phase_exp() + p.phase_exp());
}

PauliString CliffordTableau::conjugate(const PauliString& p, Direction dir) const {
  if (p.n() != n_) throw std::invalid_argument("Pauli size mismatch in conjugate");
  return dir == Direction::Forward ? map_through(x_images_, z_images_, p)
                                   : map_through(x_inv_images_, z_inv_images_, p);
}

CliffordTableau CliffordTableau::compose(const CliffordTableau& a, const CliffordTableau& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("tableau size mismatch in compose");
  CliffordTableau t;
  t.n_ = a.n_;
  t.x_images_.reserve(a.n_);
  t.z_images_.reserve(a.n_);
  for (int j = 0; j < a.n_; ++j) {
    t.x_images_.push_back(b.conjugate(a.x_images_[j]));
    t.z_images_.push_back(b.conjugate(a.z_images_[j]));
  }
  t.build_inverse_images();
  return t;
}

void CliffordTableau::build_inverse_images() {
  // The images form a symplectic basis; a generator G decomposes over it via
  // anticommutation with the dual partners. Signs are then fixed by one
  // forward conjugation per generator.
  x_inv_images_.clear();
  z_inv_images_.clear();
  auto preimage = [&](const PauliString& target) {
    PauliString acc = PauliString::identity(n_);
    for (int k = 0; k < n_; ++k) {
      // Coefficient of X_k is given by anticommutation with image(Z_k), and
      // vice versa.
      if (!commutes(target, z_images_[k])) acc = mul(acc, PauliString::pauli_x(n_, k));
      if (!commutes(target, x_images_[k])) acc = mul(acc, PauliString::pauli_z(n_, k));
    }
    // The preimage of a Hermitian generator is Hermitian; only the sign is
    // left to determine.
    PauliString herm = acc.canonical();
    if (map_through(x_images_, z_images_, herm) == target) return herm;
    herm.negate();
    if (map_through(x_images_, z_images_, herm) != target)
      throw std::logic_error("tableau inverse reconstruction failed");
    return herm;
  };
  for (int j = 0; j < n_; ++j) {
    x_inv_images_.push_back(preimage(PauliString::pauli_x(n_, j)));
    z_inv_images_.push_back(preimage(PauliString::pauli_z(n_, j)));
  }
}

CliffordTableau CliffordTableau::inverse() const {
  CliffordTableau t;
  t.n_ = n_;
  t.x_images_ = x_inv_images_;
  t.z_images_ = z_inv_images_;
  t.x_inv_images_ = x_images_;
  t.z_inv_images_ = z_images_;
  return t;
}

}  // namespace pathsim
