#pragma once

#include <string>
#include <vector>

#include "pathsim/pauli.hpp"

namespace pathsim {

enum class GateKind { H, S, X, Y, Z, CX, CZ, SWAP };

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;  // second qubit for two-qubit gates

  bool is_two_qubit() const {
    return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP;
  }
  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string gate_name(GateKind k);

enum class Direction { Forward, Adjoint };

// Clifford unitary W as the images of the X_j/Z_j generators under
// conjugation, with exact signs. Conjugating an arbitrary Pauli multiplies
// the generator images in canonical X-then-Z order per qubit. The inverse
// image table is built eagerly at construction; tableaus are immutable
// afterwards, so concurrent reads are safe.
class CliffordTableau {
 public:
  static CliffordTableau identity(int n);
  static CliffordTableau from_gates(int n, const std::vector<Gate>& gates);

  int n() const { return n_; }

  // W p W^dag (Forward) or W^dag p W (Adjoint), exact phase.
  PauliString conjugate(const PauliString& p, Direction dir = Direction::Forward) const;

  // Tableau of "apply a, then b".
  static CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b);

  CliffordTableau inverse() const;

  const PauliString& x_image(int j) const { return x_images_[j]; }
  const PauliString& z_image(int j) const { return z_images_[j]; }

  friend bool operator==(const CliffordTableau& a, const CliffordTableau& b) {
    return a.n_ == b.n_ && a.x_images_ == b.x_images_ && a.z_images_ == b.z_images_;
  }

 private:
  CliffordTableau() = default;
  void build_inverse_images();
  static PauliString map_through(const std::vector<PauliString>& xi,
                                 const std::vector<PauliString>& zi, const PauliString& p);

  int n_ = 0;
  std::vector<PauliString> x_images_, z_images_;
  std::vector<PauliString> x_inv_images_, z_inv_images_;
};

}  // namespace pathsim
