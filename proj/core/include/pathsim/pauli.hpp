#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pathsim/bitvec.hpp"

namespace pathsim {

// n-qubit Pauli operator in binary symplectic form with exact phase:
//
//   operator = i^phase_exp * prod_j X_j^{x(j)} Z_j^{z(j)}
//
// phase_exp is the power of i multiplying the bare X-then-Z product per
// qubit (canonical order). A string is Hermitian iff phase_exp and the
// number of Y sites (x&z) agree mod 2; for Hermitian strings sign() gives
// the +-1 prefactor relative to the tensor product of I/X/Y/Z letters.
//
// Operators are stored unnormalised; the 2^{-n}-style factors of an
// orthonormal operator basis appear explicitly in the engines.
class PauliString {
 public:
  PauliString() = default;

  static PauliString identity(int n) { return PauliString(BitVec(n), BitVec(n), 0); }

  PauliString(BitVec x, BitVec z, int phase_exp)
      : x_(std::move(x)), z_(std::move(z)), phase_(uint8_t(phase_exp & 3)) {}

  // Single-letter constructors.
  static PauliString pauli_x(int n, int q);
  static PauliString pauli_y(int n, int q);
  static PauliString pauli_z(int n, int q);

  // Literal over {I,X,Y,Z} with optional leading sign; leftmost char is
  // qubit 0 ("-YZI" = -(Y (x) Z (x) I)).
  static PauliString from_literal(std::string_view lit);
  std::string to_literal() const;

  int n() const { return x_.size(); }
  const BitVec& x_mask() const { return x_; }
  const BitVec& z_mask() const { return z_; }
  int phase_exp() const { return phase_; }

  bool is_identity() const { return x_.none() && z_.none() && phase_ == 0; }
  bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }

  int y_count() const { return (x_ & z_).popcount(); }
  int weight() const { return (x_ | z_).popcount(); }
  SupportMask support() const { return x_ | z_; }

  bool is_hermitian() const { return ((phase_ - y_count()) & 1) == 0; }

  // +1 or -1 relative to the letters product; only valid for Hermitian strings.
  int sign() const { return ((phase_ - y_count()) & 3) == 0 ? 1 : -1; }

  PauliString negated() const { return PauliString(x_, z_, phase_ + 2); }

  // Hermitian representative with sign +1 and the same (x, z) masks.
  PauliString canonical() const { return PauliString(x_, z_, y_count()); }

  void negate() { phase_ = uint8_t((phase_ + 2) & 3); }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  size_t hash() const { return x_.hash() * 31 + z_.hash() * 7 + phase_; }

  // Restriction to the qubits of `support`, renumbered in increasing qubit
  // order; phase carried over unchanged.
  PauliString restricted_to(const SupportMask& support) const;

 private:
  BitVec x_, z_;
  uint8_t phase_ = 0;
};

// Exact matrix product p*q with phase tracking mod 4. Throws on size mismatch.
PauliString mul(const PauliString& p, const PauliString& q);

// True iff pq = qp (binary symplectic form).
bool commutes(const PauliString& p, const PauliString& q);

// Rotation partner q = i*axis*p, for Hermitian anticommuting inputs:
//   e^{i theta axis} p e^{-i theta axis} = cos(2 theta) p + sin(2 theta) q.
// The signs follow from the product algebra; e.g. with the standard Y
// convention e^{iZt} X e^{-iZt} = cos(2t) X - sin(2t) Y, so the partner of
// (Z, X) is -Y. Throws if the inputs commute or are not Hermitian.
PauliString branch_partner(const PauliString& axis, const PauliString& p);

// <x|p|x> for Hermitian p: 0 unless the X mask is empty, else
// sign(p) * (-1)^{|z & x|}. Requires n <= 64.
int diag_element(const PauliString& p, uint64_t x);

// <0...0|p|0...0>; any n.
int diag_at_zero(const PauliString& p);

// Sum of diag_element(p, y) over all completions y of the fixed bits with
// the `free_mask` bits ranging over {0,1}. fixed_mask and free_mask must
// partition the qubits. Result is 0 unless p's X mask is empty and its Z
// mask avoids the free qubits; otherwise sign * (-1)^{z.x_fixed} * 2^|free|.
long long marginal_sum(const PauliString& p, uint64_t fixed_bits, uint64_t fixed_mask,
                       uint64_t free_mask);

}  // namespace pathsim
