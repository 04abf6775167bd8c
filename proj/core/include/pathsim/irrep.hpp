#pragma once

#include <array>
#include <utility>

#include "pathsim/matrix4.hpp"
#include "pathsim/rng.hpp"

namespace pathsim {

// Real 15x15 matrix describing how conjugation by a two-qubit unitary mixes
// the non-identity two-qubit Paulis:
//
//   g P_k g^dag = sum_k' v[k'][k] P_k'
//
// over the fixed enumeration IX, IY, IZ, XI, XX, ..., ZZ (base-4 by letter
// with I=0, X=1, Y=2, Z=3, first qubit most significant, identity skipped:
// index = 4*a + b - 1). The enumeration order is part of the public
// contract; serialized matrices depend on it. For unitary g the matrix is
// real orthogonal.
struct AdjointMatrix {
  std::array<std::array<double, 15>, 15> v{};

  double operator()(int row, int col) const { return v[row][col]; }
  double orthogonality_defect() const;  // max |v v^T - I|
};

// Cos/sin factor of a rotation branch, evaluated as sign * cos(2 theta) or
// sign * sin(2 theta) at the indexed angle parameter.
struct TrigFactor {
  int param_index = 0;
  enum class Kind : uint8_t { Cos, Sin } kind = Kind::Cos;
  int8_t sign = 1;

  double eval(double theta) const;
};

// (cos 2theta, sin 2theta); the propagation rule for a rotation layer is
// e^{i theta A} P e^{-i theta A} = c P + s * branch_partner(A, P).
std::pair<double, double> u1_pair_coeffs(double theta);

// v[k'][k] = Re tr(P_k' g P_k g^dag) / 4 over the fixed enumeration;
// imaginary parts are discarded after checking |Im| <= 1e-9. Throws if g is
// not unitary to 1e-10 or the imaginary residue is exceeded.
AdjointMatrix su4_adjoint(const Mat4c& g);

// Haar-distributed element of U(4) via QR of a complex Gaussian matrix with
// phase-fixed diagonal. The adjoint coefficients are insensitive to the
// global phase, so U(4) and SU(4) draws are interchangeable here.
Mat4c haar_su4(RngStream& rng);

// Dense matrix of the k-th enumerated two-qubit Pauli (k in 0..14).
Mat4c two_qubit_pauli_matrix(int k);

}  // namespace pathsim
