#include "pathsim/irrep.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace pathsim {

namespace {

using C = std::complex<double>;

// Single-qubit Pauli entries; letter codes 0..3 = I, X, Y, Z.
constexpr C kPauli1[4][2][2] = {
    {{C(1, 0), C(0, 0)}, {C(0, 0), C(1, 0)}},
    {{C(0, 0), C(1, 0)}, {C(1, 0), C(0, 0)}},
    {{C(0, 0), C(0, -1)}, {C(0, 1), C(0, 0)}},
    {{C(1, 0), C(0, 0)}, {C(0, 0), C(-1, 0)}},
};

Mat4c kron1(int a, int b) {
  Mat4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m[(i * 2 + k) * 4 + (j * 2 + l)] = kPauli1[a][i][j] * kPauli1[b][k][l];
  return m;
}

const std::array<Mat4c, 15>& pauli_table() {
  static const std::array<Mat4c, 15> table = [] {
    std::array<Mat4c, 15> t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        int idx = a * 4 + b - 1;
        if (idx < 0) continue;
        t[idx] = kron1(a, b);
      }
    return t;
  }();
  return table;
}

}  // namespace

Mat4c two_qubit_pauli_matrix(int k) {
  if (k < 0 || k >= 15) throw std::out_of_range("two-qubit Pauli index out of range");
  return pauli_table()[k];
}

double AdjointMatrix::orthogonality_defect() const {
  double defect = 0.0;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 15; ++k) dot += v[i][k] * v[j][k];
      defect = std::max(defect, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  return defect;
}

double TrigFactor::eval(double theta) const {
  double t = 2.0 * theta;
  return double(sign) * (kind == Kind::Cos ? std::cos(t) : std::sin(t));
}

std::pair<double, double> u1_pair_coeffs(double theta) {
  return {std::cos(2.0 * theta), std::sin(2.0 * theta)};
}

AdjointMatrix su4_adjoint(const Mat4c& g) {
  if (mat4_unitarity_defect(g) > 1e-10)
    throw std::invalid_argument("su4_adjoint requires a unitary input (1e-10)");
  const auto& paulis = pauli_table();
  Mat4c gd = mat4_dagger(g);
  AdjointMatrix out;
  for (int k = 0; k < 15; ++k) {
    Mat4c conj = mat4_mul(mat4_mul(g, paulis[k]), gd);  // g P_k g^dag
    for (int kp = 0; kp < 15; ++kp) {
      // tr(P_k' conj)/4. Each Pauli has one non-zero entry per row, so the
      // trace touches four terms.
      const Mat4c& p = paulis[kp];
      C tr = 0.0;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          if (p[r * 4 + c] != C(0, 0)) tr += p[r * 4 + c] * conj[c * 4 + r];
      if (std::abs(tr.imag()) > 1e-9 * 4.0)
        throw std::runtime_error("adjoint coefficient has imaginary residue above tolerance");
      out.v[kp][k] = tr.real() / 4.0;
    }
  }
  return out;
}

Mat4c haar_su4(RngStream& rng) {
  Eigen::Matrix4cd z;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      z(i, j) = C(rng.next_normal(), rng.next_normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::Matrix4cd> qr(z);
  Eigen::Matrix4cd q = qr.householderQ();
  Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) {
    C d = r(j, j);
    C phase = (std::abs(d) > 0.0) ? d / std::abs(d) : C(1, 0);
    q.col(j) *= phase;
  }
  Mat4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i * 4 + j] = q(i, j);
  return out;
}

}  // namespace pathsim
