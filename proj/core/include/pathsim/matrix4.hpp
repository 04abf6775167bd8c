#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace pathsim {

// Row-major 4x4 complex matrix; the value type for two-qubit Haar blocks.
using Mat4c = std::array<std::complex<double>, 16>;

inline Mat4c mat4_identity() {
  Mat4c m{};
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = 1.0;
  return m;
}

inline Mat4c mat4_mul(const Mat4c& a, const Mat4c& b) {
  Mat4c c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      std::complex<double> aik = a[i * 4 + k];
      for (int j = 0; j < 4; ++j) c[i * 4 + j] += aik * b[k * 4 + j];
    }
  return c;
}

inline Mat4c mat4_dagger(const Mat4c& a) {
  Mat4c c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i * 4 + j] = std::conj(a[j * 4 + i]);
  return c;
}

// max_ij |(g^dag g - I)_ij|
inline double mat4_unitarity_defect(const Mat4c& g) {
  Mat4c p = mat4_mul(mat4_dagger(g), g);
  double defect = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::complex<double> want = (i == j) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(p[i * 4 + j] - want));
    }
  return defect;
}

}  // namespace pathsim
