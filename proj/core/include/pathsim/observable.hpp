#pragma once

#include <string>
#include <vector>

#include "pathsim/pauli.hpp"

namespace pathsim {

// Real linear combination of distinct Hermitian Pauli strings. The number
// of terms is the observable's rank in the Pauli basis.
struct Observable {
  int n = 0;
  std::vector<std::pair<double, PauliString>> terms;

  static Observable single(const PauliString& p, double coeff = 1.0);

  // "LIT", "-LIT", "c*LIT", terms joined by '+': e.g. "0.5*ZI + -0.25*XX".
  static Observable parse(std::string_view text, int n);

  int rank() const { return int(terms.size()); }

  // sqrt(sum c_i^2): Hilbert-Schmidt norm in the normalised operator basis.
  double normalized_hs_norm() const;
  // sum |c_i|
  double coeff_l1() const;

  void check(int circuit_n) const;  // throws on mismatch or malformed terms
};

}  // namespace pathsim
