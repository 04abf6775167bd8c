#include "pathsim/observable.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace pathsim {

Observable Observable::single(const PauliString& p, double coeff) {
  Observable o;
  o.n = p.n();
  o.terms.emplace_back(coeff, p);
  return o;
}

Observable Observable::parse(std::string_view text, int n) {
  Observable o;
  o.n = n;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find('+', pos);
    std::string_view piece = text.substr(pos, next == std::string_view::npos ? next : next - pos);
    pos = next == std::string_view::npos ? text.size() : next + 1;

    size_t b = piece.find_first_not_of(" \t");
    size_t e = piece.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw std::invalid_argument("empty observable term");
    piece = piece.substr(b, e - b + 1);

    double coeff = 1.0;
    if (auto star = piece.find('*'); star != std::string_view::npos) {
      coeff = std::stod(std::string(piece.substr(0, star)));
      piece = piece.substr(star + 1);
      size_t b2 = piece.find_first_not_of(" \t");
      piece = piece.substr(b2 == std::string_view::npos ? piece.size() : b2);
    }
    PauliString p = PauliString::from_literal(piece);
    if (p.sign() < 0) {
      coeff = -coeff;
      p = p.canonical();
    }
    if (p.n() != n) throw std::invalid_argument("observable literal must cover all qubits");
    o.terms.emplace_back(coeff, p);
  }
  o.check(n);
  return o;
}

double Observable::normalized_hs_norm() const {
  double s = 0.0;
  for (const auto& [c, p] : terms) s += c * c;
  return std::sqrt(s);
}

double Observable::coeff_l1() const {
  double s = 0.0;
  for (const auto& [c, p] : terms) s += std::abs(c);
  return s;
}

void Observable::check(int circuit_n) const {
  if (n != circuit_n) throw std::invalid_argument("observable width mismatch");
  if (terms.empty()) throw std::invalid_argument("observable has no terms");
  std::set<size_t> seen;
  for (const auto& [c, p] : terms) {
    if (p.n() != n) throw std::invalid_argument("observable term width mismatch");
    if (!p.is_hermitian()) throw std::invalid_argument("observable terms must be Hermitian");
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite observable coefficient");
    if (!seen.insert(p.canonical().hash() * 2 + (p.sign() < 0)).second)
      throw std::invalid_argument("observable terms must be distinct");
  }
}

}  // namespace pathsim
