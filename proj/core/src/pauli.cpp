#include "pathsim/pauli.hpp"

#include <stdexcept>

namespace pathsim {

PauliString PauliString::pauli_x(int n, int q) {
  BitVec x(n), z(n);
  x.set(q);
  return PauliString(std::move(x), std::move(z), 0);
}

PauliString PauliString::pauli_y(int n, int q) {
  BitVec x(n), z(n);
  x.set(q);
  z.set(q);
  return PauliString(std::move(x), std::move(z), 1);  // Y = i*X*Z
}

PauliString PauliString::pauli_z(int n, int q) {
  BitVec x(n), z(n);
  z.set(q);
  return PauliString(std::move(x), std::move(z), 0);
}

PauliString PauliString::from_literal(std::string_view lit) {
  int sign = 1;
  if (!lit.empty() && (lit[0] == '+' || lit[0] == '-')) {
    sign = lit[0] == '-' ? -1 : 1;
    lit.remove_prefix(1);
  }
  int n = int(lit.size());
  if (n == 0) throw std::invalid_argument("empty Pauli literal");
  BitVec x(n), z(n);
  int ys = 0;
  for (int j = 0; j < n; ++j) {
    switch (lit[j]) {
      case 'I': case 'i': break;
      case 'X': case 'x': x.set(j); break;
      case 'Y': case 'y': x.set(j); z.set(j); ++ys; break;
      case 'Z': case 'z': z.set(j); break;
      default:
        throw std::invalid_argument("bad Pauli letter '" + std::string(1, lit[j]) + "'");
    }
  }
  int phase = (ys + (sign == -1 ? 2 : 0)) & 3;
  return PauliString(std::move(x), std::move(z), phase);
}

std::string PauliString::to_literal() const {
  if (!is_hermitian()) throw std::logic_error("literal requires a Hermitian Pauli");
  std::string out;
  if (sign() < 0) out += '-';
  for (int j = 0; j < n(); ++j) {
    bool xb = x_.test(j), zb = z_.test(j);
    out += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return out;
}

PauliString PauliString::restricted_to(const SupportMask& support) const {
  int k = support.popcount();
  BitVec x(k), z(k);
  int out = 0;
  support.for_each_set([&](int q) {
    if (x_.test(q)) x.set(out);
    if (z_.test(q)) z.set(out);
    ++out;
  });
  return PauliString(std::move(x), std::move(z), phase_);
}

PauliString mul(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n()) throw std::invalid_argument("Pauli size mismatch in mul");
  // Reordering Z^{z_p} past X^{x_q} contributes (-1)^{|z_p & x_q|}.
  int phase = p.phase_exp() + q.phase_exp();
  if (BitVec::and_parity(p.z_mask(), q.x_mask())) phase += 2;
  return PauliString(p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask(), phase);
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n()) throw std::invalid_argument("Pauli size mismatch in commutes");
  return BitVec::and_parity(p.x_mask(), q.z_mask()) ==
         BitVec::and_parity(p.z_mask(), q.x_mask());
}

PauliString branch_partner(const PauliString& axis, const PauliString& p) {
  if (commutes(axis, p)) throw std::invalid_argument("branch_partner requires anticommuting inputs");
  if (!axis.is_hermitian() || !p.is_hermitian())
    throw std::invalid_argument("branch_partner requires Hermitian inputs");
  PauliString q = mul(axis, p);
  return PauliString(q.x_mask(), q.z_mask(), q.phase_exp() + 1);
}

int diag_element(const PauliString& p, uint64_t x) {
  if (p.n() > 64) throw std::invalid_argument("diag_element limited to n <= 64");
  if (p.x_mask().any()) return 0;
  int s = p.sign();
  return (std::popcount(p.z_mask().low64() & x) & 1) ? -s : s;
}

int diag_at_zero(const PauliString& p) {
  if (p.x_mask().any()) return 0;
  return p.sign();
}

long long marginal_sum(const PauliString& p, uint64_t fixed_bits, uint64_t fixed_mask,
                       uint64_t free_mask) {
  if (p.n() > 64) throw std::invalid_argument("marginal_sum limited to n <= 64");
  if (fixed_mask & free_mask) throw std::invalid_argument("fixed/free sets overlap");
  uint64_t all = (p.n() >= 64) ? ~uint64_t(0) : ((uint64_t(1) << p.n()) - 1);
  if ((fixed_mask | free_mask) != all)
    throw std::invalid_argument("fixed/free sets must partition the qubits");
  if (p.x_mask().any()) return 0;
  uint64_t zm = p.z_mask().low64();
  if (zm & free_mask) return 0;  // Sum over a free Z site telescopes to zero.
  long long v = diag_element(p, fixed_bits & fixed_mask);
  return v << std::popcount(free_mask);
}

}  // namespace pathsim
