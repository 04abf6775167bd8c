#include "pathsim/pauli.hpp"

#include <random>

#include "dense_oracle.hpp"
#include "doctest.h"

using namespace pathsim;

namespace {
PauliString lit(const char* s) { return PauliString::from_literal(s); }
}

TEST_CASE("single-qubit products carry exact phases") {
  // X*Y = iZ, Y*X = -iZ, X*X = I
  PauliString xy = mul(lit("X"), lit("Y"));
  CHECK(xy.x_mask().none());
  CHECK(xy.z_mask().test(0));
  CHECK(xy.phase_exp() == 1);

  PauliString yx = mul(lit("Y"), lit("X"));
  CHECK(yx.phase_exp() == 3);

  CHECK(mul(lit("X"), lit("X")) == PauliString::identity(1));

  // (X(x)Z) * (Z(x)Z) = -i (Y(x)I)
  PauliString p = mul(lit("XZ"), lit("ZZ"));
  CHECK(p.x_mask().test(0));
  CHECK(p.z_mask().test(0));
  CHECK(!p.x_mask().test(1));
  CHECK(!p.z_mask().test(1));
  // -iY = i^3 * (iXZ)/i ... compare against the dense oracle instead
  dense::CMat want = dense::scaled(dense::pauli_matrix(lit("YI")), dense::C(0, -1));
  CHECK(dense::max_abs_diff(dense::pauli_matrix(p), want) == doctest::Approx(0.0));
}

TEST_CASE("literal round trip and hermiticity") {
  for (const char* s : {"I", "X", "-YZI", "XYZ", "ZZZZ", "-IIII"}) {
    PauliString p = lit(s);
    CHECK(p.is_hermitian());
    CHECK(p.to_literal() == (s[0] == '+' ? s + 1 : s));
  }
  CHECK(lit("Y").phase_exp() == 1);
  CHECK(lit("-Y").sign() == -1);
  CHECK_THROWS_AS(lit("Q"), std::invalid_argument);
  CHECK_THROWS_AS(lit(""), std::invalid_argument);
}

TEST_CASE("commutes via the symplectic form") {
  CHECK_FALSE(commutes(lit("X"), lit("Z")));
  CHECK(commutes(lit("XX"), lit("ZZ")));
  CHECK(commutes(lit("IZ"), lit("XI")));
  CHECK_THROWS_AS(commutes(lit("X"), lit("XX")), std::invalid_argument);
}

TEST_CASE("branch partner matches the conjugation oracle on fixed cases") {
  CHECK(branch_partner(lit("Z"), lit("X")) == lit("-Y"));
  CHECK(branch_partner(lit("Z"), lit("Y")) == lit("X"));
  CHECK(branch_partner(lit("X"), lit("Z")) == lit("Y"));
  CHECK_THROWS_AS(branch_partner(lit("Z"), lit("Z")), std::invalid_argument);
  CHECK_THROWS_AS(branch_partner(lit("ZZ"), lit("XX")), std::invalid_argument);
}

TEST_CASE("rotation law e^{i t A} P e^{-i t A} = cos(2t) P + sin(2t) (iAP)") {
  std::mt19937_64 rng(12);
  int checked = 0;
  while (checked < 50) {
    int n = 1 + int(rng() % 3);
    PauliString a = dense::random_pauli(n, rng);
    PauliString p = dense::random_pauli(n, rng);
    if (commutes(a, p)) continue;
    ++checked;
    PauliString q = branch_partner(a, p);
    CHECK(q.is_hermitian());
    CHECK_FALSE(commutes(a, q));

    double theta = 0.37 + 0.11 * double(checked);
    // exp(i theta A) densely via cos I + i sin A
    dense::CMat am = dense::pauli_matrix(a.canonical());
    double sgn = a.sign();
    dense::CMat u = dense::add(dense::scaled(dense::CMat::id(am.dim), std::cos(theta)),
                               dense::scaled(am, dense::C(0, sgn * std::sin(theta))));
    dense::CMat lhs = dense::conj_by(u, dense::pauli_matrix(p));
    dense::CMat rhs = dense::add(dense::scaled(dense::pauli_matrix(p), std::cos(2 * theta)),
                                 dense::scaled(dense::pauli_matrix(q), std::sin(2 * theta)));
    CHECK(dense::max_abs_diff(lhs, rhs) < 1e-12);

    // double application returns to -P modulo the sign law
    PauliString q2 = branch_partner(a, q);
    dense::CMat neg_p = dense::scaled(dense::pauli_matrix(p), -1.0);
    CHECK(dense::max_abs_diff(dense::pauli_matrix(q2), neg_p) < 1e-12);
  }
}

TEST_CASE("product and commutation agree with dense matrices on random pairs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + int(rng() % 4);
    PauliString p = dense::random_pauli(n, rng, false);
    PauliString q = dense::random_pauli(n, rng, false);
    PauliString r = mul(p, q);
    dense::CMat want = dense::matmul(dense::pauli_matrix(p), dense::pauli_matrix(q));
    CHECK(dense::max_abs_diff(dense::pauli_matrix(r), want) == doctest::Approx(0.0));

    dense::CMat pq = want;
    dense::CMat qp = dense::matmul(dense::pauli_matrix(q), dense::pauli_matrix(p));
    CHECK(commutes(p, q) == (dense::max_abs_diff(pq, qp) < 1e-12));
  }
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + int(rng() % 4);
    PauliString a = dense::random_pauli(n, rng, false);
    PauliString b = dense::random_pauli(n, rng, false);
    PauliString c = dense::random_pauli(n, rng, false);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    // inverse: P^dag P = I; for i^k X^x Z^z the inverse flips the phase and
    // the reordering sign
    PauliString inv(a.x_mask(), a.z_mask(),
                    (4 - a.phase_exp() + 2 * ((a.x_mask() & a.z_mask()).popcount() % 2)) & 3);
    CHECK(mul(inv, a) == PauliString::identity(n));
  }
}

TEST_CASE("diagonal elements and marginals") {
  CHECK(diag_element(lit("Z"), 0b1) == -1);
  CHECK(diag_element(lit("X"), 0b0) == 0);
  CHECK(diag_element(lit("ZI"), 0b01) == -1);  // x = "10" as a string: qubit 0 set
  CHECK(diag_at_zero(lit("-ZZ")) == -1);

  // marginal over qubit 1 with qubit 0 fixed to 0
  CHECK(marginal_sum(lit("ZI"), 0b00, 0b01, 0b10) == 2);
  CHECK(marginal_sum(lit("IZ"), 0b00, 0b01, 0b10) == 0);
  CHECK(marginal_sum(lit("XI"), 0b00, 0b01, 0b10) == 0);
  CHECK_THROWS_AS(marginal_sum(lit("ZI"), 0, 0b01, 0b01), std::invalid_argument);

  // sum_x <x|P|x> = 2^n [P == I]
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + int(rng() % 4);
    PauliString p = dense::random_pauli(n, rng);
    long long total = 0;
    for (uint64_t x = 0; x < (uint64_t(1) << n); ++x) total += diag_element(p, x);
    CHECK(total == (p.is_identity_up_to_phase() ? p.sign() * (1 << n) : 0));
    // telescoping: fixing one more bit splits the marginal
    uint64_t all = (uint64_t(1) << n) - 1;
    long long whole = marginal_sum(p, 0, 0, all);
    long long split = marginal_sum(p, 0, 1, all & ~1ull) + marginal_sum(p, 1, 1, all & ~1ull);
    CHECK(whole == split);
  }
}
