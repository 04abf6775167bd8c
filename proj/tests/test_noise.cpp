#include "pathsim/noise.hpp"

#include <cmath>

#include "dense_oracle.hpp"
#include "doctest.h"

using namespace pathsim;

namespace {

PauliString lit(const char* s) { return PauliString::from_literal(s); }

SupportMask mask(int n, std::initializer_list<int> qs) {
  SupportMask m(n);
  for (int q : qs) m.set(q);
  return m;
}

// Kraus mixture of the k-qubit uniform depolarizing channel with our
// convention rho -> (1-p) rho + p I/2^k tr(rho): equivalently a uniform
// Pauli mixture with weight p/4^k plus (1-p) identity.
std::vector<std::pair<double, dense::CMat>> depol_kraus(int k, double p) {
  std::vector<std::pair<double, dense::CMat>> kraus;
  int dim = 1 << (2 * k);
  for (int m = 0; m < dim; ++m) {
    dense::CMat pm = dense::CMat::id(1);
    int idx = m;
    std::vector<int> codes(k);
    for (int j = k - 1; j >= 0; --j) {
      codes[j] = idx & 3;
      idx >>= 2;
    }
    for (int j = 0; j < k; ++j) pm = dense::kron(pm, dense::pauli_1q(codes[j]));
    double w = p / dim + (m == 0 ? 1.0 - p : 0.0);
    kraus.push_back({w, pm});
  }
  return kraus;
}

}  // namespace

TEST_CASE("depolarizing eigenvalues match the transfer-matrix oracle") {
  for (double p : {0.0, 0.1, 0.15, 0.7, 1.0}) {
    for (int k : {1, 2}) {
      auto ptm = dense::kraus_ptm(depol_kraus(k, p), k);
      NoiseChannel ch = make_depolarizing(mask(k, k == 1 ? std::initializer_list<int>{0}
                                                         : std::initializer_list<int>{0, 1}),
                                          p);
      int dim = 1 << (2 * k);
      for (int m = 0; m < dim; ++m) {
        PauliString local = lit(local_pauli_literal(k, m).c_str());
        CHECK(eigenvalue(ch, local) == doctest::Approx(ptm[size_t(m) * dim + m]).epsilon(1e-12));
        for (int j = 0; j < dim; ++j)  // the channel is diagonal
          if (j != m) CHECK(std::abs(ptm[size_t(m) * dim + j]) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(make_depolarizing(mask(1, {0}), 1.5), std::invalid_argument);
}

TEST_CASE("eigenvalue depends only on the support restriction") {
  NoiseChannel ch = make_depolarizing(mask(2, {0}), 0.1);
  CHECK(eigenvalue(ch, lit("ZI")) == doctest::Approx(0.9));
  CHECK(eigenvalue(ch, lit("IZ")) == doctest::Approx(1.0));
  CHECK(eigenvalue(ch, lit("II")) == doctest::Approx(1.0));

  NoiseChannel two = make_depolarizing(mask(2, {0, 1}), 0.15);
  CHECK(eigenvalue(two, lit("XZ")) == doctest::Approx(0.85));

  // multiplicative across disjoint supports applied in sequence
  NoiseChannel a = make_depolarizing(mask(3, {0}), 0.1);
  NoiseChannel b = make_depolarizing(mask(3, {2}), 0.25);
  PauliString p = lit("ZIX");
  CHECK(eigenvalue(a, p) * eigenvalue(b, p) == doctest::Approx(0.9 * 0.75));
}

TEST_CASE("spectral gap") {
  CHECK(spectral_gap(make_depolarizing(mask(1, {0}), 0.25)).gamma == doctest::Approx(0.25));
  CHECK(spectral_gap(make_depolarizing(mask(1, {0}), 0.0)).gamma == doctest::Approx(1.0));

  NoiseChannel table = NoiseChannel::explicit_table(
      mask(2, {0, 1}), {{"XX", 0.8}, {"XY", 0.9}, {"ZZ", 0.9}});
  CHECK(spectral_gap(table).gamma == doctest::Approx(0.1));
  CHECK(eigenvalue(table, lit("XX")) == doctest::Approx(0.8));
  CHECK(eigenvalue(table, lit("II")) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eigenvalue(table, lit("YY")), std::out_of_range);
}

TEST_CASE("noise penalisation check") {
  CHECK(make_depolarizing(mask(1, {0}), 0.1).noise_penalisation_holds());
  CHECK_FALSE(make_depolarizing(mask(1, {0}), 0.0).noise_penalisation_holds());
  NoiseChannel fixes = NoiseChannel::explicit_table(mask(1, {0}),
                                                    {{"X", 1.0}, {"Y", 0.9}, {"Z", 0.9}});
  CHECK_FALSE(fixes.noise_penalisation_holds());
}

TEST_CASE("dephasing a full transfer matrix") {
  // already-diagonal input comes back unchanged with zero residual
  auto ptm = dense::kraus_ptm(depol_kraus(1, 0.3), 1);
  auto [ch, residual] = dephase_diagonal(ptm, mask(1, {0}));
  CHECK(residual == doctest::Approx(0.0));
  CHECK(eigenvalue(ch, lit("X")) == doctest::Approx(0.7));

  // amplitude damping: diagonal {1, sqrt(1-r), sqrt(1-r), 1-r}, residual r
  double r = 0.2;
  dense::CMat k0 = dense::CMat::zero(2), k1 = dense::CMat::zero(2);
  k0.at(0, 0) = 1;
  k0.at(1, 1) = std::sqrt(1 - r);
  k1.at(0, 1) = std::sqrt(r);
  auto ad_ptm = dense::kraus_ptm({{1.0, k0}, {1.0, k1}}, 1);
  auto [ad, ad_res] = dephase_diagonal(ad_ptm, mask(1, {0}));
  CHECK(ad_res == doctest::Approx(r));
  CHECK(eigenvalue(ad, lit("X")) == doctest::Approx(std::sqrt(1 - r)));
  CHECK(eigenvalue(ad, lit("Y")) == doctest::Approx(std::sqrt(1 - r)));
  CHECK(eigenvalue(ad, lit("Z")) == doctest::Approx(1 - r));

  // non-trace-preserving input is rejected
  auto bad = ptm;
  bad[1] = 0.5;  // identity row leak
  CHECK_THROWS_AS(dephase_diagonal(bad, mask(1, {0})), std::invalid_argument);
}

TEST_CASE("explicit table JSON round trip") {
  NoiseChannel table = NoiseChannel::explicit_table(
      mask(2, {0, 1}), {{"XX", 0.8}, {"XY", -0.25}, {"ZZ", 0.9}});
  std::string js = explicit_table_to_json(table);
  NoiseChannel back = explicit_table_from_json(mask(2, {0, 1}), js);
  CHECK(back == table);
  CHECK_THROWS_AS(explicit_table_to_json(make_depolarizing(mask(1, {0}), 0.1)),
                  std::invalid_argument);
}
