#include "pathsim/irrep.hpp"

#include <cmath>

#include "doctest.h"
#include "pathsim/rng.hpp"

using namespace pathsim;

TEST_CASE("u1 pair coefficients") {
  auto [c0, s0] = u1_pair_coeffs(0.0);
  CHECK(c0 == doctest::Approx(1.0));
  CHECK(s0 == doctest::Approx(0.0));

  auto [c1, s1] = u1_pair_coeffs(M_PI / 4);
  CHECK(c1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s1 == doctest::Approx(1.0));

  auto [c2, s2] = u1_pair_coeffs(M_PI / 8);
  CHECK(c2 == doctest::Approx(0.7071067811865476).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(0.7071067811865476).epsilon(1e-12));

  for (double a : {0.3, 1.7, 2.9}) {
    auto [c, s] = u1_pair_coeffs(a);
    CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-12));
    // composition behaves like a rotation by 2a
    auto [cc, ss] = u1_pair_coeffs(a + 0.5);
    auto [cb, sb] = u1_pair_coeffs(0.5);
    CHECK(cc == doctest::Approx(c * cb - s * sb).epsilon(1e-12));
    CHECK(ss == doctest::Approx(s * cb + c * sb).epsilon(1e-12));
  }
}

TEST_CASE("adjoint of the identity and of SWAP") {
  AdjointMatrix id = su4_adjoint(mat4_identity());
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) CHECK(id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  Mat4c swap{};
  swap[0 * 4 + 0] = 1; swap[1 * 4 + 2] = 1; swap[2 * 4 + 1] = 1; swap[3 * 4 + 3] = 1;
  AdjointMatrix sw = su4_adjoint(swap);
  // index(P (x) Q) maps to index(Q (x) P): (4a + b - 1) <-> (4b + a - 1)
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      int from = 4 * a + b - 1, to = 4 * b + a - 1;
      for (int r = 0; r < 15; ++r)
        CHECK(sw(r, from) == doctest::Approx(r == to ? 1.0 : 0.0));
    }
}

TEST_CASE("haar draws: unitarity, orthogonality, homomorphism") {
  RngStream rng(42);
  for (int i = 0; i < 100; ++i) {
    Mat4c g = haar_su4(rng);
    CHECK(mat4_unitarity_defect(g) < 1e-12);
    AdjointMatrix v = su4_adjoint(g);
    CHECK(v.orthogonality_defect() < 1e-9);
    for (auto& row : v.v)
      for (double e : row) CHECK(std::abs(e) <= 1.0 + 1e-12);

    Mat4c h = haar_su4(rng);
    AdjointMatrix vh = su4_adjoint(h);
    AdjointMatrix vgh = su4_adjoint(mat4_mul(g, h));
    // composition: adj(g h) = adj(g) adj(h) with this row/column layout
    double defect = 0.0;
    for (int r = 0; r < 15; ++r)
      for (int c = 0; c < 15; ++c) {
        double dot = 0.0;
        for (int k = 0; k < 15; ++k) dot += v(r, k) * vh(k, c);
        defect = std::max(defect, std::abs(dot - vgh(r, c)));
      }
    CHECK(defect < 1e-8);
  }
  CHECK_THROWS_AS(su4_adjoint(Mat4c{}), std::invalid_argument);
}

TEST_CASE("first and second moments of the adjoint ensemble") {
  // Light version of the moment checks (the acceptance suite runs 1e5
  // draws): mean entry compatible with 0, E[v_00^2] compatible with 1/15.
  RngStream rng(7);
  const int draws = 20000;
  double sum = 0.0, sum_sq = 0.0;
  double mean_entry = 0.0;
  for (int i = 0; i < draws; ++i) {
    AdjointMatrix v = su4_adjoint(haar_su4(rng));
    double x = v(0, 0);
    sum += x;
    sum_sq += x * x;
    mean_entry += v(3, 7);
  }
  double m2 = sum_sq / draws;
  double se2 = std::sqrt((sum_sq / draws) / draws);  // crude scale for the moment test
  CHECK(std::abs(m2 - 1.0 / 15.0) < 5 * std::max(se2, 1e-4));
  CHECK(std::abs(mean_entry / draws) < 5 * std::sqrt(1.0 / 15.0 / draws));
  CHECK(std::abs(sum / draws) < 5 * std::sqrt(1.0 / 15.0 / draws));
}
