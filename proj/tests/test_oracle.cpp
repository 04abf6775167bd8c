#include "pathsim/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace pathsim;

TEST_CASE("ground-state expectations without any layers") {
  CircuitIR c;
  c.n = 2;
  CHECK(exact_expectation(c, Observable::parse("ZI", 2), {}, false) == doctest::Approx(1.0));
  CHECK(exact_expectation(c, Observable::parse("XI", 2), {}, false) == doctest::Approx(0.0));
  auto probs = exact_distribution(c, {}, false);
  CHECK(probs[0] == doctest::Approx(1.0));
}

TEST_CASE("rotation and Hadamard against closed forms") {
  CircuitIR c = parse("qubits 1\nh 0\nrp Z t0\n");
  double theta = 0.3926990816987241;  // pi/8
  ParamPoint pt{{theta}, {}};
  CHECK(exact_expectation(c, Observable::parse("X", 1), pt, false) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-12));
  auto probs = exact_distribution(parse("qubits 1\nh 0\n"), {}, false);
  CHECK(probs[0] == doctest::Approx(0.5));
  CHECK(probs[1] == doctest::Approx(0.5));
}

TEST_CASE("maximal depolarizing erases every traceless observable") {
  CircuitIR c = parse("qubits 2\nh 0\ncx 0 1\nnoise depol1 1 0 1\n");
  CHECK(exact_expectation(c, Observable::parse("ZI", 2), {}, true) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact_expectation(c, Observable::parse("ZZ", 2), {}, true) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact_expectation(c, Observable::single(PauliString::identity(2)), {}, true) ==
        doctest::Approx(1.0));
}

TEST_CASE("noiseless density path equals the statevector path") {
  RngStream seeds(64);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 2 + int(seeds.next_below(2));
    CircuitIR c = testgen::random_haar_circuit(n, 2, seeds.next_u64());
    RngStream rng(seeds.next_u64());
    ParamPoint pt = sample_params(c, rng);
    auto sv = exact_distribution(c, pt, false);
    auto dm = exact_density(c, pt, false);
    size_t dim = size_t(1) << n;
    for (size_t y = 0; y < dim; ++y)
      CHECK(std::abs(dm[y * dim + y].real() - sv[y]) <= 1e-12);
  }
}

TEST_CASE("channels preserve trace and positivity") {
  RngStream seeds(65);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 2 + int(seeds.next_below(2));
    CircuitIR c = testgen::random_haar_circuit(n, 2, seeds.next_u64());
    c.policy = {NoisePolicy::Kind::Depol2, 0.2};
    RngStream rng(seeds.next_u64());
    ParamPoint pt = sample_params(c, rng);
    auto dm = exact_density(c, pt, true);
    size_t dim = size_t(1) << n;
    Eigen::MatrixXcd rho(dim, dim);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) rho(i, j) = dm[i * dim + j];
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-12);
    CHECK(std::abs(rho.trace().imag()) <= 1e-14);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);

    double mass = 0.0;
    for (double p : exact_distribution(c, pt, true)) mass += p;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("size caps") {
  CircuitIR big;
  big.n = 13;
  CHECK_THROWS_AS(exact_expectation(big, Observable::single(PauliString::identity(13)), {}, false),
                  std::invalid_argument);
  CircuitIR wide;
  wide.n = 8;
  CHECK_THROWS_AS(exact_expectation(wide, Observable::single(PauliString::identity(8)), {}, true),
                  std::invalid_argument);
}
