#include "pathsim/analysis.hpp"

#include <cmath>

#include "doctest.h"
#include "pathsim/oracle.hpp"
#include "test_helpers.hpp"

using namespace pathsim;

TEST_CASE("error bound arithmetic") {
  CHECK(error_bound(0.25, 4, 1.0) == doctest::Approx(0.31640625));
  CHECK(error_bound(0.7, 0, 3.5) == doctest::Approx(3.5));
  CHECK(error_bound(1.0, 2, 9.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(error_bound(-0.1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(error_bound(0.5, -1, 1.0), std::invalid_argument);
}

TEST_CASE("total variation distance") {
  std::vector<double> p{1.0, 0.0}, q{0.0, 1.0}, u{0.5, 0.5};
  CHECK(tv_distance(p, p) == doctest::Approx(0.0));
  CHECK(tv_distance(p, q) == doctest::Approx(1.0));
  CHECK(tv_distance(p, u) == doctest::Approx(0.5));
  CHECK_THROWS_AS(tv_distance(p, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("fixed circuits sweep to zero error at every L") {
  CircuitIR c = parse("qubits 2\nh 0\ncx 0 1\nrp ZI t0\n");
  c.policy = {NoisePolicy::Kind::Depol1, 0.25};
  Observable obs = Observable::parse("ZI", 2);
  std::vector<int> ls{2, 3};
  ErrorSweep sweep = mc_l2_error(c, obs, ls, 40, 5);
  // budget 2 already covers the single branch site: exact at both rows
  for (const auto& row : sweep.rows) CHECK(row.rms <= 1e-9);
  CHECK(sweep.rows[0].bound == doctest::Approx(std::pow(0.75, 2)));

  std::string csv = sweep.to_csv();
  CHECK(csv.rfind("L,rms,bound,stderr,draws,seed\n", 0) == 0);
  CHECK(csv.find("\n2,") != std::string::npos);
}

TEST_CASE("anticoncentration estimator limits") {
  // deterministic output: 2^n
  CircuitIR idle = parse("qubits 3\nx 0\n");
  AntiConcEstimate det = anticoncentration_estimate(idle, 5, 1);
  CHECK(det.value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(det.stderr_ == doctest::Approx(0.0));

  // uniform output: exactly 1
  CircuitIR hh = parse("qubits 3\nh 0\nh 1\nh 2\n");
  AntiConcEstimate uni = anticoncentration_estimate(hh, 5, 1);
  CHECK(uni.value == doctest::Approx(1.0).epsilon(1e-12));

  // deep Haar brickwork approaches the 2 * 2^n / (2^n + 1) plateau
  CircuitIR deep = gen_brickwork(3, 8, BlockKind::Haar, 3);
  AntiConcEstimate est = anticoncentration_estimate(deep, 60, 17);
  double want = 2.0 * 8.0 / 9.0;
  CHECK(std::abs(est.value - want) <= 5.0 * est.stderr_);
}
