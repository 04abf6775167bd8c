#pragma once

#include <complex>
#include <vector>

#include "pathsim/circuit.hpp"
#include "pathsim/observable.hpp"

namespace pathsim {

// Brute-force ground truth at desk scale: dense statevector evolution for
// noiseless circuits (n <= 12) and dense density-matrix evolution with
// channels for noisy ones (n <= 7). Gates are applied as local kernels;
// no 2^n x 2^n gate matrices are materialised.

inline constexpr int kOracleStatevectorCap = 12;
inline constexpr int kOracleDensityCap = 7;

// tr(O rho_final). With noisy=false all noise layers and the noise policy
// are ignored.
double exact_expectation(const CircuitIR& c, const Observable& obs, const ParamPoint& params,
                         bool noisy);

// Probability of every computational outcome, indexed by bitstring (qubit 0
// is bit 0). Sums to 1 within 1e-12.
std::vector<double> exact_distribution(const CircuitIR& c, const ParamPoint& params, bool noisy);

// Final density matrix, row-major (x) 2^n columns; exposed for tests that
// check trace and positivity.
std::vector<std::complex<double>> exact_density(const CircuitIR& c, const ParamPoint& params,
                                                bool noisy);

}  // namespace pathsim
