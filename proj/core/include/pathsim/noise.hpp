#pragma once

#include <map>
#include <string>
#include <vector>

#include "pathsim/pauli.hpp"

namespace pathsim {

// Pauli-diagonal channel on a set of qubits: every Pauli is an eigenvector
// of the transfer map, with real eigenvalue depending only on the Pauli's
// restriction to the channel support. e = 1 on anything trivial there.
//
// Depolarizing convention: rho -> (1-p) rho + p * (maximally mixed on the
// support) (x) rest, i.e. eigenvalue 1-p on every Pauli non-trivial on the
// support and spectral gap p. The alternative uniform-Pauli-error
// parametrisation with rate q (rho -> (1-q) rho + q/3 sum_P P rho P on one
// qubit) corresponds to p = 4q/3.
class NoiseChannel {
 public:
  enum class Rule { Depolarizing, ExplicitTable };

  static NoiseChannel depolarizing(SupportMask support, double p);
  static NoiseChannel explicit_table(SupportMask support,
                                     std::map<std::string, double> table);

  const SupportMask& support() const { return support_; }
  Rule rule() const { return rule_; }
  double depolarizing_p() const { return p_; }
  const std::map<std::string, double>& table() const { return table_; }

  // Transfer eigenvalue of p restricted to the support; 1 when trivial
  // there. Throws on an ExplicitTable miss (incomplete table).
  double eigenvalue(const PauliString& p) const;

  // gamma = 1 - max_{|e| != 1} |e|; 1 by convention when every eigenvalue
  // has unit magnitude (the max over an empty set is taken as 0).
  double spectral_gap() const;

  // Every Pauli non-trivial on the support must satisfy |e| <= 1 - gamma
  // with gamma > 0; channels with a non-trivial fixed or rotating point
  // break the decay guarantees and the engines warn about them.
  bool noise_penalisation_holds() const;

  std::string describe() const;

  friend bool operator==(const NoiseChannel&, const NoiseChannel&) = default;

 private:
  SupportMask support_;
  Rule rule_ = Rule::Depolarizing;
  double p_ = 0.0;
  std::map<std::string, double> table_;  // local Pauli literal -> eigenvalue
};

struct SpectralGap {
  double gamma = 1.0;
};

NoiseChannel make_depolarizing(SupportMask support, double p);
double eigenvalue(const NoiseChannel& ch, const PauliString& p);
SpectralGap spectral_gap(const NoiseChannel& ch);

struct DephasedChannel {
  NoiseChannel channel;
  double residual;  // max |off-diagonal| of the input transfer matrix
};

// Keep only the diagonal of a full Pauli-transfer matrix on `support`,
// producing an ExplicitTable channel. `transfer` is a 4^k x 4^k row-major
// matrix over the fixed local Pauli order (I..Z / II..ZZ base-4 by letter).
// The residual reports how much was discarded. Throws if the identity row
// is not preserved (non-trace-preserving input).
DephasedChannel dephase_diagonal(const std::vector<double>& transfer,
                                 SupportMask support);

// ExplicitTable serialization as a JSON object {"literal": eigenvalue, ...}.
std::string explicit_table_to_json(const NoiseChannel& ch);
NoiseChannel explicit_table_from_json(SupportMask support, const std::string& json_text);

// Local Pauli enumeration on k qubits: letters I,X,Y,Z in base 4, first
// qubit most significant; index 0 is the identity.
std::string local_pauli_literal(int k, int index);
int local_pauli_index(const PauliString& local);

}  // namespace pathsim
