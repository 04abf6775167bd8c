#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pathsim/clifford.hpp"
#include "pathsim/matrix4.hpp"
#include "pathsim/noise.hpp"
#include "pathsim/pauli.hpp"
#include "pathsim/rng.hpp"

namespace pathsim {

// Fixed-unitary layer; consecutive gate lines in the text format merge into
// one layer. The tableau is derived from the gates at construction.
struct CliffordLayer {
  std::vector<Gate> gates;
  CliffordTableau tableau;

  static CliffordLayer from_gates(int n, std::vector<Gate> gates);
  friend bool operator==(const CliffordLayer& a, const CliffordLayer& b) {
    return a.gates == b.gates;
  }
};

// exp(i theta * axis) with an independent angle parameter.
struct RotationLayer {
  PauliString axis;
  int param_index = 0;
  SupportMask support;
  friend bool operator==(const RotationLayer&, const RotationLayer&) = default;
};

// Two-qubit block carrying an independent 4x4 unitary parameter.
struct HaarLayer {
  int a = 0, b = 1;
  int param_index = 0;
  friend bool operator==(const HaarLayer&, const HaarLayer&) = default;
};

struct NoiseLayer {
  NoiseChannel channel;
  friend bool operator==(const NoiseLayer&, const NoiseLayer&) = default;
};

using Layer = std::variant<CliffordLayer, RotationLayer, HaarLayer, NoiseLayer>;

struct NoisePolicy {
  enum class Kind { None, Depol1, Depol2 };
  Kind kind = Kind::None;
  double p = 0.0;
  friend bool operator==(const NoisePolicy&, const NoisePolicy&) = default;
};

struct CircuitIR {
  int n = 0;
  std::vector<Layer> layers;
  NoisePolicy policy;

  int theta_count() const;
  int su4_count() const;
  // Count of parametrized (rotation + Haar) layers.
  int parametrized_count() const;

  friend bool operator==(const CircuitIR&, const CircuitIR&) = default;
};

// One point of the circuit's parameter space.
struct ParamPoint {
  std::vector<double> thetas;  // angles in [0, 2*pi)
  std::vector<Mat4c> su4s;
};

struct Diagnostic {
  enum class Code {
    InvalidAxis,
    DuplicateQubit,
    IndexOutOfRange,
    ParamIndexGap,
    ParamIndexShared,
    NoLayers,
    BadQubitCount,
  };
  Code code;
  std::string message;
  int layer_index = -1;  // -1 for circuit-level problems
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-oriented text format ('#' comments, case-insensitive keywords):
//   qubits N
//   h|s|x|y|z Q
//   cx|cz|swap A B
//   rp PAULI tK          rotation exp(i theta_K * PAULI), full-width literal
//   haar A B gK          two-qubit block with unitary parameter K
//   noise depol1 P Q...  single-qubit depolarizing(P) on each listed qubit
//   noise depol2 P A B   two-qubit depolarizing(P) on {A, B}
//   noise-policy depol1 P | depol2 P | none
CircuitIR parse(std::string_view text);
std::string serialize(const CircuitIR& c);

std::vector<Diagnostic> validate(const CircuitIR& c);
void require_valid(const CircuitIR& c);  // throws on any diagnostic

// Expand the noise policy into explicit NoiseLayers directly after each
// parametrized layer, on that layer's support. Depol1 attaches one
// single-qubit channel per support qubit; depol2 one channel on the whole
// support. Returns a circuit with policy None.
CircuitIR resolved(const CircuitIR& c);

enum class BlockKind { Rotation, Haar };

// Alternating even/odd nearest-neighbour two-qubit blocks, open boundary.
// Haar kind: one HaarLayer per block. Rotation kind: per block, seeded
// random single-qubit Cliffords on both qubits, a Z rotation on each (two
// fresh parameters), then CX.
CircuitIR gen_brickwork(int n, int depth, BlockKind kind, uint64_t seed);

// 2n1 x 2n1 qubit grid; each macro-layer is four depth-1 sublayers: two
// sweeps of x-direction edges (even then odd columns) followed by two
// sweeps of y-direction edges, every edge a Haar block. Structure is
// deterministic; the seed is reserved for future randomised variants.
CircuitIR gen_2d_lattice(int n1, int layers, uint64_t seed);

// Draw a uniform parameter point: angles uniform on [0, 2*pi), blocks Haar
// on U(4).
ParamPoint sample_params(const CircuitIR& c, RngStream& rng);

// Throws unless sizes match the circuit and every block is unitary to 1e-10.
void require_params_match(const CircuitIR& c, const ParamPoint& p);

uint64_t circuit_fingerprint(const CircuitIR& c);
uint64_t noise_fingerprint(const CircuitIR& c);

// Smallest spectral gap over the resolved noise channels; 1.0 if noiseless.
double min_spectral_gap(const CircuitIR& c);

}  // namespace pathsim
