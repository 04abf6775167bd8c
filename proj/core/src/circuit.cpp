#include "pathsim/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pathsim/irrep.hpp"
#include "pathsim/util.hpp"

namespace pathsim {

CliffordLayer CliffordLayer::from_gates(int n, std::vector<Gate> gates) {
  CliffordTableau t = CliffordTableau::from_gates(n, gates);
  return CliffordLayer{std::move(gates), std::move(t)};
}

int CircuitIR::theta_count() const {
  int mx = -1;
  for (const Layer& l : layers)
    if (auto* r = std::get_if<RotationLayer>(&l)) mx = std::max(mx, r->param_index);
  return mx + 1;
}

int CircuitIR::su4_count() const {
  int mx = -1;
  for (const Layer& l : layers)
    if (auto* h = std::get_if<HaarLayer>(&l)) mx = std::max(mx, h->param_index);
  return mx + 1;
}

int CircuitIR::parametrized_count() const {
  int c = 0;
  for (const Layer& l : layers)
    if (std::holds_alternative<RotationLayer>(l) || std::holds_alternative<HaarLayer>(l)) ++c;
  return c;
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Appends gates, merging into a trailing CliffordLayer when present.
struct CircuitBuilder {
  CircuitIR c;
  std::vector<Gate> pending;

  explicit CircuitBuilder(int n) { c.n = n; }

  void flush() {
    if (!pending.empty()) {
      c.layers.push_back(CliffordLayer::from_gates(c.n, std::move(pending)));
      pending.clear();
    }
  }
  void add_gate(Gate g) { pending.push_back(g); }
  void add_layer(Layer l) {
    flush();
    c.layers.push_back(std::move(l));
  }
  CircuitIR take() {
    flush();
    return std::move(c);
  }
};

int parse_int(const std::string& tok, int line, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
}

double parse_prob(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size() || v < 0.0 || v > 1.0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, "expected probability in [0,1], got '" + tok + "'");
  }
}

int parse_param_index(const std::string& tok, char prefix, int line) {
  if (tok.size() < 2 || std::tolower(static_cast<unsigned char>(tok[0])) != prefix)
    throw ParseError(line, std::string("expected parameter token ") + prefix + "K, got '" + tok + "'");
  return parse_int(tok.substr(1), line, "parameter index");
}

int check_qubit(int q, int n, int line) {
  if (q < 0 || q >= n) throw ParseError(line, "qubit index " + std::to_string(q) + " out of range");
  return q;
}

}  // namespace

CircuitIR parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::optional<CircuitBuilder> b;

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    std::string kw = lower(tok[0]);

    if (!b) {
      if (kw != "qubits") throw ParseError(lineno, "expected 'qubits N' header");
      if (tok.size() != 2) throw ParseError(lineno, "qubits takes one argument");
      int n = parse_int(tok[1], lineno, "qubit count");
      if (n < 1) throw ParseError(lineno, "qubit count must be positive");
      b.emplace(n);
      continue;
    }
    int n = b->c.n;

    if (kw == "qubits") {
      throw ParseError(lineno, "duplicate qubit declaration");
    } else if (kw == "h" || kw == "s" || kw == "x" || kw == "y" || kw == "z") {
      if (tok.size() != 2) throw ParseError(lineno, kw + " takes one qubit");
      GateKind k = kw == "h"   ? GateKind::H
                   : kw == "s" ? GateKind::S
                   : kw == "x" ? GateKind::X
                   : kw == "y" ? GateKind::Y
                               : GateKind::Z;
      b->add_gate({k, check_qubit(parse_int(tok[1], lineno, "qubit"), n, lineno)});
    } else if (kw == "cx" || kw == "cz" || kw == "swap") {
      if (tok.size() != 3) throw ParseError(lineno, kw + " takes two qubits");
      GateKind k = kw == "cx" ? GateKind::CX : kw == "cz" ? GateKind::CZ : GateKind::SWAP;
      int a = check_qubit(parse_int(tok[1], lineno, "qubit"), n, lineno);
      int q1 = check_qubit(parse_int(tok[2], lineno, "qubit"), n, lineno);
      if (a == q1) throw ParseError(lineno, "duplicate qubit in " + kw);
      b->add_gate({k, a, q1});
    } else if (kw == "rp") {
      if (tok.size() != 3) throw ParseError(lineno, "rp takes PAULI and tK");
      PauliString axis;
      try {
        axis = PauliString::from_literal(tok[1]);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
      if (axis.n() != n) throw ParseError(lineno, "rotation axis literal must cover all qubits");
      int idx = parse_param_index(tok[2], 't', lineno);
      b->add_layer(RotationLayer{axis, idx, axis.support()});
    } else if (kw == "haar") {
      if (tok.size() != 4) throw ParseError(lineno, "haar takes two qubits and gK");
      int a = check_qubit(parse_int(tok[1], lineno, "qubit"), n, lineno);
      int q1 = check_qubit(parse_int(tok[2], lineno, "qubit"), n, lineno);
      int idx = parse_param_index(tok[3], 'g', lineno);
      b->add_layer(HaarLayer{a, q1, idx});
    } else if (kw == "noise") {
      if (tok.size() < 3) throw ParseError(lineno, "noise takes a kind, probability and qubits");
      std::string kind = lower(tok[1]);
      double p = parse_prob(tok[2], lineno);
      if (kind == "depol1") {
        if (tok.size() < 4) throw ParseError(lineno, "noise depol1 needs at least one qubit");
        for (size_t i = 3; i < tok.size(); ++i) {
          SupportMask m(n);
          m.set(check_qubit(parse_int(tok[i], lineno, "qubit"), n, lineno));
          b->add_layer(NoiseLayer{make_depolarizing(std::move(m), p)});
        }
      } else if (kind == "depol2") {
        if (tok.size() != 5) throw ParseError(lineno, "noise depol2 takes probability and two qubits");
        int a = check_qubit(parse_int(tok[3], lineno, "qubit"), n, lineno);
        int q1 = check_qubit(parse_int(tok[4], lineno, "qubit"), n, lineno);
        if (a == q1) throw ParseError(lineno, "duplicate qubit in depol2");
        SupportMask m(n);
        m.set(a);
        m.set(q1);
        b->add_layer(NoiseLayer{make_depolarizing(std::move(m), p)});
      } else {
        throw ParseError(lineno, "unknown noise kind '" + kind + "'");
      }
    } else if (kw == "noise-policy") {
      if (tok.size() < 2) throw ParseError(lineno, "noise-policy takes a kind");
      std::string kind = lower(tok[1]);
      if (kind == "none") {
        b->c.policy = NoisePolicy{};
      } else if (kind == "depol1" || kind == "depol2") {
        if (tok.size() != 3) throw ParseError(lineno, "noise-policy " + kind + " takes a probability");
        b->c.policy = NoisePolicy{
            kind == "depol1" ? NoisePolicy::Kind::Depol1 : NoisePolicy::Kind::Depol2,
            parse_prob(tok[2], lineno)};
      } else {
        throw ParseError(lineno, "unknown noise policy '" + kind + "'");
      }
    } else {
      throw ParseError(lineno, "unknown gate or keyword '" + tok[0] + "'");
    }
  }
  if (!b) throw ParseError(lineno, "missing 'qubits N' header");
  return b->take();
}

std::string serialize(const CircuitIR& c) {
  std::ostringstream os;
  os << "qubits " << c.n << "\n";
  if (c.policy.kind != NoisePolicy::Kind::None) {
    os << "noise-policy " << (c.policy.kind == NoisePolicy::Kind::Depol1 ? "depol1" : "depol2")
       << " " << format_double(c.policy.p) << "\n";
  }
  for (const Layer& l : c.layers) {
    if (auto* cl = std::get_if<CliffordLayer>(&l)) {
      for (const Gate& g : cl->gates) {
        os << gate_name(g.kind) << " " << g.q0;
        if (g.is_two_qubit()) os << " " << g.q1;
        os << "\n";
      }
    } else if (auto* r = std::get_if<RotationLayer>(&l)) {
      os << "rp " << r->axis.to_literal() << " t" << r->param_index << "\n";
    } else if (auto* h = std::get_if<HaarLayer>(&l)) {
      os << "haar " << h->a << " " << h->b << " g" << h->param_index << "\n";
    } else if (auto* nz = std::get_if<NoiseLayer>(&l)) {
      const NoiseChannel& ch = nz->channel;
      if (ch.rule() != NoiseChannel::Rule::Depolarizing)
        throw std::logic_error("text format cannot express explicit-table channels");
      std::vector<int> qs;
      ch.support().for_each_set([&](int q) { qs.push_back(q); });
      if (qs.size() == 1)
        os << "noise depol1 " << format_double(ch.depolarizing_p()) << " " << qs[0] << "\n";
      else if (qs.size() == 2)
        os << "noise depol2 " << format_double(ch.depolarizing_p()) << " " << qs[0] << " " << qs[1]
           << "\n";
      else
        throw std::logic_error("text format supports one- and two-qubit depolarizing only");
    }
  }
  return os.str();
}

std::vector<Diagnostic> validate(const CircuitIR& c) {
  std::vector<Diagnostic> out;
  if (c.n < 1) out.push_back({Diagnostic::Code::BadQubitCount, "qubit count must be positive", -1});
  if (c.layers.empty()) out.push_back({Diagnostic::Code::NoLayers, "circuit has no layers", -1});

  std::set<int> theta_seen, haar_seen;
  for (size_t i = 0; i < c.layers.size(); ++i) {
    int li = int(i);
    const Layer& l = c.layers[i];
    if (auto* r = std::get_if<RotationLayer>(&l)) {
      if (r->axis.n() != c.n)
        out.push_back({Diagnostic::Code::IndexOutOfRange, "axis width mismatch", li});
      else {
        if (r->axis.is_identity_up_to_phase())
          out.push_back({Diagnostic::Code::InvalidAxis, "rotation axis is the identity", li});
        if (!r->axis.is_hermitian())
          out.push_back({Diagnostic::Code::InvalidAxis, "rotation axis must be Hermitian", li});
        if (!(r->support == r->axis.support()))
          out.push_back({Diagnostic::Code::InvalidAxis, "support mask disagrees with axis", li});
      }
      if (!theta_seen.insert(r->param_index).second)
        out.push_back({Diagnostic::Code::ParamIndexShared,
                       "theta parameter t" + std::to_string(r->param_index) + " reused", li});
    } else if (auto* h = std::get_if<HaarLayer>(&l)) {
      if (h->a == h->b) out.push_back({Diagnostic::Code::DuplicateQubit, "haar block repeats a qubit", li});
      if (h->a < 0 || h->a >= c.n || h->b < 0 || h->b >= c.n)
        out.push_back({Diagnostic::Code::IndexOutOfRange, "haar qubit out of range", li});
      if (!haar_seen.insert(h->param_index).second)
        out.push_back({Diagnostic::Code::ParamIndexShared,
                       "block parameter g" + std::to_string(h->param_index) + " reused", li});
    } else if (auto* nz = std::get_if<NoiseLayer>(&l)) {
      if (nz->channel.support().size() != c.n)
        out.push_back({Diagnostic::Code::IndexOutOfRange, "noise support width mismatch", li});
    } else if (auto* cl = std::get_if<CliffordLayer>(&l)) {
      if (cl->tableau.n() != c.n)
        out.push_back({Diagnostic::Code::IndexOutOfRange, "tableau width mismatch", li});
    }
  }
  auto check_dense = [&](const std::set<int>& seen, const char* what) {
    int expect = 0;
    for (int v : seen) {
      if (v != expect) {
        out.push_back({Diagnostic::Code::ParamIndexGap,
                       std::string(what) + " parameter indices must be dense from 0", -1});
        return;
      }
      ++expect;
    }
  };
  check_dense(theta_seen, "theta");
  check_dense(haar_seen, "block");
  return out;
}

void require_valid(const CircuitIR& c) {
  auto diags = validate(c);
  if (!diags.empty()) {
    std::string msg = "invalid circuit:";
    for (const auto& d : diags) msg += " [" + d.message + "]";
    throw std::invalid_argument(msg);
  }
}

CircuitIR resolved(const CircuitIR& c) {
  CircuitIR out;
  out.n = c.n;
  out.policy = NoisePolicy{};
  for (const Layer& l : c.layers) {
    out.layers.push_back(l);
    if (c.policy.kind == NoisePolicy::Kind::None) continue;
    SupportMask support(c.n);
    if (auto* r = std::get_if<RotationLayer>(&l))
      support = r->support;
    else if (auto* h = std::get_if<HaarLayer>(&l)) {
      support.set(h->a);
      support.set(h->b);
    } else {
      continue;
    }
    if (c.policy.kind == NoisePolicy::Kind::Depol1) {
      support.for_each_set([&](int q) {
        SupportMask m(c.n);
        m.set(q);
        out.layers.push_back(NoiseLayer{make_depolarizing(std::move(m), c.policy.p)});
      });
    } else {
      out.layers.push_back(NoiseLayer{make_depolarizing(std::move(support), c.policy.p)});
    }
  }
  return out;
}

namespace {

// Six axis-permutation single-qubit Cliffords, as gate strings.
const std::vector<std::vector<GateKind>> kOneQubitCliffords = {
    {},
    {GateKind::H},
    {GateKind::S},
    {GateKind::H, GateKind::S},
    {GateKind::S, GateKind::H},
    {GateKind::H, GateKind::S, GateKind::H},
};

std::vector<std::pair<int, int>> brick_blocks(int n, int layer) {
  std::vector<std::pair<int, int>> blocks;
  int first = (layer % 2 == 0) ? 0 : 1;
  for (int a = first; a + 1 < n; a += 2) blocks.emplace_back(a, a + 1);
  return blocks;
}

}  // namespace

CircuitIR gen_brickwork(int n, int depth, BlockKind kind, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("brickwork needs at least two qubits");
  RngStream rng(seed, 0x62726b77ull);
  CircuitBuilder b(n);
  int t = 0, g = 0;
  for (int layer = 0; layer < depth; ++layer) {
    for (auto [a, q1] : brick_blocks(n, layer)) {
      if (kind == BlockKind::Haar) {
        b.add_layer(HaarLayer{a, q1, g++});
      } else {
        for (int q : {a, q1})
          for (GateKind gk : kOneQubitCliffords[rng.next_below(kOneQubitCliffords.size())])
            b.add_gate({gk, q});
        for (int q : {a, q1}) {
          PauliString axis = PauliString::pauli_z(n, q);
          b.add_layer(RotationLayer{axis, t++, axis.support()});
        }
        b.add_gate({GateKind::CX, a, q1});
      }
    }
  }
  return b.take();
}

CircuitIR gen_2d_lattice(int n1, int layers, uint64_t seed) {
  if (n1 < 1) throw std::invalid_argument("lattice needs n1 >= 1");
  (void)seed;
  int side = 2 * n1;
  CircuitBuilder b(side * side);
  auto qubit = [side](int r, int c) { return r * side + c; };
  int g = 0;
  for (int layer = 0; layer < layers; ++layer) {
    for (int parity : {0, 1})  // x-direction sweeps
      for (int r = 0; r < side; ++r)
        for (int c = parity; c + 1 < side; c += 2)
          b.add_layer(HaarLayer{qubit(r, c), qubit(r, c + 1), g++});
    for (int parity : {0, 1})  // y-direction sweeps
      for (int c = 0; c < side; ++c)
        for (int r = parity; r + 1 < side; r += 2)
          b.add_layer(HaarLayer{qubit(r, c), qubit(r + 1, c), g++});
  }
  return b.take();
}

ParamPoint sample_params(const CircuitIR& c, RngStream& rng) {
  ParamPoint p;
  p.thetas.resize(c.theta_count());
  for (double& th : p.thetas) th = rng.next_angle();
  p.su4s.resize(c.su4_count());
  for (Mat4c& m : p.su4s) m = haar_su4(rng);
  return p;
}

void require_params_match(const CircuitIR& c, const ParamPoint& p) {
  if (int(p.thetas.size()) != c.theta_count())
    throw std::invalid_argument("theta parameter count mismatch");
  if (int(p.su4s.size()) != c.su4_count())
    throw std::invalid_argument("block parameter count mismatch");
  for (const Mat4c& g : p.su4s)
    if (mat4_unitarity_defect(g) > 1e-10)
      throw std::invalid_argument("block parameter is not unitary to 1e-10");
}

uint64_t circuit_fingerprint(const CircuitIR& c) { return fnv1a(serialize(c)); }

uint64_t noise_fingerprint(const CircuitIR& c) {
  std::string desc;
  CircuitIR r = resolved(c);
  for (const Layer& l : r.layers)
    if (auto* nz = std::get_if<NoiseLayer>(&l)) desc += nz->channel.describe() + ";";
  return fnv1a(desc);
}

double min_spectral_gap(const CircuitIR& c) {
  double gamma = 1.0;
  CircuitIR r = resolved(c);
  for (const Layer& l : r.layers)
    if (auto* nz = std::get_if<NoiseLayer>(&l))
      gamma = std::min(gamma, nz->channel.spectral_gap());
  return gamma;
}

}  // namespace pathsim
