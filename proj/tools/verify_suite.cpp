#include "verify_suite.hpp"

#include <cmath>
#include <iomanip>

#include "pathsim/analysis.hpp"
#include "pathsim/distribution.hpp"
#include "pathsim/expectation.hpp"
#include "pathsim/irrep.hpp"
#include "pathsim/oracle.hpp"

namespace tools {

using namespace pathsim;

namespace {

std::vector<Gate> random_clifford_gates(int n, int len, RngStream& rng) {
  std::vector<Gate> gates;
  for (int i = 0; i < len; ++i) {
    int kind = int(rng.next_below(8));
    int a = int(rng.next_below(n));
    if (kind >= 5 && n >= 2) {
      int b = int(rng.next_below(n - 1));
      if (b >= a) ++b;
      gates.push_back({GateKind(kind), a, b});
    } else {
      gates.push_back({GateKind(kind % 5), a});
    }
  }
  return gates;
}

CircuitIR random_mixed(int n, int rotations, uint64_t seed) {
  RngStream rng(seed);
  CircuitIR c;
  c.n = n;
  for (int r = 0; r < rotations; ++r) {
    c.layers.push_back(
        CliffordLayer::from_gates(n, random_clifford_gates(n, 1 + int(rng.next_below(4)), rng)));
    BitVec x(n), z(n);
    int sites = 1 + int(rng.next_below(uint64_t(std::min(n, 2))));
    int q0 = int(rng.next_below(n));
    for (int s = 0; s < sites; ++s) {
      int q = (s == 0) ? q0 : (q0 + 1 + int(rng.next_below(n - 1))) % n;
      int letter = 1 + int(rng.next_below(3));
      x.set(q, letter == 1 || letter == 2);
      z.set(q, letter == 2 || letter == 3);
    }
    PauliString probe(x, z, 0);
    PauliString axis(x, z, probe.y_count());
    c.layers.push_back(RotationLayer{axis, r, axis.support()});
  }
  c.layers.push_back(CliffordLayer::from_gates(n, random_clifford_gates(n, 2, rng)));
  return c;
}

Observable random_observable(int n, RngStream& rng) {
  BitVec x(n), z(n);
  bool nontrivial = false;
  while (!nontrivial)
    for (int q = 0; q < n; ++q) {
      int letter = int(rng.next_below(4));
      x.set(q, letter == 1 || letter == 2);
      z.set(q, letter == 2 || letter == 3);
      nontrivial |= letter != 0;
    }
  PauliString p(x, z, 0);
  return Observable::single(PauliString(x, z, p.y_count()));
}

struct Reporter {
  std::ostream& out;
  bool all_ok = true;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    all_ok &= ok;
  }
};

}  // namespace

bool run_verify_suite(int max_n, uint64_t seed, std::ostream& out) {
  Reporter rep{out};
  RngStream seeds(seed);
  out << std::setprecision(3);

  {  // expectation engines against the oracle, noiseless and noisy
    double worst_clean = 0.0, worst_noisy = 0.0;
    for (int n = 2; n <= max_n; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        CircuitIR c = random_mixed(n, 2 + int(seeds.next_below(5)), seeds.next_u64());
        RngStream rng(seeds.next_u64());
        Observable obs = random_observable(n, rng);
        ExpectationSeries s = build_series(c, obs, 8);
        CircuitIR noisy = c;
        noisy.policy = {NoisePolicy::Kind::Depol1, 0.1};
        ExpectationSeries sn = build_series(noisy, obs, 8);
        for (int rep_i = 0; rep_i < 2; ++rep_i) {
          ParamPoint pt = sample_params(c, rng);
          worst_clean = std::max(worst_clean,
                                 std::abs(evaluate_expectation(s, pt) -
                                          exact_expectation(c, obs, pt, false)));
          worst_noisy = std::max(worst_noisy,
                                 std::abs(evaluate_expectation(sn, pt) -
                                          exact_expectation(noisy, obs, pt, true)));
        }
      }
    }
    rep.check("expectation matches statevector oracle", worst_clean <= 1e-9,
              "max |diff| = " + std::to_string(worst_clean));
    rep.check("noisy expectation matches density oracle", worst_noisy <= 1e-9,
              "max |diff| = " + std::to_string(worst_noisy));
  }

  {  // path-count law
    bool ok = true;
    for (int trial = 0; trial < 6; ++trial) {
      int n = 2 + int(seeds.next_below(uint64_t(std::max(1, max_n - 1))));
      CircuitIR c = random_mixed(n, 6, seeds.next_u64());
      RngStream rng(seeds.next_u64());
      Observable obs = random_observable(n, rng);
      for (int L = 0; L <= 4; ++L)
        ok &= path_count(build_series(c, obs, L)).first <= (size_t(obs.rank()) << L);
    }
    CircuitIR h = parse("qubits 2\nhaar 0 1 g0\n");
    ok &= path_count(build_series(h, Observable::parse("XI", 2), 1)).first <= 15;
    rep.check("path count law r(O)*2^L / 15 per block", ok);
  }

  {  // distribution normalisation and oracle match at full budget
    double worst_mass = 0.0, worst_prob = 0.0;
    int n = std::min(max_n, 4);
    for (int trial = 0; trial < 3; ++trial) {
      CircuitIR c = gen_brickwork(n, 2, BlockKind::Haar, seeds.next_u64());
      c.policy = {NoisePolicy::Kind::Depol2, 0.15};
      RngStream rng(seeds.next_u64());
      ParamPoint pt = sample_params(c, rng);
      TruncatedDistribution d = build_distribution(c, c.parametrized_count());
      auto probs = prob_vector(d, pt);
      auto exact = exact_distribution(c, pt, true);
      double mass = 0.0;
      for (size_t x = 0; x < probs.size(); ++x) {
        mass += probs[x];
        worst_prob = std::max(worst_prob, std::abs(probs[x] - exact[x]));
      }
      worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
      for (int L = 0; L <= 2; ++L) {
        TruncatedDistribution dl = build_distribution(c, L);
        worst_mass = std::max(worst_mass, std::abs(marginal_value(dl, 0, 0, pt) - 1.0));
      }
    }
    rep.check("distribution normalised at every budget", worst_mass <= 1e-9,
              "max |mass-1| = " + std::to_string(worst_mass));
    rep.check("full-budget distribution matches density oracle", worst_prob <= 1e-9,
              "max |diff| = " + std::to_string(worst_prob));
  }

  {  // window enumeration vs dense cut
    double worst = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      CircuitIR c = gen_brickwork(3, 4, BlockKind::Haar, seeds.next_u64());
      c.policy = {NoisePolicy::Kind::Depol2, 0.1};
      RngStream rng(seeds.next_u64());
      ParamPoint pt = sample_params(c, rng);
      for (int L = 1; L <= 2; ++L) {
        DistOptions bi;
        bi.mode = DistOptions::Mode::Bidirectional;
        DistOptions dense;
        dense.mode = DistOptions::Mode::DenseRoot;
        auto pb = prob_vector(build_distribution(c, L, bi), pt);
        auto pd = prob_vector(build_distribution(c, L, dense), pt);
        for (size_t x = 0; x < pb.size(); ++x) worst = std::max(worst, std::abs(pb[x] - pd[x]));
      }
    }
    rep.check("bidirectional windows equal the dense cut", worst <= 1e-10,
              "max |diff| = " + std::to_string(worst));
  }

  {  // adjoint matrix properties
    RngStream rng(seeds.next_u64());
    double worst_orth = 0.0, worst_hom = 0.0;
    for (int i = 0; i < 20; ++i) {
      Mat4c g = haar_su4(rng), h = haar_su4(rng);
      AdjointMatrix vg = su4_adjoint(g), vh = su4_adjoint(h);
      worst_orth = std::max(worst_orth, vg.orthogonality_defect());
      AdjointMatrix vgh = su4_adjoint(mat4_mul(g, h));
      for (int r = 0; r < 15; ++r)
        for (int c2 = 0; c2 < 15; ++c2) {
          double dot = 0.0;
          for (int k = 0; k < 15; ++k) dot += vg(r, k) * vh(k, c2);
          worst_hom = std::max(worst_hom, std::abs(dot - vgh(r, c2)));
        }
    }
    rep.check("adjoint orthogonality", worst_orth <= 1e-9);
    rep.check("adjoint homomorphism", worst_hom <= 1e-8);
  }

  out << (rep.all_ok ? "verify: all checks passed\n" : "verify: FAILURES detected\n");
  return rep.all_ok;
}

}  // namespace tools
