// Command-line front end: truncated path-series expectation values, output
// distributions, sampling, error sweeps and self-verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "pathsim/analysis.hpp"
#include "pathsim/distribution.hpp"
#include "pathsim/expectation.hpp"
#include "pathsim/oracle.hpp"
#include "pathsim/util.hpp"
#include "verify_suite.hpp"

using namespace pathsim;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitEngine = 2;
constexpr int kExitVerify = 3;

struct CircuitSource {
  std::string circuit_file;
  std::string gen_spec;
  std::string noise_policy;  // "none" | "depol1:P" | "depol2:P"

  void add_options(CLI::App* cmd) {
    auto* file = cmd->add_option("--circuit", circuit_file, "circuit text file");
    auto* gen = cmd->add_option(
        "--gen", gen_spec,
        "generator spec: brickwork:n=N,depth=D,kind=haar|rotation or lattice:n1=N,layers=K");
    file->excludes(gen);
    cmd->add_option("--noise-policy", noise_policy,
                    "override noise policy: none, depol1:P or depol2:P");
  }

  CircuitIR load(uint64_t seed) const {
    CircuitIR c;
    if (!circuit_file.empty()) {
      std::ifstream in(circuit_file);
      if (!in) throw std::invalid_argument("cannot open circuit file " + circuit_file);
      std::stringstream buf;
      buf << in.rdbuf();
      c = parse(buf.str());
    } else if (!gen_spec.empty()) {
      c = generate(seed);
    } else {
      throw std::invalid_argument("one of --circuit or --gen is required");
    }
    if (!noise_policy.empty()) c.policy = parse_policy(noise_policy);
    require_valid(c);
    return c;
  }

 private:
  static NoisePolicy parse_policy(const std::string& text) {
    if (text == "none") return {};
    auto colon = text.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("noise policy must be none, depol1:P or depol2:P");
    std::string kind = text.substr(0, colon);
    double p = std::stod(text.substr(colon + 1));
    if (kind == "depol1") return {NoisePolicy::Kind::Depol1, p};
    if (kind == "depol2") return {NoisePolicy::Kind::Depol2, p};
    throw std::invalid_argument("unknown noise policy kind " + kind);
  }

  CircuitIR generate(uint64_t seed) const {
    auto colon = gen_spec.find(':');
    std::string kind = gen_spec.substr(0, colon == std::string::npos ? gen_spec.size() : colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
      std::stringstream ss(gen_spec.substr(colon + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad generator spec item " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
      }
    }
    auto geti = [&](const std::string& key) {
      auto it = kv.find(key);
      if (it == kv.end()) throw std::invalid_argument("generator spec missing " + key);
      return std::stoi(it->second);
    };
    if (kind == "brickwork") {
      BlockKind bk = BlockKind::Haar;
      if (auto it = kv.find("kind"); it != kv.end())
        bk = it->second == "rotation" ? BlockKind::Rotation : BlockKind::Haar;
      return gen_brickwork(geti("n"), geti("depth"), bk, seed);
    }
    if (kind == "lattice") return gen_2d_lattice(geti("n1"), geti("layers"), seed);
    throw std::invalid_argument("unknown generator " + kind);
  }
};

struct ParamSource {
  std::string theta_csv;
  uint64_t haar_seed = 0;
  bool haar_seed_set = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--theta", theta_csv, "explicit angles, comma separated");
    cmd->add_option("--haar-seed", haar_seed, "seed for the block unitaries of a single point")
        ->each([this](const std::string&) { haar_seed_set = true; });
  }

  ParamPoint single_point(const CircuitIR& c) const {
    ParamPoint pt;
    if (!theta_csv.empty()) {
      std::stringstream ss(theta_csv);
      std::string item;
      while (std::getline(ss, item, ',')) pt.thetas.push_back(std::stod(item));
    }
    if (int(pt.thetas.size()) != c.theta_count())
      throw std::invalid_argument("--theta must supply exactly " +
                                  std::to_string(c.theta_count()) + " angles");
    if (c.su4_count() > 0) {
      if (!haar_seed_set)
        throw std::invalid_argument("--haar-seed is required for circuits with haar blocks");
      RngStream rng(haar_seed);
      pt.su4s.resize(c.su4_count());
      for (Mat4c& g : pt.su4s) g = haar_su4(rng);
    }
    return pt;
  }
};

struct Output {
  std::string path;

  void add_option(CLI::App* cmd) {
    cmd->add_option("--out", path, "output file (default: stdout)");
  }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << text;
  }
};

std::string bits_to_string(uint64_t x, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if ((x >> q) & 1) s[q] = '1';
  return s;
}

std::vector<int> parse_l_values(const std::string& text) {
  std::vector<int> ls;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    int from = std::stoi(text.substr(0, dots));
    int to = std::stoi(text.substr(dots + 2));
    for (int l = from; l <= to; ++l) ls.push_back(l);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) ls.push_back(std::stoi(item));
  }
  if (ls.empty()) throw std::invalid_argument("empty L list");
  return ls;
}

int default_threads() {
  if (const char* env = std::getenv("PATHSIM_THREADS")) return std::max(1, std::atoi(env));
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated Pauli-path simulator for noisy parametrized circuits"};
  app.require_subcommand(1);

  // ---- expect ----
  auto* expect = app.add_subcommand("expect", "evaluate a truncated expectation-value series");
  CircuitSource expect_src;
  ParamSource expect_params;
  Output expect_out;
  std::string expect_obs, expect_stats;
  int expect_l = 0;
  uint64_t expect_seed = 0;
  size_t expect_draws = 0;
  int expect_threads = default_threads();
  double expect_eps = 0.0;
  expect_src.add_options(expect);
  expect_params.add_options(expect);
  expect_out.add_option(expect);
  expect->add_option("--obs", expect_obs, "observable, e.g. 'X' or '0.5*ZI + -1*XX'")->required();
  expect->add_option("--L", expect_l, "truncation budget")->required();
  expect->add_option("--seed", expect_seed, "master seed")->required();
  expect->add_option("--draws", expect_draws, "evaluate at N uniform parameter draws");
  expect->add_option("--stats", expect_stats, "write series statistics JSON to this file");
  expect->add_option("--threads", expect_threads, "worker threads for draw evaluation");
  expect->add_option("--adjoint-epsilon", expect_eps, "skip adjoint entries below this magnitude");

  // ---- probs ----
  auto* probs = app.add_subcommand("probs", "dump the truncated output distribution");
  CircuitSource probs_src;
  ParamSource probs_params;
  Output probs_out;
  int probs_l = 0, probs_marginals = 1, probs_cap = 14;
  uint64_t probs_seed = 0;
  std::string probs_mode = "auto";
  probs_src.add_options(probs);
  probs_params.add_options(probs);
  probs_out.add_option(probs);
  probs->add_option("--L", probs_l, "truncation budget")->required();
  probs->add_option("--seed", probs_seed, "master seed")->required();
  probs->add_option("--marginals", probs_marginals, "dump prefix marginals up to this length");
  probs->add_option("--cap", probs_cap, "contraction generator cap");
  probs->add_option("--mode", probs_mode, "auto | bidirectional | dense-root");

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "draw bitstrings from the truncated distribution");
  CircuitSource sample_src;
  ParamSource sample_point_src;
  Output sample_out;
  int sample_l = 0, sample_threads = default_threads();
  uint64_t sample_seed = 0;
  size_t sample_count = 0;
  sample_src.add_options(sample);
  sample_point_src.add_options(sample);
  sample_out.add_option(sample);
  sample->add_option("--L", sample_l, "truncation budget")->required();
  sample->add_option("--seed", sample_seed, "master seed")->required();
  sample->add_option("--n-samples", sample_count, "number of bitstrings")->required();
  sample->add_option("--threads", sample_threads, "worker threads");

  // ---- sweep-l ----
  auto* sweep = app.add_subcommand("sweep-l", "Monte-Carlo truncation-error sweep over L");
  CircuitSource sweep_src;
  Output sweep_out;
  std::string sweep_obs, sweep_ls = "1..4", sweep_norm = "hs";
  uint64_t sweep_seed = 0;
  size_t sweep_draws = 200;
  bool sweep_gamma_from_noise = false;
  sweep_src.add_options(sweep);
  sweep_out.add_option(sweep);
  sweep->add_option("--obs", sweep_obs, "observable")->required();
  sweep->add_option("--L", sweep_ls, "range 'a..b' or comma list");
  sweep->add_option("--draws", sweep_draws, "parameter draws per L");
  sweep->add_option("--seed", sweep_seed, "master seed")->required();
  sweep->add_flag("--gamma-from-noise", sweep_gamma_from_noise,
                  "bound column uses the smallest channel gap (always on; flag kept for scripts)");
  sweep->add_option("--norm-factor", sweep_norm, "bound normalisation: hs | l1 | one");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the oracle-equivalence self checks");
  int verify_max_n = 4;
  uint64_t verify_seed = 0;
  verify->add_option("--max-n", verify_max_n, "largest qubit count to test");
  verify->add_option("--seed", verify_seed, "master seed")->required();

  // ---- anticoncentration ----
  auto* anti = app.add_subcommand("anticoncentration",
                                  "second-moment estimator of the output ensemble");
  CircuitSource anti_src;
  Output anti_out;
  uint64_t anti_seed = 0;
  size_t anti_draws = 100;
  anti_src.add_options(anti);
  anti_out.add_option(anti);
  anti->add_option("--draws", anti_draws, "parameter draws");
  anti->add_option("--seed", anti_seed, "master seed")->required();

  // ---- dump-adjoint ----
  auto* adj = app.add_subcommand("dump-adjoint", "CSV of the 15x15 adjoint matrix of a Haar draw");
  Output adj_out;
  uint64_t adj_seed = 0;
  adj_out.add_option(adj);
  adj->add_option("--haar-seed", adj_seed, "seed of the draw")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*expect) {
      if (expect_draws > 0 && (!expect_params.theta_csv.empty() || expect_params.haar_seed_set))
        throw std::invalid_argument("--draws excludes the explicit --theta/--haar-seed point");
      CircuitIR c = expect_src.load(expect_seed);
      Observable obs = Observable::parse(expect_obs, c.n);
      ExpectationSeries series = build_series(c, obs, expect_l);
      std::ostringstream csv;
      csv << "index,value\n";
      if (expect_draws > 0) {
        std::vector<double> values(expect_draws);
        RngStream base(expect_seed);
        tools::parallel_for(expect_draws, expect_threads, [&](size_t i) {
          RngStream rng = base.stream(i);
          ParamPoint pt = sample_params(c, rng);
          values[i] = evaluate_expectation(series, pt, expect_eps);
        });
        for (size_t i = 0; i < values.size(); ++i)
          csv << i << "," << format_double(values[i]) << "\n";
      } else {
        ParamPoint pt = expect_params.single_point(c);
        csv << 0 << "," << format_double(evaluate_expectation(series, pt, expect_eps)) << "\n";
      }
      expect_out.write(csv.str());
      std::string stats = stats_json(series);
      if (!expect_stats.empty()) {
        std::ofstream sf(expect_stats, std::ios::binary);
        sf << stats << "\n";
      } else {
        std::cerr << stats << "\n";
      }
      return 0;
    }

    if (*probs) {
      CircuitIR c = probs_src.load(probs_seed);
      if (c.n > 16) throw std::invalid_argument("probs dump limited to n <= 16");
      DistOptions opt;
      opt.cap = probs_cap;
      if (probs_mode == "bidirectional")
        opt.mode = DistOptions::Mode::Bidirectional;
      else if (probs_mode == "dense-root")
        opt.mode = DistOptions::Mode::DenseRoot;
      else if (probs_mode != "auto")
        throw std::invalid_argument("unknown mode " + probs_mode);
      TruncatedDistribution d = build_distribution(c, probs_l, opt);
      ParamPoint pt = probs_params.single_point(c);
      std::ostringstream csv;
      csv << "x,p\n";
      auto vec = prob_vector(d, pt);
      for (uint64_t x = 0; x < vec.size(); ++x)
        csv << bits_to_string(x, c.n) << "," << format_double(vec[x]) << "\n";
      for (int len = 1; len <= std::min(probs_marginals, c.n); ++len)
        for (uint64_t prefix = 0; prefix < (uint64_t(1) << len); ++prefix)
          csv << "marginal:" << bits_to_string(prefix, len) << ","
              << format_double(marginal_value(d, prefix, len, pt)) << "\n";
      probs_out.write(csv.str());
      std::cerr << stats_json(d) << "\n";
      return 0;
    }

    if (*sample) {
      CircuitIR c = sample_src.load(sample_seed);
      TruncatedDistribution d = build_distribution(c, sample_l);
      ParamPoint pt = sample_point_src.single_point(c);
      std::vector<SampleRecord> records(sample_count);
      RngStream base(sample_seed);
      tools::parallel_for(sample_count, sample_threads, [&](size_t i) {
        RngStream rng = base.stream(i);
        records[i] = sample_bitstring(d, pt, rng);
      });
      std::ostringstream out;
      long long clamps = 0, fallbacks = 0, calls = 0;
      for (const auto& rec : records) {
        out << bits_to_string(rec.bits, c.n) << "\n";
        clamps += rec.clamp_events;
        fallbacks += rec.uniform_fallbacks;
        calls += rec.marginal_calls;
      }
      nlohmann::json footer;
      footer["samples"] = sample_count;
      footer["clamp_events"] = clamps;
      footer["uniform_fallbacks"] = fallbacks;
      footer["marginal_calls"] = calls;
      footer["seed"] = sample_seed;
      out << footer.dump() << "\n";
      sample_out.write(out.str());
      return 0;
    }

    if (*sweep) {
      CircuitIR c = sweep_src.load(sweep_seed);
      (void)sweep_gamma_from_noise;  // the bound always derives from the channels
      Observable obs = Observable::parse(sweep_obs, c.n);
      NormFactor nf = NormFactor::NormalizedHS;
      if (sweep_norm == "l1")
        nf = NormFactor::CoeffL1;
      else if (sweep_norm == "one")
        nf = NormFactor::One;
      else if (sweep_norm != "hs")
        throw std::invalid_argument("unknown norm factor " + sweep_norm);
      std::vector<int> ls = parse_l_values(sweep_ls);
      ErrorSweep result = mc_l2_error(c, obs, ls, sweep_draws, sweep_seed, nf);
      sweep_out.write(result.to_csv());
      return 0;
    }

    if (*verify) {
      bool ok = tools::run_verify_suite(verify_max_n, verify_seed, std::cout);
      return ok ? 0 : kExitVerify;
    }

    if (*anti) {
      CircuitIR c = anti_src.load(anti_seed);
      AntiConcEstimate est = anticoncentration_estimate(c, anti_draws, anti_seed);
      std::ostringstream csv;
      csv << "n,draws,estimate,stderr,seed\n";
      csv << c.n << "," << est.draws << "," << format_double(est.value) << ","
          << format_double(est.stderr_) << "," << anti_seed << "\n";
      anti_out.write(csv.str());
      return 0;
    }

    if (*adj) {
      RngStream rng(adj_seed);
      AdjointMatrix v = su4_adjoint(haar_su4(rng));
      std::ostringstream csv;
      for (int r = 0; r < 15; ++r) {
        for (int col = 0; col < 15; ++col)
          csv << (col ? "," : "") << format_double(v(r, col));
        csv << "\n";
      }
      adj_out.write(csv.str());
      return 0;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngine;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngine;
  }
  return 0;
}
