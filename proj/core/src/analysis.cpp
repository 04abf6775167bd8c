#include "pathsim/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pathsim/expectation.hpp"
#include "pathsim/oracle.hpp"
#include "pathsim/util.hpp"

namespace pathsim {

double error_bound(double gamma, int L, double norm_factor) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma out of [0,1]");
  if (L < 0) throw std::invalid_argument("L must be non-negative");
  return std::pow(1.0 - gamma, L) * norm_factor;
}

std::string ErrorSweep::to_csv() const {
  std::ostringstream os;
  os << "L,rms,bound,stderr,draws,seed\n";
  for (const auto& r : rows)
    os << r.L << "," << format_double(r.rms) << "," << format_double(r.bound) << ","
       << format_double(r.stderr_) << "," << r.draws << "," << seed << "\n";
  return os.str();
}

ErrorSweep mc_l2_error(const CircuitIR& c, const Observable& obs, std::span<const int> L_values,
                       size_t draws, uint64_t seed, NormFactor nf) {
  if (draws < 2) throw std::invalid_argument("mc_l2_error needs at least 2 draws");
  ErrorSweep sweep;
  sweep.seed = seed;
  sweep.gamma = min_spectral_gap(c);
  switch (nf) {
    case NormFactor::NormalizedHS: sweep.norm_factor = obs.normalized_hs_norm(); break;
    case NormFactor::CoeffL1: sweep.norm_factor = obs.coeff_l1(); break;
    case NormFactor::One: sweep.norm_factor = 1.0; break;
  }

  // Common random numbers: one set of parameter points and oracle values,
  // shared by every L.
  RngStream base(seed);
  std::vector<ParamPoint> points;
  std::vector<double> exact;
  points.reserve(draws);
  exact.reserve(draws);
  for (size_t i = 0; i < draws; ++i) {
    RngStream rng = base.stream(i);
    points.push_back(sample_params(c, rng));
    exact.push_back(exact_expectation(c, obs, points.back(), /*noisy=*/true));
  }

  for (int L : L_values) {
    ExpectationSeries series = build_series(c, obs, L);
    double sum_sq = 0.0, sum_abs = 0.0, sum_abs_sq = 0.0;
    for (size_t i = 0; i < draws; ++i) {
      double err = std::abs(exact[i] - evaluate_expectation(series, points[i]));
      sum_sq += err * err;
      sum_abs += err;
      sum_abs_sq += err * err;
    }
    double rms = std::sqrt(sum_sq / double(draws));
    double mean_abs = sum_abs / double(draws);
    double var = std::max(0.0, sum_abs_sq / double(draws) - mean_abs * mean_abs);
    double stderr_ = std::sqrt(var * double(draws) / double(draws - 1)) / std::sqrt(double(draws));
    sweep.rows.push_back({L, rms, error_bound(sweep.gamma, L, sweep.norm_factor), stderr_, draws});
  }
  return sweep;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance length mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

AntiConcEstimate anticoncentration_estimate(const CircuitIR& c, size_t draws, uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("anticoncentration needs at least one draw");
  RngStream base(seed);
  double scale = std::ldexp(1.0, c.n);
  double sum = 0.0, sum_sq = 0.0;
  for (size_t i = 0; i < draws; ++i) {
    RngStream rng = base.stream(i);
    ParamPoint pt = sample_params(c, rng);
    std::vector<double> probs = exact_distribution(c, pt, /*noisy=*/false);
    double m2 = 0.0;
    for (double p : probs) m2 += p * p;
    double v = scale * m2;
    sum += v;
    sum_sq += v * v;
  }
  AntiConcEstimate est;
  est.draws = draws;
  est.value = sum / double(draws);
  if (draws > 1) {
    double var = std::max(0.0, sum_sq / double(draws) - est.value * est.value);
    est.stderr_ = std::sqrt(var * double(draws) / double(draws - 1)) / std::sqrt(double(draws));
  }
  return est;
}

}  // namespace pathsim
