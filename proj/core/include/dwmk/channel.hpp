#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dwmk/sscore.hpp"

namespace dwmk {

struct NoiseSpec {
  double sigma_n = 0.0;
  std::uint64_t seed = 0;
};

// Additive white Gaussian noise, deterministic in (spec, signal length).
// sigma_n = 0 returns the signal unchanged.
std::vector<double> awgn(std::span<const double> s, const NoiseSpec& spec);

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double empirical_ber = 0.0;
  double predicted_p = 0.0;
  double z_score = 0.0;
  double mu = 0.0;          // gain the budget resolved to
  double r_mean = 0.0;      // mean of bit*r over trials
  double r_var = 0.0;       // variance of bit*r over trials
};

// Single-bit embed/detect trials against the Gaussian host model. Each
// trial t draws its bit from the low bit of substream(seed, t) and its
// host and noise samples from a GaussianStream keyed by the same value, so
// trials are independent of evaluation order and two runs with one seed are
// identical. The carrier is the fixed chip prefix of key 2467; for i.i.d.
// Gaussian hosts any fixed antipodal pattern induces the same statistics.
// The gain is resolved as mu_for_budget(lambda, alpha, stats).
MonteCarloResult monte_carlo_ber(const ModelStats& stats, double lambda,
                                 double alpha, std::uint64_t trials,
                                 std::uint64_t seed);

std::string monte_carlo_json(const MonteCarloResult& res,
                             const ModelStats& stats, double lambda,
                             double alpha, std::uint64_t seed);

}  // namespace dwmk
