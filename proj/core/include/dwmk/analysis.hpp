#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwmk/channel.hpp"
#include "dwmk/dseq.hpp"
#include "dwmk/imaging.hpp"

namespace dwmk {

// Gaussian test cover around mid-gray, rounded and clamped to [0, 255].
struct SyntheticCoverSpec {
  int width = 512, height = 512;
  double sigma_x = 45.22;
  double mean = 128.0;
  std::uint64_t seed = 1;
};

GrayImage synthetic_cover(const SyntheticCoverSpec& spec);

// Uniform random +/-1 bits for sweep payloads.
WatermarkBits random_watermark(int width, int height, std::uint64_t seed);

struct SweepPoint {
  double mu = 0.0;
  double ber = 0.0;
};

struct SweepConfig {
  double mu_from = 0.1, mu_to = 1.0, step = 0.05;
  double lambda = 1.0;
  double sigma_u = 1.0;
  double sigma_n = 0.0;  // channel noise applied after quantization
  bool quantize = true;
  int trials = 1;  // independent noise draws averaged per grid point
  std::uint64_t seed = 1;
};

struct GainSweepResult {
  std::uint64_t prime = 0;
  Classification cls;
  std::vector<SweepPoint> sweep;
  std::optional<double> minimal_perfect_mu;  // first grid gain with ber 0
  std::optional<double> distortion_factor;   // 1/mu^2 at that gain
};

// Embeds and extracts at each gain on the grid, averaging the bit error
// rate over `trials` noise draws (point k, trial t uses noise substream
// k*trials + t of the seed).
GainSweepResult gain_sweep(const GrayImage& cover, const WatermarkBits& wm,
                           std::uint64_t q, const SweepConfig& cfg);

// CSV with header "mu,ber" and 17-significant-digit values.
std::string sweep_csv(const GainSweepResult& res);
std::string sweep_summary_json(const GainSweepResult& res);

struct CapacityResult {
  std::uint64_t prime = 0;
  std::uint64_t bits_at_budget = 0;     // improved scheme, floor(total/L)
  std::uint64_t bits_traditional = 0;   // lambda = 0, mu = sqrt(alpha)
  std::uint64_t block_len = 0;          // minimal per-bit length, improved
  std::uint64_t block_len_traditional = 0;
  double vs_traditional_ratio = 0.0;    // bit-count ratio, capped
  bool ratio_capped = false;
};

inline constexpr double kCapacityRatioCap = 1e6;

// Smallest per-bit block length that keeps the predicted error probability
// at or below `ber_ceiling` under distortion budget alpha, for the improved
// scheme (host rejection at the error-minimizing strength the budget can
// afford) versus the traditional one. stats.n is the total signal budget.
// When the traditional scheme cannot fit a single bit the ratio reports the
// capped sentinel.
CapacityResult capacity_comparison(std::uint64_t q, double budget_alpha,
                                   const ModelStats& stats,
                                   double ber_ceiling = 1e-6);

std::string capacity_json(const CapacityResult& res);

}  // namespace dwmk
