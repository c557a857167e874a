#include "dwmk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "dwmk/errors.hpp"
#include "dwmk/rng.hpp"

namespace dwmk {
namespace {

using json = nlohmann::ordered_json;

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Smallest block length in [1, n_total] accepted by `ok`, assuming
// acceptance is monotone in the length. 0 when even n_total fails.
template <typename Pred>
std::uint64_t minimal_block_len(const Pred& ok, std::uint64_t n_total) {
  if (!ok(n_total)) return 0;
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  while (!ok(hi)) {
    lo = hi + 1;
    hi = std::min(hi * 2, n_total);
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

}  // namespace

GrayImage synthetic_cover(const SyntheticCoverSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) {
    throw DomainError("cover dimensions must be positive");
  }
  if (spec.sigma_x < 0.0) throw DomainError("cover deviation must be >= 0");
  GrayImage img;
  img.width = spec.width;
  img.height = spec.height;
  img.pixels.resize(static_cast<std::size_t>(spec.width) *
                    static_cast<std::size_t>(spec.height));
  GaussianStream g(spec.seed);
  for (auto& p : img.pixels) {
    const double v =
        std::clamp(std::round(spec.mean + spec.sigma_x * g.next()), 0.0, 255.0);
    p = static_cast<std::uint8_t>(v);
  }
  return img;
}

WatermarkBits random_watermark(int width, int height, std::uint64_t seed) {
  if (width <= 0 || height <= 0) {
    throw DomainError("watermark dimensions must be positive");
  }
  WatermarkBits wm;
  wm.width = width;
  wm.height = height;
  wm.bits.resize(static_cast<std::size_t>(width) *
                 static_cast<std::size_t>(height));
  SplitMix64 rng(seed);
  for (auto& b : wm.bits) b = (rng.next() & 1) != 0 ? 1 : -1;
  return wm;
}

GainSweepResult gain_sweep(const GrayImage& cover, const WatermarkBits& wm,
                           std::uint64_t q, const SweepConfig& cfg) {
  if (cfg.step <= 0.0) throw DomainError("sweep step must be positive");
  if (cfg.mu_from < 0.0 || cfg.mu_to < cfg.mu_from) {
    throw DomainError("sweep range must satisfy 0 <= from <= to");
  }
  if (cfg.trials < 1) throw DomainError("trial count must be positive");

  GainSweepResult res;
  res.prime = q;
  res.cls = classify(generate(q));

  const std::size_t points = static_cast<std::size_t>(std::floor(
                                 (cfg.mu_to - cfg.mu_from) / cfg.step + 1e-9)) +
                             1;
  res.sweep.reserve(points);

  EmbedOptions opt;
  opt.params.lambda = cfg.lambda;
  opt.params.sigma_u = cfg.sigma_u;
  opt.quantize = cfg.quantize;

  const std::uint64_t trials = static_cast<std::uint64_t>(cfg.trials);
  for (std::size_t k = 0; k < points; ++k) {
    const double mu = cfg.mu_from + static_cast<double>(k) * cfg.step;
    opt.params.mu = mu;
    opt.budget_alpha.reset();
    const EmbedOutcome emb = embed_image(cover, wm, q, opt);

    double ber_sum = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      NoiseSpec noise;
      noise.sigma_n = cfg.sigma_n;
      noise.seed = substream(cfg.seed, k * trials + t);
      const std::vector<double> y = awgn(emb.marked.samples, noise);
      const DetectionReport det =
          extract_image(y, q, wm.bits.size(), cfg.sigma_u, wm.bits);
      ber_sum += *det.ber;
    }

    SweepPoint point;
    point.mu = mu;
    point.ber = ber_sum / static_cast<double>(trials);
    if (point.ber == 0.0 && !res.minimal_perfect_mu) {
      res.minimal_perfect_mu = mu;
      if (mu > 0.0) res.distortion_factor = 1.0 / (mu * mu);
    }
    res.sweep.push_back(point);
  }
  return res;
}

std::string sweep_csv(const GainSweepResult& res) {
  std::string out = "mu,ber\n";
  for (const SweepPoint& p : res.sweep) {
    out += format_sig(p.mu);
    out += ',';
    out += format_sig(p.ber);
    out += '\n';
  }
  return out;
}

std::string sweep_summary_json(const GainSweepResult& res) {
  json j;
  j["prime"] = res.prime;
  j["n_divisor"] = res.cls.n_divisor;
  j["even_divisor"] = res.cls.even;
  json points = json::array();
  for (const SweepPoint& p : res.sweep) {
    points.push_back({{"mu", p.mu}, {"ber", p.ber}});
  }
  j["sweep"] = points;
  if (res.minimal_perfect_mu) {
    j["minimal_perfect_mu"] = *res.minimal_perfect_mu;
  } else {
    j["minimal_perfect_mu"] = nullptr;
  }
  if (res.distortion_factor) {
    j["distortion_factor"] = *res.distortion_factor;
  } else {
    j["distortion_factor"] = nullptr;
  }
  return j.dump(2);
}

CapacityResult capacity_comparison(std::uint64_t q, double budget_alpha,
                                   const ModelStats& stats,
                                   double ber_ceiling) {
  if (budget_alpha <= 0.0) throw DomainError("budget must be positive");
  if (stats.n == 0) throw DomainError("signal budget must be positive");
  if (stats.sigma_u2 <= 0.0) throw DomainError("chip power must be positive");
  if (ber_ceiling <= 0.0 || ber_ceiling >= 0.5) {
    throw DomainError("error ceiling must be in (0, 0.5)");
  }
  period(q);  // key validity only; the model is key-independent

  const auto improved_ok = [&](std::uint64_t len) {
    ModelStats s = stats;
    s.n = len;
    double lam = 0.0;
    if (s.sigma_x2 > 0.0) {
      lam = lambda_opt(s);
      // The budget caps how much host rejection is affordable; past the cap
      // the gain would go imaginary.
      const double lam_max =
          std::sqrt(budget_alpha * static_cast<double>(len) * s.sigma_u2 /
                    s.sigma_x2) *
          (1.0 - 1e-12);
      lam = std::min(lam, lam_max);
    }
    const double mu = mu_for_budget(lam, budget_alpha, s);
    return error_probability(mu, lam, s) <= ber_ceiling;
  };
  const auto traditional_ok = [&](std::uint64_t len) {
    ModelStats s = stats;
    s.n = len;
    return error_probability(std::sqrt(budget_alpha), 0.0, s) <= ber_ceiling;
  };

  CapacityResult res;
  res.prime = q;
  res.block_len = minimal_block_len(improved_ok, stats.n);
  res.block_len_traditional = minimal_block_len(traditional_ok, stats.n);
  res.bits_at_budget = res.block_len == 0 ? 0 : stats.n / res.block_len;
  res.bits_traditional =
      res.block_len_traditional == 0 ? 0 : stats.n / res.block_len_traditional;

  if (res.bits_traditional > 0) {
    const double ratio = static_cast<double>(res.bits_at_budget) /
                         static_cast<double>(res.bits_traditional);
    res.ratio_capped = ratio > kCapacityRatioCap;
    res.vs_traditional_ratio = res.ratio_capped ? kCapacityRatioCap : ratio;
  } else if (res.bits_at_budget > 0) {
    res.vs_traditional_ratio = kCapacityRatioCap;
    res.ratio_capped = true;
  }
  return res;
}

std::string capacity_json(const CapacityResult& res) {
  json j;
  j["prime"] = res.prime;
  j["bits_at_budget"] = res.bits_at_budget;
  j["bits_traditional"] = res.bits_traditional;
  j["block_len"] = res.block_len;
  j["block_len_traditional"] = res.block_len_traditional;
  j["vs_traditional_ratio"] = res.vs_traditional_ratio;
  j["ratio_capped"] = res.ratio_capped;
  return j.dump(2);
}

}  // namespace dwmk
