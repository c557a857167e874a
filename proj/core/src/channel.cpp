#include "dwmk/channel.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dwmk/dseq.hpp"
#include "dwmk/errors.hpp"
#include "dwmk/rng.hpp"

namespace dwmk {

std::vector<double> awgn(std::span<const double> s, const NoiseSpec& spec) {
  if (spec.sigma_n < 0.0) throw DomainError("noise level must be >= 0");
  std::vector<double> out(s.begin(), s.end());
  if (spec.sigma_n == 0.0) return out;
  GaussianStream g(spec.seed);
  for (double& v : out) v += spec.sigma_n * g.next();
  return out;
}

MonteCarloResult monte_carlo_ber(const ModelStats& stats, double lambda,
                                 double alpha, std::uint64_t trials,
                                 std::uint64_t seed) {
  if (stats.n == 0) throw DomainError("samples per bit must be positive");
  if (trials == 0) throw DomainError("trial count must be positive");
  const double sigma_x = std::sqrt(stats.sigma_x2);
  const double sigma_n = std::sqrt(stats.sigma_n2);
  const double sigma_u = std::sqrt(stats.sigma_u2);
  const double mu = mu_for_budget(lambda, alpha, stats);

  const DSequence seq = generate(2467);
  const ChipSequence carrier = chips(seq, stats.n, sigma_u);

  EmbedParams params;
  params.mu = mu;
  params.lambda = lambda;
  params.sigma_u = sigma_u;

  std::vector<double> x(stats.n);
  std::uint64_t errors = 0;
  double sum_br = 0.0;
  double sum_br2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t key = substream(seed, t);
    const int bit = (key & 1) != 0 ? 1 : -1;
    GaussianStream g(key);
    for (double& v : x) v = sigma_x * g.next();
    IssResult emb = embed_iss(x, carrier.chips, bit, params);
    if (sigma_n > 0.0) {
      for (double& v : emb.s) v += sigma_n * g.next();
    }
    const Detection det = detect(emb.s, carrier.chips);
    if (det.beta != bit) ++errors;
    const double br = bit * det.r;
    sum_br += br;
    sum_br2 += br * br;
  }

  MonteCarloResult res;
  res.trials = trials;
  res.errors = errors;
  res.empirical_ber =
      static_cast<double>(errors) / static_cast<double>(trials);
  res.predicted_p = error_probability(mu, lambda, stats);
  res.mu = mu;
  res.r_mean = sum_br / static_cast<double>(trials);
  const double second = sum_br2 / static_cast<double>(trials);
  res.r_var = std::max(0.0, second - res.r_mean * res.r_mean);

  const double p = res.predicted_p;
  const double var = p * (1.0 - p) / static_cast<double>(trials);
  if (var > 0.0) {
    res.z_score = (res.empirical_ber - p) / std::sqrt(var);
  } else if (res.empirical_ber == p) {
    res.z_score = 0.0;
  } else {
    res.z_score = std::numeric_limits<double>::infinity();
  }
  return res;
}

std::string monte_carlo_json(const MonteCarloResult& res,
                             const ModelStats& stats, double lambda,
                             double alpha, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["trials"] = res.trials;
  j["errors"] = res.errors;
  j["empirical_ber"] = res.empirical_ber;
  j["predicted_p"] = res.predicted_p;
  j["z_score"] = std::isfinite(res.z_score) ? nlohmann::ordered_json(res.z_score)
                                            : nlohmann::ordered_json(nullptr);
  j["mu"] = res.mu;
  j["lambda"] = lambda;
  j["alpha"] = alpha;
  j["r_mean"] = res.r_mean;
  j["r_var"] = res.r_var;
  j["seed"] = seed;
  j["stats"] = {{"sigma_x2", stats.sigma_x2},
                {"sigma_n2", stats.sigma_n2},
                {"n", stats.n},
                {"sigma_u2", stats.sigma_u2}};
  return j.dump(2);
}

}  // namespace dwmk
