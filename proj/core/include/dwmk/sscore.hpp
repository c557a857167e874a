#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dwmk {

// Host/noise/carrier moments used by the closed-form predictors. n is the
// per-bit spreading length (samples per bit).
struct ModelStats {
  double sigma_x2 = 0.0;  // host variance
  double sigma_n2 = 0.0;  // channel noise variance
  std::size_t n = 0;      // samples per bit
  double sigma_u2 = 1.0;  // chip power
};

struct EmbedParams {
  double mu = 0.0;      // watermark gain, >= 0
  double lambda = 1.0;  // host-rejection strength
  double sigma_u = 1.0; // chip amplitude, > 0
};

struct IssResult {
  std::vector<double> s;  // marked signal
  double g = 0.0;         // applied chip gain mu*b - lambda*xbar
};

struct Detection {
  double r = 0.0;    // normalized correlation statistic
  int beta = 0;      // decided bit, +1 or -1
  bool tie = false;  // r was exactly zero; beta forced to +1
};

struct Presence {
  double c = 0.0;
  bool present = false;
};

// Normalized inner product (1/N) sum x_i u_i. Pairwise summation keeps the
// reduction order fixed and the error small for long signals.
double inner(std::span<const double> x, std::span<const double> u);

// inner(x, x).
double norm_power(std::span<const double> x);

// Projection of the host onto the carrier: <x,u> / <u,u>.
double host_projection(std::span<const double> x, std::span<const double> u);

// s_i = x_i + bit * u_i.
std::vector<double> embed_traditional(std::span<const double> x,
                                      std::span<const double> u, int bit);

// Improved scheme: s_i = x_i + g u_i with g = mu*bit - lambda*xbar, so the
// detector sees mu*bit + (1-lambda)*xbar instead of bit + xbar.
IssResult embed_iss(std::span<const double> x, std::span<const double> u,
                    int bit, const EmbedParams& params);

// r = <y,u>/<u,u>; the bit is the sign of r. An exact zero is flagged and
// decided as +1.
Detection detect(std::span<const double> y, std::span<const double> u);

// Same statistic tested against a threshold, for presence checks.
Presence presence_statistic(std::span<const double> y,
                            std::span<const double> u, double tau);

// Expected per-sample embedding distortion
// (mu^2 + lambda^2 sigma_x^2 / (n sigma_u^2)) * sigma_u^2.
double expected_distortion(double mu, double lambda, const ModelStats& stats);

// Largest gain affordable under E[D] = alpha * sigma_u^2. Throws
// BudgetInfeasibleError when lambda^2 sigma_x^2 > alpha n sigma_u^2.
double mu_for_budget(double lambda, double alpha, const ModelStats& stats);

// Error-minimizing host-rejection strength, the small root of
// lambda^2 - A lambda + a with a = n sigma_u^2/sigma_x^2 and
// A = 1 + sigma_n^2/sigma_x^2 + a. Always in [0, min(1, sqrt(a))].
// Returns 0 for a degenerate (zero-variance) host.
double lambda_opt(const ModelStats& stats);

// Bit error probability at full distortion budget (alpha = 1):
// p = erfc(sqrt((a - lambda^2) / (b + (1-lambda)^2) / 2)) / 2 with
// a = n sigma_u^2/sigma_x^2 and b = sigma_n^2/sigma_x^2.
double error_probability(double lambda, const ModelStats& stats);

// General predictor from the detection statistic's moments: mean mu and
// variance (sigma_n^2 + (1-lambda)^2 sigma_x^2) / (n sigma_u^2).
double error_probability(double mu, double lambda, const ModelStats& stats);

}  // namespace dwmk
