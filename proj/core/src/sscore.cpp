#include "dwmk/sscore.hpp"

#include <cmath>
#include <string>

#include "dwmk/errors.hpp"

namespace dwmk {
namespace {

// Pairwise reduction of f(i) over [lo, lo + count): fixed association, so
// results are independent of vectorization or call site, and rounding error
// grows like log(count) instead of count.
template <class F>
double pairwise_sum(std::size_t lo, std::size_t count, const F& f) {
  if (count <= 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += f(lo + i);
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(lo, half, f) + pairwise_sum(lo + half, count - half, f);
}

void require_bit(int bit) {
  if (bit != 1 && bit != -1) {
    throw DomainError("bit must be +1 or -1, got " + std::to_string(bit));
  }
}

}  // namespace

double inner(std::span<const double> x, std::span<const double> u) {
  if (x.size() != u.size() || x.empty()) {
    throw LengthMismatchError("inner product needs equal nonzero lengths");
  }
  const double sum =
      pairwise_sum(0, x.size(), [&](std::size_t i) { return x[i] * u[i]; });
  return sum / static_cast<double>(x.size());
}

double norm_power(std::span<const double> x) { return inner(x, x); }

double host_projection(std::span<const double> x, std::span<const double> u) {
  return inner(x, u) / inner(u, u);
}

std::vector<double> embed_traditional(std::span<const double> x,
                                      std::span<const double> u, int bit) {
  require_bit(bit);
  if (x.size() != u.size() || x.empty()) {
    throw LengthMismatchError("embedding needs equal nonzero lengths");
  }
  std::vector<double> s(x.size());
  const double b = static_cast<double>(bit);
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + b * u[i];
  return s;
}

IssResult embed_iss(std::span<const double> x, std::span<const double> u,
                    int bit, const EmbedParams& params) {
  require_bit(bit);
  if (!(params.mu >= 0.0)) throw DomainError("gain must be nonnegative");
  if (!(params.sigma_u > 0.0)) throw DomainError("chip amplitude must be positive");
  const double xbar = host_projection(x, u);
  IssResult res;
  res.g = params.mu * static_cast<double>(bit) - params.lambda * xbar;
  res.s.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) res.s[i] = x[i] + res.g * u[i];
  return res;
}

Detection detect(std::span<const double> y, std::span<const double> u) {
  Detection d;
  d.r = inner(y, u) / inner(u, u);
  if (d.r == 0.0) {
    d.tie = true;
    d.beta = 1;
  } else {
    d.beta = d.r > 0.0 ? 1 : -1;
  }
  return d;
}

Presence presence_statistic(std::span<const double> y,
                            std::span<const double> u, double tau) {
  Presence p;
  p.c = inner(y, u) / inner(u, u);
  p.present = p.c > tau;
  return p;
}

double expected_distortion(double mu, double lambda, const ModelStats& stats) {
  if (stats.n == 0) throw DomainError("spreading length must be positive");
  if (!(stats.sigma_u2 > 0.0)) throw DomainError("chip power must be positive");
  const double n = static_cast<double>(stats.n);
  return (mu * mu +
          lambda * lambda * stats.sigma_x2 / (n * stats.sigma_u2)) *
         stats.sigma_u2;
}

double mu_for_budget(double lambda, double alpha, const ModelStats& stats) {
  if (stats.n == 0) throw DomainError("spreading length must be positive");
  if (!(stats.sigma_u2 > 0.0)) throw DomainError("chip power must be positive");
  if (!(alpha > 0.0)) throw DomainError("distortion budget must be positive");
  const double n = static_cast<double>(stats.n);
  const double radicand =
      alpha - lambda * lambda * stats.sigma_x2 / (n * stats.sigma_u2);
  if (radicand < 0.0) {
    throw BudgetInfeasibleError(
        "host rejection at lambda " + std::to_string(lambda) +
        " exceeds the distortion budget " + std::to_string(alpha));
  }
  return std::sqrt(radicand);
}

double lambda_opt(const ModelStats& stats) {
  if (stats.n == 0) throw DomainError("spreading length must be positive");
  if (!(stats.sigma_u2 > 0.0)) throw DomainError("chip power must be positive");
  if (!(stats.sigma_x2 >= 0.0)) throw DomainError("host variance must be nonnegative");
  if (stats.sigma_x2 == 0.0) return 0.0;  // nothing to reject
  const double a = static_cast<double>(stats.n) * stats.sigma_u2 / stats.sigma_x2;
  const double b = stats.sigma_n2 / stats.sigma_x2;
  const double A = 1.0 + b + a;
  // Small root of lambda^2 - A lambda + a = 0 in product form; the usual
  // difference form cancels badly when b is large.
  return 2.0 * a / (A + std::sqrt(A * A - 4.0 * a));
}

double error_probability(double lambda, const ModelStats& stats) {
  if (stats.n == 0) throw DomainError("spreading length must be positive");
  if (!(stats.sigma_u2 > 0.0)) throw DomainError("chip power must be positive");
  if (!(stats.sigma_x2 > 0.0)) throw DomainError("host variance must be positive");
  const double a = static_cast<double>(stats.n) * stats.sigma_u2 / stats.sigma_x2;
  const double b = stats.sigma_n2 / stats.sigma_x2;
  const double num = a - lambda * lambda;
  if (num < 0.0) {
    throw BudgetInfeasibleError("lambda " + std::to_string(lambda) +
                                " is outside the feasible range");
  }
  const double den = b + (1.0 - lambda) * (1.0 - lambda);
  if (den == 0.0) return num > 0.0 ? 0.0 : 0.5;
  return 0.5 * std::erfc(std::sqrt(num / (2.0 * den)));
}

double error_probability(double mu, double lambda, const ModelStats& stats) {
  if (stats.n == 0) throw DomainError("spreading length must be positive");
  if (!(stats.sigma_u2 > 0.0)) throw DomainError("chip power must be positive");
  if (!(mu >= 0.0)) throw DomainError("gain must be nonnegative");
  const double one_minus = 1.0 - lambda;
  const double var_r =
      (stats.sigma_n2 + one_minus * one_minus * stats.sigma_x2) /
      (static_cast<double>(stats.n) * stats.sigma_u2);
  if (var_r == 0.0) return mu > 0.0 ? 0.0 : 0.5;
  return 0.5 * std::erfc(mu / std::sqrt(2.0 * var_r));
}

}  // namespace dwmk
