#include "dwmk/dseq.hpp"

#include <numeric>
#include <string>

#include "dwmk/errors.hpp"

namespace dwmk {
namespace {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool witness_composite(u64 a, u64 d, unsigned s, u64 n) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

// The first twelve primes as witness bases decide primality for every
// 64-bit n (smallest counterexample is above 3.18e20).
bool is_prime(std::uint64_t n) {
  constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : bases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    if (witness_composite(a, d, s, n)) return false;
  }
  return true;
}

std::uint64_t period(std::uint64_t q) {
  if (q >= (1ull << 31)) {
    throw UnsupportedPrimeError("key " + std::to_string(q) +
                                " out of range (must be below 2^31)");
  }
  if (!is_prime(q)) {
    throw NotPrimeError("key " + std::to_string(q) + " is not prime");
  }
  if (q <= 5) {
    throw UnsupportedPrimeError("key " + std::to_string(q) +
                                " is not supported (need an odd prime > 5)");
  }

  // The order of 2 divides q-1; start there and strip every prime factor
  // that leaves 2^t at 1.
  u64 t = q - 1;
  u64 rem = q - 1;
  for (u64 f = 2; f * f <= rem; ++f) {
    if (rem % f != 0) continue;
    while (rem % f == 0) rem /= f;
    while (t % f == 0 && pow_mod(2, t / f, q) == 1) t /= f;
  }
  if (rem > 1) {
    while (t % rem == 0 && pow_mod(2, t / rem, q) == 1) t /= rem;
  }
  return t;
}

DSequence generate(std::uint64_t q) {
  DSequence seq;
  seq.q = q;
  seq.period = period(q);
  seq.n_divisor = (q - 1) / seq.period;
  seq.max_length = seq.n_divisor == 1;
  seq.digits.resize(seq.period);
  u64 r = 1;
  for (u64 i = 0; i < seq.period; ++i) {
    r = (r * 2) % q;  // q < 2^31, no overflow
    seq.digits[i] = static_cast<std::uint8_t>(r & 1);
  }
  return seq;
}

Classification classify(const DSequence& seq) {
  return Classification{seq.n_divisor, seq.n_divisor % 2 == 0};
}

ChipSequence chips(const DSequence& seq, std::size_t length, double sigma_u) {
  if (!(sigma_u > 0.0)) {
    throw DomainError("chip amplitude must be positive");
  }
  if (seq.digits.empty()) {
    throw DomainError("cannot spread an empty digit sequence");
  }
  ChipSequence c;
  c.q = seq.q;
  c.period = seq.period;
  c.sigma_u = sigma_u;
  c.chips.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    c.chips[i] = seq.digits[i % seq.digits.size()] ? sigma_u : -sigma_u;
  }
  return c;
}

double cross_correlation(const ChipSequence& a, const ChipSequence& b,
                         std::int64_t shift) {
  const std::size_t len = a.chips.size();
  if (len == 0 || len != b.chips.size()) {
    throw LengthMismatchError("cross-correlation needs equal nonzero lengths");
  }
  const auto L = static_cast<std::int64_t>(len);
  const auto s = static_cast<std::size_t>(((shift % L) + L) % L);
  double acc = 0.0;
  std::size_t k = s;
  for (std::size_t i = 0; i < len; ++i) {
    acc += a.chips[i] * b.chips[k];
    if (++k == len) k = 0;
  }
  return acc / static_cast<double>(len);
}

PairReport compatible_pair(std::uint64_t q1, std::uint64_t q2) {
  PairReport rep;
  rep.q1 = q1;
  rep.q2 = q2;
  rep.period1 = period(q1);
  rep.period2 = period(q2);
  const u64 g = std::gcd(rep.period1, rep.period2);
  rep.n1 = rep.period1 / g;
  rep.n2 = rep.period2 / g;
  rep.compatible = (rep.n1 % 2 == 0) || (rep.n2 % 2 == 0);
  rep.max_length_warning =
      rep.period1 != q1 - 1 || rep.period2 != q2 - 1;
  return rep;
}

}  // namespace dwmk
