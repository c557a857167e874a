#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dwmk {

// Binary decimal sequence of a prime key q: digit i (counted from 1) is
// (2^i mod q) mod 2, which is also digit i of the binary expansion of 1/q.
// The period equals the multiplicative order of 2 mod q and divides q-1.
struct DSequence {
  std::uint64_t q = 0;
  std::uint64_t period = 0;          // multiplicative order of 2 mod q
  std::uint64_t n_divisor = 0;       // (q-1)/period
  bool max_length = false;           // n_divisor == 1
  std::vector<std::uint8_t> digits;  // one full period; digits[k] is digit k+1
};

// Antipodal carrier derived from the digits: 0 -> -sigma_u, 1 -> +sigma_u,
// extended periodically to the requested length.
struct ChipSequence {
  std::uint64_t q = 0;
  std::uint64_t period = 0;
  double sigma_u = 1.0;
  std::vector<double> chips;
};

struct Classification {
  std::uint64_t n_divisor = 0;
  bool even = false;  // parity of n_divisor
};

// Verdict on stacking two keys: with the periods reduced to lowest terms
// n1/n2, full-period cross-correlation vanishes at every shift iff n1 or n2
// is even. The guarantee is stated for max-length sequences, hence the
// warning flag when an input is not max-length.
struct PairReport {
  std::uint64_t q1 = 0, q2 = 0;
  std::uint64_t period1 = 0, period2 = 0;
  std::uint64_t n1 = 0, n2 = 0;  // periods divided by their gcd
  bool compatible = false;
  bool max_length_warning = false;
};

// Deterministic Miller-Rabin, exact for the accepted key range.
bool is_prime(std::uint64_t n);

// Multiplicative order of 2 mod q. Throws NotPrimeError for composite q,
// UnsupportedPrimeError for q <= 5, even q, or q >= 2^31.
std::uint64_t period(std::uint64_t q);

DSequence generate(std::uint64_t q);

Classification classify(const DSequence& seq);

ChipSequence chips(const DSequence& seq, std::size_t length, double sigma_u);

// Cyclic cross-correlation (1/L) * sum_i a[i] * b[(i + shift) mod L].
// Requires equal nonzero lengths.
double cross_correlation(const ChipSequence& a, const ChipSequence& b,
                         std::int64_t shift);

PairReport compatible_pair(std::uint64_t q1, std::uint64_t q2);

}  // namespace dwmk
