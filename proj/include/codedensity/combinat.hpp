#pragma once

// Exact counting primitives: binomials, Gaussian binomials, metric ball sizes,
// Singleton-type maxima and the leading-order shape of the ball sizes.
//
// Hamming-metric functions accept any alphabet size q >= 2. Functions on the
// Grassmannian require q to be a prime power and throw NotPrimePowerError
// otherwise.

#include <cstdint>
#include <optional>

#include "codedensity/numeric.hpp"

namespace codedensity {

/// f(q) ~ coefficient * q^exponent as q grows.
struct AsymptoticForm {
  Count coefficient;
  unsigned long exponent = 0;

  friend bool operator==(const AsymptoticForm&, const AsymptoticForm&) = default;
};

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
};

/// Returns (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<PrimePower> prime_power_decomposition(std::uint64_t q);
bool is_prime_power(std::uint64_t q);
/// Throws NotPrimePowerError unless q is a prime power.
void require_prime_power(std::uint64_t q);

/// Binomial coefficient; 0 whenever l < 0 or l > m.
Count binom(const Count& m, long long l);
Count binom(unsigned long long m, long long l);

/// Number of l-dimensional subspaces of F_q^m (product formula).
Count q_binom(unsigned long m, long long l, std::uint64_t q);

/// |{y in F_q^n : d_H(x, y) <= r}|.
Count hamming_ball_size(std::uint64_t q, unsigned n, int r);

/// |{Y in G_q(k, n) : d_I(X, Y) <= r}|; requires 1 <= k <= n - k and 0 <= r <= k.
Count injection_ball_size(std::uint64_t q, unsigned n, unsigned k, int r);

/// q^(n - d + 1).
Count hamming_singleton_max(std::uint64_t q, unsigned n, unsigned d);

/// Gaussian binomial [n - d + 1, n - k]_q; requires 1 <= d <= k <= n - k.
Count subspace_singleton_max(std::uint64_t q, unsigned n, unsigned k, unsigned d);

/// Hamming ball of radius d - 1: (binom(n, d - 1), d - 1).
AsymptoticForm hamming_ball_asymptotic(unsigned n, unsigned d);

/// Injection ball of radius d - 1 in G_q(k, n): (1, (d - 1)(n - d + 1)).
AsymptoticForm injection_ball_asymptotic(unsigned n, unsigned k, unsigned d);

}  // namespace codedensity
