#pragma once

// Density bounds for codes of prescribed cardinality S and minimum distance at
// least d, in the Hamming metric on F_q^n and the injection metric on G_q(k, n).
//
// With M the size of the ambient set and b the ball size of radius d - 1:
//
//   lower = 1 - (b - 1) S (S - 1) / (2 (M - 1))
//   upper = 1 - (b - 1) S (S - 1) / (2 Omega (M - 1))
//   Omega = 1 + beta1 (S - 2) / (M - 2) + beta0 (S - 2)(S - 3) / ((M - 2)(M - 3))
//   beta1 = 2b - 4,  beta0 = M (b - 1) / 2 - 2b + 3

#include <cstdint>
#include <string>

#include "codedensity/assoc_engine.hpp"
#include "codedensity/combinat.hpp"
#include "codedensity/numeric.hpp"

namespace codedensity {

struct HammingParams {
  std::uint64_t q = 2;
  unsigned n = 1;
  unsigned d = 1;
  std::uint64_t S = 2;

  /// Validates 1 <= d <= n and 2 <= S <= q^n.
  static HammingParams make(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S);

  Count ambient_size() const { return power(q, n); }
};

struct SubspaceParams {
  std::uint64_t q = 2;
  unsigned n = 2;
  unsigned k = 1;           ///< canonical dimension, k <= n - k
  unsigned original_k = 1;  ///< dimension as supplied
  unsigned d = 1;
  std::uint64_t S = 2;

  /// Validates q prime power, 1 <= k <= n - 1, 1 <= d <= min(k, n - k) and
  /// 2 <= S <= [n, k]_q, then replaces k by n - k when k > n - k.
  static SubspaceParams make(std::uint64_t q, unsigned n, unsigned k, unsigned d, std::uint64_t S);

  bool dualized() const { return k != original_k; }
  Count ambient_size() const { return q_binom(n, k, q); }
};

struct DensityInterval {
  Rational lower_raw;
  Rational upper_raw;
  Rational lower;  ///< max(lower_raw, 0)
  Rational upper;  ///< min(upper_raw, 1)

  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

/// q^(e_num / e_den), kept symbolic.
struct PowerDescriptor {
  std::uint64_t base = 2;
  long long exp_num = 0;
  long long exp_den = 1;

  Rational exponent() const;
  /// Decimal rendering of the value.
  std::string approx(int significant = 15) const;
};

/// Asymptotic Gilbert-Varshamov cardinality q^exponent / divisor.
struct GvEstimate {
  unsigned long exponent = 0;
  Count divisor;
};

AssociationProfile hamming_profile(const HammingParams& p);
AssociationProfile injection_profile(const SubspaceParams& p);

DensityInterval density_bounds_hamming(const HammingParams& p);
DensityInterval density_bounds_injection(const SubspaceParams& p);

/// Shared formula evaluation: ambient size M, ball size b, cardinality S, d >= 2.
DensityInterval density_interval_from(const Count& ambient, const Count& ball, std::uint64_t S);

PowerDescriptor gamma_hamming(std::uint64_t q, unsigned n, unsigned d);
PowerDescriptor gamma_injection(std::uint64_t q, unsigned n, unsigned k, unsigned d);

GvEstimate gv_cardinality_estimate(std::uint64_t q, unsigned n, unsigned d);

/// Density of partial spreads among S-subsets of G_q(k, n); requires 2k <= n.
DensityInterval spread_bounds(std::uint64_t q, unsigned n, unsigned k, std::uint64_t S);

/// (q^n - 1) / (q^k - 1); requires k | n.
Count spread_size(std::uint64_t q, unsigned n, unsigned k);

/// Smallest integer m with m >= base^(num / den).
Count ceil_power(std::uint64_t base, const Rational& exponent);

}  // namespace codedensity
