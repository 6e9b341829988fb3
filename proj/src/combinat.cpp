#include "codedensity/combinat.hpp"

#include <string>

#include "codedensity/errors.hpp"

namespace codedensity {

namespace {

void require_alphabet(std::uint64_t q) {
  if (q < 2) throw ParameterError("q >= 2", "q = " + std::to_string(q));
}

void require_grassmannian(unsigned n, unsigned k) {
  if (k < 1 || 2 * static_cast<unsigned long>(k) > n) {
    throw ParameterError("1 <= k <= n - k", "k = " + std::to_string(k) + ", n = " + std::to_string(n));
  }
}

}  // namespace

std::optional<PrimePower> prime_power_decomposition(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return PrimePower{q, 1};
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, e};
}

bool is_prime_power(std::uint64_t q) { return prime_power_decomposition(q).has_value(); }

void require_prime_power(std::uint64_t q) {
  require_alphabet(q);
  if (!is_prime_power(q)) throw NotPrimePowerError(q);
}

Count binom(const Count& m, long long l) {
  if (l < 0 || sgn(m) < 0 || Count(static_cast<long>(l)) > m) return 0;
  Count out;
  mpz_bin_ui(out.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(l));
  return out;
}

Count binom(unsigned long long m, long long l) { return binom(Count(static_cast<unsigned long>(m)), l); }

Count q_binom(unsigned long m, long long l, std::uint64_t q) {
  require_alphabet(q);
  if (l < 0 || static_cast<unsigned long long>(l) > m) return 0;
  // prod_{i<l} (q^(m-i) - 1) / (q^(i+1) - 1); the quotient is exact.
  Count num = 1;
  Count den = 1;
  for (long long i = 0; i < l; ++i) {
    num *= power(q, static_cast<unsigned long>(m - static_cast<unsigned long>(i))) - 1;
    den *= power(q, static_cast<unsigned long>(i + 1)) - 1;
  }
  Count out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Count hamming_ball_size(std::uint64_t q, unsigned n, int r) {
  require_alphabet(q);
  if (n < 1) throw ParameterError("n >= 1", "n = 0");
  if (r < 0 || static_cast<unsigned>(r) > n) {
    throw ParameterError("0 <= r <= n", "r = " + std::to_string(r) + ", n = " + std::to_string(n));
  }
  Count total = 0;
  for (int i = 0; i <= r; ++i) total += binom(n, i) * power(q - 1, static_cast<unsigned long>(i));
  return total;
}

Count injection_ball_size(std::uint64_t q, unsigned n, unsigned k, int r) {
  require_prime_power(q);
  require_grassmannian(n, k);
  if (r < 0 || static_cast<unsigned>(r) > k) {
    throw ParameterError("0 <= r <= k", "r = " + std::to_string(r) + ", k = " + std::to_string(k));
  }
  Count total = 0;
  for (int i = 0; i <= r; ++i) {
    total += power(q, static_cast<unsigned long>(i) * static_cast<unsigned long>(i)) * q_binom(k, i, q) *
             q_binom(n - k, i, q);
  }
  return total;
}

Count hamming_singleton_max(std::uint64_t q, unsigned n, unsigned d) {
  require_alphabet(q);
  if (d < 1 || d > n) throw ParameterError("1 <= d <= n", "d = " + std::to_string(d) + ", n = " + std::to_string(n));
  return power(q, n - d + 1);
}

Count subspace_singleton_max(std::uint64_t q, unsigned n, unsigned k, unsigned d) {
  require_prime_power(q);
  require_grassmannian(n, k);
  if (d < 1 || d > k) throw ParameterError("1 <= d <= k", "d = " + std::to_string(d) + ", k = " + std::to_string(k));
  return q_binom(n - d + 1, n - k, q);
}

AsymptoticForm hamming_ball_asymptotic(unsigned n, unsigned d) {
  if (d < 2 || d > n) throw ParameterError("2 <= d <= n", "d = " + std::to_string(d) + ", n = " + std::to_string(n));
  return {binom(n, d - 1), d - 1};
}

AsymptoticForm injection_ball_asymptotic(unsigned n, unsigned k, unsigned d) {
  require_grassmannian(n, k);
  if (d < 2 || d > k) throw ParameterError("2 <= d <= k", "d = " + std::to_string(d) + ", k = " + std::to_string(k));
  return {1, static_cast<unsigned long>(d - 1) * (n - d + 1)};
}

}  // namespace codedensity
