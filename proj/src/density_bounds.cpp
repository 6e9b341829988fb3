#include "codedensity/density_bounds.hpp"

#include <algorithm>
#include <vector>

#include "codedensity/errors.hpp"

namespace codedensity {

namespace {

std::string str(unsigned long long v) { return std::to_string(v); }

void require_cardinality(std::uint64_t S, const Count& ambient) {
  if (S < 2 || Count(static_cast<unsigned long>(S)) > ambient) {
    throw ParameterError("2 <= S <= M", "S = " + str(S) + ", M = " + ambient.get_str());
  }
}

DensityInterval unit_interval() {
  DensityInterval out;
  out.lower_raw = out.upper_raw = out.lower = out.upper = 1;
  return out;
}

AssociationProfile pair_profile(const Count& ambient, const Count& ball, std::uint64_t S) {
  // Left vertices: unordered pairs at distance <= d - 1. alpha({x,y},{t,z}) = 4 - |{x,y,t,z}|.
  AssociationProfile prof;
  prof.magnitude = 2;
  prof.v_size = ambient * (ball - 1) / 2;
  const Count& v = prof.v_size;
  prof.class_sizes = {Count(v * (v - 2 * ball + 3)), Count(2 * v * (ball - 2)), v};
  const long long s = static_cast<long long>(S);
  for (long long l = 0; l <= 2; ++l) prof.w_values.push_back(binom(Count(ambient + static_cast<long>(l) - 4), s - 4 + l));
  return prof;
}

}  // namespace

HammingParams HammingParams::make(std::uint64_t q, unsigned n, unsigned d, std::uint64_t S) {
  if (q < 2) throw ParameterError("q >= 2", "q = " + str(q));
  if (n < 1) throw ParameterError("n >= 1", "n = 0");
  if (d < 1 || d > n) throw ParameterError("1 <= d <= n", "d = " + str(d) + ", n = " + str(n));
  HammingParams p{q, n, d, S};
  require_cardinality(S, p.ambient_size());
  return p;
}

SubspaceParams SubspaceParams::make(std::uint64_t q, unsigned n, unsigned k, unsigned d, std::uint64_t S) {
  require_prime_power(q);
  if (n < 2 || k < 1 || k >= n) throw ParameterError("1 <= k <= n - 1", "k = " + str(k) + ", n = " + str(n));
  SubspaceParams p;
  p.q = q;
  p.n = n;
  p.original_k = k;
  p.k = std::min(k, n - k);
  p.d = d;
  p.S = S;
  if (d < 1 || d > p.k) {
    throw ParameterError("1 <= d <= min(k, n - k)", "d = " + str(d) + ", k = " + str(k) + ", n = " + str(n));
  }
  require_cardinality(S, p.ambient_size());
  return p;
}

Rational PowerDescriptor::exponent() const {
  Rational e(static_cast<long>(exp_num), static_cast<long>(exp_den));
  e.canonicalize();
  return e;
}

std::string PowerDescriptor::approx(int significant) const {
  Rational e = exponent();
  if (sgn(e) < 0) throw ParameterError("non-negative exponent", "exponent " + e.get_str());
  const unsigned long num = e.get_num().get_ui();
  const unsigned long den = e.get_den().get_ui();
  const mp_bitcnt_t bits = static_cast<mp_bitcnt_t>(significant * 4 + 256);
  mpf_class value(power(base, num), bits);
  if (den == 1) return to_decimal(Rational(power(base, num)), significant);
  mpf_class root(0, bits);
  if (den == 2) {
    mpf_sqrt(root.get_mpf_t(), value.get_mpf_t());
  } else {
    // Newton on x^den = value, started above the root.
    root = value + 1;
    for (int it = 0; it < 4096; ++it) {
      mpf_class xpow(1, bits);
      for (unsigned long i = 0; i + 1 < den; ++i) xpow *= root;
      mpf_class next = ((den - 1) * root + value / xpow) / den;
      if (next >= root) break;
      root = next;
    }
  }
  Rational r(root);
  return to_decimal(r, significant);
}

AssociationProfile hamming_profile(const HammingParams& p) {
  if (p.d < 2) throw ParameterError("d >= 2", "pair graph is empty for d = " + str(p.d));
  return pair_profile(p.ambient_size(), hamming_ball_size(p.q, p.n, static_cast<int>(p.d) - 1), p.S);
}

AssociationProfile injection_profile(const SubspaceParams& p) {
  if (p.d < 2) throw ParameterError("d >= 2", "pair graph is empty for d = " + str(p.d));
  return pair_profile(p.ambient_size(), injection_ball_size(p.q, p.n, p.k, static_cast<int>(p.d) - 1), p.S);
}

DensityInterval density_interval_from(const Count& ambient, const Count& ball, std::uint64_t S) {
  const Count& M = ambient;
  const Count s(static_cast<unsigned long>(S));
  if (S >= 3 && M < 4) {
    throw DegenerateAmbientError("M = " + M.get_str() + " makes (M - 2)(M - 3) vanish with S = " + str(S));
  }
  if (M < 2) throw DegenerateAmbientError("M = " + M.get_str());

  const Count pair_mass = (ball - 1) * s * (s - 1);

  DensityInterval out;
  out.lower_raw = 1 - Rational(pair_mass, Count(2 * (M - 1)));

  Rational omega = 1;
  if (S > 2) {
    const Count beta1 = 2 * ball - 4;
    const Rational beta0 = Rational(Count(M * (ball - 1)), Count(2)) - Rational(Count(2 * ball - 3));
    omega += Rational(Count(beta1 * (s - 2)), Count(M - 2)) +
             beta0 * Rational(Count((s - 2) * (s - 3)), Count((M - 2) * (M - 3)));
  }
  omega.canonicalize();
  out.upper_raw = 1 - Rational(pair_mass) / (2 * omega * Rational(Count(M - 1)));

  out.lower_raw.canonicalize();
  out.upper_raw.canonicalize();
  out.lower = out.lower_raw < 0 ? Rational(0) : out.lower_raw;
  out.upper = out.upper_raw > 1 ? Rational(1) : out.upper_raw;
  return out;
}

DensityInterval density_bounds_hamming(const HammingParams& p) {
  if (p.d == 1) return unit_interval();
  return density_interval_from(p.ambient_size(), hamming_ball_size(p.q, p.n, static_cast<int>(p.d) - 1), p.S);
}

DensityInterval density_bounds_injection(const SubspaceParams& p) {
  if (p.d == 1) return unit_interval();
  return density_interval_from(p.ambient_size(), injection_ball_size(p.q, p.n, p.k, static_cast<int>(p.d) - 1), p.S);
}

PowerDescriptor gamma_hamming(std::uint64_t q, unsigned n, unsigned d) {
  if (q < 2) throw ParameterError("q >= 2", "q = " + str(q));
  if (d < 2 || d > n) throw ParameterError("2 <= d <= n", "d = " + str(d) + ", n = " + str(n));
  return {q, static_cast<long long>(n - d + 1), 2};
}

PowerDescriptor gamma_injection(std::uint64_t q, unsigned n, unsigned k, unsigned d) {
  require_prime_power(q);
  if (k < 1 || 2 * k > n) throw ParameterError("1 <= k <= n - k", "k = " + str(k) + ", n = " + str(n));
  if (d < 2 || d > k) throw ParameterError("2 <= d <= k", "d = " + str(d) + ", k = " + str(k));
  const long long e = static_cast<long long>(k) * (n - k) - static_cast<long long>(d - 1) * (n - d + 1);
  return {q, e, 2};
}

GvEstimate gv_cardinality_estimate(std::uint64_t q, unsigned n, unsigned d) {
  if (q < 2) throw ParameterError("q >= 2", "q = " + str(q));
  if (d < 2 || d > n) throw ParameterError("2 <= d <= n", "d = " + str(d) + ", n = " + str(n));
  return {n - d + 1, binom(n, d - 1)};
}

DensityInterval spread_bounds(std::uint64_t q, unsigned n, unsigned k, std::uint64_t S) {
  if (k < 1 || 2 * k > n) {
    throw ParameterError("1 <= k <= n - k", "partial spreads need 2k <= n; k = " + str(k) + ", n = " + str(n));
  }
  SubspaceParams p = SubspaceParams::make(q, n, k, k, S);
  if (k == 1) return unit_interval();
  return density_bounds_injection(p);
}

Count spread_size(std::uint64_t q, unsigned n, unsigned k) {
  if (q < 2) throw ParameterError("q >= 2", "q = " + str(q));
  if (k < 1 || k > n || n % k != 0) throw ParameterError("k divides n", "k = " + str(k) + ", n = " + str(n));
  Count out;
  Count num = power(q, n) - 1;
  Count den = power(q, k) - 1;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Count ceil_power(std::uint64_t base, const Rational& exponent) {
  if (sgn(exponent) < 0) throw ParameterError("non-negative exponent", exponent.get_str());
  const unsigned long num = exponent.get_num().get_ui();
  const unsigned long den = exponent.get_den().get_ui();
  Count value = power(base, num);
  Count root;
  int exact = mpz_root(root.get_mpz_t(), value.get_mpz_t(), den);
  return exact ? root : Count(root + 1);
}

}  // namespace codedensity
