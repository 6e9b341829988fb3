#include "codedensity/field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>

#include "codedensity/combinat.hpp"
#include "codedensity/errors.hpp"

namespace codedensity {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, low degree first

Poly digits(std::uint32_t value, std::uint32_t p, unsigned len) {
  Poly out(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = value % p;
    value /= p;
  }
  return out;
}

std::uint32_t undigits(const Poly& c, std::uint32_t p) {
  std::uint32_t v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  for (std::uint32_t x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

// Remainder of a modulo monic-or-not divisor b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  size_t db = b.size() - 1;
  while (db > 0 && b[db] == 0) --db;
  const std::uint32_t lead_inv = inverse_mod(b[db], p);
  for (size_t i = a.size(); i-- > db;) {
    if (a[i] == 0) continue;
    const std::uint32_t factor = a[i] * lead_inv % p;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - factor * b[j] % p) % p;
  }
  a.resize(db);
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned e = static_cast<unsigned>(f.size() - 1);
  for (unsigned deg = 1; 2 * deg <= e; ++deg) {
    std::uint32_t count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (std::uint32_t low = 0; low < count; ++low) {
      Poly g = digits(low, p, deg);
      g.push_back(1);
      Poly r = poly_mod(f, g, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

Poly first_irreducible(std::uint32_t p, unsigned e) {
  std::uint32_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  for (std::uint32_t low = 0; low < count; ++low) {
    Poly f = digits(low, p, e);
    f.push_back(1);
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FiniteField::FiniteField(std::uint32_t q) : q_(q) {
  if (q < 2 || q > kMaxOrder) {
    throw ParameterError("2 <= q <= 256", "finite field tables support q up to 256, got " + std::to_string(q));
  }
  auto pp = prime_power_decomposition(q);
  if (!pp) throw NotPrimePowerError(q);
  p_ = static_cast<std::uint32_t>(pp->prime);
  e_ = pp->exponent;
  modulus_ = e_ == 1 ? Poly{0, 1} : first_irreducible(p_, e_);

  add_.resize(static_cast<size_t>(q) * q);
  mul_.resize(static_cast<size_t>(q) * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    const Poly da = digits(a, p_, e_);
    Poly na(e_);
    for (unsigned i = 0; i < e_; ++i) na[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<std::uint8_t>(undigits(na, p_));
    for (std::uint32_t b = 0; b < q; ++b) {
      const Poly db = digits(b, p_, e_);
      Poly sum(e_);
      for (unsigned i = 0; i < e_; ++i) sum[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = static_cast<std::uint8_t>(undigits(sum, p_));

      Poly prod(2 * e_ - 1, 0);
      for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      const Poly reduced = e_ == 1 ? prod : poly_mod(prod, modulus_, p_);
      mul_[a * q + b] = static_cast<std::uint8_t>(undigits(reduced, p_));
    }
  }
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
}

const FiniteField& FiniteField::get(std::uint32_t q) {
  static std::mutex mutex;
  static std::array<std::unique_ptr<FiniteField>, kMaxOrder + 1> cache;
  if (q < 2 || q > kMaxOrder) {
    throw ParameterError("2 <= q <= 256", "finite field tables support q up to 256, got " + std::to_string(q));
  }
  std::lock_guard<std::mutex> lock(mutex);
  if (!cache[q]) cache[q] = std::make_unique<FiniteField>(q);
  return *cache[q];
}

}  // namespace codedensity
