#pragma once

#include <cstdint>
#include <vector>

namespace codedensity {

/// Table-driven arithmetic in F_q for prime powers q <= 256.
///
/// Elements are indices 0..q-1. For q = p^e with e > 1, index sum c_i p^i
/// stands for the polynomial sum c_i x^i modulo the lexicographically first
/// monic irreducible polynomial of degree e over F_p.
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 256;

  /// Shared instance for q; throws NotPrimePowerError or ParameterError (q > 256).
  static const FiniteField& get(std::uint32_t q);

  explicit FiniteField(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  /// Coefficients (low to high, leading 1 included) of the defining polynomial; {0, 1} for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  /// Multiplicative inverse; a must be non-zero.
  std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }

 private:
  std::uint32_t q_;
  std::uint32_t p_;
  unsigned e_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
  std::vector<std::uint8_t> inv_;
};

}  // namespace codedensity
