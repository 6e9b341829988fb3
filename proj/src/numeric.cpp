#include "codedensity/numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "codedensity/errors.hpp"

namespace codedensity {

Count power(std::uint64_t base, unsigned long exponent) {
  Count result;
  Count b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
  mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
  return result;
}

std::uint64_t to_u64(const Count& value) {
  if (sgn(value) < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) {
    throw std::overflow_error("value " + value.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

Count floor(const Rational& value) {
  Count out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Count ceil(const Rational& value) {
  Count out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

std::string to_decimal(const Rational& value, int significant) {
  if (sgn(value) == 0) return "0";
  if (value.get_den() == 1 && mpz_sizeinbase(value.get_num_mpz_t(), 10) <= static_cast<size_t>(significant)) {
    return value.get_num().get_str();
  }
  // 4 bits per decimal digit plus slack is ample for correct rounding at this width.
  mpf_class f(0, static_cast<mp_bitcnt_t>(significant * 4 + 256));
  f = value;
  std::vector<char> buf(static_cast<size_t>(significant) + 64);
  int len = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant, f.get_mpf_t());
  if (len < 0) throw std::runtime_error("decimal rendering failed");
  if (static_cast<size_t>(len) >= buf.size()) {
    buf.resize(static_cast<size_t>(len) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant, f.get_mpf_t());
  }
  return std::string(buf.data());
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  Rational out(value);  // mpq_set_d is exact
  out.canonicalize();
  return out;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&]() { return ParameterError("rational syntax", "cannot parse '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  auto dot = text.find('.');
  auto digits_only = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  Rational out;
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!digits_only(num, true) || !digits_only(den, false)) throw bad();
    Count d(den);
    if (d == 0) throw ParameterError("rational syntax", "zero denominator in '" + text + "'");
    out = Rational(Count(num[0] == '+' ? num.substr(1) : num), d);
  } else if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (!digits_only(whole, false) || (!frac.empty() && !digits_only(frac, false))) throw bad();
    Count scale = power(10, static_cast<unsigned long>(frac.size()));
    Count num = Count(whole) * scale + (frac.empty() ? Count(0) : Count(frac));
    out = Rational(negative ? Count(-num) : num, scale);
  } else {
    if (!digits_only(text, true)) throw bad();
    out = Rational(Count(text[0] == '+' ? text.substr(1) : text));
  }
  out.canonicalize();
  return out;
}

}  // namespace codedensity
