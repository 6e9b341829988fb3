#include "codedensity/codespace.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_set>

#include "codedensity/combinat.hpp"
#include "codedensity/errors.hpp"

namespace codedensity {

namespace {

constexpr std::uint64_t kByteLows = 0x0101010101010101ULL;

size_t word_count(std::uint32_t q, unsigned n) { return q == 2 ? (n + 63) / 64 : (n + 7) / 8; }

char digit_char(unsigned v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }

int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

void require_vector_alphabet(std::uint32_t q) {
  if (q < 2 || q > 256) throw ParameterError("2 <= q <= 256", "vector alphabet size " + std::to_string(q));
}

void require_same_ambient(const Vector& x, const Vector& y) {
  if (x.q() != y.q() || x.size() != y.size()) {
    throw ParameterError("same ambient", "vectors over F_" + std::to_string(x.q()) + "^" + std::to_string(x.size()) +
                                             " and F_" + std::to_string(y.q()) + "^" + std::to_string(y.size()));
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t checked_space_size(std::uint32_t q, unsigned n) {
  Count size = power(q, n);
  if (size > Count(static_cast<unsigned long>(1ULL << 62))) {
    throw ParameterError("q^n < 2^62", "ambient F_" + std::to_string(q) + "^" + std::to_string(n) + " is too large");
  }
  return to_u64(size);
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(std::uint32_t q, unsigned n) : q_(q), n_(n), words_(word_count(q, n), 0) {
  require_vector_alphabet(q);
}

Vector::Vector(std::uint32_t q, std::span<const std::uint8_t> coords) : Vector(q, static_cast<unsigned>(coords.size())) {
  for (unsigned i = 0; i < n_; ++i) set(i, coords[i]);
}

Vector Vector::from_index(std::uint32_t q, unsigned n, std::uint64_t index) {
  Vector v(q, n);
  for (unsigned i = n; i-- > 0;) {
    v.set(i, static_cast<std::uint8_t>(index % q));
    index /= q;
  }
  if (index != 0) throw ParameterError("index < q^n", "vector index out of range");
  return v;
}

Vector Vector::parse(std::uint32_t q, std::string_view text) {
  std::vector<std::uint8_t> coords;
  auto push = [&](long value) {
    if (value < 0 || value >= static_cast<long>(q)) {
      throw ParameterError("coordinate < q", "bad coordinate in '" + std::string(text) + "'");
    }
    coords.push_back(static_cast<std::uint8_t>(value));
  };
  if (q <= 36) {
    for (char c : text) push(char_digit(c));
  } else {
    for (auto part : split(text, ',')) {
      if (part.empty()) throw ParameterError("coordinate < q", "empty coordinate in '" + std::string(text) + "'");
      long value = 0;
      for (char c : part) {
        if (c < '0' || c > '9') throw ParameterError("coordinate < q", "bad coordinate in '" + std::string(text) + "'");
        value = value * 10 + (c - '0');
        if (value >= static_cast<long>(q)) break;
      }
      push(value);
    }
  }
  if (coords.empty()) throw ParameterError("n >= 1", "empty vector");
  return Vector(q, coords);
}

std::uint8_t Vector::operator[](unsigned i) const {
  if (binary()) return static_cast<std::uint8_t>((words_[i / 64] >> (i % 64)) & 1U);
  return static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
}

void Vector::set(unsigned i, std::uint8_t value) {
  if (value >= q_ || i >= n_) throw ParameterError("coordinate < q", "value " + std::to_string(value));
  if (binary()) {
    const std::uint64_t bit = 1ULL << (i % 64);
    words_[i / 64] = value ? (words_[i / 64] | bit) : (words_[i / 64] & ~bit);
  } else {
    const unsigned shift = 8 * (i % 8);
    words_[i / 8] = (words_[i / 8] & ~(0xFFULL << shift)) | (static_cast<std::uint64_t>(value) << shift);
  }
}

bool Vector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t Vector::index() const {
  Count rank = 0;
  for (unsigned i = 0; i < n_; ++i) rank = rank * q_ + (*this)[i];
  return to_u64(rank);
}

std::string Vector::to_string() const {
  std::string out;
  for (unsigned i = 0; i < n_; ++i) {
    if (q_ <= 36) {
      out += digit_char((*this)[i]);
    } else {
      if (i) out += ',';
      out += std::to_string((*this)[i]);
    }
  }
  return out;
}

void Vector::axpy(std::uint8_t a, const Vector& other, const FiniteField& field) {
  require_same_ambient(*this, other);
  if (a == 0) return;
  if (field.characteristic() == 2 && a == 1) {
    // Characteristic-2 addition is XOR of the coefficient bits, in either packing.
    for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return;
  }
  for (unsigned i = 0; i < n_; ++i) {
    const std::uint8_t o = other[i];
    if (o) set(i, field.add((*this)[i], field.mul(a, o)));
  }
}

void Vector::scale(std::uint8_t a, const FiniteField& field) {
  if (a == 1) return;
  for (unsigned i = 0; i < n_; ++i) set(i, field.mul(a, (*this)[i]));
}

bool Vector::index_order_less(const Vector& other) const {
  if (q_ != other.q_ || n_ != other.n_) return std::tie(q_, n_) < std::tie(other.q_, other.n_);
  for (unsigned i = 0; i < n_; ++i) {
    const auto a = (*this)[i];
    const auto b = other[i];
    if (a != b) return a < b;
  }
  return false;
}

unsigned hamming_distance(const Vector& x, const Vector& y) {
  require_same_ambient(x, y);
  const auto& a = x.words();
  const auto& b = y.words();
  unsigned total = 0;
  if (x.q() == 2) {
    for (size_t w = 0; w < a.size(); ++w) total += static_cast<unsigned>(std::popcount(a[w] ^ b[w]));
    return total;
  }
  for (size_t w = 0; w < a.size(); ++w) {
    std::uint64_t t = a[w] ^ b[w];
    t |= t >> 4;
    t |= t >> 2;
    t |= t >> 1;
    total += static_cast<unsigned>(std::popcount(t & kByteLows));
  }
  return total;
}

// ---------------------------------------------------------------- Code

Code::Code(std::uint32_t q, unsigned n, std::vector<Vector> elements) : q_(q), n_(n), elements_(std::move(elements)) {
  if (elements_.size() < 2) throw ParameterError("|C| >= 2", "code has " + std::to_string(elements_.size()) + " elements");
  for (const auto& v : elements_) {
    if (v.q() != q || v.size() != n) throw ParameterError("same ambient", "element " + v.to_string() + " is not in the ambient space");
  }
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw ParameterError("distinct elements", "code contains a repeated vector");
  }
}

std::string Code::to_string() const {
  std::string out;
  for (const auto& v : elements_) out += v.to_string() + "\n";
  return out;
}

Code Code::parse(std::uint32_t q, unsigned n, std::string_view text) {
  std::vector<Vector> vs;
  for (auto line : split(text, '\n')) {
    if (line.empty()) continue;
    vs.push_back(Vector::parse(q, line));
  }
  return Code(q, n, std::move(vs));
}

unsigned code_min_distance(const Code& code) {
  const auto& e = code.elements();
  unsigned best = code.length();
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j) best = std::min(best, hamming_distance(e[i], e[j]));
  return best;
}

bool has_min_distance_at_least(const Code& code, unsigned d) {
  const auto& e = code.elements();
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j)
      if (hamming_distance(e[i], e[j]) < d) return false;
  return true;
}

// ---------------------------------------------------------------- linear algebra

std::vector<Vector> row_reduce(std::vector<Vector> rows, const FiniteField& field) {
  if (rows.empty()) return rows;
  const unsigned n = rows.front().size();
  size_t lead = 0;
  for (unsigned col = 0; col < n && lead < rows.size(); ++col) {
    size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    rows[lead].scale(field.inv(rows[lead][col]), field);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == lead) continue;
      const std::uint8_t c = rows[r][col];
      if (c) rows[r].axpy(field.neg(c), rows[lead], field);
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

unsigned rank(std::vector<Vector> rows, const FiniteField& field) {
  // Forward elimination only.
  if (rows.empty()) return 0;
  const unsigned n = rows.front().size();
  size_t lead = 0;
  for (unsigned col = 0; col < n && lead < rows.size(); ++col) {
    size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    const std::uint8_t inv = field.inv(rows[lead][col]);
    for (size_t r = lead + 1; r < rows.size(); ++r) {
      const std::uint8_t c = rows[r][col];
      if (c) rows[r].axpy(field.neg(field.mul(c, inv)), rows[lead], field);
    }
    ++lead;
  }
  return static_cast<unsigned>(lead);
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::uint32_t q, unsigned n, std::vector<Vector> rows) : q_(q), n_(n) {
  if (rows.empty()) throw ParameterError("k >= 1", "subspace needs at least one basis row");
  for (const auto& r : rows) {
    if (r.q() != q || r.size() != n) throw ParameterError("same ambient", "row " + r.to_string() + " is not in F_q^n");
  }
  const size_t given = rows.size();
  basis_ = row_reduce(std::move(rows), FiniteField::get(q));
  if (basis_.size() != given) {
    throw ParameterError("independent rows", "rows span a space of dimension " + std::to_string(basis_.size()) +
                                                 ", expected " + std::to_string(given));
  }
}

Subspace::Subspace(Canonical, std::uint32_t q, unsigned n, std::vector<Vector> rref_rows)
    : q_(q), n_(n), basis_(std::move(rref_rows)) {}

Subspace Subspace::from_rref(std::uint32_t q, unsigned n, std::vector<Vector> rref_rows) {
  return Subspace(Canonical{}, q, n, std::move(rref_rows));
}

std::vector<unsigned> Subspace::pivots() const {
  std::vector<unsigned> out;
  for (const auto& row : basis_) {
    unsigned c = 0;
    while (row[c] == 0) ++c;
    out.push_back(c);
  }
  return out;
}

std::string Subspace::key() const {
  std::string out;
  out.reserve(basis_.size() * basis_.front().words().size() * 8);
  for (const auto& row : basis_) {
    for (std::uint64_t w : row.words()) {
      for (int b = 7; b >= 0; --b) out += static_cast<char>((w >> (8 * b)) & 0xFF);
    }
  }
  return out;
}

std::string Subspace::to_string() const {
  std::string out;
  for (size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ';';
    out += basis_[i].to_string();
  }
  return out;
}

Subspace Subspace::parse(std::uint32_t q, std::string_view text) {
  std::vector<Vector> rows;
  for (auto part : split(text, ';')) rows.push_back(Vector::parse(q, part));
  const unsigned n = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != n) throw ParameterError("same ambient", "rows of different lengths in '" + std::string(text) + "'");
  return Subspace(q, n, std::move(rows));
}

unsigned injection_distance(const Subspace& x, const Subspace& y) {
  if (x.q() != y.q() || x.ambient_dimension() != y.ambient_dimension() || x.dimension() != y.dimension()) {
    throw ParameterError("same ambient", "subspaces from different Grassmannians");
  }
  std::vector<Vector> stacked = x.basis();
  stacked.insert(stacked.end(), y.basis().begin(), y.basis().end());
  return rank(std::move(stacked), FiniteField::get(x.q())) - x.dimension();
}

SubspaceCode::SubspaceCode(std::uint32_t q, unsigned k, unsigned n, std::vector<Subspace> elements)
    : q_(q), k_(k), n_(n), elements_(std::move(elements)) {
  if (elements_.size() < 2) {
    throw ParameterError("|C| >= 2", "subspace code has " + std::to_string(elements_.size()) + " elements");
  }
  for (const auto& s : elements_) {
    if (s.q() != q || s.dimension() != k || s.ambient_dimension() != n) {
      throw ParameterError("same ambient", "element " + s.to_string() + " is not in G_q(k, n)");
    }
  }
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw ParameterError("distinct elements", "subspace code contains a repeated subspace");
  }
}

std::string SubspaceCode::to_string() const {
  std::string out;
  for (const auto& s : elements_) out += s.to_string() + "\n";
  return out;
}

unsigned subspace_code_min_distance(const SubspaceCode& code) {
  const auto& e = code.elements();
  unsigned best = code.dimension();
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j) best = std::min(best, injection_distance(e[i], e[j]));
  return best;
}

bool has_min_distance_at_least(const SubspaceCode& code, unsigned d) {
  const auto& e = code.elements();
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j)
      if (injection_distance(e[i], e[j]) < d) return false;
  return true;
}

bool is_partial_spread(const SubspaceCode& code) { return subspace_code_min_distance(code) == code.dimension(); }

// ---------------------------------------------------------------- enumeration

std::vector<Vector> enumerate_vectors(std::uint32_t q, unsigned n, const WorkLimits& limits) {
  require_vector_alphabet(q);
  const Count total = power(q, n);
  if (total > Count(static_cast<unsigned long>(limits.max_objects))) {
    throw WorkLimitExceeded("enumerating " + total.get_str() + " vectors exceeds the limit of " +
                            std::to_string(limits.max_objects));
  }
  const std::uint64_t count = to_u64(total);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(Vector::from_index(q, n, i));
  return out;
}

void for_each_subspace(std::uint32_t q, unsigned k, unsigned n, const WorkLimits& limits,
                       const std::function<void(const Subspace&)>& visit) {
  FiniteField::get(q);  // validates q
  if (k < 1 || k > n) throw ParameterError("1 <= k <= n", "k = " + std::to_string(k) + ", n = " + std::to_string(n));
  const Count total = q_binom(n, k, q);
  if (total > Count(static_cast<unsigned long>(limits.max_objects))) {
    throw WorkLimitExceeded("enumerating " + total.get_str() + " subspaces exceeds the limit of " +
                            std::to_string(limits.max_objects));
  }

  std::vector<unsigned> pivots(k);
  for (unsigned i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    // Free slots: (row, column) with column right of the row's pivot and not a pivot column.
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned r = 0; r < k; ++r)
      for (unsigned c = pivots[r] + 1; c < n; ++c)
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) free.emplace_back(r, c);

    std::vector<std::uint8_t> values(free.size(), 0);
    auto advance = [&]() {
      // Odometer over the free entries, last slot fastest.
      for (size_t pos = free.size(); pos-- > 0;) {
        if (++values[pos] < q) return true;
        values[pos] = 0;
      }
      return false;
    };
    do {
      std::vector<Vector> rows(k, Vector(q, n));
      for (unsigned r = 0; r < k; ++r) rows[r].set(pivots[r], 1);
      for (size_t f = 0; f < free.size(); ++f) rows[free[f].first].set(free[f].second, values[f]);
      visit(Subspace::from_rref(q, n, std::move(rows)));
    } while (advance());

    // Next pivot combination in lexicographic order.
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && pivots[i] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++pivots[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

std::vector<Subspace> enumerate_grassmannian(std::uint32_t q, unsigned k, unsigned n, const WorkLimits& limits) {
  std::vector<Subspace> out;
  for_each_subspace(q, k, n, limits, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

// ---------------------------------------------------------------- sampling

Code sample_code_uniform(std::uint32_t q, unsigned n, std::uint64_t S, RandomEngine& rng) {
  require_vector_alphabet(q);
  const std::uint64_t total = checked_space_size(q, n);
  if (S < 2 || S > total) {
    throw ParameterError("2 <= S <= q^n", "S = " + std::to_string(S) + ", q^n = " + std::to_string(total));
  }
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = total - S; j < total; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    const std::uint64_t t = pick(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<Vector> elements;
  elements.reserve(S);
  for (std::uint64_t idx : chosen) elements.push_back(Vector::from_index(q, n, idx));
  return Code(q, n, std::move(elements));
}

Subspace sample_subspace_uniform(std::uint32_t q, unsigned k, unsigned n, RandomEngine& rng) {
  const FiniteField& field = FiniteField::get(q);
  if (k < 1 || k > n) throw ParameterError("1 <= k <= n", "k = " + std::to_string(k) + ", n = " + std::to_string(n));
  std::uniform_int_distribution<std::uint32_t> entry(0, q - 1);
  while (true) {
    std::vector<Vector> rows(k, Vector(q, n));
    for (auto& row : rows)
      for (unsigned c = 0; c < n; ++c) row.set(c, static_cast<std::uint8_t>(entry(rng)));
    auto reduced = row_reduce(std::move(rows), field);
    if (reduced.size() == k) return Subspace::from_rref(q, n, std::move(reduced));
  }
}

SubspaceCode sample_subspace_code_uniform(std::uint32_t q, unsigned k, unsigned n, std::uint64_t S,
                                          RandomEngine& rng) {
  const Count total = q_binom(n, k, q);
  if (S < 2 || Count(static_cast<unsigned long>(S)) > total) {
    throw ParameterError("2 <= S <= [n, k]_q", "S = " + std::to_string(S) + ", [n, k]_q = " + total.get_str());
  }
  if (Count(static_cast<unsigned long>(S)) == total) {
    return SubspaceCode(q, k, n, enumerate_grassmannian(q, k, n, WorkLimits{S}));
  }
  std::unordered_set<std::string> seen;
  std::vector<Subspace> elements;
  elements.reserve(S);
  while (elements.size() < S) {
    Subspace s = sample_subspace_uniform(q, k, n, rng);
    if (seen.insert(s.key()).second) elements.push_back(std::move(s));
  }
  return SubspaceCode(q, k, n, std::move(elements));
}

}  // namespace codedensity
