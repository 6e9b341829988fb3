#pragma once

// Concrete objects behind the density functions: vectors of F_q^n, block
// codes, k-subspaces in reduced row echelon form, subspace codes, their
// distances, exhaustive enumeration and uniform sampling.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codedensity/field.hpp"
#include "codedensity/numeric.hpp"

namespace codedensity {

/// Caps on exhaustive enumeration, in enumerated objects.
struct WorkLimits {
  std::uint64_t max_objects = 10'000'000;
};

/// Random stream handed to samplers.
using RandomEngine = std::mt19937_64;

/// A length-n vector over an alphabet of size q <= 256.
///
/// For q = 2 coordinates are packed one bit each, so Hamming distance is a
/// popcount of the XOR. Otherwise each coordinate occupies one byte, eight
/// to a word, and distance counts non-zero bytes of the XOR.
class Vector {
 public:
  Vector() = default;
  Vector(std::uint32_t q, unsigned n);  ///< zero vector
  Vector(std::uint32_t q, std::span<const std::uint8_t> coords);

  /// The index-th vector of F_q^n in lexicographic order (first coordinate most significant).
  static Vector from_index(std::uint32_t q, unsigned n, std::uint64_t index);
  /// Inverse of to_string().
  static Vector parse(std::uint32_t q, std::string_view text);

  std::uint32_t q() const { return q_; }
  unsigned size() const { return n_; }
  std::uint8_t operator[](unsigned i) const;
  void set(unsigned i, std::uint8_t value);
  bool is_zero() const;
  /// Lexicographic rank; inverse of from_index().
  std::uint64_t index() const;

  /// Digits 0-9a-z when q <= 36, comma-separated decimals otherwise.
  std::string to_string() const;

  /// this += a * other over F_q.
  void axpy(std::uint8_t a, const Vector& other, const FiniteField& field);
  /// this *= a over F_q.
  void scale(std::uint8_t a, const FiniteField& field);

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator<(const Vector& a, const Vector& b) { return a.index_order_less(b); }

 private:
  bool binary() const { return q_ == 2; }
  bool index_order_less(const Vector& other) const;

  std::uint32_t q_ = 2;
  unsigned n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Number of coordinates where x and y differ; throws ParameterError on mismatched ambients.
unsigned hamming_distance(const Vector& x, const Vector& y);

/// A block code: at least two distinct vectors of a common F_q^n, kept sorted.
class Code {
 public:
  Code(std::uint32_t q, unsigned n, std::vector<Vector> elements);

  std::uint32_t q() const { return q_; }
  unsigned length() const { return n_; }
  size_t size() const { return elements_.size(); }
  const std::vector<Vector>& elements() const { return elements_; }

  /// Newline-separated vectors.
  std::string to_string() const;
  static Code parse(std::uint32_t q, unsigned n, std::string_view text);

 private:
  std::uint32_t q_;
  unsigned n_;
  std::vector<Vector> elements_;
};

unsigned code_min_distance(const Code& code);
/// True iff every pair of distinct elements is at distance >= d; stops at the first violation.
bool has_min_distance_at_least(const Code& code, unsigned d);

/// Rank of the row list over F_q.
unsigned rank(std::vector<Vector> rows, const FiniteField& field);

/// Reduced row echelon form with zero rows dropped.
std::vector<Vector> row_reduce(std::vector<Vector> rows, const FiniteField& field);

/// A k-dimensional subspace of F_q^n stored as its unique RREF basis.
class Subspace {
 public:
  /// Spans the given rows; throws ParameterError if they are dependent or zero.
  Subspace(std::uint32_t q, unsigned n, std::vector<Vector> rows);
  /// Wraps rows that are already a non-empty RREF basis without re-reducing them.
  static Subspace from_rref(std::uint32_t q, unsigned n, std::vector<Vector> rref_rows);

  std::uint32_t q() const { return q_; }
  unsigned ambient_dimension() const { return n_; }
  unsigned dimension() const { return static_cast<unsigned>(basis_.size()); }
  const std::vector<Vector>& basis() const { return basis_; }
  std::vector<unsigned> pivots() const;

  /// Canonical byte key; equal iff the subspaces are equal.
  std::string key() const;
  /// Semicolon-separated RREF rows.
  std::string to_string() const;
  static Subspace parse(std::uint32_t q, std::string_view text);

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) { return a.key() < b.key(); }

 private:
  struct Canonical {};
  Subspace(Canonical, std::uint32_t q, unsigned n, std::vector<Vector> rref_rows);

  std::uint32_t q_;
  unsigned n_;
  std::vector<Vector> basis_;
};

/// k - dim(X cap Y), computed as rank of the stacked bases minus k.
unsigned injection_distance(const Subspace& x, const Subspace& y);

/// Distinct subspaces sharing (q, k, n), kept sorted by canonical key.
class SubspaceCode {
 public:
  SubspaceCode(std::uint32_t q, unsigned k, unsigned n, std::vector<Subspace> elements);

  std::uint32_t q() const { return q_; }
  unsigned dimension() const { return k_; }
  unsigned ambient_dimension() const { return n_; }
  size_t size() const { return elements_.size(); }
  const std::vector<Subspace>& elements() const { return elements_; }

  /// Newline-separated subspaces.
  std::string to_string() const;

 private:
  std::uint32_t q_;
  unsigned k_;
  unsigned n_;
  std::vector<Subspace> elements_;
};

unsigned subspace_code_min_distance(const SubspaceCode& code);
bool has_min_distance_at_least(const SubspaceCode& code, unsigned d);
bool is_partial_spread(const SubspaceCode& code);

/// All q^n vectors in lexicographic order.
std::vector<Vector> enumerate_vectors(std::uint32_t q, unsigned n, const WorkLimits& limits = {});

/// Every k-subspace of F_q^n, ordered by pivot pattern (lexicographic) then free entries.
void for_each_subspace(std::uint32_t q, unsigned k, unsigned n, const WorkLimits& limits,
                       const std::function<void(const Subspace&)>& visit);
std::vector<Subspace> enumerate_grassmannian(std::uint32_t q, unsigned k, unsigned n, const WorkLimits& limits = {});

/// Uniform S-subset of F_q^n (Floyd's algorithm on lexicographic ranks).
Code sample_code_uniform(std::uint32_t q, unsigned n, std::uint64_t S, RandomEngine& rng);

/// Uniform point of G_q(k, n): rejection-sample a full-rank k x n matrix, then row-reduce.
Subspace sample_subspace_uniform(std::uint32_t q, unsigned k, unsigned n, RandomEngine& rng);

/// Uniform S-subset of G_q(k, n) by repeated sampling with duplicate rejection.
SubspaceCode sample_subspace_code_uniform(std::uint32_t q, unsigned k, unsigned n, std::uint64_t S,
                                          RandomEngine& rng);

}  // namespace codedensity
