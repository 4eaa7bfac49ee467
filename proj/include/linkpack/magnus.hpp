#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "linkpack/bigint.hpp"
#include "linkpack/error.hpp"

namespace linkpack {

// ---------------------------------------------------------------------------
// Words in a free group on generators 1..v.

struct Letter {
  int generator = 1;
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  /// Whitespace-separated signed generator indices, e.g. "1 2 -1 -2".
  static Word parse(std::string_view text);
  /// g^power as a word of |power| letters.
  static Word generator(int g, int power = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int max_generator() const;

  Word inverse() const;
  Word power(int n) const;
  /// Free reduction: cancels adjacent g g^-1 pairs.
  Word reduced() const;
  /// Replaces generator g by mapping[g]; a zero target deletes the letter.
  Word relabeled(std::span<const int> mapping) const;
  /// Exponent sum of each generator, indexed 0..max_generator().
  std::vector<int> exponent_sums() const;

  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);
  friend bool operator==(const Word&, const Word&) = default;

  std::string to_string() const;

 private:
  std::vector<Letter> letters_;
};

/// a b a^-1 b^-1
Word commutator(const Word& a, const Word& b);
/// by g by^-1
Word conjugate(const Word& g, const Word& by);

// ---------------------------------------------------------------------------
// Non-repeating monomials.

/// All injective index sequences over variables 1..v, ordered by degree and
/// then lexicographically, with a precomputed product table. The product of
/// two monomials sharing a variable is zero in the non-repeating ring.
class MonomialTable {
 public:
  static constexpr int kMaxVariables = 6;

  /// Shared, lazily built table for v variables (0 <= v <= kMaxVariables).
  static const MonomialTable& get(int v);

  int variables() const { return v_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const std::vector<int>& monomial(int idx) const { return monomials_[idx]; }
  int degree(int idx) const { return static_cast<int>(monomials_[idx].size()); }
  /// Index of the sequence, or -1 if it repeats a variable or is out of range.
  int index_of(std::span<const int> sequence) const;
  /// Index of monomial a * monomial b, or -1 when they share a variable.
  int product(int a, int b) const { return product_[static_cast<std::size_t>(a) * size() + b]; }

 private:
  explicit MonomialTable(int v);

  int v_;
  std::vector<std::vector<int>> monomials_;
  std::vector<std::uint32_t> masks_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<int> product_;
};

// ---------------------------------------------------------------------------
// Coefficient rings.

struct IntegerRing {
  using value_type = BigInt;
  value_type reduce(value_type x) const { return x; }
  value_type from_int(long long x) const { return value_type(x); }
  friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

/// Integers mod p with p < 2^31.
struct ModularRing {
  using value_type = std::int64_t;
  std::int64_t p = 2;
  value_type reduce(value_type x) const {
    x %= p;
    return x < 0 ? x + p : x;
  }
  value_type from_int(long long x) const { return reduce(x); }
  friend bool operator==(const ModularRing&, const ModularRing&) = default;
};

bool is_prime(std::int64_t n);

/// Element of the non-repeating ring R[x_1..x_v] (or R_p[...]): noncommuting
/// variables modulo every monomial in which a variable repeats. Coefficients
/// are stored densely, one per injective monomial.
template <typename Ring>
class NRPoly {
 public:
  using value_type = typename Ring::value_type;

  explicit NRPoly(int v, Ring ring = {})
      : ring_(ring), table_(&MonomialTable::get(v)), coeffs_(table_->size(), value_type(0)) {}

  static NRPoly one(int v, Ring ring = {}) {
    NRPoly p(v, ring);
    p.coeffs_[0] = ring.from_int(1);
    return p;
  }
  /// 1 + sign * x_i, the image of the meridian m_i^sign.
  static NRPoly meridian(int v, int i, int sign, Ring ring = {}) {
    NRPoly p = one(v, ring);
    const int seq[1] = {i};
    p.coeffs_[p.table_->index_of(seq)] = ring.from_int(sign);
    return p;
  }

  int variables() const { return table_->variables(); }
  const Ring& ring() const { return ring_; }
  const MonomialTable& table() const { return *table_; }
  const std::vector<value_type>& coefficients() const { return coeffs_; }

  value_type constant() const { return coeffs_[0]; }
  value_type coefficient(std::span<const int> sequence) const {
    const int idx = table_->index_of(sequence);
    if (idx < 0) throw PreconditionError("NRPoly: not an injective monomial in range");
    return coeffs_[idx];
  }
  void set(std::span<const int> sequence, value_type value) {
    const int idx = table_->index_of(sequence);
    if (idx < 0) throw PreconditionError("NRPoly: not an injective monomial in range");
    coeffs_[idx] = ring_.reduce(std::move(value));
  }

  NRPoly operator+(const NRPoly& rhs) const {
    check_compatible(rhs);
    NRPoly out(*this);
    for (int i = 0; i < table_->size(); ++i) out.coeffs_[i] = ring_.reduce(out.coeffs_[i] + rhs.coeffs_[i]);
    return out;
  }
  NRPoly operator-(const NRPoly& rhs) const {
    check_compatible(rhs);
    NRPoly out(*this);
    for (int i = 0; i < table_->size(); ++i) out.coeffs_[i] = ring_.reduce(out.coeffs_[i] - rhs.coeffs_[i]);
    return out;
  }
  NRPoly operator*(const NRPoly& rhs) const {
    check_compatible(rhs);
    NRPoly out(variables(), ring_);
    const int n = table_->size();
    for (int a = 0; a < n; ++a) {
      if (coeffs_[a] == 0) continue;
      for (int b = 0; b < n; ++b) {
        if (rhs.coeffs_[b] == 0) continue;
        const int k = table_->product(a, b);
        if (k < 0) continue;
        out.coeffs_[k] = ring_.reduce(out.coeffs_[k] + ring_.reduce(coeffs_[a] * rhs.coeffs_[b]));
      }
    }
    return out;
  }
  NRPoly& operator*=(const NRPoly& rhs) { return *this = *this * rhs; }

  /// Right multiplication by 1 + sign * x_i, in place and without a full product.
  void multiply_meridian(int i, int sign) {
    const int seq[1] = {i};
    const int var = table_->index_of(seq);
    if (var < 0) throw PreconditionError("NRPoly: variable out of range");
    // Descending degree so every update reads a coefficient not yet touched.
    for (int a = table_->size() - 1; a >= 0; --a) {
      if (coeffs_[a] == 0) continue;
      const int k = table_->product(a, var);
      if (k < 0) continue;
      coeffs_[k] = ring_.reduce(coeffs_[k] + (sign > 0 ? coeffs_[a] : value_type(-coeffs_[a])));
    }
  }

  NRPoly pow(unsigned n) const {
    NRPoly out = one(variables(), ring_);
    for (unsigned i = 0; i < n; ++i) out *= *this;
    return out;
  }

  /// Inverse of a polynomial with unit constant term. The Neumann series
  /// terminates because every product of v+1 non-constant monomials vanishes.
  NRPoly inverse() const {
    const value_type c = constant();
    const value_type c_inv = unit_inverse(c);
    NRPoly nil(*this);
    nil.coeffs_[0] = value_type(0);
    for (auto& x : nil.coeffs_) x = ring_.reduce(value_type(-x * c_inv));
    NRPoly term = one(variables(), ring_);
    NRPoly sum = one(variables(), ring_);
    for (int j = 0; j < variables(); ++j) {
      term *= nil;
      sum = sum + term;
    }
    for (auto& x : sum.coeffs_) x = ring_.reduce(value_type(x * c_inv));
    return sum;
  }

  bool is_one() const { return *this == one(variables(), ring_); }

  /// Smallest positive degree carrying a non-zero coefficient; nullopt when
  /// the polynomial is constant.
  std::optional<int> min_positive_degree() const {
    for (int i = 1; i < table_->size(); ++i) {
      if (coeffs_[i] != 0) return table_->degree(i);  // monomials are ordered by degree
    }
    return std::nullopt;
  }

  friend bool operator==(const NRPoly& a, const NRPoly& b) {
    return a.variables() == b.variables() && a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const NRPoly& rhs) const {
    if (rhs.variables() != variables() || !(rhs.ring_ == ring_)) {
      throw PreconditionError("NRPoly: operands live in different rings");
    }
  }
  value_type unit_inverse(const value_type& c) const {
    if constexpr (std::is_same_v<Ring, ModularRing>) {
      if (c == 0) throw PreconditionError("NRPoly: constant term is not a unit");
      // Fermat; p is prime for every ring built through the public API.
      value_type result = 1, base = c, e = ring_.p - 2;
      while (e > 0) {
        if (e & 1) result = ring_.reduce(result * base);
        base = ring_.reduce(base * base);
        e >>= 1;
      }
      return result;
    } else {
      if (c != 1 && c != -1) throw PreconditionError("NRPoly: constant term is not a unit");
      return c;
    }
  }

  Ring ring_;
  const MonomialTable* table_;
  std::vector<value_type> coeffs_;
};

using IntPoly = NRPoly<IntegerRing>;
using ModPoly = NRPoly<ModularRing>;

/// Reduces integer coefficients mod p.
ModPoly reduce_mod(const IntPoly& poly, std::int64_t p);

/// Magnus expansion: m_i -> 1 + x_i, m_i^-1 -> 1 - x_i, multiplied left to right.
template <typename Ring>
NRPoly<Ring> expand(const Word& word, int v, Ring ring = {}) {
  NRPoly<Ring> out = NRPoly<Ring>::one(v, ring);
  for (const Letter& l : word.letters()) {
    if (l.generator < 1 || l.generator > v) {
      throw PreconditionError("expand: generator " + std::to_string(l.generator) +
                              " outside alphabet of size " + std::to_string(v));
    }
    out.multiply_meridian(l.generator, l.sign);
  }
  return out;
}

/// Coefficient of x_{s_1} ... x_{s_k}; the empty sequence gives the constant.
template <typename Ring>
typename Ring::value_type mu_coefficient(const NRPoly<Ring>& poly, std::span<const int> sequence) {
  for (std::size_t a = 0; a < sequence.size(); ++a) {
    if (sequence[a] < 1 || sequence[a] > poly.variables()) {
      throw PreconditionError("mu_coefficient: index out of range");
    }
    for (std::size_t b = a + 1; b < sequence.size(); ++b) {
      if (sequence[a] == sequence[b]) {
        throw PreconditionError("mu_coefficient: repeated index (non-repeating invariants only)");
      }
    }
  }
  return poly.coefficient(sequence);
}

/// True iff every non-constant coefficient of g^3 is divisible by 3.
/// Requires v = 2 and constant term 1.
bool cube_divisibility(const IntPoly& g);

/// Minimal positive degree of the mod-p expansion; nullopt means it is 1.
std::optional<int> filtration_min_degree(const Word& word, std::int64_t p, int v);

/// Seeded element of the level-th term of the mod-p lower central series of
/// the free group on v generators. Level 1 is a short random word; level i is
/// a product of 1-3 factors a u a^-1 u^-1 w^p with u, w from level i-1.
Word random_lcs_element(int level, std::int64_t p, int v, std::uint64_t seed);

/// Banding the longitude with beta (whose mod-p expansion in v variables is
/// exactly 1) leaves the coefficient at `sequence` unchanged mod p.
/// v is the sequence length. Throws if beta does not expand to 1.
bool band_sum_invariance(const Word& longitude, const Word& beta, std::int64_t p,
                         std::span<const int> sequence);

/// [conj1 g conj1^-1, conj2 g conj2^-1] expands to exactly 1.
bool milnor_relator_check(const Word& conj1, const Word& conj2, int generator, int v);

}  // namespace linkpack
