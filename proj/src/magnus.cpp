#include "linkpack/magnus.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

namespace linkpack {

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.generator < 1) throw PreconditionError("Word: generator indices start at 1");
    if (l.sign != 1 && l.sign != -1) throw PreconditionError("Word: letter sign must be +-1");
  }
}

Word Word::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Letter> letters;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value == 0) {
      throw PreconditionError("Word::parse: bad token '" + token + "'");
    }
    letters.push_back({value > 0 ? value : -value, value > 0 ? 1 : -1});
  }
  return Word(std::move(letters));
}

Word Word::generator(int g, int power) {
  std::vector<Letter> letters(static_cast<std::size_t>(power < 0 ? -power : power),
                              Letter{g, power < 0 ? -1 : 1});
  return Word(std::move(letters));
}

int Word::max_generator() const {
  int m = 0;
  for (const auto& l : letters_) m = std::max(m, l.generator);
  return m;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.sign = -l.sign;
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::power(int n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < (n < 0 ? -n : n); ++i) out *= base;
  return out;
}

Word Word::reduced() const {
  std::vector<Letter> stack;
  stack.reserve(letters_.size());
  for (const auto& l : letters_) {
    if (!stack.empty() && stack.back().generator == l.generator && stack.back().sign == -l.sign) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  Word w;
  w.letters_ = std::move(stack);
  return w;
}

Word Word::relabeled(std::span<const int> mapping) const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (const auto& l : letters_) {
    if (l.generator >= static_cast<int>(mapping.size())) {
      throw PreconditionError("Word::relabeled: mapping too short");
    }
    const int target = mapping[l.generator];
    if (target > 0) w.letters_.push_back({target, l.sign});
  }
  return w;
}

std::vector<int> Word::exponent_sums() const {
  std::vector<int> sums(max_generator() + 1, 0);
  for (const auto& l : letters_) sums[l.generator] += l.sign;
  return sums;
}

Word Word::operator*(const Word& rhs) const {
  Word w(*this);
  w *= rhs;
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

std::string Word::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << letters_[i].sign * letters_[i].generator;
  }
  return os.str();
}

Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

Word conjugate(const Word& g, const Word& by) { return by * g * by.inverse(); }

// ---------------------------------------------------------------------------
// MonomialTable

namespace {

std::uint64_t encode(std::span<const int> seq, int v) {
  std::uint64_t key = 0;
  for (int s : seq) key = key * static_cast<std::uint64_t>(v + 1) + static_cast<std::uint64_t>(s);
  return key;
}

struct TableRegistry {
  std::mutex mutex;
  std::map<int, std::unique_ptr<MonomialTable>> tables;
};

TableRegistry& registry() {
  static TableRegistry r;
  return r;
}

}  // namespace

MonomialTable::MonomialTable(int v) : v_(v) {
  std::vector<int> current;
  auto extend = [&](auto&& self, int degree, std::uint32_t used) -> void {
    if (static_cast<int>(current.size()) == degree) {
      monomials_.push_back(current);
      masks_.push_back(used);
      return;
    }
    for (int x = 1; x <= v; ++x) {
      if (used & (1u << x)) continue;
      current.push_back(x);
      self(self, degree, used | (1u << x));
      current.pop_back();
    }
  };
  for (int d = 0; d <= v; ++d) extend(extend, d, 0u);

  for (int i = 0; i < size(); ++i) lookup_.emplace(encode(monomials_[i], v), i);

  const int n = size();
  product_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<int> joined;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (masks_[a] & masks_[b]) continue;
      joined = monomials_[a];
      joined.insert(joined.end(), monomials_[b].begin(), monomials_[b].end());
      product_[static_cast<std::size_t>(a) * n + b] = lookup_.at(encode(joined, v));
    }
  }
}

const MonomialTable& MonomialTable::get(int v) {
  if (v < 0 || v > kMaxVariables) {
    throw PreconditionError("MonomialTable: variable count must lie in [0, " +
                            std::to_string(kMaxVariables) + "]");
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mutex);
  auto& slot = reg.tables[v];
  if (!slot) slot.reset(new MonomialTable(v));
  return *slot;
}

int MonomialTable::index_of(std::span<const int> sequence) const {
  std::uint32_t used = 0;
  for (int s : sequence) {
    if (s < 1 || s > v_ || (used & (1u << s))) return -1;
    used |= 1u << s;
  }
  auto it = lookup_.find(encode(sequence, v_));
  return it == lookup_.end() ? -1 : it->second;
}

// ---------------------------------------------------------------------------

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {
void require_prime(std::int64_t p, const char* where) {
  if (!is_prime(p) || p >= (std::int64_t{1} << 31)) {
    throw PreconditionError(std::string(where) + ": p must be a prime below 2^31");
  }
}
}  // namespace

ModPoly reduce_mod(const IntPoly& poly, std::int64_t p) {
  require_prime(p, "reduce_mod");
  ModPoly out(poly.variables(), ModularRing{p});
  const auto& table = poly.table();
  for (int i = 0; i < table.size(); ++i) {
    const BigInt r = poly.coefficients()[i] % p;
    out.set(table.monomial(i), r.convert_to<std::int64_t>());
  }
  return out;
}

bool cube_divisibility(const IntPoly& g) {
  if (g.variables() != 2) throw PreconditionError("cube_divisibility: expected v = 2");
  if (g.constant() != 1) throw PreconditionError("cube_divisibility: polynomial is not monic");
  const IntPoly cube = g * g * g;
  const auto& c = cube.coefficients();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] % 3 != 0) return false;
  }
  return true;
}

std::optional<int> filtration_min_degree(const Word& word, std::int64_t p, int v) {
  require_prime(p, "filtration_min_degree");
  return expand(word, v, ModularRing{p}).min_positive_degree();
}

namespace {

Word random_word(std::mt19937_64& rng, int v, int min_len, int max_len) {
  const int len = min_len + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len - min_len + 1));
  std::vector<Letter> letters;
  for (int i = 0; i < len; ++i) {
    const int g = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v));
    letters.push_back({g, (rng() & 1) ? 1 : -1});
  }
  return Word(std::move(letters));
}

}  // namespace

Word random_lcs_element(int level, std::int64_t p, int v, std::uint64_t seed) {
  if (level < 1) throw PreconditionError("random_lcs_element: level must be >= 1");
  if (v < 1) throw PreconditionError("random_lcs_element: need at least one generator");
  require_prime(p, "random_lcs_element");
  std::mt19937_64 rng(seed);
  if (level == 1) return random_word(rng, v, 1, 4);
  const int factors = 1 + static_cast<int>(rng() % 3);
  Word out;
  for (int f = 0; f < factors; ++f) {
    const Word a = random_word(rng, v, 0, 3);
    const Word u = random_lcs_element(level - 1, p, v, rng());
    const Word w = random_lcs_element(level - 1, p, v, rng());
    out *= commutator(a, u) * w.power(static_cast<int>(p));
  }
  return out.reduced();
}

bool band_sum_invariance(const Word& longitude, const Word& beta, std::int64_t p,
                         std::span<const int> sequence) {
  require_prime(p, "band_sum_invariance");
  const int v = static_cast<int>(sequence.size());
  if (filtration_min_degree(beta, p, v).has_value()) {
    throw PreconditionError("band_sum_invariance: beta does not expand to 1 mod p");
  }
  const ModularRing ring{p};
  const auto before = mu_coefficient(expand(longitude, v, ring), sequence);
  const auto after = mu_coefficient(expand(longitude * beta, v, ring), sequence);
  return before == after;
}

bool milnor_relator_check(const Word& conj1, const Word& conj2, int generator, int v) {
  const Word g = Word::generator(generator);
  const Word relator = commutator(conjugate(g, conj1), conjugate(g, conj2));
  return expand(relator, v, IntegerRing{}).is_one();
}

}  // namespace linkpack
