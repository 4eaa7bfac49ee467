#include "linkpack/burnside.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "linkpack/error.hpp"
#include "linkpack/magnus.hpp"

namespace linkpack {

namespace {

int mod3(int x) { return ((x % 3) + 3) % 3; }

void check(const B23Element& g) {
  if (!g.valid()) throw PreconditionError("B(2,3): residues must lie in {0,1,2}");
}

/// Exact value only when it has fewer than kMaxExactDigits digits.
bool exact_feasible(double log_value) { return log_value / std::log(10.0) < kMaxExactDigits - 1; }

}  // namespace

std::int64_t burnside_exponent(int m) {
  if (m <= 0) throw PreconditionError("burnside_order: m must be >= 1");
  const std::int64_t n = m;
  return n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6;
}

BigInt burnside_order(int m) { return big_pow(3, static_cast<std::uint64_t>(burnside_exponent(m))); }

B23Element b23_mul(const B23Element& g, const B23Element& h) {
  check(g);
  check(h);
  return {mod3(g.a + h.a), mod3(g.b + h.b), mod3(g.c + h.c + g.a * h.b)};
}

B23Element b23_inv(const B23Element& g) {
  check(g);
  return {mod3(-g.a), mod3(-g.b), mod3(g.a * g.b - g.c)};
}

B23Element b23_pow(const B23Element& g, int n) {
  B23Element base = n < 0 ? b23_inv(g) : g;
  B23Element out;
  for (int i = 0; i < std::abs(n); ++i) out = b23_mul(out, base);
  return out;
}

std::vector<B23Element> b23_closure(std::span<const B23Element> generators) {
  std::set<B23Element> seen{B23Element::identity()};
  std::vector<B23Element> frontier{B23Element::identity()};
  while (!frontier.empty()) {
    std::vector<B23Element> next;
    for (const auto& g : frontier) {
      for (const auto& s : generators) {
        const B23Element h = b23_mul(g, s);
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

BoundReport qkp_order_bound(std::int64_t g, int k, std::int64_t p) {
  if (g < 1) throw PreconditionError("qkp_order_bound: g must be >= 1");
  if (k < 2) throw PreconditionError("qkp_order_bound: k must be >= 2");
  if (!is_prime(p)) throw PreconditionError("qkp_order_bound: p must be prime");
  BoundReport r;
  r.name = "qkp_order";
  r.inputs = {{"g", static_cast<double>(g)}, {"k", static_cast<double>(k)},
              {"p", static_cast<double>(p)}};
  double exponent = 0.0;
  double term = 1.0;
  for (int s = 1; s < k; ++s) {
    term *= static_cast<double>(g);
    exponent += term;
  }
  r.log_value = exponent * std::log(static_cast<double>(p));
  if (exact_feasible(r.log_value)) {
    BigInt e = 0, t = 1;
    for (int s = 1; s < k; ++s) {
      t *= g;
      e += t;
    }
    r.exact = boost::multiprecision::pow(BigInt(p), e.convert_to<unsigned>());
  }
  return r;
}

BoundReport thm_bounds(int theorem, double epsilon, double a, std::optional<int> k,
                       std::optional<std::int64_t> p) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw PreconditionError("thm_bounds: epsilon must lie in (0, 0.5]");
  if (!(a > 0.0)) throw PreconditionError("thm_bounds: a must be positive");
  BoundReport r;
  r.inputs = {{"epsilon", epsilon}, {"a", a}};
  switch (theorem) {
    case 1:
      r.name = "theorem1";
      r.log_value = a * std::pow(epsilon, -3.0);
      break;
    case 2:
      r.name = "theorem2";
      r.log_value = a * std::pow(epsilon, -9.0);
      break;
    case 4: {
      if (!k || !p) throw PreconditionError("thm_bounds: theorem 4 needs k and p");
      if (*k < 2) throw PreconditionError("thm_bounds: k must be >= 2");
      if (!is_prime(*p)) throw PreconditionError("thm_bounds: p must be prime");
      r.name = "theorem4";
      r.inputs["k"] = *k;
      r.inputs["p"] = static_cast<double>(*p);
      const double g = a * std::pow(epsilon, -3.0);
      r.log_value = g * std::log(*k + 1.0) + std::pow(g, *k - 1) * std::log(static_cast<double>(*p));
      break;
    }
    default:
      throw PreconditionError("thm_bounds: theorem must be 1, 2 or 4");
  }
  return r;
}

std::int64_t smallest_valid_prime(std::span<const std::int64_t> values) {
  if (values.empty()) throw PreconditionError("smallest_valid_prime: empty list");
  for (auto v : values) {
    if (v == 0) throw PreconditionError("smallest_valid_prime: zero value");
  }
  for (std::int64_t q = 2;; ++q) {
    if (!is_prime(q)) continue;
    if (std::none_of(values.begin(), values.end(), [q](std::int64_t v) { return v % q == 0; })) return q;
  }
}

}  // namespace linkpack
