#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkpack/bigint.hpp"

namespace linkpack {

/// |B(m,3)| = 3^(m + C(m,2) + C(m,3)).
BigInt burnside_order(int m);
std::int64_t burnside_exponent(int m);

/// Element x^a y^b z^c of B(2,3), z = [x,y] central. Modelled as the 3x3
/// upper unitriangular matrix with entries a (1,2), b (2,3), c (1,3) over F_3.
struct B23Element {
  int a = 0;
  int b = 0;
  int c = 0;

  static B23Element identity() { return {}; }
  static B23Element x() { return {1, 0, 0}; }
  static B23Element y() { return {0, 1, 0}; }

  bool valid() const { return a >= 0 && a < 3 && b >= 0 && b < 3 && c >= 0 && c < 3; }
  friend bool operator==(const B23Element&, const B23Element&) = default;
  friend auto operator<=>(const B23Element&, const B23Element&) = default;
};

B23Element b23_mul(const B23Element& g, const B23Element& h);
B23Element b23_inv(const B23Element& g);
B23Element b23_pow(const B23Element& g, int n);

/// Closure of the given generators under multiplication, sorted.
std::vector<B23Element> b23_closure(std::span<const B23Element> generators);

struct BoundReport {
  std::string name;
  std::map<std::string, double> inputs;
  std::optional<BigInt> exact;
  double log_value = 0.0;
};

/// |Q_k^p| <= p^(g + g^2 + ... + g^(k-1)).
BoundReport qkp_order_bound(std::int64_t g, int k, std::int64_t p);

/// theorem 1: exp(a eps^-3); theorem 2: exp(a eps^-9);
/// theorem 4: (k+1)^(a eps^-3) * p^((a eps^-3)^(k-1)).
BoundReport thm_bounds(int theorem, double epsilon, double a, std::optional<int> k = std::nullopt,
                       std::optional<std::int64_t> p = std::nullopt);

/// Least prime dividing none of the values.
std::int64_t smallest_valid_prime(std::span<const std::int64_t> values);

}  // namespace linkpack
