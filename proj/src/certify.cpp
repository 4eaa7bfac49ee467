#include "linkpack/certify.hpp"

#include <cmath>

namespace linkpack {

namespace {

constexpr double kMinSeparation = 1e-6;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_offset(std::uint64_t key) {
  return static_cast<double>(splitmix64(key) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

}  // namespace

int linking_integer(const PLCurve& a, const PLCurve& b) {
  if (curve_distance(a, b) <= kMinSeparation) {
    throw DegenerateProjection("linking_integer: curves '" + a.label() + "' and '" + b.label() +
                               "' are too close");
  }
  const auto sa = a.segments();
  const auto sb = b.segments();
  return with_generic_view([&](const Eigen::Vector3d& view) {
    int total = 0;
    for (const auto& c : projected_crossings(sa, sb, view)) {
      if (c.a_over) total += c.sign;
    }
    return total;
  });
}

bool linking_mod2(const PLCurve& a, const PLCurve& b) {
  return (linking_integer(a, b) % 2) != 0;
}

bool linking_mod2(std::span<const Segment> a, std::span<const Segment> b) {
  return with_generic_view([&](const Eigen::Vector3d& view) {
    std::size_t over = 0;
    for (const auto& c : projected_crossings(a, b, view)) {
      if (c.a_over) ++over;
    }
    return over % 2 == 1;
  });
}

std::vector<Segment> realize_chain(const EdgeChain& chain, const CubicalComplex& complex) {
  const double h = complex.grid().h;
  const std::int64_t m = complex.grid().n_side + 1;
  auto position = [&](int v) -> Point3 {
    const LatticeVertex lv = complex.vertex(v);
    const std::uint64_t key = static_cast<std::uint64_t>((lv.i * m + lv.j) * m + lv.k);
    const Point3 jitter(unit_offset(3 * key), unit_offset(3 * key + 1), unit_offset(3 * key + 2));
    return Point3(lv.i * h, lv.j * h, lv.k * h) + 1e-5 * h * jitter;
  };
  std::vector<Segment> out;
  for (auto e = chain.find_first(); e != EdgeChain::npos; e = chain.find_next(e)) {
    const auto ends = complex.edge_endpoints(static_cast<int>(e));
    out.push_back({position(ends[0]), position(ends[1])});
  }
  return out;
}

LinkingMatrix linking_matrix(const H1Basis& red_basis, const CubicalComplex& red_complex,
                             const H1Basis& blue_basis, const CubicalComplex& blue_complex) {
  LinkingMatrix L;
  L.d = red_basis.dim;
  L.e = blue_basis.dim;
  L.rows.assign(L.d, Z2Vector(L.e));
  std::vector<std::vector<Segment>> blue;
  blue.reserve(L.e);
  for (const auto& g : blue_basis.cycles) blue.push_back(realize_chain(g, blue_complex));
  for (int p = 0; p < L.d; ++p) {
    const auto f = realize_chain(red_basis.cycles[p], red_complex);
    for (int q = 0; q < L.e; ++q) {
      L.rows[p][q] = linking_mod2(f, blue[q]);
    }
  }
  return L;
}

bool bilinear(const Z2Vector& x, const LinkingMatrix& L, const Z2Vector& y) {
  if (static_cast<int>(x.size()) != L.d || static_cast<int>(y.size()) != L.e) {
    throw PreconditionError("bilinear: vector lengths do not match the linking matrix");
  }
  bool acc = false;
  for (auto p = x.find_first(); p != Z2Vector::npos; p = x.find_next(p)) {
    acc ^= ((L.rows[p] & y).count() % 2) == 1;
  }
  return acc;
}

std::uint64_t coloring_fingerprint(const Grid& grid, const std::vector<std::int64_t>& red_cells,
                                   const std::vector<std::int64_t>& blue_cells) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (word >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint64_t>(grid.n_side));
  feed(red_cells.size());
  for (auto c : red_cells) feed(static_cast<std::uint64_t>(c));
  feed(blue_cells.size());
  for (auto c : blue_cells) feed(static_cast<std::uint64_t>(c));
  return hash;
}

Certificate certificate(const PLLink& input, const std::string& red, const std::string& blue,
                        double epsilon) {
  auto stage = [](const char* name, auto&& f) {
    try {
      return f();
    } catch (const StageError&) {
      throw;
    } catch (const ConstraintViolation& e) {
      throw StageError(name, e.what(), true);
    } catch (const std::exception& e) {
      throw StageError(name, e.what(), false);
    }
  };

  const PLLink link = stage("precondition", [&] {
    const double dist = curve_distance(input.component(red), input.component(blue));
    if (dist + kConstraintSlack < epsilon) {
      throw ConstraintViolation("dist(" + red + ", " + blue + ") = " + std::to_string(dist) +
                                " < epsilon");
    }
    return input.constrained(red, blue) ? input : input.with_constraint(red, blue, epsilon);
  });
  const Grid grid = stage("tessellate", [&] { return tessellate(epsilon); });
  const Coloring coloring = stage("color_cells", [&] {
    return color_cells(grid, link, {red, blue});
  });
  const Region red_region = stage("regions", [&] { return region_of(coloring, red); });
  const Region blue_region = stage("regions", [&] { return region_of(coloring, blue); });
  const CubicalComplex red_complex = stage("complexes", [&] { return build_complex(red_region, grid); });
  const CubicalComplex blue_complex =
      stage("complexes", [&] { return build_complex(blue_region, grid); });
  const H1Basis red_basis = stage("h1_basis", [&] { return h1_basis(red_complex); });
  const H1Basis blue_basis = stage("h1_basis", [&] { return h1_basis(blue_complex); });
  const EdgeChain red_cycle =
      stage("snap_to_cycle", [&] { return snap_to_cycle(link.component(red), red_complex); });
  const EdgeChain blue_cycle =
      stage("snap_to_cycle", [&] { return snap_to_cycle(link.component(blue), blue_complex); });

  Certificate cert;
  cert.epsilon = epsilon;
  cert.n_side = grid.n_side;
  cert.fingerprint = coloring_fingerprint(grid, red_region.cells, blue_region.cells);
  cert.x = stage("coordinates", [&] { return coordinates(red_cycle, red_basis, red_complex); });
  cert.y = stage("coordinates", [&] { return coordinates(blue_cycle, blue_basis, blue_complex); });
  cert.L = stage("linking_matrix", [&] {
    return linking_matrix(red_basis, red_complex, blue_basis, blue_complex);
  });
  cert.eq1 = bilinear(cert.x, cert.L, cert.y);
  return cert;
}

namespace {
void require_same_grid(const Certificate& a, const Certificate& b) {
  if (a.n_side != b.n_side || a.epsilon != b.epsilon) {
    throw PreconditionError("certificates were built on different grids");
  }
}
}  // namespace

bool certificates_equal(const Certificate& a, const Certificate& b) {
  require_same_grid(a, b);
  return a.fingerprint == b.fingerprint && a.x == b.x && a.y == b.y;
}

bool off_diagonal_check(const Certificate& a, const Certificate& b) {
  require_same_grid(a, b);
  if (a.fingerprint != b.fingerprint || !(a.L == b.L)) {
    throw PreconditionError("off_diagonal_check: certificates have different colourings");
  }
  return bilinear(a.x, a.L, b.y);
}

CountBound dc_count_bound(std::int64_t cells, std::int64_t dim_cap) {
  if (cells <= 0 || dim_cap < 0) throw PreconditionError("dc_count_bound: non-positive input");
  CountBound b;
  b.cells = cells;
  b.dim_cap = dim_cap;
  b.log_value = static_cast<double>(cells) * std::log(3.0) +
                2.0 * static_cast<double>(dim_cap) * std::log(2.0);
  if (b.log_value / std::log(10.0) < kMaxExactDigits) {
    b.exact = big_pow(3, cells) * big_pow(2, 2 * dim_cap);
  }
  return b;
}

CountBound dc_count_bound(double epsilon) {
  if (!(epsilon > 0.0)) throw PreconditionError("dc_count_bound: epsilon must be positive");
  const auto n = static_cast<std::int64_t>(std::ceil(4.0 / epsilon - 1e-9));
  return dc_count_bound(n * n * n, 3 * n * (n + 1) * (n + 1));
}

}  // namespace linkpack
