#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linkpack/bigint.hpp"
#include "linkpack/geometry.hpp"
#include "linkpack/grid.hpp"
#include "linkpack/homology.hpp"

namespace linkpack {

/// Gauss linking number of two disjoint closed curves: the signed count of
/// crossings where `a` passes over `b` in a generic projection. Projection
/// directions are retried up to 10 times on degeneracy.
int linking_integer(const PLCurve& a, const PLCurve& b);

/// linking_integer reduced mod 2.
bool linking_mod2(const PLCurve& a, const PLCurve& b);

/// Mod-2 linking number of two disjoint Z2 1-cycles given as unordered
/// segment soups: parity of the number of a-over-b crossings.
bool linking_mod2(std::span<const Segment> a, std::span<const Segment> b);

/// Edge chain as segments between lattice points, each vertex displaced by a
/// deterministic perturbation of size ~1e-5 h keyed to its lattice index.
/// Shared vertices get the same displacement, so cycles stay closed.
std::vector<Segment> realize_chain(const EdgeChain& chain, const CubicalComplex& complex);

/// d x e matrix of mod-2 linking numbers between basis representatives.
struct LinkingMatrix {
  int d = 0;
  int e = 0;
  std::vector<Z2Vector> rows;  // d rows of e bits

  bool at(int p, int q) const { return rows[p][q]; }
  friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;
};

LinkingMatrix linking_matrix(const H1Basis& red_basis, const CubicalComplex& red_complex,
                             const H1Basis& blue_basis, const CubicalComplex& blue_complex);

/// x^T L y over Z2.
bool bilinear(const Z2Vector& x, const LinkingMatrix& L, const Z2Vector& y);

/// A decorated colouring: the coloured cells (by fingerprint) together with
/// the homology coordinates of both curves in their regions.
struct Certificate {
  std::uint64_t fingerprint = 0;
  double epsilon = 0.0;
  int n_side = 0;
  Z2Vector x;  // red curve in H1(R)
  Z2Vector y;  // blue curve in H1(B)
  LinkingMatrix L;
  bool eq1 = false;  // x^T L y as computed at construction
};

/// FNV-1a over the grid size and the sorted red and blue cell indices.
std::uint64_t coloring_fingerprint(const Grid& grid, const std::vector<std::int64_t>& red_cells,
                                   const std::vector<std::int64_t>& blue_cells);

/// Full pipeline: tessellate, colour, regions, complexes, H1 bases, snapping,
/// coordinates, linking matrix. Failures are rethrown as StageError.
Certificate certificate(const PLLink& link, const std::string& red, const std::string& blue,
                        double epsilon);

/// Same fingerprint, x and y. Throws if the grids differ.
bool certificates_equal(const Certificate& a, const Certificate& b);

/// x_a^T L y_b. Requires equal fingerprints and linking matrices; a value of
/// 1 means the two colourings cannot come from split copies.
bool off_diagonal_check(const Certificate& a, const Certificate& b);

/// Upper bound on the number of decorated colourings: 3^cells * 2^dimCap * 2^dimCap.
struct CountBound {
  std::int64_t cells = 0;
  std::int64_t dim_cap = 0;
  std::optional<BigInt> exact;
  double log_value = 0.0;
};

CountBound dc_count_bound(std::int64_t cells, std::int64_t dim_cap);
/// cells = ceil(4/eps)^3, dimCap = number of edges of the full grid.
CountBound dc_count_bound(double epsilon);

}  // namespace linkpack
