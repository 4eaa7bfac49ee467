#pragma once

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linkpack/grid.hpp"

namespace linkpack {

using Z2Vector = boost::dynamic_bitset<std::uint64_t>;
/// A 1-chain over Z2: bit e set iff edge e of the complex is in the chain.
using EdgeChain = Z2Vector;

/// Sparse matrix over Z2, stored by column (sorted row indices).
class Z2Matrix {
 public:
  Z2Matrix() = default;
  Z2Matrix(int rows, std::vector<std::vector<int>> columns);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }
  const std::vector<int>& column(int c) const { return columns_[c]; }
  bool entry(int r, int c) const;

  /// Product over Z2.
  Z2Matrix operator*(const Z2Matrix& rhs) const;
  bool is_zero() const;
  /// Column c as a dense bit vector of length rows().
  Z2Vector dense_column(int c) const;
  /// Image of a dense vector of length cols().
  Z2Vector apply(const Z2Vector& x) const;

  /// "row col" per non-zero entry, preceded by a "rows cols nnz" header.
  std::string to_triplets() const;

 private:
  int rows_ = 0;
  std::vector<std::vector<int>> columns_;
};

/// Lattice point of the grid, 0 <= i, j, k <= n_side.
struct LatticeVertex {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const LatticeVertex&, const LatticeVertex&) = default;
};

/// Vertices, edges and square faces of a union of closed grid cells.
/// Edges are ordered lexicographically by (i, j, k, axis) of their lower end;
/// faces by (i, j, k, normal axis) of their lower corner.
class CubicalComplex {
 public:
  CubicalComplex(const Grid& grid, std::vector<std::int64_t> cells);

  const Grid& grid() const { return grid_; }
  const std::vector<std::int64_t>& cells() const { return cells_; }
  bool has_cell(std::int64_t linear_index) const;

  int vertex_count() const { return static_cast<int>(vertex_keys_.size()); }
  int edge_count() const { return static_cast<int>(edge_keys_.size()); }
  int face_count() const { return static_cast<int>(face_keys_.size()); }

  const Z2Matrix& boundary1() const { return boundary1_; }
  const Z2Matrix& boundary2() const { return boundary2_; }

  LatticeVertex vertex(int v) const;
  std::array<int, 2> edge_endpoints(int e) const;
  /// Index of the lattice vertex, if the complex contains it.
  std::optional<int> vertex_index(const LatticeVertex& v) const;
  /// Index of the edge from v in the positive `axis` direction, if present.
  std::optional<int> edge_index(const LatticeVertex& v, int axis) const;

  /// Boundary of a 1-chain as a vertex bit vector.
  Z2Vector boundary(const EdgeChain& chain) const;
  bool is_cycle(const EdgeChain& chain) const { return boundary(chain).none(); }
  /// Boundary of face f as an edge chain.
  EdgeChain face_boundary(int f) const;

 private:
  std::int64_t vertex_key(const LatticeVertex& v) const;
  LatticeVertex vertex_of_key(std::int64_t key) const;

  Grid grid_;
  std::vector<std::int64_t> cells_;
  std::vector<std::int64_t> vertex_keys_;
  std::vector<std::int64_t> edge_keys_;
  std::vector<std::int64_t> face_keys_;
  Z2Matrix boundary1_;
  Z2Matrix boundary2_;
};

/// Builds the complex of a region and checks d1 d2 = 0.
CubicalComplex build_complex(const Region& region, const Grid& grid);

/// Canonical basis of H1(complex; Z2) by simple edge-loops, plus the reduced
/// echelon form used to read off coordinates.
struct H1Basis {
  std::vector<EdgeChain> cycles;
  int dim = 0;

  // Echelon rows spanning im d2 + span(cycles), keyed by lowest set bit.
  std::vector<EdgeChain> rows;
  std::vector<Z2Vector> row_tags;  // basis coordinates carried by each row
  std::vector<int> pivot_row;      // edge -> row index or -1

  friend bool operator==(const H1Basis& a, const H1Basis& b) {
    return a.dim == b.dim && a.cycles == b.cycles;
  }
};

/// Deterministic: fundamental cycles of the breadth-first spanning forest
/// (edges visited in index order) are kept when independent modulo im d2.
H1Basis h1_basis(const CubicalComplex& complex);

/// Realises the curve as an edge cycle of the complex homologous to it inside
/// the region. Each sub-segment lying in a single cell is snapped to that
/// cell's nearest corners and joined along the cell's edges.
EdgeChain snap_to_cycle(const PLCurve& curve, const CubicalComplex& complex);

/// Coordinates x with [cycle] = sum x_p [f_p] modulo im d2.
Z2Vector coordinates(const EdgeChain& cycle, const H1Basis& basis, const CubicalComplex& complex);

}  // namespace linkpack
