#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linkpack/geometry.hpp"

namespace linkpack {

/// Integer coordinates of a cubical cell.
struct CellIndex {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Cubical tessellation of the unit cube with cells of side h = epsilon / 4.
struct Grid {
  double h = 0.0;
  int n_side = 0;
  double epsilon = 0.0;

  std::int64_t cell_count() const {
    return static_cast<std::int64_t>(n_side) * n_side * n_side;
  }
  /// Linear index; numeric order equals lexicographic (i, j, k) order.
  std::int64_t linear(const CellIndex& c) const {
    return (static_cast<std::int64_t>(c.i) * n_side + c.j) * n_side + c.k;
  }
  CellIndex cell(std::int64_t linear_index) const {
    const std::int64_t n = n_side;
    return {static_cast<int>(linear_index / (n * n)), static_cast<int>((linear_index / n) % n),
            static_cast<int>(linear_index % n)};
  }
  bool contains(const CellIndex& c) const {
    return c.i >= 0 && c.j >= 0 && c.k >= 0 && c.i < n_side && c.j < n_side && c.k < n_side;
  }
  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Cell budget: LINKPACK_MAX_CELLS from the environment, else 1e8.
std::int64_t max_cell_budget();

/// h = epsilon / 4, n_side = ceil(4 / epsilon). Requires 0 < epsilon <= 0.5.
Grid tessellate(double epsilon);

/// Per-cell colours. Colour 0 is white; colour c >= 1 is palette()[c], the
/// label of the curve the cell meets. Only non-white cells are stored.
class Coloring {
 public:
  Coloring(Grid grid, std::vector<std::string> palette,
           std::vector<std::pair<std::int64_t, int>> colored);

  const Grid& grid() const { return grid_; }
  const std::vector<std::string>& palette() const { return palette_; }
  /// Non-white cells sorted by linear index.
  const std::vector<std::pair<std::int64_t, int>>& colored() const { return colored_; }

  int color_at(std::int64_t linear_index) const;
  int color_id(const std::string& label) const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  Grid grid_;
  std::vector<std::string> palette_;
  std::vector<std::pair<std::int64_t, int>> colored_;
};

/// Closed cube [lo, hi] versus closed segment, slab test.
bool segment_meets_box(const Segment& s, const Point3& lo, const Point3& hi);

/// Colours every cell meeting the curve with each label. Throws
/// ConstraintViolation if a cell meets two mutually constrained curves, or if
/// cells of two mutually constrained colours share a vertex.
Coloring color_cells(const Grid& grid, const PLLink& link, const std::vector<std::string>& labels);

struct Region {
  int color = 0;
  std::string label;
  std::vector<std::int64_t> cells;  // sorted linear indices
};

/// All cells of one colour. "white" yields the complement of the coloured cells.
Region region_of(const Coloring& coloring, const std::string& label);

}  // namespace linkpack
