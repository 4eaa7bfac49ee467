#include "linkpack/homology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <sstream>

namespace linkpack {

// ---------------------------------------------------------------------------
// Z2Matrix

Z2Matrix::Z2Matrix(int rows, std::vector<std::vector<int>> columns)
    : rows_(rows), columns_(std::move(columns)) {
  for (auto& col : columns_) {
    std::sort(col.begin(), col.end());
    // Repeated entries cancel in pairs.
    std::vector<int> reduced;
    for (std::size_t i = 0; i < col.size();) {
      std::size_t j = i;
      while (j < col.size() && col[j] == col[i]) ++j;
      if ((j - i) % 2 == 1) reduced.push_back(col[i]);
      i = j;
    }
    for (int r : reduced) {
      if (r < 0 || r >= rows_) throw InvariantError("Z2Matrix: row index out of range");
    }
    col = std::move(reduced);
  }
}

bool Z2Matrix::entry(int r, int c) const {
  const auto& col = columns_.at(c);
  return std::binary_search(col.begin(), col.end(), r);
}

Z2Matrix Z2Matrix::operator*(const Z2Matrix& rhs) const {
  if (cols() != rhs.rows()) throw PreconditionError("Z2Matrix: dimension mismatch");
  std::vector<std::vector<int>> out(rhs.cols());
  for (int c = 0; c < rhs.cols(); ++c) {
    std::vector<int> acc;
    for (int mid : rhs.column(c)) {
      acc.insert(acc.end(), columns_[mid].begin(), columns_[mid].end());
    }
    out[c] = std::move(acc);
  }
  return Z2Matrix(rows_, std::move(out));
}

bool Z2Matrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

Z2Vector Z2Matrix::dense_column(int c) const {
  Z2Vector v(rows_);
  for (int r : columns_.at(c)) v.set(r);
  return v;
}

Z2Vector Z2Matrix::apply(const Z2Vector& x) const {
  if (static_cast<int>(x.size()) != cols()) throw PreconditionError("Z2Matrix: length mismatch");
  Z2Vector y(rows_);
  for (auto c = x.find_first(); c != Z2Vector::npos; c = x.find_next(c)) {
    for (int r : columns_[c]) y.flip(r);
  }
  return y;
}

std::string Z2Matrix::to_triplets() const {
  std::ostringstream os;
  std::size_t nnz = 0;
  for (const auto& c : columns_) nnz += c.size();
  os << rows_ << ' ' << cols() << ' ' << nnz << '\n';
  for (int c = 0; c < cols(); ++c) {
    for (int r : columns_[c]) os << r << ' ' << c << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// CubicalComplex

namespace {

LatticeVertex shifted(LatticeVertex v, int axis, int by = 1) {
  (axis == 0 ? v.i : axis == 1 ? v.j : v.k) += by;
  return v;
}

int coord(const LatticeVertex& v, int axis) { return axis == 0 ? v.i : axis == 1 ? v.j : v.k; }

template <typename T>
std::optional<int> find_sorted(const std::vector<T>& keys, T key) {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return std::nullopt;
  return static_cast<int>(it - keys.begin());
}

void sort_unique(std::vector<std::int64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::int64_t CubicalComplex::vertex_key(const LatticeVertex& v) const {
  const std::int64_t m = grid_.n_side + 1;
  return (static_cast<std::int64_t>(v.i) * m + v.j) * m + v.k;
}

LatticeVertex CubicalComplex::vertex_of_key(std::int64_t key) const {
  const std::int64_t m = grid_.n_side + 1;
  return {static_cast<int>(key / (m * m)), static_cast<int>((key / m) % m),
          static_cast<int>(key % m)};
}

CubicalComplex::CubicalComplex(const Grid& grid, std::vector<std::int64_t> cells)
    : grid_(grid), cells_(std::move(cells)) {
  sort_unique(cells_);
  for (std::int64_t idx : cells_) {
    if (idx < 0 || idx >= grid_.cell_count()) {
      throw PreconditionError("CubicalComplex: cell outside the grid");
    }
    const CellIndex c = grid_.cell(idx);
    const LatticeVertex base{c.i, c.j, c.k};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int d = 0; d < 2; ++d) {
          vertex_keys_.push_back(vertex_key({c.i + a, c.j + b, c.k + d}));
        }
      }
    }
    for (int axis = 0; axis < 3; ++axis) {
      const int u = (axis + 1) % 3, w = (axis + 2) % 3;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const LatticeVertex v = shifted(shifted(base, u, a), w, b);
          edge_keys_.push_back(vertex_key(v) * 3 + axis);
        }
      }
      face_keys_.push_back(vertex_key(base) * 3 + axis);
      face_keys_.push_back(vertex_key(shifted(base, axis)) * 3 + axis);
    }
  }
  sort_unique(vertex_keys_);
  sort_unique(edge_keys_);
  sort_unique(face_keys_);

  std::vector<std::vector<int>> d1(edge_keys_.size());
  for (std::size_t e = 0; e < edge_keys_.size(); ++e) {
    const auto ends = edge_endpoints(static_cast<int>(e));
    d1[e] = {ends[0], ends[1]};
  }
  boundary1_ = Z2Matrix(vertex_count(), std::move(d1));

  std::vector<std::vector<int>> d2(face_keys_.size());
  for (std::size_t f = 0; f < face_keys_.size(); ++f) {
    const LatticeVertex v = vertex_of_key(face_keys_[f] / 3);
    const int normal = static_cast<int>(face_keys_[f] % 3);
    const int u = (normal + 1) % 3, w = (normal + 2) % 3;
    for (const auto& [from, axis] :
         {std::pair{v, u}, std::pair{v, w}, std::pair{shifted(v, u), w}, std::pair{shifted(v, w), u}}) {
      const auto e = edge_index(from, axis);
      if (!e) throw InvariantError("CubicalComplex: face edge missing");
      d2[f].push_back(*e);
    }
  }
  boundary2_ = Z2Matrix(edge_count(), std::move(d2));
}

bool CubicalComplex::has_cell(std::int64_t linear_index) const {
  return std::binary_search(cells_.begin(), cells_.end(), linear_index);
}

LatticeVertex CubicalComplex::vertex(int v) const { return vertex_of_key(vertex_keys_.at(v)); }

std::array<int, 2> CubicalComplex::edge_endpoints(int e) const {
  const std::int64_t key = edge_keys_.at(e);
  const LatticeVertex lo = vertex_of_key(key / 3);
  const LatticeVertex hi = shifted(lo, static_cast<int>(key % 3));
  const auto a = vertex_index(lo), b = vertex_index(hi);
  if (!a || !b) throw InvariantError("CubicalComplex: edge endpoint missing");
  return {*a, *b};
}

std::optional<int> CubicalComplex::vertex_index(const LatticeVertex& v) const {
  const int m = grid_.n_side;
  if (v.i < 0 || v.j < 0 || v.k < 0 || v.i > m || v.j > m || v.k > m) return std::nullopt;
  return find_sorted(vertex_keys_, vertex_key(v));
}

std::optional<int> CubicalComplex::edge_index(const LatticeVertex& v, int axis) const {
  const int m = grid_.n_side;
  if (v.i < 0 || v.j < 0 || v.k < 0 || v.i > m || v.j > m || v.k > m) return std::nullopt;
  return find_sorted(edge_keys_, vertex_key(v) * 3 + axis);
}

Z2Vector CubicalComplex::boundary(const EdgeChain& chain) const {
  return boundary1_.apply(chain);
}

EdgeChain CubicalComplex::face_boundary(int f) const { return boundary2_.dense_column(f); }

CubicalComplex build_complex(const Region& region, const Grid& grid) {
  if (region.cells.empty()) throw PreconditionError("build_complex: empty region");
  CubicalComplex complex(grid, region.cells);
  if (!(complex.boundary1() * complex.boundary2()).is_zero()) {
    throw InvariantError("build_complex: d1 d2 != 0");
  }
  return complex;
}

// ---------------------------------------------------------------------------
// H1

namespace {

/// Reduces `vec` by the echelon rows, accumulating their tags. Returns true
/// when the vector reduces to zero.
bool reduce(EdgeChain& vec, Z2Vector* tag, const std::vector<EdgeChain>& rows,
            const std::vector<Z2Vector>& tags, const std::vector<int>& pivot_row) {
  for (auto b = vec.find_first(); b != EdgeChain::npos; b = vec.find_first()) {
    const int r = pivot_row[b];
    if (r < 0) return false;
    vec ^= rows[r];
    if (tag) *tag ^= tags[r];
  }
  return true;
}

}  // namespace

H1Basis h1_basis(const CubicalComplex& complex) {
  const int E = complex.edge_count();
  const int V = complex.vertex_count();
  H1Basis basis;
  basis.pivot_row.assign(E, -1);

  // Echelon form of im d2.
  for (int f = 0; f < complex.face_count(); ++f) {
    EdgeChain col = complex.face_boundary(f);
    if (reduce(col, nullptr, basis.rows, basis.row_tags, basis.pivot_row)) continue;
    basis.pivot_row[col.find_first()] = static_cast<int>(basis.rows.size());
    basis.rows.push_back(std::move(col));
  }
  const int rank2 = static_cast<int>(basis.rows.size());

  // Breadth-first spanning forest over edges in index order.
  std::vector<std::vector<int>> incident(V);
  for (int e = 0; e < E; ++e) {
    const auto ends = complex.edge_endpoints(e);
    incident[ends[0]].push_back(e);
    incident[ends[1]].push_back(e);
  }
  std::vector<int> parent_edge(V, -1), depth(V, -1);
  std::vector<char> tree_edge(E, 0);
  int components = 0;
  for (int root = 0; root < V; ++root) {
    if (depth[root] >= 0) continue;
    ++components;
    depth[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : incident[v]) {
        const auto ends = complex.edge_endpoints(e);
        const int w = ends[0] == v ? ends[1] : ends[0];
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent_edge[w] = e;
        tree_edge[e] = 1;
        queue.push_back(w);
      }
    }
  }
  basis.dim = (E - V + components) - rank2;
  basis.row_tags.assign(basis.rows.size(), Z2Vector(basis.dim));
  if (basis.dim == 0) return basis;

  auto other_end = [&](int v) {
    const auto ends = complex.edge_endpoints(parent_edge[v]);
    return ends[0] == v ? ends[1] : ends[0];
  };
  for (int e = 0; e < E && static_cast<int>(basis.cycles.size()) < basis.dim; ++e) {
    if (tree_edge[e]) continue;
    EdgeChain cycle(E);
    cycle.set(e);
    auto [u, w] = complex.edge_endpoints(e);
    while (u != w) {
      if (depth[u] >= depth[w]) {
        cycle.flip(parent_edge[u]);
        u = other_end(u);
      } else {
        cycle.flip(parent_edge[w]);
        w = other_end(w);
      }
    }
    EdgeChain residue = cycle;
    Z2Vector tag(basis.dim);
    if (reduce(residue, &tag, basis.rows, basis.row_tags, basis.pivot_row)) continue;
    tag.set(basis.cycles.size());
    basis.pivot_row[residue.find_first()] = static_cast<int>(basis.rows.size());
    basis.rows.push_back(std::move(residue));
    basis.row_tags.push_back(std::move(tag));
    basis.cycles.push_back(std::move(cycle));
  }
  if (static_cast<int>(basis.cycles.size()) != basis.dim) {
    throw InvariantError("h1_basis: fundamental cycles do not span H1");
  }
  return basis;
}

Z2Vector coordinates(const EdgeChain& cycle, const H1Basis& basis, const CubicalComplex& complex) {
  if (static_cast<int>(cycle.size()) != complex.edge_count()) {
    throw PreconditionError("coordinates: chain length does not match the complex");
  }
  if (!complex.is_cycle(cycle)) throw PreconditionError("coordinates: chain is not a cycle");
  EdgeChain vec = cycle;
  Z2Vector x(basis.dim);
  if (!reduce(vec, &x, basis.rows, basis.row_tags, basis.pivot_row)) {
    throw InvariantError("coordinates: cycle not in the span of the basis");
  }
  return x;
}

// ---------------------------------------------------------------------------
// Snapping

EdgeChain snap_to_cycle(const PLCurve& curve, const CubicalComplex& complex) {
  const Grid& grid = complex.grid();
  const double h = grid.h;
  const int n = grid.n_side;
  EdgeChain chain(complex.edge_count());

  auto cell_of = [&](const Point3& p) {
    CellIndex c;
    c.i = std::clamp(static_cast<int>(std::floor(p.x() / h)), 0, n - 1);
    c.j = std::clamp(static_cast<int>(std::floor(p.y() / h)), 0, n - 1);
    c.k = std::clamp(static_cast<int>(std::floor(p.z() / h)), 0, n - 1);
    return c;
  };
  // A point on a cell face or edge belongs to every cell sharing it.
  auto containing_cell = [&](const Point3& p) -> std::optional<CellIndex> {
    const CellIndex base = cell_of(p);
    std::array<std::vector<int>, 3> options;
    for (int ax = 0; ax < 3; ++ax) {
      const int b = ax == 0 ? base.i : ax == 1 ? base.j : base.k;
      options[ax].push_back(b);
      const double u = p[ax] / h;
      if (std::abs(u - std::round(u)) < 1e-9) {
        const int other = static_cast<int>(std::round(u)) == b ? b - 1 : b + 1;
        if (other >= 0 && other < n) options[ax].push_back(other);
      }
    }
    for (int i : options[0])
      for (int j : options[1])
        for (int k : options[2]) {
          const CellIndex c{i, j, k};
          if (complex.has_cell(grid.linear(c))) return c;
        }
    return std::nullopt;
  };
  auto snap = [&](const Point3& p, const CellIndex& c) {
    auto r = [&](double x, int lo) {
      return std::clamp(static_cast<int>(std::lround(x / h)), lo, lo + 1);
    };
    return LatticeVertex{r(p.x(), c.i), r(p.y(), c.j), r(p.z(), c.k)};
  };
  auto is_corner = [](const LatticeVertex& v, const CellIndex& c) {
    return v.i - c.i >= 0 && v.i - c.i <= 1 && v.j - c.j >= 0 && v.j - c.j <= 1 &&
           v.k - c.k >= 0 && v.k - c.k <= 1;
  };
  // Walks from `from` to `to` (corners of one cell) along x, then y, then z.
  auto walk = [&](LatticeVertex from, const LatticeVertex& to) {
    for (int axis = 0; axis < 3; ++axis) {
      const int delta = coord(to, axis) - coord(from, axis);
      if (delta == 0) continue;
      const LatticeVertex lower = delta > 0 ? from : shifted(from, axis, -1);
      const auto e = complex.edge_index(lower, axis);
      if (!e) throw InvariantError("snap_to_cycle: cell edge missing from complex");
      chain.flip(*e);
      from = shifted(from, axis, delta);
    }
  };

  std::optional<LatticeVertex> start, current;
  for (std::size_t si = 0; si < curve.size(); ++si) {
    const Segment seg = curve.segment(si);
    const Point3 d = seg.b - seg.a;
    std::vector<double> cuts{0.0, 1.0};
    for (int ax = 0; ax < 3; ++ax) {
      if (d[ax] == 0.0) continue;
      const double lo = std::min(seg.a[ax], seg.b[ax]) / h;
      const double hi = std::max(seg.a[ax], seg.b[ax]) / h;
      for (double plane = std::ceil(lo); plane <= hi; plane += 1.0) {
        const double t = (plane * h - seg.a[ax]) / d[ax];
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double t0 = cuts[c], t1 = cuts[c + 1];
      if (t1 - t0 < 1e-15) continue;
      const Point3 p0 = seg.a + t0 * d;
      const Point3 p1 = seg.a + t1 * d;
      const std::optional<CellIndex> found = containing_cell(0.5 * (p0 + p1));
      if (!found) {
        throw PreconditionError("snap_to_cycle: curve '" + curve.label() + "' leaves the region");
      }
      const CellIndex cell = *found;
      const LatticeVertex v0 = snap(p0, cell);
      if (!current) {
        start = current = v0;
      } else if (!is_corner(*current, cell)) {
        throw InvariantError("snap_to_cycle: consecutive pieces do not share a corner");
      }
      walk(*current, v0);
      current = snap(p1, cell);
      walk(v0, *current);
    }
  }
  if (!current || !(*current == *start)) {
    throw InvariantError("snap_to_cycle: snapped walk does not close");
  }
  if (!complex.is_cycle(chain)) throw InvariantError("snap_to_cycle: result is not a cycle");
  return chain;
}

}  // namespace linkpack
