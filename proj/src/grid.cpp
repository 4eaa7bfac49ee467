#include "linkpack/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

namespace linkpack {

namespace {
constexpr double kBoxTol = 1e-12;
}

std::int64_t max_cell_budget() {
  if (const char* env = std::getenv("LINKPACK_MAX_CELLS")) {
    const long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 100'000'000;
}

Grid tessellate(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw PreconditionError("tessellate: epsilon must lie in (0, 0.5]");
  }
  const double per_side = std::ceil(4.0 / epsilon - 1e-9);
  const double cells = per_side * per_side * per_side;
  if (cells > static_cast<double>(max_cell_budget())) {
    throw ResourceError("tessellate: " + std::to_string(cells) +
                        " cells exceed the cell budget");
  }
  return Grid{epsilon / 4.0, static_cast<int>(per_side), epsilon};
}

Coloring::Coloring(Grid grid, std::vector<std::string> palette,
                   std::vector<std::pair<std::int64_t, int>> colored)
    : grid_(grid), palette_(std::move(palette)), colored_(std::move(colored)) {}

int Coloring::color_at(std::int64_t linear_index) const {
  auto it = std::lower_bound(colored_.begin(), colored_.end(),
                             std::pair<std::int64_t, int>{linear_index, 0});
  return (it != colored_.end() && it->first == linear_index) ? it->second : 0;
}

int Coloring::color_id(const std::string& label) const {
  for (std::size_t c = 0; c < palette_.size(); ++c) {
    if (palette_[c] == label) return static_cast<int>(c);
  }
  throw PreconditionError("coloring: unknown colour '" + label + "'");
}

bool segment_meets_box(const Segment& s, const Point3& lo, const Point3& hi) {
  double t0 = 0.0, t1 = 1.0;
  const Point3 d = s.b - s.a;
  for (int ax = 0; ax < 3; ++ax) {
    const double a = s.a[ax];
    if (d[ax] == 0.0) {
      if (a < lo[ax] || a > hi[ax]) return false;
      continue;
    }
    double ta = (lo[ax] - a) / d[ax];
    double tb = (hi[ax] - a) / d[ax];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

Coloring color_cells(const Grid& grid, const PLLink& link, const std::vector<std::string>& labels) {
  std::vector<std::string> palette{"white"};
  for (const auto& l : labels) {
    if (l == "white") throw PreconditionError("color_cells: 'white' is reserved");
    if (std::find(palette.begin(), palette.end(), l) != palette.end()) {
      throw PreconditionError("color_cells: duplicate label '" + l + "'");
    }
    palette.push_back(l);
  }
  const int ncolors = static_cast<int>(palette.size());
  auto constrained = [&](int a, int b) {
    return a != b && a > 0 && b > 0 && link.constrained(palette[a], palette[b]);
  };

  std::map<std::int64_t, int> cells;
  const double h = grid.h;
  const int n = grid.n_side;
  for (int c = 1; c < ncolors; ++c) {
    const PLCurve& curve = link.component(palette[c]);
    for (const auto& v : curve.vertices()) {
      if ((v.array() < 0.0).any() || (v.array() > 1.0).any()) {
        throw OutOfCubeError("color_cells: curve '" + curve.label() + "' leaves the unit cube");
      }
    }
    for (std::size_t si = 0; si < curve.size(); ++si) {
      const Segment seg = curve.segment(si);
      const Point3 lo = seg.a.cwiseMin(seg.b).array() - kBoxTol;
      const Point3 hi = seg.a.cwiseMax(seg.b).array() + kBoxTol;
      int from[3], to[3];
      for (int ax = 0; ax < 3; ++ax) {
        from[ax] = std::clamp(static_cast<int>(std::floor(lo[ax] / h)), 0, n - 1);
        to[ax] = std::clamp(static_cast<int>(std::floor(hi[ax] / h)), 0, n - 1);
      }
      for (int i = from[0]; i <= to[0]; ++i) {
        for (int j = from[1]; j <= to[1]; ++j) {
          for (int k = from[2]; k <= to[2]; ++k) {
            const Point3 box_lo = Point3(i, j, k) * h;
            const Point3 box_hi = Point3(i + 1, j + 1, k + 1) * h;
            if (!segment_meets_box(seg, box_lo.array() - kBoxTol, box_hi.array() + kBoxTol)) {
              continue;
            }
            const std::int64_t idx = grid.linear({i, j, k});
            auto [it, inserted] = cells.emplace(idx, c);
            if (!inserted && it->second != c && constrained(it->second, c)) {
              throw ConstraintViolation("color_cells: cell (" + std::to_string(i) + "," +
                                        std::to_string(j) + "," + std::to_string(k) +
                                        ") meets both '" + palette[it->second] + "' and '" +
                                        palette[c] + "'");
            }
          }
        }
      }
    }
  }

  // Closed regions of mutually constrained colours must not touch.
  for (const auto& [idx, c] : cells) {
    const CellIndex ci = grid.cell(idx);
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        for (int dk = -1; dk <= 1; ++dk) {
          const CellIndex nb{ci.i + di, ci.j + dj, ci.k + dk};
          if (!grid.contains(nb)) continue;
          auto it = cells.find(grid.linear(nb));
          if (it != cells.end() && constrained(c, it->second)) {
            throw ConstraintViolation("color_cells: regions '" + palette[c] + "' and '" +
                                      palette[it->second] + "' touch");
          }
        }
      }
    }
  }
  return Coloring(grid, std::move(palette), {cells.begin(), cells.end()});
}

Region region_of(const Coloring& coloring, const std::string& label) {
  Region r;
  r.color = coloring.color_id(label);
  r.label = label;
  if (r.color == 0) {
    const auto& colored = coloring.colored();
    std::size_t next = 0;
    for (std::int64_t idx = 0; idx < coloring.grid().cell_count(); ++idx) {
      if (next < colored.size() && colored[next].first == idx) {
        ++next;
        continue;
      }
      r.cells.push_back(idx);
    }
  } else {
    for (const auto& [idx, c] : coloring.colored()) {
      if (c == r.color) r.cells.push_back(idx);
    }
  }
  return r;
}

}  // namespace linkpack
