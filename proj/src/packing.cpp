#include "linkpack/packing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace linkpack {

namespace {

constexpr double kFitTolerance = 1e-9;

std::int64_t fit_count(double extent, double pitch) {
  if (extent > 1.0 + kFitTolerance) return 0;
  return static_cast<std::int64_t>(std::floor((1.0 - extent) / pitch + kFitTolerance)) + 1;
}

struct Box {
  Point3 lo;
  Point3 hi;
};

Box bounding_box(const PLLink& link) {
  Box b{Point3::Constant(std::numeric_limits<double>::infinity()),
        Point3::Constant(-std::numeric_limits<double>::infinity())};
  for (const auto& c : link.components()) {
    b.lo = b.lo.cwiseMin(c.min_corner());
    b.hi = b.hi.cwiseMax(c.max_corner());
  }
  return b;
}

bool boxes_overlap(const Box& x, const Box& y) {
  return ((x.lo.array() < y.hi.array()) && (y.lo.array() < x.hi.array())).all();
}

}  // namespace

Generation lattice_generation(int index, double radius, double epsilon, int segments) {
  if (!(radius > 0.0)) throw PreconditionError("lattice_generation: radius must be positive");
  Generation g;
  g.index = index;
  g.radius = radius;
  g.rho = 2.0 * radius;
  g.pitch = 8.0 * radius;
  const Eigen::Array3d extent(3.0 * g.rho, 2.0 * g.rho, 2.0 * g.rho);
  std::array<std::int64_t, 3> counts{};
  for (int axis = 0; axis < 3; ++axis) counts[axis] = fit_count(extent[axis], g.pitch);
  g.count = counts[0] * counts[1] * counts[2];
  if (g.count == 0) return g;

  Eigen::Array3d start;
  for (int axis = 0; axis < 3; ++axis) {
    const double span = static_cast<double>(counts[axis] - 1) * g.pitch + extent[axis];
    start[axis] = 0.5 * (1.0 - span) + 0.5 * extent[axis];
  }
  g.links.reserve(static_cast<std::size_t>(g.count));
  for (std::int64_t i = 0; i < counts[0]; ++i) {
    for (std::int64_t j = 0; j < counts[1]; ++j) {
      for (std::int64_t k = 0; k < counts[2]; ++k) {
        const Point3 center = start.matrix() + g.pitch * Point3(i, j, k);
        g.links.push_back(hopf_pair(center, g.rho, segments).with_constraint("r", "b", epsilon));
      }
    }
  }
  return g;
}

Generation generation0(double epsilon, int segments) {
  if (!(epsilon > 0.0)) throw PreconditionError("generation0: epsilon must be positive");
  Generation g = lattice_generation(0, epsilon, epsilon, segments);
  if (g.count > 0) return g;
  try {
    g.links.push_back(canonical_hopf(epsilon, Point3(0.5, 0.5, 0.5), segments));
  } catch (const OutOfCubeError&) {
    throw PreconditionError("generation0: epsilon too large to fit any pair");
  }
  g.count = 1;
  return g;
}

Packing multigeneration(double epsilon, int max_generations, int segments) {
  if (max_generations < 1) throw PreconditionError("multigeneration: need at least one generation");
  Packing p;
  p.epsilon = epsilon;
  p.generations.push_back(generation0(epsilon, segments));
  double r = epsilon;
  for (int i = 1; i < max_generations; ++i) {
    r = 2.0 * r + epsilon;
    Generation g = lattice_generation(i, r, epsilon, segments);
    if (g.count == 0) break;
    p.generations.push_back(std::move(g));
  }
  for (const auto& g : p.generations) p.total_count += g.count;
  return p;
}

PackingReport verify_packing(const Packing& packing, double epsilon) {
  PackingReport report;
  report.min_pair_distance = std::numeric_limits<double>::infinity();
  auto fail = [&](PackingViolation v) {
    report.pass = false;
    if (!report.witness) report.witness = std::move(v);
  };

  for (const auto& g : packing.generations) {
    if (static_cast<std::int64_t>(g.links.size()) != g.count) {
      fail({g.index, 0, std::nullopt, "recorded count differs from number of links"});
    }
    for (std::size_t i = 0; i < g.links.size(); ++i) {
      const PLLink& link = g.links[i];
      PairReport pr{g.index, i, std::numeric_limits<double>::infinity(), true};
      if (link.components().size() != 2) {
        pr.ok = false;
        fail({g.index, i, std::nullopt, "entry is not a two-component link"});
      } else {
        pr.min_distance = curve_distance(link.components()[0], link.components()[1]);
        if (pr.min_distance + kConstraintSlack < epsilon) {
          pr.ok = false;
          fail({g.index, i, std::nullopt,
                "components at distance " + std::to_string(pr.min_distance) + " < epsilon"});
        }
      }
      if (!inside_unit_cube(link)) {
        pr.ok = false;
        fail({g.index, i, std::nullopt, "geometry leaves the unit cube"});
      }
      report.min_pair_distance = std::min(report.min_pair_distance, pr.min_distance);
      report.pairs.push_back(pr);
    }

    // Spatial hash on box corners; bins are as wide as the largest box.
    std::vector<Box> boxes;
    boxes.reserve(g.links.size());
    double bin = 0.0;
    for (const auto& link : g.links) {
      boxes.push_back(bounding_box(link));
      bin = std::max(bin, (boxes.back().hi - boxes.back().lo).maxCoeff());
    }
    if (boxes.empty() || !(bin > 0.0)) continue;
    auto key_of = [](const Eigen::Array3i& c) {
      return (static_cast<std::int64_t>(c[0]) * 1'000'003 + c[1]) * 1'000'003 + c[2];
    };
    auto cell_of = [bin](const Point3& p) {
      return Eigen::Array3i((p.array() / bin).floor().cast<int>());
    };
    std::unordered_map<std::int64_t, std::vector<std::size_t>> bins;
    for (std::size_t i = 0; i < boxes.size(); ++i) bins[key_of(cell_of(boxes[i].lo))].push_back(i);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const Eigen::Array3i c = cell_of(boxes[i].lo);
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dz = -1; dz <= 1; ++dz) {
            auto it = bins.find(key_of(c + Eigen::Array3i(dx, dy, dz)));
            if (it == bins.end()) continue;
            for (std::size_t j : it->second) {
              if (j > i && boxes_overlap(boxes[i], boxes[j])) {
                fail({g.index, i, j, "bounding boxes overlap"});
              }
            }
          }
        }
      }
    }
  }
  if (report.pairs.empty()) report.min_pair_distance = 0.0;
  return report;
}

DensityFit density_fit(std::vector<DensitySample> samples) {
  if (samples.size() < 3) throw PreconditionError("density_fit: need at least 3 samples");
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (!(s.epsilon > 0.0) || !(s.count > 0.0)) {
      throw PreconditionError("density_fit: epsilon and count must be positive");
    }
    design(i, 0) = std::log(1.0 / s.epsilon);
    design(i, 1) = 1.0;
    y(i) = std::log(s.count);
  }
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd residual = y - design * beta;
  const double ss_tot = (y.array() - y.mean()).square().sum();
  DensityFit fit;
  fit.samples = std::move(samples);
  fit.exponent = beta[0];
  fit.r2 = ss_tot > 0.0 ? 1.0 - residual.squaredNorm() / ss_tot : 1.0;
  return fit;
}

DensityFit density_fit(const std::vector<double>& epsilons) {
  if (epsilons.size() < 3) throw PreconditionError("density_fit: need at least 3 samples");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] < epsilons[i - 1])) throw PreconditionError("density_fit: epsilons must decrease");
  }
  std::vector<DensitySample> samples;
  for (double eps : epsilons) samples.push_back({eps, static_cast<double>(generation0(eps).count)});
  return density_fit(std::move(samples));
}

}  // namespace linkpack
