#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linkpack/geometry.hpp"

namespace linkpack {

/// One lattice of rigid Hopf pairs of a common size.
struct Generation {
  int index = 0;
  double radius = 0.0;  // r_i
  double rho = 0.0;     // circle radius, 2 r_i
  double pitch = 0.0;   // lattice spacing, 8 r_i
  std::int64_t count = 0;
  std::vector<PLLink> links;
};

struct Packing {
  double epsilon = 0.0;
  std::vector<Generation> generations;
  std::int64_t total_count = 0;
};

/// Lattice of pairs with circle radius rho at spacing `pitch`, centred in the
/// cube, each carrying the constraint (r, b, epsilon). Along each axis the
/// count is the number of footprints (3 rho x 2 rho x 2 rho) that fit.
Generation lattice_generation(int index, double radius, double epsilon, int segments = 48);

/// Generation 0: r_0 = epsilon. A single diagonally oriented pair is used when
/// the axis-aligned lattice is empty; throws if not even that fits.
Generation generation0(double epsilon, int segments = 48);

/// Generations with r_{i+1} = 2 r_i + epsilon until max_generations or until
/// a generation is empty.
Packing multigeneration(double epsilon, int max_generations, int segments = 48);

struct PackingViolation {
  int generation = 0;
  std::size_t index = 0;
  std::optional<std::size_t> other;  // set for bounding-box overlaps
  std::string reason;
};

struct PairReport {
  int generation = 0;
  std::size_t index = 0;
  double min_distance = 0.0;
  bool ok = false;
};

struct PackingReport {
  bool pass = true;
  std::vector<PairReport> pairs;
  std::optional<PackingViolation> witness;  // first failure found
  double min_pair_distance = 0.0;
};

/// Checks every pair's distance constraint at `epsilon`, that all geometry is
/// inside the unit cube, and that bounding boxes within a generation are
/// pairwise disjoint. Failures are reported, never thrown.
PackingReport verify_packing(const Packing& packing, double epsilon);

struct DensitySample {
  double epsilon = 0.0;
  double count = 0.0;
};

struct DensityFit {
  std::vector<DensitySample> samples;
  double exponent = 0.0;
  double r2 = 0.0;
};

/// Least squares of log count against log(1/epsilon).
DensityFit density_fit(std::vector<DensitySample> samples);
/// Runs generation0 at each epsilon (strictly decreasing) and fits the counts.
DensityFit density_fit(const std::vector<double>& epsilons);

}  // namespace linkpack
