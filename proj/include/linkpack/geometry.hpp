#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkpack/error.hpp"

namespace linkpack {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// A point of the ambient unit cube.
using Point3 = Vector3<double>;

/// Slack applied in favour of acceptance when checking distance constraints.
inline constexpr double kConstraintSlack = 1e-9;

/// Minimum Euclidean distance between the closed segments [p1,p2] and [q1,q2].
///
/// Closest-point parametrisation with clamping; the parallel case falls out of
/// the clamp on the first parameter. Zero-length segments are rejected.
template <typename Scalar>
Scalar segment_distance(const Vector3<Scalar>& p1, const Vector3<Scalar>& p2,
                        const Vector3<Scalar>& q1, const Vector3<Scalar>& q2) {
  const Vector3<Scalar> d1 = p2 - p1;
  const Vector3<Scalar> d2 = q2 - q1;
  const Vector3<Scalar> r = p1 - q1;
  const Scalar a = d1.squaredNorm();
  const Scalar e = d2.squaredNorm();
  if (a == Scalar(0) || e == Scalar(0)) {
    throw PreconditionError("segment_distance: degenerate (zero-length) segment");
  }
  const Scalar b = d1.dot(d2);
  const Scalar c = d1.dot(r);
  const Scalar f = d2.dot(r);
  const Scalar denom = a * e - b * b;

  Scalar s = 0;
  if (denom > std::numeric_limits<Scalar>::epsilon() * a * e) {
    s = std::clamp((b * f - c * e) / denom, Scalar(0), Scalar(1));
  }
  Scalar t = (b * s + f) / e;
  if (t < Scalar(0)) {
    t = 0;
    s = std::clamp(-c / a, Scalar(0), Scalar(1));
  } else if (t > Scalar(1)) {
    t = 1;
    s = std::clamp((b - c) / a, Scalar(0), Scalar(1));
  }
  return ((p1 + s * d1) - (q1 + t * d2)).norm();
}

struct Segment {
  Point3 a;
  Point3 b;
};

/// Closed polygonal curve; the last vertex connects back to the first.
class PLCurve {
 public:
  /// Validates: at least 3 vertices, consecutive vertices distinct, finite
  /// coordinates within [-0.1, 1.1], no self-intersection (tolerance 1e-9).
  PLCurve(std::string label, std::vector<Point3> vertices);

  const std::string& label() const { return label_; }
  const std::vector<Point3>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  Segment segment(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }
  std::vector<Segment> segments() const;

  Point3 min_corner() const;
  Point3 max_corner() const;

 private:
  std::string label_;
  std::vector<Point3> vertices_;
};

struct DistanceConstraint {
  std::string a;
  std::string b;
  double min_dist = 0.0;
};

/// Components plus pairwise separation constraints. Immutable once built.
class PLLink {
 public:
  PLLink() = default;
  PLLink(std::string name, std::vector<PLCurve> components,
         std::vector<DistanceConstraint> constraints = {});

  const std::string& name() const { return name_; }
  const std::vector<PLCurve>& components() const { return components_; }
  const std::vector<DistanceConstraint>& constraints() const { return constraints_; }

  const PLCurve& component(const std::string& label) const;
  bool has_component(const std::string& label) const;
  /// True when a constraint (in either order) joins the two labels.
  bool constrained(const std::string& a, const std::string& b) const;

  PLLink with_constraint(const std::string& a, const std::string& b, double min_dist) const;

 private:
  std::string name_;
  std::vector<PLCurve> components_;
  std::vector<DistanceConstraint> constraints_;
};

/// Minimum distance between two curves over all segment pairs.
double curve_distance(const PLCurve& a, const PLCurve& b);

struct PairDistance {
  std::string a;
  std::string b;
  double dist = 0.0;
  double required = 0.0;
  bool satisfied() const { return dist + kConstraintSlack >= required; }
};

/// One entry per declared constraint, in declaration order.
std::vector<PairDistance> link_min_distances(const PLLink& link);

bool inside_unit_cube(const PLLink& link);

/// Rotation taking the x axis onto the cube diagonal. Used to fit large Hopf
/// pairs whose axis-aligned footprint (3 rho wide) would leave the cube.
Eigen::Matrix3d diagonal_orientation();

/// Two polygonal circles of radius rho in orthogonal planes, each passing
/// through the other's centre. Labels "r" and "b"; no constraint attached.
/// The pair is rotated by `orientation` and translated so that its bounding
/// box is centred on `center`.
PLLink hopf_pair(const Point3& center, double rho, int segments_per_circle = 48,
                 const Eigen::Matrix3d& orientation = Eigen::Matrix3d::Identity());

/// Hopf pair with rho = 2 epsilon and the constraint (r, b, epsilon). Falls
/// back to the diagonal orientation when the axis-aligned pair does not fit.
PLLink canonical_hopf(double epsilon, const Point3& center = Point3(0.5, 0.5, 0.5),
                      int segments_per_circle = 48);

/// p -> rotation * p + translation on every vertex.
PLLink rigid_transform(const PLLink& link, const Eigen::Matrix3d& rotation,
                       const Eigen::Vector3d& translation);

// ---------------------------------------------------------------------------
// Planar projection.

/// A crossing between segment `seg_a` of the first list and `seg_b` of the
/// second in the projection along `view` (view points towards the observer).
struct ProjectedCrossing {
  std::size_t seg_a = 0;
  double s = 0.0;  // parameter along seg_a
  std::size_t seg_b = 0;
  double t = 0.0;  // parameter along seg_b
  bool a_over = false;
  /// Right-handed crossing sign: sign of (over x under) . view.
  int sign = 0;
};

/// Fixed list of generic projection directions; index 0 is tried first.
std::span<const Eigen::Vector3d> generic_views();

/// All crossings between the two segment lists. When `same_curve` is set the
/// lists are the same closed curve and adjacent segments are skipped.
/// Throws DegenerateProjection on near-degenerate configurations
/// (crossing at a vertex, collinear overlap, or strands nearly touching).
std::vector<ProjectedCrossing> projected_crossings(std::span<const Segment> a,
                                                   std::span<const Segment> b,
                                                   const Eigen::Vector3d& view,
                                                   bool same_curve = false);

/// Calls f(view) for each generic view until one does not throw
/// DegenerateProjection.
template <typename F>
auto with_generic_view(F&& f) {
  std::string last;
  for (const auto& view : generic_views()) {
    try {
      return f(view);
    } catch (const DegenerateProjection& e) {
      last = e.what();
    }
  }
  throw DegenerateProjection("no generic projection after " +
                             std::to_string(generic_views().size()) + " attempts: " + last);
}

}  // namespace linkpack
