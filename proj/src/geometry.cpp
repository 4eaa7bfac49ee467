#include "linkpack/geometry.hpp"

#include <Eigen/Geometry>

#include <array>
#include <random>
#include <unordered_set>

namespace linkpack {

namespace {

constexpr double kSelfIntersectionTol = 1e-9;
constexpr double kParamTol = 1e-9;

bool in_box(const Point3& p, double lo, double hi) {
  return p.allFinite() && (p.array() >= lo).all() && (p.array() <= hi).all();
}

double cross2(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return u.x() * v.y() - u.y() * v.x();
}

}  // namespace

PLCurve::PLCurve(std::string label, std::vector<Point3> vertices)
    : label_(std::move(label)), vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw PreconditionError("curve '" + label_ + "': needs at least 3 vertices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_box(vertices_[i], -0.1, 1.1)) {
      throw PreconditionError("curve '" + label_ + "': vertex outside [-0.1, 1.1]^3");
    }
    if (vertices_[i] == vertices_[(i + 1) % n]) {
      throw PreconditionError("curve '" + label_ + "': repeated consecutive vertex");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Segment si = segment(i);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      const Segment sj = segment(j);
      if (segment_distance(si.a, si.b, sj.a, sj.b) < kSelfIntersectionTol) {
        throw PreconditionError("curve '" + label_ + "': self-intersection");
      }
    }
  }
}

std::vector<Segment> PLCurve::segments() const {
  std::vector<Segment> out;
  out.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) out.push_back(segment(i));
  return out;
}

Point3 PLCurve::min_corner() const {
  Point3 m = vertices_.front();
  for (const auto& v : vertices_) m = m.cwiseMin(v);
  return m;
}

Point3 PLCurve::max_corner() const {
  Point3 m = vertices_.front();
  for (const auto& v : vertices_) m = m.cwiseMax(v);
  return m;
}

PLLink::PLLink(std::string name, std::vector<PLCurve> components,
               std::vector<DistanceConstraint> constraints)
    : name_(std::move(name)), components_(std::move(components)),
      constraints_(std::move(constraints)) {
  std::unordered_set<std::string> labels;
  for (const auto& c : components_) {
    if (!labels.insert(c.label()).second) {
      throw PreconditionError("link: duplicate component label '" + c.label() + "'");
    }
  }
  for (const auto& k : constraints_) {
    if (!labels.count(k.a) || !labels.count(k.b)) {
      throw PreconditionError("link: constraint references unknown label");
    }
    if (k.a == k.b) {
      throw PreconditionError("link: constraint of '" + k.a + "' with itself");
    }
    if (!(k.min_dist > 0.0)) {
      throw PreconditionError("link: constraint distance must be positive");
    }
  }
}

const PLCurve& PLLink::component(const std::string& label) const {
  for (const auto& c : components_) {
    if (c.label() == label) return c;
  }
  throw PreconditionError("link: no component labelled '" + label + "'");
}

bool PLLink::has_component(const std::string& label) const {
  return std::any_of(components_.begin(), components_.end(),
                     [&](const PLCurve& c) { return c.label() == label; });
}

bool PLLink::constrained(const std::string& a, const std::string& b) const {
  return std::any_of(constraints_.begin(), constraints_.end(), [&](const DistanceConstraint& k) {
    return (k.a == a && k.b == b) || (k.a == b && k.b == a);
  });
}

PLLink PLLink::with_constraint(const std::string& a, const std::string& b,
                               double min_dist) const {
  auto constraints = constraints_;
  constraints.push_back({a, b, min_dist});
  return PLLink(name_, components_, std::move(constraints));
}

double curve_distance(const PLCurve& a, const PLCurve& b) {
  double best = std::numeric_limits<double>::infinity();
  const auto sa = a.segments();
  const auto sb = b.segments();
  for (const auto& x : sa) {
    for (const auto& y : sb) {
      best = std::min(best, segment_distance(x.a, x.b, y.a, y.b));
    }
  }
  return best;
}

std::vector<PairDistance> link_min_distances(const PLLink& link) {
  std::vector<PairDistance> out;
  out.reserve(link.constraints().size());
  for (const auto& k : link.constraints()) {
    out.push_back({k.a, k.b, curve_distance(link.component(k.a), link.component(k.b)),
                   k.min_dist});
  }
  return out;
}

bool inside_unit_cube(const PLLink& link) {
  for (const auto& c : link.components()) {
    for (const auto& v : c.vertices()) {
      if (!in_box(v, 0.0, 1.0)) return false;
    }
  }
  return true;
}

Eigen::Matrix3d diagonal_orientation() {
  return Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitX(),
                                            Eigen::Vector3d::Ones().normalized())
      .toRotationMatrix();
}

PLLink hopf_pair(const Point3& center, double rho, int segments_per_circle,
                 const Eigen::Matrix3d& orientation) {
  if (!(rho > 0.0)) throw PreconditionError("hopf_pair: rho must be positive");
  if (segments_per_circle < 12) {
    throw PreconditionError("hopf_pair: need at least 12 segments per circle");
  }
  const int n = segments_per_circle;
  std::vector<Point3> red, blue;
  red.reserve(n);
  blue.reserve(n);
  const Point3 red_center(-0.5 * rho, 0.0, 0.0);
  const Point3 blue_center(0.5 * rho, 0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * M_PI * i / n;
    red.push_back(orientation * (red_center + rho * Point3(std::cos(th), std::sin(th), 0.0)));
    blue.push_back(orientation * (blue_center + rho * Point3(std::cos(th), 0.0, std::sin(th))));
  }
  Point3 lo = red.front(), hi = red.front();
  for (const auto* pts : {&red, &blue}) {
    for (const auto& p : *pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const Point3 shift = center - 0.5 * (lo + hi);
  for (auto* pts : {&red, &blue}) {
    for (auto& p : *pts) {
      p += shift;
      if (!in_box(p, 0.0, 1.0)) {
        throw OutOfCubeError("hopf_pair: placement exits the unit cube");
      }
    }
  }
  std::vector<PLCurve> comps;
  comps.emplace_back("r", std::move(red));
  comps.emplace_back("b", std::move(blue));
  return PLLink("hopf", std::move(comps));
}

PLLink canonical_hopf(double epsilon, const Point3& center, int segments_per_circle) {
  PLLink pair;
  try {
    pair = hopf_pair(center, 2.0 * epsilon, segments_per_circle);
  } catch (const OutOfCubeError&) {
    pair = hopf_pair(center, 2.0 * epsilon, segments_per_circle, diagonal_orientation());
  }
  return pair.with_constraint("r", "b", epsilon);
}

PLLink rigid_transform(const PLLink& link, const Eigen::Matrix3d& rotation,
                       const Eigen::Vector3d& translation) {
  std::vector<PLCurve> comps;
  comps.reserve(link.components().size());
  for (const auto& c : link.components()) {
    std::vector<Point3> pts;
    pts.reserve(c.size());
    for (const auto& v : c.vertices()) {
      Point3 p = rotation * v + translation;
      if (!in_box(p, 0.0, 1.0)) {
        throw OutOfCubeError("rigid_transform: link exits the unit cube");
      }
      pts.push_back(p);
    }
    comps.emplace_back(c.label(), std::move(pts));
  }
  return PLLink(link.name(), std::move(comps), link.constraints());
}

std::span<const Eigen::Vector3d> generic_views() {
  static const std::vector<Eigen::Vector3d> views = [] {
    std::vector<Eigen::Vector3d> v;
    v.push_back(Eigen::Vector3d(0.1227, 0.2819, 0.9516).normalized());
    std::mt19937_64 rng(0x51ab5eedULL);
    while (v.size() < 10) {
      Eigen::Vector3d d;
      for (int i = 0; i < 3; ++i) d[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
      if (d.norm() > 0.2 && d.norm() < 1.0) v.push_back(d.normalized());
    }
    return v;
  }();
  return views;
}

std::vector<ProjectedCrossing> projected_crossings(std::span<const Segment> a,
                                                   std::span<const Segment> b,
                                                   const Eigen::Vector3d& view,
                                                   bool same_curve) {
  const Eigen::Vector3d u = view.normalized();
  const Eigen::Vector3d helper =
      std::abs(u.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = u.cross(helper).normalized();
  const Eigen::Vector3d e2 = u.cross(e1);

  auto flat = [&](const Point3& p) { return Eigen::Vector2d(p.dot(e1), p.dot(e2)); };
  struct Flat {
    Eigen::Vector2d p0, d;
    Eigen::Vector2d lo, hi;
  };
  auto flatten = [&](std::span<const Segment> segs) {
    std::vector<Flat> out;
    out.reserve(segs.size());
    for (const auto& s : segs) {
      const Eigen::Vector2d p = flat(s.a), q = flat(s.b);
      out.push_back({p, q - p, p.cwiseMin(q), p.cwiseMax(q)});
    }
    return out;
  };
  const auto fa = flatten(a);
  const auto fb = same_curve ? fa : flatten(b);
  const std::size_t n = a.size();

  std::vector<ProjectedCrossing> out;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    for (std::size_t j = same_curve ? i + 1 : 0; j < fb.size(); ++j) {
      if (same_curve && (j == i + 1 || (i == 0 && j == n - 1))) continue;
      const Flat& x = fa[i];
      const Flat& y = fb[j];
      const double pad = 1e-12;
      if ((x.hi.array() + pad < y.lo.array()).any() || (y.hi.array() + pad < x.lo.array()).any()) {
        continue;
      }
      const Eigen::Vector2d r = y.p0 - x.p0;
      const double denom = cross2(x.d, y.d);
      const double scale = x.d.norm() * y.d.norm();
      if (std::abs(denom) <= 1e-12 * scale) {
        // Parallel in projection: only a collinear overlap is a problem.
        if (std::abs(cross2(r, x.d)) <= 1e-12 * x.d.norm() * (1.0 + r.norm())) {
          throw DegenerateProjection("collinear overlap in projection");
        }
        continue;
      }
      const double s = cross2(r, y.d) / denom;
      const double t = cross2(r, x.d) / denom;
      if (s < -kParamTol || s > 1 + kParamTol || t < -kParamTol || t > 1 + kParamTol) continue;
      if (s < kParamTol || s > 1 - kParamTol || t < kParamTol || t > 1 - kParamTol) {
        throw DegenerateProjection("crossing through a projected vertex");
      }
      const Point3 pa = a[i].a + s * (a[i].b - a[i].a);
      const Point3 pb = b[j].a + t * (b[j].b - b[j].a);
      const double ha = pa.dot(u);
      const double hb = pb.dot(u);
      if (std::abs(ha - hb) < 1e-12) {
        throw DegenerateProjection("strands touch at a crossing");
      }
      ProjectedCrossing c;
      c.seg_a = i;
      c.s = s;
      c.seg_b = j;
      c.t = t;
      c.a_over = ha > hb;
      const double over_x_under = c.a_over ? denom : -denom;
      c.sign = over_x_under > 0 ? 1 : -1;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace linkpack
