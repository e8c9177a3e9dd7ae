#ifndef MOTIONALPHA_CRYSTAL_HPP
#define MOTIONALPHA_CRYSTAL_HPP

// Symmorphic crystallographic groups: the wallpaper groups p1, p2, p3, p4, p6
// inside SE(2) and the space group P432 inside SE(3).

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motionalpha/error.hpp"
#include "motionalpha/finite_group.hpp"
#include "motionalpha/lie.hpp"
#include "motionalpha/tolerances.hpp"

namespace motionalpha {

/// gamma_{l m n}: rotation by 2 pi l / r followed by translation m a1 + n a2.
struct WallpaperElement {
  int l = 0;
  long m = 0;
  long n = 0;

  friend bool operator==(const WallpaperElement&, const WallpaperElement&) = default;
};

class WallpaperGroup {
 public:
  WallpaperGroup() = default;
  WallpaperGroup(std::string name, Vec2 a1, Vec2 a2, int point_order)
      : name_(std::move(name)), point_order_(point_order) {
    basis_ << a1, a2;
    if (std::abs(basis_.determinant()) < 1e-12) {
      detail::fail(ErrorKind::Validation, name_ + ": degenerate lattice basis");
    }
    inverse_basis_ = basis_.inverse();
    // The lattice must be mapped to itself by the point rotations.
    const Mat2 r = rot2(rotation_angle(1));
    for (int c = 0; c < 2; ++c) {
      const Vec2 coords = inverse_basis_ * (r * basis_.col(c));
      if ((coords - coords.array().round().matrix()).cwiseAbs().maxCoeff() > 1e-9) {
        detail::fail(ErrorKind::Validation,
                     name_ + ": lattice is not invariant under the point rotations");
      }
    }
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int point_order() const noexcept { return point_order_; }
  [[nodiscard]] Vec2 a1() const { return basis_.col(0); }
  [[nodiscard]] Vec2 a2() const { return basis_.col(1); }
  [[nodiscard]] const Mat2& basis() const noexcept { return basis_; }

  [[nodiscard]] double rotation_angle(int l) const { return 2.0 * kPi * l / point_order_; }

  [[nodiscard]] Vec2 lattice_point(long m, long n) const {
    return static_cast<double>(m) * basis_.col(0) + static_cast<double>(n) * basis_.col(1);
  }

  /// Integer coordinates of a lattice vector; throws if v is not on the lattice.
  [[nodiscard]] std::pair<long, long> lattice_coords(const Vec2& v) const {
    const Vec2 c = inverse_basis_ * v;
    const Vec2 rc = c.array().round();
    if ((c - rc).cwiseAbs().maxCoeff() > 1e-9) {
      detail::fail(ErrorKind::Validation, name_ + ": vector is not a lattice vector");
    }
    return {std::lround(rc.x()), std::lround(rc.y())};
  }

  [[nodiscard]] PlanarMotion motion(const WallpaperElement& e) const {
    return {rotation_angle(e.l), lattice_point(e.m, e.n)};
  }

  /// SE(2) product, returned in (l, m, n) form.
  [[nodiscard]] WallpaperElement compose(const WallpaperElement& a,
                                         const WallpaperElement& b) const {
    const Vec2 t = lattice_point(a.m, a.n) + rot2(rotation_angle(a.l)) * lattice_point(b.m, b.n);
    const auto [m, n] = lattice_coords(t);
    return {(a.l + b.l) % point_order_, m, n};
  }

  [[nodiscard]] WallpaperElement inverse(const WallpaperElement& e) const {
    const int l = (point_order_ - e.l) % point_order_;
    const Vec2 t = -(rot2(rotation_angle(l)) * lattice_point(e.m, e.n));
    const auto [m, n] = lattice_coords(t);
    return {l, m, n};
  }

  /// Lattice point closest to t (smallest (m, n) on ties).
  [[nodiscard]] std::pair<long, long> nearest_lattice_point(const Vec2& t) const {
    const Vec2 c = inverse_basis_ * t;
    const long m0 = std::lround(std::floor(c.x()));
    const long n0 = std::lround(std::floor(c.y()));
    std::pair<long, long> best{m0, n0};
    double best_d = std::numeric_limits<double>::infinity();
    for (long m = m0 - 2; m <= m0 + 3; ++m) {
      for (long n = n0 - 2; n <= n0 + 3; ++n) {
        const double d = (lattice_point(m, n) - t).squaredNorm();
        if (d < best_d - 1e-12) {
          best_d = d;
          best = {m, n};
        }
      }
    }
    return best;
  }

 private:
  std::string name_;
  Mat2 basis_ = Mat2::Identity();
  Mat2 inverse_basis_ = Mat2::Identity();
  int point_order_ = 1;
};

/// Named instance. Bases: square for p4, hexagonal (a, 0), (a/2, a sqrt(3)/2)
/// for p3 and p6, oblique (a, 0), (0.35 a, 0.9 a) for p1 and p2.
[[nodiscard]] inline WallpaperGroup wallpaper(std::string_view name, double scale = 1.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    detail::fail(ErrorKind::Validation, "wallpaper: lattice scale must be > 0");
  }
  const double a = scale;
  const Vec2 oblique_a2(0.35 * a, 0.9 * a);
  const Vec2 hex_a2(0.5 * a, 0.5 * std::sqrt(3.0) * a);
  const Vec2 a1(a, 0.0);
  if (name == "p1") return {"p1", a1, oblique_a2, 1};
  if (name == "p2") return {"p2", a1, oblique_a2, 2};
  if (name == "p3") return {"p3", a1, hex_a2, 3};
  if (name == "p4") return {"p4", a1, Vec2(0.0, a), 4};
  if (name == "p6") return {"p6", a1, hex_a2, 6};
  detail::fail(ErrorKind::Validation, "unknown wallpaper group '" + std::string(name) + "'");
}

/// All elements with |translation| <= radius, lattice points in (m, n)
/// lexicographic order and rotation index fastest.
[[nodiscard]] inline std::vector<WallpaperElement> enumerate_elements(const WallpaperGroup& g,
                                                                      double radius) {
  if (!(radius >= 0.0)) detail::fail(ErrorKind::Validation, "radius must be >= 0");
  // |m|, |n| <= radius * ||B^-1||_2 bounds every lattice point in the ball.
  const Eigen::JacobiSVD<Mat2> svd(g.basis());
  const double smin = svd.singularValues().minCoeff();
  const long span = static_cast<long>(std::ceil(radius / smin)) + 1;
  std::vector<WallpaperElement> out;
  for (long m = -span; m <= span; ++m) {
    for (long n = -span; n <= span; ++n) {
      if (g.lattice_point(m, n).norm() > radius + 1e-12) continue;
      for (int l = 0; l < g.point_order(); ++l) out.push_back({l, m, n});
    }
  }
  return out;
}

/// Voronoi cell of the identity in SE(2) under rho_se2: an angular interval
/// times the Voronoi cell of the translation lattice.
struct Se2Domain {
  std::string group;
  double theta_min = 0.0;
  double theta_max = 0.0;
  /// Counter-clockwise polygon vertices.
  std::vector<Vec2> polygon;
  /// Lattice vectors whose perpendicular bisectors bound the polygon.
  std::vector<Vec2> facets;

  [[nodiscard]] double theta_extent() const { return theta_max - theta_min; }

  [[nodiscard]] bool contains_translation(const Vec2& t, double tolerance = 1e-12) const {
    return std::all_of(facets.begin(), facets.end(), [&](const Vec2& v) {
      return t.dot(v) <= 0.5 * v.squaredNorm() + tolerance;
    });
  }

  /// Closed membership; boundaries are shared with neighboring cells.
  [[nodiscard]] bool contains(const PlanarMotion& p, double tolerance = 1e-12) const {
    return p.theta >= theta_min - tolerance && p.theta <= theta_max + tolerance &&
           contains_translation(p.t, tolerance);
  }
};

namespace detail {

/// Clip a convex counter-clockwise polygon by the half-plane x . v <= c.
inline std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, const Vec2& v, double c) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& p = poly[k];
    const Vec2& q = poly[(k + 1) % n];
    const double fp = p.dot(v) - c;
    const double fq = q.dot(v) - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      out.push_back(p + (fp / (fp - fq)) * (q - p));
    }
  }
  return out;
}

}  // namespace detail

[[nodiscard]] inline Se2Domain voronoi_domain_se2(const WallpaperGroup& g) {
  Se2Domain d;
  d.group = g.name();
  d.theta_min = -kPi / g.point_order();
  d.theta_max = kPi / g.point_order();
  const double big = 10.0 * (g.a1().norm() + g.a2().norm());
  std::vector<Vec2> poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
  std::vector<Vec2> candidates;
  for (long m = -3; m <= 3; ++m) {
    for (long n = -3; n <= 3; ++n) {
      if (m != 0 || n != 0) candidates.push_back(g.lattice_point(m, n));
    }
  }
  for (const Vec2& v : candidates) poly = detail::clip_half_plane(poly, v, 0.5 * v.squaredNorm());
  // Drop near-duplicate vertices left by bisectors through existing corners.
  std::vector<Vec2> clean;
  for (const Vec2& p : poly) {
    if (clean.empty() || (clean.back() - p).norm() > 1e-12) clean.push_back(p);
  }
  if (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-12) clean.pop_back();
  d.polygon = std::move(clean);
  // Keep only the lattice vectors that actually carry an edge.
  const std::size_t n = d.polygon.size();
  for (const Vec2& v : candidates) {
    const double c = 0.5 * v.squaredNorm();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& p = d.polygon[k];
      const Vec2& q = d.polygon[(k + 1) % n];
      if (std::abs(p.dot(v) - c) < 1e-9 * c && std::abs(q.dot(v) - c) < 1e-9 * c) {
        d.facets.push_back(v);
        break;
      }
    }
  }
  return d;
}

/// Nearest element of G to g under rho_se2 and the residual gamma^-1 g, found
/// by nearest lattice point and nearest point rotation (the metric decouples).
struct WallpaperDecomposition {
  WallpaperElement gamma;
  PlanarMotion residual;
};

/// Ties between two rotation indices go to the smaller one.
[[nodiscard]] inline int nearest_point_rotation(const WallpaperGroup& g, double theta) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int l = 0; l < g.point_order(); ++l) {
    const double d = std::abs(wrap_angle(theta - g.rotation_angle(l)));
    if (d < best_d - 1e-12) {
      best_d = d;
      best = l;
    }
  }
  return best;
}

[[nodiscard]] inline WallpaperDecomposition decompose_wallpaper(const PlanarMotion& p,
                                                                const WallpaperGroup& g) {
  const auto [m, n] = g.nearest_lattice_point(p.t);
  const WallpaperElement gamma{nearest_point_rotation(g, p.theta), m, n};
  return {gamma, compose_se2(inverse_se2(g.motion(gamma)), p)};
}

/// p4 by decimal rounding: l = round(theta / (pi/2)) mod 4, m = round(x / a),
/// n = round(y / a). Halves round to even.
[[nodiscard]] inline WallpaperDecomposition decompose_p4(const PlanarMotion& p,
                                                         const WallpaperGroup& g) {
  if (g.point_order() != 4) detail::fail(ErrorKind::Validation, "decompose_p4 needs a p4 group");
  const double a = g.a1().norm();
  const auto l = static_cast<long>(std::nearbyint(p.theta / (0.5 * kPi)));
  const WallpaperElement gamma{static_cast<int>(((l % 4) + 4) % 4),
                               static_cast<long>(std::nearbyint(p.t.x() / a)),
                               static_cast<long>(std::nearbyint(p.t.y() / a))};
  return {gamma, compose_se2(inverse_se2(g.motion(gamma)), p)};
}

// ---------------------------------------------------------------------------
// P432
// ---------------------------------------------------------------------------

/// (R_p, a (m, n, o)) with R_p in the octahedral point group.
struct SpaceGroupElement {
  std::size_t p = 0;
  long m = 0;
  long n = 0;
  long o = 0;

  friend bool operator==(const SpaceGroupElement&, const SpaceGroupElement&) = default;
};

class SpaceGroupP432 {
 public:
  explicit SpaceGroupP432(double spacing = 1.0)
      : point_group_(generate_platonic(PlatonicKind::Octahedral)), spacing_(spacing) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
      detail::fail(ErrorKind::Validation, "P432: lattice spacing must be > 0");
    }
  }

  [[nodiscard]] const FiniteRotationGroup& point_group() const noexcept { return point_group_; }
  [[nodiscard]] double spacing() const noexcept { return spacing_; }

  [[nodiscard]] Vec3 lattice_point(long m, long n, long o) const {
    return spacing_ * Vec3(static_cast<double>(m), static_cast<double>(n), static_cast<double>(o));
  }

  [[nodiscard]] SpatialMotion motion(const SpaceGroupElement& e) const {
    return {point_group_[e.p], lattice_point(e.m, e.n, e.o)};
  }

  /// SE(3) product; point rotations are signed permutations, so the lattice
  /// is preserved exactly.
  [[nodiscard]] SpaceGroupElement compose(const SpaceGroupElement& a,
                                          const SpaceGroupElement& b) const {
    const Vec3 t = Vec3(a.m, a.n, a.o) + point_group_[a.p] * Vec3(b.m, b.n, b.o);
    return {point_group_.product(a.p, b.p), std::lround(t.x()), std::lround(t.y()),
            std::lround(t.z())};
  }

 private:
  FiniteRotationGroup point_group_;
  double spacing_ = 1.0;
};

/// Elements with |translation| <= radius; lattice points in (m, n, o)
/// lexicographic order and point index fastest.
[[nodiscard]] inline std::vector<SpaceGroupElement> enumerate_elements(const SpaceGroupP432& g,
                                                                       double radius) {
  if (!(radius >= 0.0)) detail::fail(ErrorKind::Validation, "radius must be >= 0");
  const long span = static_cast<long>(std::floor(radius / g.spacing() + 1e-12));
  std::vector<SpaceGroupElement> out;
  for (long m = -span; m <= span; ++m) {
    for (long n = -span; n <= span; ++n) {
      for (long o = -span; o <= span; ++o) {
        if (g.lattice_point(m, n, o).norm() > radius + 1e-12) continue;
        for (std::size_t p = 0; p < g.point_group().size(); ++p) out.push_back({p, m, n, o});
      }
    }
  }
  return out;
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_CRYSTAL_HPP
