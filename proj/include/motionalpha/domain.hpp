#ifndef MOTIONALPHA_DOMAIN_HPP
#define MOTIONALPHA_DOMAIN_HPP

// Voronoi fundamental domains on SO(3) for H\SO(3) and H\SO(3)/K, the
// tetrahedral wedge for H\SO(3)/H (H icosahedral), extents and cover sets.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "motionalpha/error.hpp"
#include "motionalpha/finite_group.hpp"
#include "motionalpha/lie.hpp"
#include "motionalpha/tolerances.hpp"

namespace motionalpha {

enum class Membership { Interior, Boundary, Outside };

[[nodiscard]] inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior:
      return "interior";
    case Membership::Boundary:
      return "boundary";
    case Membership::Outside:
      return "outside";
  }
  return "?";
}

namespace detail {

/// Classifies tr(R) against the best competing trace.
[[nodiscard]] inline Membership classify(double trace_identity, double best_other) {
  const double gap = trace_identity - best_other;
  if (gap > tol::kTrace) return Membership::Interior;
  if (gap >= -tol::kTrace) return Membership::Boundary;
  return Membership::Outside;
}

/// Index of the center with the largest trace against r (smallest index on
/// exact equality), plus the runner-up trace.
struct Nearest {
  std::size_t index = 0;
  double trace = -std::numeric_limits<double>::infinity();
  double runner_up = -std::numeric_limits<double>::infinity();
};

[[nodiscard]] inline Nearest nearest_center(const Mat3& r, std::span<const Mat3> centers) {
  Nearest best;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double t = trace_inner(r, centers[c]);
    if (t > best.trace) {
      best.runner_up = best.trace;
      best.trace = t;
      best.index = c;
    } else if (t > best.runner_up) {
      best.runner_up = t;
    }
  }
  return best;
}

[[nodiscard]] inline std::vector<Mat3> matrices_of(const FiniteRotationGroup& g) {
  std::vector<Mat3> out;
  out.reserve(g.size());
  for (const auto& e : g.elements()) out.push_back(e.matrix());
  return out;
}

}  // namespace detail

/// Voronoi cell of the identity among the elements of H.
class CosetDomain {
 public:
  explicit CosetDomain(FiniteRotationGroup h)
      : h_(std::move(h)), centers_(detail::matrices_of(h_)) {}

  [[nodiscard]] const FiniteRotationGroup& group() const noexcept { return h_; }
  [[nodiscard]] std::span<const Mat3> centers() const noexcept { return centers_; }

  [[nodiscard]] Membership membership(const Rotation& r) const {
    const Mat3& m = r.matrix();
    double best_other = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < centers_.size(); ++i) {
      best_other = std::max(best_other, trace_inner(m, centers_[i]));
    }
    return detail::classify(m.trace(), best_other);
  }

  /// argmin_i rho(R, h_i).
  [[nodiscard]] detail::Nearest nearest(const Mat3& r) const {
    return detail::nearest_center(r, centers_);
  }

 private:
  FiniteRotationGroup h_;
  std::vector<Mat3> centers_;
};

/// Voronoi cell of the identity among the products h_i k_j. Requires H and K
/// to intersect trivially. Center (i, j) is stored at i * |K| + j.
class DoubleCosetDomain {
 public:
  DoubleCosetDomain(FiniteRotationGroup h, FiniteRotationGroup k)
      : h_(std::move(h)), k_(std::move(k)) {
    if (!trivial_intersection(h_, k_)) {
      detail::fail(ErrorKind::Validation,
                   "double-coset domain needs H and K to intersect trivially (" + h_.name() +
                       ", " + k_.name() + ")");
    }
    centers_.reserve(h_.size() * k_.size());
    for (const auto& hi : h_.elements()) {
      for (const auto& kj : k_.elements()) centers_.push_back(hi.matrix() * kj.matrix());
    }
  }

  [[nodiscard]] const FiniteRotationGroup& h() const noexcept { return h_; }
  [[nodiscard]] const FiniteRotationGroup& k() const noexcept { return k_; }
  [[nodiscard]] std::size_t word_count() const noexcept { return centers_.size(); }
  [[nodiscard]] std::span<const Mat3> centers() const noexcept { return centers_; }
  [[nodiscard]] const Mat3& center(std::size_t i, std::size_t j) const {
    return centers_[i * k_.size() + j];
  }
  [[nodiscard]] std::pair<std::size_t, std::size_t> split(std::size_t flat) const {
    return {flat / k_.size(), flat % k_.size()};
  }

  [[nodiscard]] Membership membership(const Rotation& r) const {
    const Mat3& m = r.matrix();
    double best_other = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 1; c < centers_.size(); ++c) {
      best_other = std::max(best_other, trace_inner(m, centers_[c]));
    }
    return detail::classify(m.trace(), best_other);
  }

  [[nodiscard]] detail::Nearest nearest(const Mat3& r) const {
    return detail::nearest_center(r, centers_);
  }

 private:
  FiniteRotationGroup h_;
  FiniteRotationGroup k_;
  std::vector<Mat3> centers_;
};

[[nodiscard]] inline Membership coset_membership(const CosetDomain& d, const Rotation& r) {
  return d.membership(r);
}

[[nodiscard]] inline Membership double_coset_membership(const DoubleCosetDomain& d,
                                                        const Rotation& r) {
  return d.membership(r);
}

/// Uniform sample of the coset cell: a Haar rotation R folded back as h^T R
/// through its nearest center h. Left translation preserves Haar measure, so
/// this has the same law as rejection sampling at 60 times the acceptance.
/// Draws on a cell boundary are redrawn.
template <typename Rng>
[[nodiscard]] Rotation sample_coset_cell(const CosetDomain& d, Rng& rng) {
  for (;;) {
    const Rotation r = random_rotation(rng);
    const auto near = d.nearest(r.matrix());
    if (near.trace - near.runner_up <= tol::kTrace) continue;
    return d.group()[near.index].inverse() * r;
  }
}

struct ExtentEstimate {
  double extent = 0.0;
  std::size_t samples = 0;
};

/// Estimate of sup_{R in F} rho(R, I). Each Haar sample is pulled back into F
/// through its nearest center, which keeps it uniform on F; the estimate is
/// the largest pulled-back distance. With a fixed generator state, a larger
/// sample count only extends the stream, so the estimate never decreases.
template <typename Rng>
[[nodiscard]] ExtentEstimate extent(const DoubleCosetDomain& d, std::size_t samples,
                                    Rng& rng) {
  if (samples < 1) detail::fail(ErrorKind::Validation, "extent: samples must be >= 1");
  ExtentEstimate out{0.0, samples};
  double worst_trace = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const Rotation r = random_rotation(rng);
    worst_trace = std::min(worst_trace, d.nearest(r.matrix()).trace);
  }
  out.extent = rho_from_trace(worst_trace);
  return out;
}

/// Shifted domains h_i F k_j, ordered by rho(h_i k_j, I), whose union covers
/// the coset cell of H. `pairs` holds only the covering prefix.
struct CoverSet {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  AxisAngle conjugation = AxisAngle::Zero();
  std::size_t probe_samples = 0;
  /// Largest distance from a probe to its nearest center.
  double probe_extent = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
};

/// All |H||K| pairs sorted ascending by rho(h_i k_j, I); exact ties keep
/// lexicographic (i, j) order.
[[nodiscard]] inline std::vector<std::pair<std::size_t, std::size_t>> pairs_by_distance(
    const DoubleCosetDomain& d) {
  std::vector<std::size_t> flat(d.word_count());
  std::iota(flat.begin(), flat.end(), std::size_t{0});
  const auto centers = d.centers();
  std::stable_sort(flat.begin(), flat.end(), [&](std::size_t a, std::size_t b) {
    return centers[a].trace() > centers[b].trace();
  });
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(flat.size());
  for (std::size_t f : flat) out.push_back(d.split(f));
  return out;
}

/// Greedy prefix of pairs_by_distance() long enough that every probe sample
/// of the coset cell of H lies in one of the shifted domains. A sample lies in
/// h_i F k_j exactly when h_i k_j is its nearest center, so the prefix length
/// is one past the largest rank any probe decodes to.
template <typename Rng>
[[nodiscard]] CoverSet build_cover(const DoubleCosetDomain& d, std::size_t probe_samples,
                                   Rng& rng, const AxisAngle& conjugation = AxisAngle::Zero()) {
  const auto order = pairs_by_distance(d);
  std::vector<std::size_t> rank(d.word_count());
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r].first * d.k().size() + order[r].second] = r;
  }
  const CosetDomain cell(d.h());
  std::size_t needed = 1;
  double worst_trace = 3.0;
  for (std::size_t s = 0; s < probe_samples; ++s) {
    const Rotation r = sample_coset_cell(cell, rng);
    const auto near = d.nearest(r.matrix());
    needed = std::max(needed, rank[near.index] + 1);
    worst_trace = std::min(worst_trace, near.trace);
  }
  CoverSet cover;
  cover.pairs.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(needed));
  cover.conjugation = conjugation;
  cover.probe_samples = probe_samples;
  cover.probe_extent = rho_from_trace(worst_trace);
  return cover;
}

/// Number of probe samples of the coset cell not contained in any of the
/// cover's shifted domains.
template <typename Rng>
[[nodiscard]] std::size_t count_uncovered(const DoubleCosetDomain& d, const CoverSet& cover,
                                          std::size_t probe_samples, Rng& rng) {
  std::vector<char> in_cover(d.word_count(), 0);
  for (auto [i, j] : cover.pairs) in_cover[i * d.k().size() + j] = 1;
  const CosetDomain cell(d.h());
  std::size_t uncovered = 0;
  for (std::size_t s = 0; s < probe_samples; ++s) {
    const Rotation r = sample_coset_cell(cell, rng);
    if (!in_cover[d.nearest(r.matrix()).index]) ++uncovered;
  }
  return uncovered;
}

// ---------------------------------------------------------------------------
// Tetrahedral wedge of the dodecahedral cell
// ---------------------------------------------------------------------------

/// One of the 60 wedges of the dodecahedral coset cell of an icosahedral
/// group: the cone over the triangle (pentagon center, two adjacent vertices)
/// cut by three planes through the origin of so(3), intersected with the
/// cell. Conjugation h W h^T rotates the cone by h in exponential coordinates.
class WedgeDomain {
 public:
  explicit WedgeDomain(FiniteRotationGroup h) : cell_(std::move(h)) {
    const auto& group = cell_.group();
    if (group.size() != 60) {
      detail::fail(ErrorKind::Validation, "wedge domain needs the icosahedral group");
    }
    // Pentagon center: axis of the first order-5 element.
    Vec3 face = Vec3::Zero();
    std::vector<Vec3> three_fold;
    for (const auto& e : group.elements()) {
      auto [angle, axis] = canonical_angle_axis(e.matrix());
      if (face.isZero() && std::abs(angle - 2 * kPi / 5) < 1e-9) face = axis;
      // R(2pi/3, n) and R(4pi/3, n) = R(2pi/3, -n) give both directions.
      if (std::abs(angle - 2 * kPi / 3) < 1e-9) three_fold.push_back(axis);
    }
    if (face.isZero() || three_fold.size() != 20) {
      detail::fail(ErrorKind::Validation, "wedge domain: group is not icosahedral");
    }
    // The five dodecahedron vertices around this face are the 3-fold
    // directions closest to the face center; sort them by azimuth.
    std::sort(three_fold.begin(), three_fold.end(),
              [&](const Vec3& a, const Vec3& b) { return a.dot(face) > b.dot(face); });
    three_fold.resize(5);
    const Vec3 ref = (three_fold[0] - three_fold[0].dot(face) * face).normalized();
    const Vec3 ref2 = face.cross(ref);
    auto azimuth = [&](const Vec3& v) {
      const double a = std::atan2(v.dot(ref2), v.dot(ref));
      return a < -1e-12 ? a + 2 * kPi : a;
    };
    std::sort(three_fold.begin(), three_fold.end(),
              [&](const Vec3& a, const Vec3& b) { return azimuth(a) < azimuth(b); });
    face_ = face;
    vertex_a_ = three_fold[0];
    vertex_b_ = three_fold[1];

    auto inward = [](const Vec3& p, const Vec3& q, const Vec3& inside) {
      Vec3 n = p.cross(q).normalized();
      return n.dot(inside) < 0.0 ? Vec3(-n) : n;
    };
    base_planes_ = {inward(face_, vertex_a_, vertex_b_), inward(face_, vertex_b_, vertex_a_),
                    inward(vertex_a_, vertex_b_, face_)};
    rotated_planes_.resize(group.size());
    for (std::size_t j = 0; j < group.size(); ++j) {
      for (std::size_t p = 0; p < 3; ++p) rotated_planes_[j][p] = group[j] * base_planes_[p];
    }
    // Cone j is the sector of face h_j f nearest to the edge midpoint
    // h_j (a + b): 12 faces with 5 sectors each.
    const Vec3 mid = (vertex_a_ + vertex_b_).normalized();
    for (std::size_t j = 0; j < group.size(); ++j) {
      const Vec3 f = group[j] * face_;
      std::size_t k = 0;
      while (k < faces_.size() && faces_[k].dot(f) < 1.0 - 1e-9) ++k;
      if (k == faces_.size()) {
        faces_.push_back(f);
        sectors_.emplace_back();
      }
      sectors_[k].push_back({group[j] * mid, j});
    }
    if (faces_.size() != 12) detail::fail(ErrorKind::Validation, "wedge domain: expected 12 faces");
  }

  [[nodiscard]] const FiniteRotationGroup& group() const noexcept { return cell_.group(); }
  [[nodiscard]] const CosetDomain& cell() const noexcept { return cell_; }
  [[nodiscard]] const std::array<Vec3, 3>& base_planes() const noexcept { return base_planes_; }
  [[nodiscard]] const Vec3& face_center() const noexcept { return face_; }
  [[nodiscard]] std::array<Vec3, 3> base_rays() const { return {face_, vertex_a_, vertex_b_}; }

  /// Plane normals of the conjugated wedge h_j W h_j^T.
  [[nodiscard]] const std::array<Vec3, 3>& planes(std::size_t j) const {
    return rotated_planes_[j];
  }

  /// Index j of the rotated cone containing the direction of x. The face
  /// cones of the dodecahedron are the spherical Voronoi cells of the 12 face
  /// axes, and each splits into 5 sectors that are the Voronoi cells of its
  /// edge midpoints, so the cone is found with 12 + 5 dot products. On a shared
  /// boundary the first face and first sector in table order win. Counts the
  /// dot products performed.
  [[nodiscard]] std::size_t locate_cone(const Vec3& x, std::size_t* sign_tests = nullptr) const {
    if (!x.allFinite()) detail::fail(ErrorKind::OutOfDomain, "wedge: direction is not finite");
    std::size_t face = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < faces_.size(); ++k) {
      const double d = faces_[k].dot(x);
      if (d > best) {
        best = d;
        face = k;
      }
    }
    std::size_t j = 0;
    best = -std::numeric_limits<double>::infinity();
    for (const auto& [m, index] : sectors_[face]) {
      const double d = m.dot(x);
      if (d > best) {
        best = d;
        j = index;
      }
    }
    if (sign_tests) *sign_tests += faces_.size() + sectors_[face].size();
    return j;
  }

  /// Number of rotated cones containing x strictly (all tests > band) and
  /// loosely (all tests >= -band).
  [[nodiscard]] std::pair<std::size_t, std::size_t> cone_multiplicity(
      const Vec3& x, double band = tol::kPlane) const {
    std::size_t strict = 0;
    std::size_t loose = 0;
    const double scale = x.norm();
    for (const auto& n : rotated_planes_) {
      const double d0 = n[0].dot(x) / scale;
      const double d1 = n[1].dot(x) / scale;
      const double d2 = n[2].dot(x) / scale;
      if (d0 > band && d1 > band && d2 > band) ++strict;
      if (d0 >= -band && d1 >= -band && d2 >= -band) ++loose;
    }
    return {strict, loose};
  }

  /// True iff R lies in the base wedge: inside the coset cell and the base cone.
  [[nodiscard]] bool contains(const Rotation& r, double band = tol::kPlane) const {
    if (cell_.membership(r) == Membership::Outside) return false;
    const Vec3 y = skew_vector(r.matrix());
    return base_planes_[0].dot(y) >= -band && base_planes_[1].dot(y) >= -band &&
           base_planes_[2].dot(y) >= -band;
  }

 private:
  CosetDomain cell_;
  Vec3 face_;
  Vec3 vertex_a_;
  Vec3 vertex_b_;
  std::array<Vec3, 3> base_planes_;
  std::vector<std::array<Vec3, 3>> rotated_planes_;
  std::vector<Vec3> faces_;
  std::vector<std::vector<std::pair<Vec3, std::size_t>>> sectors_;
};

[[nodiscard]] inline WedgeDomain build_wedge(const FiniteRotationGroup& h) {
  return WedgeDomain(h);
}

/// Index j of the conjugated wedge h_j W h_j^T containing exp(x). Throws
/// OutOfDomain when exp(x) is outside the coset cell.
[[nodiscard]] inline std::size_t wedge_locate(const WedgeDomain& w, const AxisAngle& x) {
  if (w.cell().membership(exp_so3(x)) == Membership::Outside) {
    detail::fail(ErrorKind::OutOfDomain, "wedge_locate: point outside the coset cell");
  }
  return w.locate_cone(x);
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_DOMAIN_HPP
