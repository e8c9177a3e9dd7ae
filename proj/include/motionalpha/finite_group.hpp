#ifndef MOTIONALPHA_FINITE_GROUP_HPP
#define MOTIONALPHA_FINITE_GROUP_HPP

// Finite subgroups of SO(3): the rotation groups of the Platonic solids and
// cyclic groups, with stable element indices and a Cayley table.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "motionalpha/error.hpp"
#include "motionalpha/lie.hpp"
#include "motionalpha/tolerances.hpp"

namespace motionalpha {

enum class PlatonicKind { Tetrahedral, Octahedral, Icosahedral };

[[nodiscard]] inline const char* to_string(PlatonicKind kind) {
  switch (kind) {
    case PlatonicKind::Tetrahedral:
      return "tetrahedral";
    case PlatonicKind::Octahedral:
      return "octahedral";
    case PlatonicKind::Icosahedral:
      return "icosahedral";
  }
  return "?";
}

[[nodiscard]] inline std::size_t platonic_order(PlatonicKind kind) {
  switch (kind) {
    case PlatonicKind::Tetrahedral:
      return 12;
    case PlatonicKind::Octahedral:
      return 24;
    case PlatonicKind::Icosahedral:
      return 60;
  }
  return 0;
}

[[nodiscard]] inline double frobenius_distance(const Mat3& a, const Mat3& b) {
  return (a - b).norm();
}

/// Rotation angle in [0, pi] and a unit axis. For half-turns the axis sign is
/// fixed so that its first non-negligible component is positive.
[[nodiscard]] inline std::pair<double, Vec3> canonical_angle_axis(const Mat3& r) {
  const double angle = rotation_angle(r);
  if (angle < 1e-12) return {0.0, Vec3::UnitZ()};
  Vec3 axis;
  if (angle < kPi - 1e-6) {
    axis = skew_vector(r).normalized();
  } else {
    const double c = 0.5 * (r.trace() - 1.0);
    const Mat3 b = 0.5 * (r + r.transpose()) - c * Mat3::Identity();
    int k = 0;
    b.diagonal().maxCoeff(&k);
    axis = b.col(k).normalized();
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axis[i]) > 1e-9) {
        if (axis[i] < 0.0) axis = -axis;
        break;
      }
    }
  }
  return {angle, axis};
}

class FiniteRotationGroup {
 public:
  FiniteRotationGroup() = default;

  /// Validates the group axioms: element 0 is the identity, elements are
  /// pairwise distinct, and the set is closed under products and inverses.
  FiniteRotationGroup(std::string name, std::vector<Rotation> elements)
      : name_(std::move(name)), elements_(std::move(elements)) {
    if (elements_.empty()) detail::fail(ErrorKind::Validation, "empty group");
    if (frobenius_distance(elements_[0].matrix(), Mat3::Identity()) > tol::kGroupDedup) {
      detail::fail(ErrorKind::Validation, name_ + ": element 0 is not the identity");
    }
    const std::size_t n = elements_.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (frobenius_distance(elements_[a].matrix(), elements_[b].matrix()) <=
            tol::kDistinct) {
          detail::fail(ErrorKind::Validation, name_ + ": duplicate elements");
        }
      }
    }
    table_.resize(n * n);
    inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const auto idx = find(elements_[a].matrix() * elements_[b].matrix());
        if (!idx) detail::fail(ErrorKind::Validation, name_ + ": not closed under products");
        table_[a * n + b] = *idx;
      }
      const auto inv = find(elements_[a].matrix().transpose());
      if (!inv) detail::fail(ErrorKind::Validation, name_ + ": not closed under inverses");
      inverse_[a] = *inv;
    }
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] std::size_t identity_index() const noexcept { return 0; }
  [[nodiscard]] std::span<const Rotation> elements() const noexcept { return elements_; }
  [[nodiscard]] const Rotation& operator[](std::size_t i) const { return elements_[i]; }

  /// Index of the element matching m within the Frobenius tolerance.
  [[nodiscard]] std::optional<std::size_t> find(const Mat3& m,
                                                double tolerance = tol::kGroupDedup) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (frobenius_distance(elements_[i].matrix(), m) <= tolerance) return i;
    }
    return std::nullopt;
  }

  /// Index of elements[a] * elements[b].
  [[nodiscard]] std::size_t product(std::size_t a, std::size_t b) const {
    return table_[a * elements_.size() + b];
  }
  [[nodiscard]] std::size_t inverse(std::size_t a) const { return inverse_[a]; }

 private:
  std::string name_;
  std::vector<Rotation> elements_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
};

/// Orbit closure of the generators under right multiplication, deduplicated
/// at tol::kGroupDedup. Throws NotFinite once more than max_order elements
/// appear. The identity comes first; other elements follow discovery order.
[[nodiscard]] inline std::vector<Rotation> closure_elements(std::span<const Rotation> gens,
                                                            std::size_t max_order) {
  std::vector<Rotation> elements{Rotation::identity()};
  auto known = [&](const Mat3& m) {
    return std::any_of(elements.begin(), elements.end(), [&](const Rotation& e) {
      return frobenius_distance(e.matrix(), m) <= tol::kGroupDedup;
    });
  };
  for (std::size_t next = 0; next < elements.size(); ++next) {
    for (const Rotation& g : gens) {
      const Rotation p = elements[next] * g;
      if (known(p.matrix())) continue;
      elements.push_back(p);
      if (elements.size() > max_order) {
        detail::fail(ErrorKind::NotFinite, "generators produce more than " +
                                               std::to_string(max_order) + " elements");
      }
    }
  }
  return elements;
}

[[nodiscard]] inline FiniteRotationGroup closure_from_generators(
    std::span<const Rotation> gens, std::size_t max_order, std::string name = "closure") {
  return FiniteRotationGroup(std::move(name), closure_elements(gens, max_order));
}

namespace detail {

/// Orders elements by rotation angle, then axis lexicographically, so indices
/// do not depend on how the closure happened to discover them.
inline void sort_canonical(std::vector<Rotation>& elements) {
  struct Keyed {
    double angle;
    Vec3 axis;
    Rotation r;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(elements.size());
  for (const auto& r : elements) {
    auto [angle, axis] = canonical_angle_axis(r.matrix());
    keyed.push_back({angle, axis, r});
  }
  constexpr double eps = 1e-9;
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (std::abs(a.angle - b.angle) > eps) return a.angle < b.angle;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(a.axis[i] - b.axis[i]) > eps) return a.axis[i] < b.axis[i];
    }
    return false;
  });
  for (std::size_t i = 0; i < elements.size(); ++i) elements[i] = keyed[i].r;
}

inline Rotation axis_rotation(const Vec3& axis, double angle) {
  return exp_so3(axis.normalized() * angle);
}

}  // namespace detail

/// The rotation group of a Platonic solid in the library's standard frame:
/// 2-fold axes along x, y, z and 3-fold axes along (+-1, +-1, +-1), so the
/// tetrahedral group is a subgroup of both others. The icosahedral group has
/// its 5-fold axes along the vertices (0, +-1, +-phi) and cyclic permutations.
[[nodiscard]] inline FiniteRotationGroup generate_platonic(PlatonicKind kind) {
  using detail::axis_rotation;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Rotation> gens;
  switch (kind) {
    case PlatonicKind::Tetrahedral:
      gens = {axis_rotation(Vec3::UnitZ(), kPi), axis_rotation(Vec3(1, 1, 1), 2 * kPi / 3)};
      break;
    case PlatonicKind::Octahedral:
      gens = {axis_rotation(Vec3::UnitZ(), kPi / 2),
              axis_rotation(Vec3(1, 1, 1), 2 * kPi / 3)};
      break;
    case PlatonicKind::Icosahedral:
      gens = {axis_rotation(Vec3(phi, 0, 1), 2 * kPi / 5),
              axis_rotation(Vec3::UnitZ(), kPi),
              axis_rotation(Vec3(1, 1, 1), 2 * kPi / 3)};
      break;
  }
  std::vector<Rotation> elements = closure_elements(gens, platonic_order(kind));
  for (auto& e : elements) e = Rotation::unchecked(orthonormalize(e.matrix()));
  detail::sort_canonical(elements);
  return FiniteRotationGroup(to_string(kind), std::move(elements));
}

/// C_q about an axis: elements exp(2 pi j / q * axis), j = 0..q-1, in j order.
[[nodiscard]] inline FiniteRotationGroup generate_cyclic(int q,
                                                         const Vec3& axis = Vec3::UnitZ()) {
  if (q < 1) detail::fail(ErrorKind::Validation, "cyclic group order must be >= 1");
  if (axis.norm() < 1e-12) detail::fail(ErrorKind::Validation, "cyclic group axis is zero");
  std::vector<Rotation> elements;
  elements.reserve(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) {
    const Rotation r = detail::axis_rotation(axis, 2.0 * kPi * j / q);
    elements.push_back(Rotation::unchecked(orthonormalize(r.matrix())));
  }
  return FiniteRotationGroup("C" + std::to_string(q), std::move(elements));
}

/// Planar C_q < SO(2): angles 2 pi j / q.
struct PlanarCyclicGroup {
  int order = 1;

  [[nodiscard]] double angle(int j) const { return 2.0 * kPi * j / order; }
  [[nodiscard]] Mat2 matrix(int j) const { return rot2(angle(j)); }
};

[[nodiscard]] inline PlanarCyclicGroup generate_cyclic_planar(int q) {
  if (q < 1) detail::fail(ErrorKind::Validation, "cyclic group order must be >= 1");
  return PlanarCyclicGroup{q};
}

/// K = g H g^T, elements in the same order as H.
[[nodiscard]] inline FiniteRotationGroup conjugate_group(const FiniteRotationGroup& h,
                                                         const Rotation& g) {
  std::vector<Rotation> elements;
  elements.reserve(h.size());
  for (const auto& e : h.elements()) elements.push_back(g * e * g.inverse());
  return FiniteRotationGroup(h.name() + "^g", std::move(elements));
}

/// All (i, j) with h_i == k_j within tol::kDistinct, including (0, 0).
[[nodiscard]] inline std::vector<std::pair<std::size_t, std::size_t>> common_elements(
    const FiniteRotationGroup& h, const FiniteRotationGroup& k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (frobenius_distance(h[i].matrix(), k[j].matrix()) < tol::kDistinct) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

/// True iff H and K share only the identity.
[[nodiscard]] inline bool trivial_intersection(const FiniteRotationGroup& h,
                                               const FiniteRotationGroup& k) {
  const auto common = common_elements(h, k);
  return common.size() == 1 && common.front() == std::pair<std::size_t, std::size_t>{0, 0};
}

/// True iff every element of `sub` is an element of `group`.
[[nodiscard]] inline bool is_subgroup(const FiniteRotationGroup& sub,
                                      const FiniteRotationGroup& group) {
  return std::all_of(sub.elements().begin(), sub.elements().end(), [&](const Rotation& r) {
    return group.find(r.matrix(), tol::kDistinct).has_value();
  });
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_FINITE_GROUP_HPP
