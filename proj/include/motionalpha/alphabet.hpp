#ifndef MOTIONALPHA_ALPHABET_HPP
#define MOTIONALPHA_ALPHABET_HPP

// Motion alphabets Gamma x Delta for SE(2) (wallpaper group x C_q) and for
// SE(3) viewed as PCG(3) (P432 x conjugated icosahedral group), with fast and
// brute-force decoders.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "motionalpha/crystal.hpp"
#include "motionalpha/decoder.hpp"
#include "motionalpha/domain.hpp"
#include "motionalpha/error.hpp"
#include "motionalpha/finite_group.hpp"
#include "motionalpha/lie.hpp"

namespace motionalpha {

// ---------------------------------------------------------------------------
// SE(2)
// ---------------------------------------------------------------------------

struct Se2Alphabet {
  WallpaperGroup gamma;
  PlanarCyclicGroup delta;
  double weight = 1.0;
  /// Translations farther than this from the origin are rejected by encode.
  double radius = std::numeric_limits<double>::infinity();

  [[nodiscard]] std::string id() const {
    return gamma.name() + "xC" + std::to_string(delta.order);
  }
};

/// Gamma x C_q. The two groups intersect trivially iff gcd(r, q) = 1, which
/// for p4 means q odd.
[[nodiscard]] inline Se2Alphabet make_se2_alphabet(std::string_view wallpaper_name, int q,
                                                   double scale = 1.0, double weight = 1.0) {
  Se2Alphabet a{wallpaper(wallpaper_name, scale), generate_cyclic_planar(q), weight};
  if (std::gcd(a.gamma.point_order(), q) != 1) {
    detail::fail(ErrorKind::Validation, a.id() + ": point group and C" + std::to_string(q) +
                                            " intersect non-trivially (need gcd = 1)");
  }
  if (!(weight > 0.0)) detail::fail(ErrorKind::Validation, "metric weight must be > 0");
  return a;
}

struct Se2Word {
  WallpaperElement gamma;
  int delta = 0;
  /// g = gamma * residual * delta.
  PlanarMotion residual;

  [[nodiscard]] bool same_letters(const Se2Word& o) const {
    return gamma == o.gamma && delta == o.delta;
  }
};

enum class Se2Order { TranslationFirst, RotationFirst };

namespace detail {

/// Nearest of the angles 2 pi l / r + 2 pi j / q to theta; smallest (l, j) on ties.
inline std::pair<int, int> nearest_combined_angle(const Se2Alphabet& a, double theta) {
  std::pair<int, int> best{0, 0};
  double best_d = std::numeric_limits<double>::infinity();
  for (int l = 0; l < a.gamma.point_order(); ++l) {
    for (int j = 0; j < a.delta.order; ++j) {
      const double d =
          std::abs(wrap_angle(theta - a.gamma.rotation_angle(l) - a.delta.angle(j)));
      if (d < best_d - 1e-12) {
        best_d = d;
        best = {l, j};
      }
    }
  }
  return best;
}

inline PlanarMotion se2_residual(const Se2Alphabet& a, const WallpaperElement& gamma, int j,
                                 const PlanarMotion& g) {
  const PlanarMotion gi = inverse_se2(a.gamma.motion(gamma));
  const PlanarMotion di{-a.delta.angle(j), Vec2::Zero()};
  return compose_se2(compose_se2(gi, g), di);
}

}  // namespace detail

/// Two steps: gamma by rounding into the wallpaper Voronoi cell (decimal
/// rounding for p4), then the rotation-only gamma' and delta whose combined
/// angle is nearest to the residual angle. RotationFirst runs the same search
/// on the angle of g directly and rounds the translation afterwards; the
/// metric decouples, so both orders give the same word.
[[nodiscard]] inline Se2Word decode_se2(const PlanarMotion& g, const Se2Alphabet& a,
                                        Se2Order order = Se2Order::TranslationFirst) {
  if (std::gcd(a.gamma.point_order(), a.delta.order) != 1) {
    detail::fail(ErrorKind::Validation, a.id() + ": q must be coprime to the point order");
  }
  if (!std::isfinite(g.theta) || !g.t.allFinite()) {
    detail::fail(ErrorKind::Validation, "decode_se2: pose is not finite");
  }
  Se2Word w;
  if (order == Se2Order::TranslationFirst) {
    const auto step1 = a.gamma.point_order() == 4 ? decompose_p4(g, a.gamma)
                                                  : decompose_wallpaper(g, a.gamma);
    const auto [lp, j] = detail::nearest_combined_angle(a, step1.residual.theta);
    w.gamma = a.gamma.compose(step1.gamma, WallpaperElement{lp, 0, 0});
    w.delta = j;
  } else {
    const auto [l, j] = detail::nearest_combined_angle(a, g.theta);
    const auto [m, n] = a.gamma.point_order() == 4
                            ? std::pair<long, long>{static_cast<long>(std::nearbyint(
                                                        g.t.x() / a.gamma.a1().norm())),
                                                    static_cast<long>(std::nearbyint(
                                                        g.t.y() / a.gamma.a1().norm()))}
                            : a.gamma.nearest_lattice_point(g.t);
    w.gamma = WallpaperElement{l, m, n};
    w.delta = j;
  }
  w.residual = detail::se2_residual(a, w.gamma, w.delta, g);
  return w;
}

/// Oracle: argmin of rho_se2(gamma delta, g) over every enumerated gamma with
/// |t_gamma| <= |t| + 2 and every delta. First minimum in enumeration order wins.
[[nodiscard]] inline Se2Word decode_se2_bruteforce(const PlanarMotion& g, const Se2Alphabet& a) {
  const auto elements = enumerate_elements(a.gamma, g.t.norm() + 2.0);
  Se2Word w;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : elements) {
    const PlanarMotion ge = a.gamma.motion(e);
    for (int j = 0; j < a.delta.order; ++j) {
      const PlanarMotion center{ge.theta + a.delta.angle(j), ge.t};
      const double d = rho_se2(center, g, a.weight);
      if (d < best) {
        best = d;
        w.gamma = e;
        w.delta = j;
      }
    }
  }
  w.residual = detail::se2_residual(a, w.gamma, w.delta, g);
  return w;
}

/// Cell center gamma * delta.
[[nodiscard]] inline PlanarMotion se2_center(const Se2Alphabet& a, const WallpaperElement& gamma,
                                             int j) {
  const PlanarMotion ge = a.gamma.motion(gamma);
  return {ge.theta + a.delta.angle(j), ge.t};
}

// ---------------------------------------------------------------------------
// SE(3) as PCG(3)
// ---------------------------------------------------------------------------

/// Rotation used to conjugate the icosahedral group into Delta; it makes the
/// octahedral point group and Delta intersect trivially.
[[nodiscard]] inline AxisAngle default_conjugation() {
  return {0.435897435897436, -0.076923076923077, -0.128205128205128};
}

struct Se3Alphabet {
  SpaceGroupP432 gamma;
  std::shared_ptr<const DoubleCosetDomain> domain;
  std::shared_ptr<const CoverDecoder> decoder;
  double radius = std::numeric_limits<double>::infinity();

  [[nodiscard]] const FiniteRotationGroup& delta() const { return domain->k(); }
  [[nodiscard]] std::size_t rotational_words() const { return domain->word_count(); }
  [[nodiscard]] std::string id() const { return "P432xI"; }
};

/// Builds the rotational double-coset domain (octahedral \ SO(3) / Delta)
/// and its cover with `probe_samples` probes drawn from `seed`.
[[nodiscard]] inline Se3Alphabet make_se3_alphabet(double spacing = 1.0,
                                                   const AxisAngle& conjugation =
                                                       default_conjugation(),
                                                   std::size_t probe_samples = 100000,
                                                   std::uint64_t seed = 1) {
  SpaceGroupP432 gamma(spacing);
  const FiniteRotationGroup delta =
      conjugate_group(generate_platonic(PlatonicKind::Icosahedral), exp_so3(conjugation));
  auto domain = std::make_shared<const DoubleCosetDomain>(gamma.point_group(), delta);
  std::mt19937_64 rng(seed);
  CoverSet cover = build_cover(*domain, probe_samples, rng, conjugation);
  auto decoder = std::make_shared<const CoverDecoder>(domain, std::move(cover));
  return {std::move(gamma), std::move(domain), std::move(decoder)};
}

struct Se3Word {
  SpaceGroupElement gamma;
  std::size_t delta = 0;
  /// g = gamma * residual * delta under the PCG(3) product.
  SpatialMotion residual;
  DecodeStats stats;

  [[nodiscard]] bool same_letters(const Se3Word& o) const {
    return gamma == o.gamma && delta == o.delta;
  }
};

namespace detail {

inline Se3Word se3_word(const Se3Alphabet& a, const RotDecode& rot, const SpatialMotion& g) {
  const double s = a.gamma.spacing();
  Se3Word w;
  w.gamma = {rot.word.i, static_cast<long>(std::nearbyint(g.translation.x() / s)),
             static_cast<long>(std::nearbyint(g.translation.y() / s)),
             static_cast<long>(std::nearbyint(g.translation.z() / s))};
  w.delta = rot.word.j;
  w.residual = {rot.word.residual,
                g.translation - a.gamma.lattice_point(w.gamma.m, w.gamma.n, w.gamma.o)};
  w.stats = rot.stats;
  return w;
}

inline void check_finite(const SpatialMotion& g) {
  if (!g.rotation.matrix().allFinite() || !g.translation.allFinite()) {
    fail(ErrorKind::Validation, "decode_se3: pose is not finite");
  }
}

}  // namespace detail

/// Translation letter by rounding t / a to the cubic lattice; rotation letters
/// by the cover decoder with H = octahedral point group, K = Delta.
[[nodiscard]] inline Se3Word decode_se3(const SpatialMotion& g, const Se3Alphabet& a) {
  detail::check_finite(g);
  return detail::se3_word(a, a.decoder->decode(g.rotation), g);
}

/// Oracle: brute force over all rotational words, same translation rounding.
[[nodiscard]] inline Se3Word decode_se3_bruteforce(const SpatialMotion& g, const Se3Alphabet& a) {
  detail::check_finite(g);
  return detail::se3_word(a, decode_bruteforce(*a.domain, g.rotation), g);
}

/// Cell center gamma * delta under the PCG(3) product.
[[nodiscard]] inline SpatialMotion se3_center(const Se3Alphabet& a, const SpaceGroupElement& gamma,
                                              std::size_t j) {
  return compose_pcg(a.gamma.motion(gamma), SpatialMotion{a.delta()[j], Vec3::Zero()});
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_ALPHABET_HPP
