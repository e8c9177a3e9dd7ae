#ifndef MOTIONALPHA_DECODER_HPP
#define MOTIONALPHA_DECODER_HPP

// Signals to symbols: given a rotation R, find (i, j) and Q in the
// fundamental domain with R = h_i Q k_j. One brute-force decoder and two
// coarse-to-fine decoders (cover set, tetrahedral wedge).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "motionalpha/domain.hpp"
#include "motionalpha/error.hpp"
#include "motionalpha/lie.hpp"

namespace motionalpha {

struct RotWord {
  std::size_t i = 0;
  std::size_t j = 0;
  Rotation residual;

  [[nodiscard]] bool same_letters(const RotWord& o) const { return i == o.i && j == o.j; }
};

/// Exact operation counts for one decode. distance_evaluations counts trace
/// comparisons against centers; sign_tests counts the dot products that locate the wedge.
struct DecodeStats {
  std::size_t distance_evaluations = 0;
  std::size_t sign_tests = 0;
  double wall_time = 0.0;

  DecodeStats& operator+=(const DecodeStats& o) {
    distance_evaluations += o.distance_evaluations;
    sign_tests += o.sign_tests;
    wall_time += o.wall_time;
    return *this;
  }
};

/// Two words whose centers are equally close to the input within tol::kTrace.
struct TieWarning {
  std::pair<std::size_t, std::size_t> first;
  std::pair<std::size_t, std::size_t> second;
};

struct RotDecode {
  RotWord word;
  DecodeStats stats;
  std::optional<TieWarning> tie;
  /// Brute force only: best minus second-best trace. NaN otherwise.
  double margin = std::numeric_limits<double>::quiet_NaN();
};

/// Gold standard: argmin over all |H||K| centers of rho(R, h_i k_j).
[[nodiscard]] inline RotDecode decode_bruteforce(const DoubleCosetDomain& d, const Rotation& r) {
  const auto centers = d.centers();
  const Mat3& m = r.matrix();
  std::size_t best = 0;
  std::size_t second = 0;
  double best_t = -std::numeric_limits<double>::infinity();
  double second_t = best_t;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double t = trace_inner(m, centers[c]);
    if (t > best_t) {
      second_t = best_t;
      second = best;
      best_t = t;
      best = c;
    } else if (t > second_t) {
      second_t = t;
      second = c;
    }
  }
  RotDecode out;
  const auto [i, j] = d.split(best);
  out.word.i = i;
  out.word.j = j;
  out.word.residual = d.h()[i].inverse() * r * d.k()[j].inverse();
  out.stats.distance_evaluations = centers.size();
  out.margin = best_t - second_t;
  if (best_t - second_t < tol::kTrace) out.tie = TieWarning{{i, j}, d.split(second)};
  return out;
}

enum class GapPolicy { Throw, FallBack };

/// Precomputed tables for the two-stage cover decoder.
class CoverDecoder {
 public:
  static constexpr double kGapSlack = 0.05;

  /// extent_bound defaults to the probe extent recorded in the cover plus
  /// kGapSlack, which absorbs the sampling deficit of that estimate.
  CoverDecoder(std::shared_ptr<const DoubleCosetDomain> domain, CoverSet cover,
               std::optional<double> extent_bound = std::nullopt)
      : domain_(std::move(domain)), cover_(std::move(cover)) {
    const DoubleCosetDomain& d = *domain_;
    if (cover_.pairs.empty()) detail::fail(ErrorKind::Validation, "empty cover set");
    centers_.reserve(cover_.pairs.size());
    for (auto [i, j] : cover_.pairs) {
      if (i >= d.h().size() || j >= d.k().size()) {
        detail::fail(ErrorKind::Validation, "cover pair out of range");
      }
      centers_.push_back(d.center(i, j));
    }
    h_ = detail::matrices_of(d.h());
    const double bound = extent_bound.value_or(cover_.probe_extent + kGapSlack);
    min_trace_ = 1.0 + 2.0 * std::cos(std::min(bound, kPi));
  }

  [[nodiscard]] const DoubleCosetDomain& domain() const noexcept { return *domain_; }
  [[nodiscard]] const CoverSet& cover() const noexcept { return cover_; }

  /// Stage 1: nearest h_i (|H| evaluations); stage 2: nearest shifted domain
  /// among the cover pairs for the pulled-back h_i^T R. A result farther than
  /// the extent bound cannot be the true Voronoi word and is a cover gap.
  [[nodiscard]] RotDecode decode(const Rotation& r, GapPolicy policy = GapPolicy::Throw) const {
    const Mat3& m = r.matrix();
    const auto coarse = detail::nearest_center(m, h_);
    const Mat3 pulled = h_[coarse.index].transpose() * m;
    const auto fine = detail::nearest_center(pulled, centers_);
    if (fine.trace < min_trace_) {
      if (policy == GapPolicy::FallBack) {
        RotDecode out = decode_bruteforce(*domain_, r);
        out.stats.distance_evaluations += h_.size() + centers_.size();
        return out;
      }
      std::ostringstream os;
      os << "cover gap: no cover domain within the extent bound of R =\n" << m;
      detail::fail(ErrorKind::CoverGap, os.str());
    }
    const auto [ip, j] = cover_.pairs[fine.index];
    RotDecode out;
    out.word.i = domain_->h().product(coarse.index, ip);
    out.word.j = j;
    out.word.residual =
        domain_->h()[out.word.i].inverse() * r * domain_->k()[j].inverse();
    out.stats.distance_evaluations = h_.size() + centers_.size();
    return out;
  }

 private:
  std::shared_ptr<const DoubleCosetDomain> domain_;
  CoverSet cover_;
  std::vector<Mat3> centers_;
  std::vector<Mat3> h_;
  double min_trace_;
};

[[nodiscard]] inline RotDecode decode_cover(const CoverDecoder& decoder, const Rotation& r) {
  return decoder.decode(r);
}

/// Exhaustive oracle for the wedge alphabet: scans all |H|^2 words (a, b) and
/// returns the first with h_a^T R h_b^T in the base wedge.
[[nodiscard]] inline std::optional<RotWord> decode_wedge_exhaustive(const WedgeDomain& w,
                                                                    const Rotation& r,
                                                                    double band = tol::kPlane) {
  const auto& g = w.group();
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      const Rotation q = g[a].inverse() * r * g[b].inverse();
      if (w.contains(q, band)) return RotWord{a, b, q};
    }
  }
  return std::nullopt;
}

/// Every word (a, b) whose shifted wedge h_a W h_b contains R within `band`.
/// More than one entry means R sits on a shared wedge boundary.
[[nodiscard]] inline std::vector<std::pair<std::size_t, std::size_t>> wedge_words_containing(
    const WedgeDomain& w, const Rotation& r, double band = tol::kPlane) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& g = w.group();
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (w.contains(g[a].inverse() * r * g[b].inverse(), band)) out.emplace_back(a, b);
    }
  }
  return out;
}

/// Two-stage decoder for H\SO(3)/H with H icosahedral: nearest h_i, then the
/// conjugated wedge h_j W h_j^T holding h_i^T R. The result satisfies
/// R = h_a Q h_b with a = index(h_i h_j), b = index(h_j^T) and Q in W.
class WedgeDecoder {
 public:
  explicit WedgeDecoder(std::shared_ptr<const WedgeDomain> w)
      : wedge_(std::move(w)), h_(detail::matrices_of(wedge_->group())) {}

  [[nodiscard]] const WedgeDomain& wedge() const noexcept { return *wedge_; }

  [[nodiscard]] RotDecode decode(const Rotation& r) const {
    const Mat3& m = r.matrix();
    const auto coarse = detail::nearest_center(m, h_);
    const Mat3 pulled = h_[coarse.index].transpose() * m;
    // The skew part of the pulled-back rotation is sin(theta) * axis; inside
    // the cell theta is well below pi, so it points along log(pulled).
    if (pulled.trace() < -1.0 + 1e-9) {
      // Angle at pi: the log direction is ambiguous. Cannot happen inside the
      // dodecahedral cell, but keep the decoder total.
      if (auto word = decode_wedge_exhaustive(*wedge_, r)) {
        return RotDecode{*word, DecodeStats{h_.size() * h_.size(), 0, 0.0}, std::nullopt};
      }
      detail::fail(ErrorKind::BoundaryAngle, "wedge decode: pulled-back angle is pi");
    }
    const Vec3 direction = skew_vector(pulled);
    RotDecode out;
    const std::size_t j = wedge_->locate_cone(direction, &out.stats.sign_tests);
    const auto& group = wedge_->group();
    out.word.i = group.product(coarse.index, j);
    out.word.j = group.inverse(j);
    out.word.residual = Rotation::unchecked(h_[j].transpose() * pulled * h_[j]);
    out.stats.distance_evaluations = h_.size();
    return out;
  }

 private:
  std::shared_ptr<const WedgeDomain> wedge_;
  std::vector<Mat3> h_;
};

[[nodiscard]] inline RotDecode decode_wedge(const WedgeDecoder& decoder, const Rotation& r) {
  return decoder.decode(r);
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_DECODER_HPP
