#ifndef MOTIONALPHA_TRAJECTORY_HPP
#define MOTIONALPHA_TRAJECTORY_HPP

// Sampling trajectories and encoding them as sentences over a motion alphabet.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motionalpha/alphabet.hpp"
#include "motionalpha/error.hpp"
#include "motionalpha/lie.hpp"

namespace motionalpha {

template <typename Pose>
struct TrajectorySample {
  double tau = 0.0;
  Pose pose;
};

using PlanarSample = TrajectorySample<PlanarMotion>;
using SpatialSample = TrajectorySample<SpatialMotion>;

/// One two-letter word. gamma holds (l, m, n) for SE(2) and (p, m, n, o) for SE(3).
struct Symbol {
  double tau = 0.0;
  std::vector<long> gamma;
  long delta = 0;

  [[nodiscard]] std::string gamma_letter() const {
    std::string s = "g(";
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(gamma[k]);
    }
    return s + ')';
  }
  [[nodiscard]] std::string delta_letter() const { return "d(" + std::to_string(delta) + ")"; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Sentence {
  std::string alphabet_id;
  std::vector<Symbol> symbols;

  [[nodiscard]] std::size_t size() const noexcept { return symbols.size(); }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// "(g(2,3,-2),d(3)) (g(...),d(...)) ..."
[[nodiscard]] inline std::string to_string(const Sentence& s) {
  std::string out;
  for (std::size_t k = 0; k < s.symbols.size(); ++k) {
    if (k) out += ' ';
    out += '(' + s.symbols[k].gamma_letter() + ',' + s.symbols[k].delta_letter() + ')';
  }
  return out;
}

namespace detail {

inline std::vector<long> parse_letter(std::string_view text, char head) {
  auto bad = [&]() -> std::vector<long> {
    fail(ErrorKind::Validation, "unknown letter '" + std::string(text) + "'");
  };
  if (text.size() < 4 || text[0] != head || text[1] != '(' || text.back() != ')') return bad();
  std::string_view body = text.substr(2, text.size() - 3);
  std::vector<long> values;
  while (true) {
    const auto comma = body.find(',');
    const std::string_view part = body.substr(0, comma);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) return bad();
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return values;
}

template <typename Pose>
void check_times(std::span<const TrajectorySample<Pose>> samples) {
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!std::isfinite(samples[k].tau)) {
      fail(ErrorKind::Validation, "sample " + std::to_string(k) + ": tau is not finite");
    }
    if (k && !(samples[k].tau > samples[k - 1].tau)) {
      fail(ErrorKind::Validation,
           "sample " + std::to_string(k) + ": times must be strictly increasing");
    }
  }
}

template <typename F>
auto annotate(std::size_t k, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), "sample " + std::to_string(k) + ": " + e.what());
  }
}

}  // namespace detail

[[nodiscard]] inline std::vector<long> parse_gamma_letter(std::string_view text) {
  return detail::parse_letter(text, 'g');
}

[[nodiscard]] inline long parse_delta_letter(std::string_view text) {
  const auto v = detail::parse_letter(text, 'd');
  if (v.size() != 1) detail::fail(ErrorKind::Validation, "unknown letter '" + std::string(text) + "'");
  return v[0];
}

[[nodiscard]] inline Sentence encode(std::span<const PlanarSample> samples, const Se2Alphabet& a) {
  detail::check_times(samples);
  Sentence s{a.id(), {}};
  s.symbols.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Se2Word w = detail::annotate(k, [&] {
      if (samples[k].pose.t.norm() > a.radius) {
        detail::fail(ErrorKind::Validation, "translation outside the alphabet radius");
      }
      return decode_se2(samples[k].pose, a);
    });
    s.symbols.push_back({samples[k].tau, {w.gamma.l, w.gamma.m, w.gamma.n}, w.delta});
  }
  return s;
}

[[nodiscard]] inline Sentence encode(std::span<const SpatialSample> samples,
                                     const Se3Alphabet& a) {
  detail::check_times(samples);
  Sentence s{a.id(), {}};
  s.symbols.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Se3Word w = detail::annotate(k, [&] {
      if (samples[k].pose.translation.norm() > a.radius) {
        detail::fail(ErrorKind::Validation, "translation outside the alphabet radius");
      }
      return decode_se3(samples[k].pose, a);
    });
    s.symbols.push_back({samples[k].tau,
                         {static_cast<long>(w.gamma.p), w.gamma.m, w.gamma.n, w.gamma.o},
                         static_cast<long>(w.delta)});
  }
  return s;
}

namespace detail {

inline void check_symbol(const Sentence& s, const std::string& id, std::size_t k,
                         std::size_t arity, long rotations, long deltas) {
  if (s.alphabet_id != id) {
    fail(ErrorKind::Validation, "sentence alphabet '" + s.alphabet_id + "' does not match '" + id + "'");
  }
  const Symbol& y = s.symbols[k];
  const std::string where = "symbol " + std::to_string(k) + ": ";
  if (y.gamma.size() != arity || y.gamma[0] < 0 || y.gamma[0] >= rotations) {
    fail(ErrorKind::Validation, where + "unknown letter " + y.gamma_letter());
  }
  if (y.delta < 0 || y.delta >= deltas) {
    fail(ErrorKind::Validation, where + "unknown letter " + y.delta_letter());
  }
}

}  // namespace detail

/// Cell centers gamma_k delta_k, timestamps preserved.
[[nodiscard]] inline std::vector<PlanarSample> decode_sentence(const Sentence& s,
                                                               const Se2Alphabet& a) {
  std::vector<PlanarSample> out;
  out.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    detail::check_symbol(s, a.id(), k, 3, a.gamma.point_order(), a.delta.order);
    const Symbol& y = s.symbols[k];
    const WallpaperElement gamma{static_cast<int>(y.gamma[0]), y.gamma[1], y.gamma[2]};
    out.push_back({y.tau, se2_center(a, gamma, static_cast<int>(y.delta))});
  }
  return out;
}

[[nodiscard]] inline std::vector<SpatialSample> decode_sentence(const Sentence& s,
                                                                const Se3Alphabet& a) {
  std::vector<SpatialSample> out;
  out.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    detail::check_symbol(s, a.id(), k, 4, static_cast<long>(a.gamma.point_group().size()),
                         static_cast<long>(a.delta().size()));
    const Symbol& y = s.symbols[k];
    const SpaceGroupElement gamma{static_cast<std::size_t>(y.gamma[0]), y.gamma[1], y.gamma[2],
                                  y.gamma[3]};
    out.push_back({y.tau, se3_center(a, gamma, static_cast<std::size_t>(y.delta))});
  }
  return out;
}

/// Built-in planar trajectory: theta(tau) = tau, t(tau) = (4 cos tau, 6 tau / (2 pi) - 3).
[[nodiscard]] inline PlanarMotion reference_se2_pose(double tau) {
  return {tau, Vec2(4.0 * std::cos(tau), 6.0 * tau / (2.0 * kPi) - 3.0)};
}

/// tau_k = pi (1 + 2k/5) for k = k_min..k_max.
[[nodiscard]] inline std::vector<double> fifth_turn_times(int k_min, int k_max) {
  std::vector<double> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(kPi * (1.0 + 2.0 * k / 5.0));
  return out;
}

/// Evaluates a built-in family ("paper-se2" or "identity") at the given times.
[[nodiscard]] inline std::vector<PlanarSample> sample_parametric(std::string_view family,
                                                                 std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end())) {
    detail::fail(ErrorKind::Validation, "sample times must be sorted");
  }
  std::vector<PlanarSample> out;
  out.reserve(times.size());
  if (family == "paper-se2") {
    for (double tau : times) out.push_back({tau, reference_se2_pose(tau)});
  } else if (family == "identity") {
    for (double tau : times) out.push_back({tau, PlanarMotion::identity()});
  } else {
    detail::fail(ErrorKind::Validation, "unknown trajectory family '" + std::string(family) + "'");
  }
  return out;
}

/// Tabulated input: the samples at exactly the requested times.
template <typename Pose>
[[nodiscard]] std::vector<TrajectorySample<Pose>> sample_parametric(
    std::span<const TrajectorySample<Pose>> table, std::span<const double> times) {
  if (!std::is_sorted(times.begin(), times.end())) {
    detail::fail(ErrorKind::Validation, "sample times must be sorted");
  }
  std::vector<TrajectorySample<Pose>> out;
  out.reserve(times.size());
  for (double tau : times) {
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const auto& s) { return s.tau == tau; });
    if (it == table.end()) {
      detail::fail(ErrorKind::Validation, "no tabulated sample at tau = " + std::to_string(tau));
    }
    out.push_back(*it);
  }
  return out;
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_TRAJECTORY_HPP
