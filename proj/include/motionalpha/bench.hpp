#ifndef MOTIONALPHA_BENCH_HPP
#define MOTIONALPHA_BENCH_HPP

// Benchmark of the rotation decoders on a seeded set of Haar rotations:
// correctness first, then single-threaded timing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "motionalpha/decoder.hpp"
#include "motionalpha/domain.hpp"
#include "motionalpha/error.hpp"
#include "motionalpha/finite_group.hpp"
#include "motionalpha/parallel.hpp"

namespace motionalpha {

/// Decoder tables shared by bench, acceptance and the CLI: H icosahedral,
/// K = g H g^T, the cover for (H, K) and the wedge of H.
struct RotationDecoders {
  std::shared_ptr<const DoubleCosetDomain> domain;
  std::shared_ptr<const CoverDecoder> cover;
  std::shared_ptr<const WedgeDomain> wedge_domain;
  std::shared_ptr<const WedgeDecoder> wedge;
};

[[nodiscard]] inline RotationDecoders make_rotation_decoders(const AxisAngle& g,
                                                             std::size_t probe_samples,
                                                             std::uint64_t cover_seed) {
  const FiniteRotationGroup h = generate_platonic(PlatonicKind::Icosahedral);
  RotationDecoders out;
  out.domain = std::make_shared<const DoubleCosetDomain>(h, conjugate_group(h, exp_so3(g)));
  std::mt19937_64 rng(cover_seed);
  out.cover = std::make_shared<const CoverDecoder>(out.domain,
                                                   build_cover(*out.domain, probe_samples, rng, g));
  out.wedge_domain = std::make_shared<const WedgeDomain>(h);
  out.wedge = std::make_shared<const WedgeDecoder>(out.wedge_domain);
  return out;
}

struct BenchConfig {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::set<std::string> methods{"brute", "cover", "wedge"};
  std::size_t threads = 1;
  /// Timed rounds; each round times every method once and the fastest total
  /// per method is reported.
  std::size_t repeats = 15;
};

struct MethodReport {
  std::string label;
  double total_seconds = 0.0;
  double mean_call_seconds = 0.0;
  double std_call_seconds = 0.0;
  double mean_distance_evaluations = 0.0;
  std::size_t max_distance_evaluations = 0;
  double mean_sign_tests = 0.0;
  double eval_speedup = 1.0;
  double wall_speedup = 1.0;
};

struct BenchReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  bool timing_single_threaded = true;
  std::size_t cover_size = 0;
  std::size_t checked = 0;
  std::size_t skipped_near_ties = 0;
  std::vector<MethodReport> methods;

  [[nodiscard]] const MethodReport* find(const std::string& label) const {
    for (const auto& m : methods) {
      if (m.label == label) return &m;
    }
    return nullptr;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : methods) {
      ms.push_back({{"method", m.label},
                    {"total_seconds", m.total_seconds},
                    {"mean_call_seconds", m.mean_call_seconds},
                    {"std_call_seconds", m.std_call_seconds},
                    {"mean_distance_evaluations", m.mean_distance_evaluations},
                    {"max_distance_evaluations", m.max_distance_evaluations},
                    {"mean_sign_tests", m.mean_sign_tests},
                    {"eval_speedup", m.eval_speedup},
                    {"wall_speedup", m.wall_speedup}});
    }
    return {{"n", n},
            {"seed", seed},
            {"threads", threads},
            {"timing_single_threaded", timing_single_threaded},
            {"cover_size", cover_size},
            {"checked", checked},
            {"skipped_near_ties", skipped_near_ties},
            {"methods", ms}};
  }
};

[[nodiscard]] inline std::vector<Rotation> seeded_rotations(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rotation> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(random_rotation(rng));
  return out;
}

namespace detail {

[[noreturn]] inline void disagreement(const char* method, std::size_t k, const Rotation& r,
                                      const RotWord& got, std::size_t ei, std::size_t ej) {
  std::ostringstream os;
  os.precision(17);
  os << method << " disagrees with the oracle on rotation " << k << ": got (" << got.i << ", "
     << got.j << "), expected (" << ei << ", " << ej << "), R =\n"
     << r.matrix();
  fail(ErrorKind::Disagreement, os.str());
}

/// Wall time of one pass of `decode` over all inputs.
template <typename F>
[[nodiscard]] double timed_pass(const std::vector<Rotation>& rs, F&& decode, std::size_t& sink) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  for (const auto& r : rs) sink += decode(r).word.i;
  return std::chrono::duration<double>(clock::now() - t0).count();
}

/// Per-call mean and deviation and operation counts from one separately
/// instrumented pass.
template <typename F>
void profile_method(const std::vector<Rotation>& rs, F&& decode, MethodReport& out,
                    std::size_t& sink) {
  using clock = std::chrono::steady_clock;
  double sum = 0.0;
  double sum2 = 0.0;
  std::size_t evals = 0;
  std::size_t signs = 0;
  for (const auto& r : rs) {
    const auto t0 = clock::now();
    const RotDecode d = decode(r);
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    sink += d.word.j;
    sum += dt;
    sum2 += dt * dt;
    evals += d.stats.distance_evaluations;
    signs += d.stats.sign_tests;
    out.max_distance_evaluations = std::max(out.max_distance_evaluations, d.stats.distance_evaluations);
  }
  const double n = static_cast<double>(rs.size());
  out.mean_call_seconds = sum / n;
  out.std_call_seconds =
      rs.size() > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / n) / (n - 1.0))) : 0.0;
  out.mean_distance_evaluations = static_cast<double>(evals) / n;
  out.mean_sign_tests = static_cast<double>(signs) / n;
}

}  // namespace detail

/// Checks every fast word against its oracle (cover against brute force on
/// inputs with trace margin > 1e-9, wedge against the exhaustive wedge scan on
/// inputs not on a wedge boundary), then times each method single-threaded.
/// Throws Disagreement before any timing if a check fails.
[[nodiscard]] inline BenchReport run_bench(const RotationDecoders& dec, const BenchConfig& cfg) {
  if (cfg.n < 1) detail::fail(ErrorKind::Validation, "bench: n must be >= 1");
  for (const auto& m : cfg.methods) {
    if (m != "brute" && m != "cover" && m != "wedge") {
      detail::fail(ErrorKind::Validation, "bench: unknown method '" + m + "'");
    }
  }
  const auto rs = seeded_rotations(cfg.n, cfg.seed);
  BenchReport report;
  report.n = cfg.n;
  report.seed = cfg.seed;
  report.threads = cfg.threads;
  report.cover_size = dec.cover->cover().size();

  const bool want_cover = cfg.methods.count("cover") > 0;
  const bool want_wedge = cfg.methods.count("wedge") > 0;
  std::vector<char> skipped(rs.size(), 0);
  parallel_for(rs.size(), cfg.threads, [&](std::size_t k) {
    const Rotation& r = rs[k];
    if (want_cover) {
      const RotDecode brute = decode_bruteforce(*dec.domain, r);
      if (brute.margin > 1e-9) {
        const RotDecode fast = dec.cover->decode(r);
        if (!fast.word.same_letters(brute.word)) {
          detail::disagreement("cover", k, r, fast.word, brute.word.i, brute.word.j);
        }
      } else {
        skipped[k] = 1;
      }
    }
    if (want_wedge) {
      const RotDecode fast = dec.wedge->decode(r);
      const auto words = wedge_words_containing(*dec.wedge_domain, r);
      const bool found = std::find(words.begin(), words.end(),
                                   std::pair{fast.word.i, fast.word.j}) != words.end();
      if (!found) {
        const auto expected = words.empty() ? std::pair<std::size_t, std::size_t>{0, 0} : words[0];
        detail::disagreement("wedge", k, r, fast.word, expected.first, expected.second);
      }
      if (words.size() > 1) skipped[k] = 1;
    }
  });
  for (char s : skipped) report.skipped_near_ties += static_cast<std::size_t>(s);
  report.checked = rs.size() - report.skipped_near_ties;

  const auto brute_fn = [&](const Rotation& r) { return decode_bruteforce(*dec.domain, r); };
  const auto cover_fn = [&](const Rotation& r) { return dec.cover->decode(r); };
  const auto wedge_fn = [&](const Rotation& r) { return dec.wedge->decode(r); };
  MethodReport brute{"brute"};
  MethodReport cover{"cover"};
  MethodReport wedge{"wedge"};
  std::size_t sink = 0;
  const double inf = std::numeric_limits<double>::infinity();
  brute.total_seconds = cover.total_seconds = wedge.total_seconds = inf;
  for (std::size_t rep = 0; rep < std::max<std::size_t>(cfg.repeats, 1); ++rep) {
    brute.total_seconds = std::min(brute.total_seconds, detail::timed_pass(rs, brute_fn, sink));
    if (want_cover) {
      cover.total_seconds = std::min(cover.total_seconds, detail::timed_pass(rs, cover_fn, sink));
    }
    if (want_wedge) {
      wedge.total_seconds = std::min(wedge.total_seconds, detail::timed_pass(rs, wedge_fn, sink));
    }
  }
  detail::profile_method(rs, brute_fn, brute, sink);
  report.methods.push_back(brute);
  if (want_cover) {
    detail::profile_method(rs, cover_fn, cover, sink);
    report.methods.push_back(cover);
  }
  if (want_wedge) {
    detail::profile_method(rs, wedge_fn, wedge, sink);
    report.methods.push_back(wedge);
  }
  // Keeps the timed loops from being optimized away.
  if (sink == static_cast<std::size_t>(-1)) report.seed += 1;
  for (auto& m : report.methods) {
    m.eval_speedup = brute.mean_distance_evaluations / m.mean_distance_evaluations;
    m.wall_speedup = brute.total_seconds / m.total_seconds;
  }
  return report;
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_BENCH_HPP
