#include <gtest/gtest.h>

#include <random>

#include "motionalpha/alphabet.hpp"
#include "motionalpha/decoder.hpp"

using namespace motionalpha;

namespace {

struct Fixture {
  std::shared_ptr<const DoubleCosetDomain> domain;
  std::shared_ptr<const CoverDecoder> cover;
  std::shared_ptr<const WedgeDomain> wedge_domain;
  std::shared_ptr<const WedgeDecoder> wedge;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture out;
    const auto h = generate_platonic(PlatonicKind::Icosahedral);
    out.domain = std::make_shared<const DoubleCosetDomain>(
        h, conjugate_group(h, exp_so3(default_conjugation())));
    std::mt19937_64 rng(21);
    out.cover = std::make_shared<const CoverDecoder>(
        out.domain, build_cover(*out.domain, 100000, rng, default_conjugation()));
    out.wedge_domain = std::make_shared<const WedgeDomain>(h);
    out.wedge = std::make_shared<const WedgeDecoder>(out.wedge_domain);
    return out;
  }();
  return f;
}

double reconstruction_error(const DoubleCosetDomain& d, const RotWord& w, const Rotation& r) {
  return (d.h()[w.i].matrix() * w.residual.matrix() * d.k()[w.j].matrix() - r.matrix()).norm();
}

}  // namespace

TEST(BruteForce, CentersAndIdentity) {
  const auto& d = *fixture().domain;
  const RotDecode at_center = decode_bruteforce(d, d.h()[5] * d.k()[7]);
  EXPECT_EQ(at_center.word.i, 5u);
  EXPECT_EQ(at_center.word.j, 7u);
  EXPECT_LT((at_center.word.residual.matrix() - Mat3::Identity()).norm(), 1e-12);
  EXPECT_EQ(at_center.stats.distance_evaluations, 3600u);
  EXPECT_FALSE(at_center.tie.has_value());

  const RotDecode at_identity = decode_bruteforce(d, Rotation::identity());
  EXPECT_EQ(at_identity.word.i, 0u);
  EXPECT_EQ(at_identity.word.j, 0u);
  EXPECT_LT((at_identity.word.residual.matrix() - Mat3::Identity()).norm(), 1e-15);
}

TEST(BruteForce, ReportsTies) {
  // Midpoint between I and a 5-fold neighbor: a face center of the
  // dodecahedral cell, equidistant from exactly those two centers.
  const auto h = generate_platonic(PlatonicKind::Icosahedral);
  const DoubleCosetDomain d(h, generate_cyclic(1));
  const RotDecode out = decode_bruteforce(d, exp_so3(0.5 * log_so3(h[1])));
  ASSERT_TRUE(out.tie.has_value());
  EXPECT_EQ(out.tie->first.first + out.tie->second.first, 1u);
}

TEST(BruteForce, ReconstructsAndStaysInDomain) {
  const auto& d = *fixture().domain;
  std::mt19937_64 rng(22);
  for (int s = 0; s < 1000; ++s) {
    const Rotation r = random_rotation(rng);
    const RotDecode out = decode_bruteforce(d, r);
    ASSERT_LE(reconstruction_error(d, out.word, r), 1e-12);
    ASSERT_NE(double_coset_membership(d, out.word.residual), Membership::Outside);
  }
}

TEST(Cover, MatchesBruteForce) {
  const auto& f = fixture();
  std::mt19937_64 rng(23);
  int compared = 0;
  for (int s = 0; s < 1000; ++s) {
    const Rotation r = random_rotation(rng);
    const RotDecode brute = decode_bruteforce(*f.domain, r);
    if (brute.margin <= 1e-6) continue;
    const RotDecode fast = decode_cover(*f.cover, r);
    ASSERT_TRUE(fast.word.same_letters(brute.word)) << s;
    ASSERT_LE(reconstruction_error(*f.domain, fast.word, r), 1e-12);
    ++compared;
  }
  EXPECT_GT(compared, 990);
}

TEST(Cover, EvaluationCount) {
  const auto& f = fixture();
  std::mt19937_64 rng(24);
  const std::size_t bound = 60 + f.cover->cover().size();
  for (int s = 0; s < 100; ++s) {
    const RotDecode out = decode_cover(*f.cover, random_rotation(rng));
    EXPECT_EQ(out.stats.distance_evaluations, bound);
    EXPECT_EQ(out.stats.sign_tests, 0u);
  }
  EXPECT_GE(3600.0 / static_cast<double>(bound), 3600.0 / 241.0);
}

TEST(Cover, Idempotent) {
  const auto& f = fixture();
  const auto& d = *f.domain;
  for (std::size_t i = 0; i < d.h().size(); ++i) {
    for (std::size_t j = 0; j < d.k().size(); ++j) {
      const RotDecode out = decode_cover(*f.cover, d.h()[i] * d.k()[j]);
      ASSERT_EQ(out.word.i, i);
      ASSERT_EQ(out.word.j, j);
      ASSERT_LT((out.word.residual.matrix() - Mat3::Identity()).norm(), 1e-12);
    }
  }
}

TEST(Cover, RoundOffBoundedByExtent) {
  const auto& f = fixture();
  std::mt19937_64 ext_rng(25);
  const double bound = extent(*f.domain, 200000, ext_rng).extent + 0.01;
  std::mt19937_64 rng(26);
  for (int s = 0; s < 1000; ++s) {
    const Rotation r = random_rotation(rng);
    const RotDecode out = decode_cover(*f.cover, r);
    ASSERT_LE(rho_so3(r, Rotation::unchecked(f.domain->center(out.word.i, out.word.j))), bound);
  }
}

TEST(Cover, GapIsSurfaced) {
  const auto& f = fixture();
  CoverSet truncated = f.cover->cover();
  truncated.pairs.resize(5);
  const CoverDecoder short_cover(f.domain, truncated);
  std::mt19937_64 rng(27);
  int gaps = 0;
  for (int s = 0; s < 200; ++s) {
    const Rotation r = random_rotation(rng);
    try {
      (void)short_cover.decode(r);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::CoverGap);
      ++gaps;
      const RotDecode fb = short_cover.decode(r, GapPolicy::FallBack);
      ASSERT_TRUE(fb.word.same_letters(decode_bruteforce(*f.domain, r).word));
    }
  }
  EXPECT_GT(gaps, 0);
  EXPECT_EQ(exit_code(ErrorKind::CoverGap), 3);
}

TEST(Cover, RejectsBadTables) {
  const auto& f = fixture();
  EXPECT_THROW(CoverDecoder(f.domain, CoverSet{}), Error);
  CoverSet bad;
  bad.pairs = {{0, 0}, {60, 0}};
  EXPECT_THROW(CoverDecoder(f.domain, bad), Error);
}

TEST(Wedge, MatchesExhaustiveScan) {
  const auto& f = fixture();
  const auto& h = f.wedge_domain->group();
  std::mt19937_64 rng(28);
  for (int s = 0; s < 1000; ++s) {
    const Rotation r = random_rotation(rng);
    const RotDecode fast = decode_wedge(*f.wedge, r);
    const auto words = wedge_words_containing(*f.wedge_domain, r);
    ASSERT_FALSE(words.empty());
    if (words.size() == 1) {
      ASSERT_EQ(fast.word.i, words[0].first);
      ASSERT_EQ(fast.word.j, words[0].second);
    }
    const Mat3 rebuilt = h[fast.word.i].matrix() * fast.word.residual.matrix() * h[fast.word.j].matrix();
    ASSERT_LE((rebuilt - r.matrix()).norm(), 1e-12);
    ASSERT_TRUE(f.wedge_domain->contains(fast.word.residual));
    ASSERT_EQ(fast.stats.distance_evaluations, 60u);
    ASSERT_LE(fast.stats.sign_tests, 180u);
  }
}

TEST(Wedge, EquivariantConstruction) {
  const auto& f = fixture();
  const auto& h = f.wedge_domain->group();
  const auto rays = f.wedge_domain->base_rays();
  const Rotation q = exp_so3(0.25 * (rays[0] + rays[1] + rays[2]).normalized());
  ASSERT_TRUE(f.wedge_domain->contains(q));
  for (std::size_t a = 0; a < h.size(); a += 7) {
    for (std::size_t b = 0; b < h.size(); b += 11) {
      const RotDecode out = decode_wedge(*f.wedge, h[a] * q * h[b]);
      EXPECT_EQ(out.word.i, a);
      EXPECT_EQ(out.word.j, b);
      EXPECT_LT((out.word.residual.matrix() - q.matrix()).norm(), 1e-12);
    }
  }
  const RotDecode id = decode_wedge(*f.wedge, Rotation::identity());
  EXPECT_EQ(h.product(id.word.i, id.word.j), h.identity_index());
}

TEST(Wedge, HalfTurnInputReconstructs) {
  const auto& f = fixture();
  const Rotation r = exp_so3(kPi * Vec3(0.3, -0.8, 0.52).normalized());
  const RotDecode out = decode_wedge(*f.wedge, r);
  const auto& h = f.wedge_domain->group();
  EXPECT_LE((h[out.word.i].matrix() * out.word.residual.matrix() * h[out.word.j].matrix() -
             r.matrix()).norm(),
            1e-12);
}
