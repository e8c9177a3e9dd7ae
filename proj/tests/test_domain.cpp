#include <gtest/gtest.h>

#include <random>

#include "motionalpha/alphabet.hpp"
#include "motionalpha/domain.hpp"

using namespace motionalpha;

namespace {

const FiniteRotationGroup& icosa() {
  static const FiniteRotationGroup g = generate_platonic(PlatonicKind::Icosahedral);
  return g;
}

const DoubleCosetDomain& reference_domain() {
  static const DoubleCosetDomain d(icosa(), conjugate_group(icosa(), exp_so3(default_conjugation())));
  return d;
}

const WedgeDomain& wedge() {
  static const WedgeDomain w(icosa());
  return w;
}

/// Argmin oracle over explicit centers, independent of the domain class.
std::size_t argmin_center(const Rotation& r, const std::vector<Mat3>& centers, double* gap) {
  std::vector<double> d;
  for (const auto& c : centers) d.push_back(rho_so3(r, Rotation::unchecked(c)));
  const auto best = std::min_element(d.begin(), d.end()) - d.begin();
  double second = 1e9;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (static_cast<std::ptrdiff_t>(k) != best) second = std::min(second, d[k]);
  }
  *gap = second - d[static_cast<std::size_t>(best)];
  return static_cast<std::size_t>(best);
}

}  // namespace

TEST(CosetMembership, IdentityAndGroupElements) {
  const CosetDomain d(icosa());
  EXPECT_EQ(coset_membership(d, Rotation::identity()), Membership::Interior);
  for (std::size_t i = 1; i < icosa().size(); ++i) {
    EXPECT_EQ(coset_membership(d, icosa()[i]), Membership::Outside);
  }
}

TEST(CosetMembership, BoundaryBetweenTwoCenters) {
  // Halfway to a 5-fold element is equidistant from I and that element.
  const CosetDomain d(icosa());
  const Vec3 x = log_so3(icosa()[1]);
  EXPECT_EQ(coset_membership(d, exp_so3(0.5 * x)), Membership::Boundary);
  EXPECT_EQ(coset_membership(d, exp_so3(0.49 * x)), Membership::Interior);
  EXPECT_EQ(coset_membership(d, exp_so3(0.51 * x)), Membership::Outside);
}

TEST(CosetMembership, ExactlyOneShiftedCellPerSample) {
  const CosetDomain d(icosa());
  std::mt19937_64 rng(1);
  std::size_t ties = 0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) {
    const Rotation r = random_rotation(rng);
    int interior = 0;
    int boundary = 0;
    for (std::size_t i = 0; i < icosa().size(); ++i) {
      const Membership m = coset_membership(d, icosa()[i].inverse() * r);
      interior += m == Membership::Interior;
      boundary += m == Membership::Boundary;
    }
    if (boundary > 0) {
      ++ties;
      continue;
    }
    ASSERT_EQ(interior, 1);
  }
  EXPECT_LT(ties, static_cast<std::size_t>(n / 1000));
}

TEST(DoubleCosetMembership, IdentityAndProducts) {
  const auto& d = reference_domain();
  EXPECT_EQ(double_coset_membership(d, Rotation::identity()), Membership::Interior);
  const Rotation c = d.h()[5] * d.k()[7];
  EXPECT_EQ(double_coset_membership(d, c), Membership::Outside);
  EXPECT_EQ(d.word_count(), 3600u);
}

TEST(DoubleCosetMembership, AgreesWithArgminOracle) {
  const auto& d = reference_domain();
  std::vector<Mat3> centers;
  for (std::size_t i = 0; i < d.h().size(); ++i) {
    for (std::size_t j = 0; j < d.k().size(); ++j) {
      centers.push_back(d.h()[i].matrix() * d.k()[j].matrix());
    }
  }
  std::mt19937_64 rng(2);
  for (int s = 0; s < 10000; ++s) {
    // Half the samples near the identity so the interior branch is exercised.
    const Rotation r = s % 2 ? random_rotation(rng)
                             : exp_so3(0.5 * Vec3(std::normal_distribution<double>()(rng),
                                                  std::normal_distribution<double>()(rng),
                                                  std::normal_distribution<double>()(rng)));
    double gap = 0.0;
    const std::size_t best = argmin_center(r, centers, &gap);
    if (gap < 1e-9) continue;
    const bool interior = double_coset_membership(d, r) == Membership::Interior;
    ASSERT_EQ(interior, best == 0);
  }
}

TEST(DoubleCosetMembership, RejectsNonTrivialIntersection) {
  try {
    DoubleCosetDomain d(icosa(), icosa());
    FAIL() << "expected Validation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
  EXPECT_THROW(DoubleCosetDomain(icosa(), conjugate_group(icosa(), exp_so3(Vec3(0.3, 0, 0)))),
               Error);
}

TEST(Extent, WholeGroupReachesPi) {
  const DoubleCosetDomain whole(generate_cyclic(1), generate_cyclic(1));
  std::mt19937_64 rng(3);
  const auto e = extent(whole, 1000000, rng);
  EXPECT_EQ(e.samples, 1000000u);
  EXPECT_NEAR(e.extent, kPi, 0.01);
}

TEST(Extent, MonotoneInSamples) {
  const auto& d = reference_domain();
  double previous = 0.0;
  for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
    std::mt19937_64 rng(4);
    const double e = extent(d, n, rng).extent;
    EXPECT_GE(e, previous);
    previous = e;
  }
}

TEST(Extent, ReferenceConjugationBeatsAlternative) {
  const auto& d = reference_domain();
  const Vec3 alternative(0.15, 0.05, 0.02);
  const auto k = conjugate_group(icosa(), exp_so3(alternative));
  ASSERT_TRUE(trivial_intersection(icosa(), k));
  const DoubleCosetDomain other(icosa(), k);
  std::mt19937_64 rng_a(5);
  std::mt19937_64 rng_b(5);
  const double ref = extent(d, 200000, rng_a).extent;
  const double alt = extent(other, 200000, rng_b).extent;
  EXPECT_LT(ref, alt);
  EXPECT_LT(ref, 0.47);
}

TEST(Extent, AtLeastHalfThePackingDistance) {
  const auto& d = reference_domain();
  double min_center = kPi;
  for (std::size_t f = 1; f < d.word_count(); ++f) {
    min_center = std::min(min_center, rho_from_trace(d.centers()[f].trace()));
  }
  std::mt19937_64 rng(6);
  EXPECT_GE(extent(d, 20000, rng).extent, 0.5 * min_center);
}

TEST(Cover, PairsSortedByDistance) {
  const auto order = pairs_by_distance(reference_domain());
  ASSERT_EQ(order.size(), 3600u);
  EXPECT_EQ(order.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double a = reference_domain().center(order[k - 1].first, order[k - 1].second).trace();
    const double b = reference_domain().center(order[k].first, order[k].second).trace();
    EXPECT_GE(a, b);
  }
}

TEST(Cover, DegenerateKIsSingleDomain) {
  const DoubleCosetDomain d(icosa(), generate_cyclic(1));
  std::mt19937_64 rng(7);
  const auto cover = build_cover(d, 10000, rng);
  ASSERT_EQ(cover.size(), 1u);
  EXPECT_EQ(cover.pairs[0], (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(Cover, ToyCyclicPair) {
  const auto h = generate_cyclic(2);
  const auto k = generate_cyclic(3, Vec3(1.0, 0.4, 0.3));
  ASSERT_TRUE(trivial_intersection(h, k));
  const DoubleCosetDomain d(h, k);
  std::mt19937_64 rng(8);
  const auto cover = build_cover(d, 100000, rng);
  EXPECT_GE(cover.size(), 1u);
  EXPECT_LE(cover.size(), 6u);
  std::mt19937_64 fresh(9);
  EXPECT_EQ(count_uncovered(d, cover, 100000, fresh), 0u);
}

TEST(Cover, ReferenceCoverHoldsOnFreshSamples) {
  const auto& d = reference_domain();
  // The outermost needed shifted domain meets about 3e-5 of the cell, so the
  // probe count must be well above 1e5 for the prefix to be complete.
  std::mt19937_64 rng(10);
  const auto cover = build_cover(d, 1000000, rng, default_conjugation());
  EXPECT_GT(cover.size(), 100u);
  EXPECT_LT(cover.size(), 300u);
  EXPECT_EQ(cover.conjugation, default_conjugation());
  EXPECT_GT(cover.probe_extent, 0.4);
  std::mt19937_64 fresh(11);
  EXPECT_EQ(count_uncovered(d, cover, 100000, fresh), 0u);
}

TEST(Wedge, BaseGeometry) {
  const auto& w = wedge();
  const auto rays = w.base_rays();
  for (const auto& n : w.base_planes()) {
    EXPECT_NEAR(n.norm(), 1.0, 1e-12);
    // Each plane passes through two rays and has the third on its inner side.
    int on = 0;
    for (const auto& r : rays) {
      const double s = n.dot(r);
      if (std::abs(s) < 1e-12) ++on;
      else EXPECT_GT(s, 0.0);
    }
    EXPECT_EQ(on, 2);
  }
  // The face ray is a 5-fold axis; the vertex rays are 3-fold axes.
  EXPECT_NEAR(rays[1].dot(rays[0]), rays[2].dot(rays[0]), 1e-12);
  EXPECT_TRUE(w.contains(Rotation::identity()));
}

TEST(Wedge, LocateInteriorAndEquivariance) {
  const auto& w = wedge();
  const auto rays = w.base_rays();
  const Vec3 inner = 0.2 * (rays[0] + rays[1] + rays[2]).normalized();
  EXPECT_EQ(wedge_locate(w, inner), icosa().identity_index());
  for (std::size_t j = 0; j < icosa().size(); ++j) {
    EXPECT_EQ(wedge_locate(w, icosa()[j] * inner), j);
  }
}

TEST(Wedge, LocateRejectsOutsideCell) {
  const auto rays = wedge().base_rays();
  try {
    (void)wedge_locate(wedge(), 2.0 * rays[0]);
    FAIL() << "expected OutOfDomain";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfDomain);
  }
}

TEST(Wedge, LocateAgreesWithExhaustiveScan) {
  const auto& w = wedge();
  const CosetDomain cell(icosa());
  std::mt19937_64 rng(12);
  for (int s = 0; s < 10000; ++s) {
    const Rotation r = sample_coset_cell(cell, rng);
    const Vec3 x = log_so3(r);
    const std::size_t j = wedge_locate(w, x);
    std::size_t first = icosa().size();
    for (std::size_t k = 0; k < icosa().size(); ++k) {
      const Vec3 y = icosa()[k].inverse() * x;
      const auto& n = w.base_planes();
      if (n[0].dot(y) >= -1e-12 && n[1].dot(y) >= -1e-12 && n[2].dot(y) >= -1e-12) {
        first = k;
        break;
      }
    }
    ASSERT_EQ(j, first);
  }
}

TEST(Wedge, PartitionAndVolumeFraction) {
  const auto& w = wedge();
  const CosetDomain cell(icosa());
  std::mt19937_64 rng(13);
  const int n = 100000;
  int in_base = 0;
  for (int s = 0; s < n; ++s) {
    const Rotation r = sample_coset_cell(cell, rng);
    const Vec3 x = skew_vector(r.matrix());
    const auto [strict, loose] = w.cone_multiplicity(x);
    ASSERT_GE(loose, 1u);
    if (strict == 1) {
      ASSERT_EQ(loose, 1u);
    }
    ASSERT_LE(strict, 1u);
    in_base += w.contains(r);
  }
  const double p = 1.0 / 60;
  EXPECT_NEAR(static_cast<double>(in_base) / n, p, 5 * std::sqrt(p * (1 - p) / n));
}

TEST(Wedge, RejectsNonIcosahedral) {
  EXPECT_THROW(WedgeDomain(generate_platonic(PlatonicKind::Octahedral)), Error);
}
