#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "motionalpha/alphabet.hpp"
#include "motionalpha/finite_group.hpp"

using namespace motionalpha;

namespace {

const Vec3 kReferenceLog(0.435897435897436, -0.076923076923077, -0.128205128205128);

void expect_latin_square(const FiniteRotationGroup& g) {
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a) {
    std::set<std::size_t> row;
    std::set<std::size_t> col;
    for (std::size_t b = 0; b < n; ++b) {
      row.insert(g.product(a, b));
      col.insert(g.product(b, a));
      const Mat3 prod = g[a].matrix() * g[b].matrix();
      ASSERT_LE(frobenius_distance(prod, g[g.product(a, b)].matrix()), 1e-9);
    }
    EXPECT_EQ(row.size(), n);
    EXPECT_EQ(col.size(), n);
    EXPECT_EQ(g.product(a, g.inverse(a)), g.identity_index());
  }
}

std::vector<double> sorted_angles(const FiniteRotationGroup& g) {
  std::vector<double> out;
  for (const auto& e : g.elements()) out.push_back(rotation_angle(e.matrix()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Platonic, Orders) {
  EXPECT_EQ(generate_platonic(PlatonicKind::Tetrahedral).size(), 12u);
  EXPECT_EQ(generate_platonic(PlatonicKind::Octahedral).size(), 24u);
  EXPECT_EQ(generate_platonic(PlatonicKind::Icosahedral).size(), 60u);
}

TEST(Platonic, CayleyTablesAreLatinSquares) {
  for (auto kind : {PlatonicKind::Tetrahedral, PlatonicKind::Octahedral,
                    PlatonicKind::Icosahedral}) {
    const auto g = generate_platonic(kind);
    SCOPED_TRACE(g.name());
    expect_latin_square(g);
  }
}

TEST(Platonic, IdentityFirstAndElementsDistinct) {
  const auto g = generate_platonic(PlatonicKind::Icosahedral);
  EXPECT_EQ(g[0].matrix(), Mat3::Identity());
  double min_dist = 1e9;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      min_dist = std::min(min_dist, frobenius_distance(g[a].matrix(), g[b].matrix()));
    }
    EXPECT_LT((g[a].matrix().transpose() * g[a].matrix() - Mat3::Identity()).cwiseAbs().maxCoeff(),
              1e-12);
  }
  EXPECT_GT(min_dist, 1e-6);
}

TEST(Platonic, AngleCensus) {
  // Icosahedral: 1 identity, 15 half-turns, 20 of order 3, 24 of order 5.
  const auto g = generate_platonic(PlatonicKind::Icosahedral);
  std::map<int, int> census;
  for (const auto& e : g.elements()) {
    ++census[static_cast<int>(std::lround(rotation_angle(e.matrix()) * 180 / kPi))];
  }
  EXPECT_EQ(census[0], 1);
  EXPECT_EQ(census[72], 12);
  EXPECT_EQ(census[144], 12);
  EXPECT_EQ(census[120], 20);
  EXPECT_EQ(census[180], 15);
}

TEST(Platonic, SortedByAngle) {
  const auto g = generate_platonic(PlatonicKind::Octahedral);
  for (std::size_t k = 1; k < g.size(); ++k) {
    EXPECT_LE(rotation_angle(g[k - 1].matrix()), rotation_angle(g[k].matrix()) + 1e-9);
  }
}

TEST(Platonic, DeterministicIndexing) {
  const auto a = generate_platonic(PlatonicKind::Icosahedral);
  const auto b = generate_platonic(PlatonicKind::Icosahedral);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].matrix(), b[k].matrix());
}

TEST(Platonic, TetrahedralIsCommonSubgroup) {
  const auto t = generate_platonic(PlatonicKind::Tetrahedral);
  EXPECT_TRUE(is_subgroup(t, generate_platonic(PlatonicKind::Octahedral)));
  EXPECT_TRUE(is_subgroup(t, generate_platonic(PlatonicKind::Icosahedral)));
  EXPECT_FALSE(is_subgroup(generate_platonic(PlatonicKind::Octahedral),
                           generate_platonic(PlatonicKind::Icosahedral)));
}

TEST(Cyclic, Elements) {
  const auto c1 = generate_cyclic(1);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1[0].matrix(), Mat3::Identity());

  const auto c5 = generate_cyclic(5);
  ASSERT_EQ(c5.size(), 5u);
  for (int j = 0; j < 5; ++j) {
    const double expected = 2 * kPi * j / 5;
    const Vec3 x = log_so3(c5[static_cast<std::size_t>(j)], 0.0);
    EXPECT_NEAR(std::atan2(c5[j](1, 0), c5[j](0, 0)), wrap_angle(expected), 1e-12);
    EXPECT_NEAR(x.head<2>().norm(), 0.0, 1e-12);
  }
  expect_latin_square(c5);
  EXPECT_EQ(generate_cyclic(2 * 3 - 1).size(), 5u);
  EXPECT_THROW((void)generate_cyclic(0), Error);
}

TEST(Cyclic, Planar) {
  const auto c5 = generate_cyclic_planar(5);
  EXPECT_EQ(c5.order, 5);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(c5.angle(j) * 180 / kPi, 72.0 * j, 1e-12);
  EXPECT_LT((c5.matrix(1) - rot2(2 * kPi / 5)).norm(), 1e-15);
  EXPECT_THROW((void)generate_cyclic_planar(0), Error);
}

TEST(Closure, TrivialAndIcosahedral) {
  const std::vector<Rotation> id{Rotation::identity()};
  EXPECT_EQ(closure_from_generators(id, 1).size(), 1u);

  const double phi = 0.5 * (1 + std::sqrt(5.0));
  const std::vector<Rotation> gens{exp_so3(Vec3(phi, 0, 1).normalized() * 2 * kPi / 5),
                                   exp_so3(Vec3(0, 0, kPi))};
  const auto g = closure_from_generators(gens, 60);
  const auto ref = generate_platonic(PlatonicKind::Icosahedral);
  ASSERT_EQ(g.size(), 60u);
  EXPECT_TRUE(is_subgroup(g, ref));
  EXPECT_TRUE(is_subgroup(ref, g));
}

TEST(Closure, IrrationalAngleIsNotFinite) {
  const std::vector<Rotation> gens{exp_so3(Vec3(0, 0, 0.1))};
  try {
    (void)closure_from_generators(gens, 100);
    FAIL() << "expected NotFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFinite);
  }
}

TEST(Group, ConstructorRejectsNonGroups) {
  std::vector<Rotation> missing_identity{exp_so3(Vec3(0, 0, kPi))};
  EXPECT_THROW(FiniteRotationGroup("x", missing_identity), Error);
  std::vector<Rotation> not_closed{Rotation::identity(), exp_so3(Vec3(0, 0, 2 * kPi / 3))};
  EXPECT_THROW(FiniteRotationGroup("x", not_closed), Error);
  std::vector<Rotation> duplicate{Rotation::identity(), Rotation::identity()};
  EXPECT_THROW(FiniteRotationGroup("x", duplicate), Error);
}

TEST(Conjugate, IdentityKeepsGroup) {
  const auto h = generate_platonic(PlatonicKind::Icosahedral);
  const auto k = conjugate_group(h, Rotation::identity());
  for (std::size_t i = 0; i < h.size(); ++i) EXPECT_EQ(h[i].matrix(), k[i].matrix());
}

TEST(Conjugate, ReferenceConjugationIsTrivial) {
  const auto h = generate_platonic(PlatonicKind::Icosahedral);
  const auto k = conjugate_group(h, exp_so3(kReferenceLog));
  EXPECT_EQ(k.size(), 60u);
  EXPECT_TRUE(trivial_intersection(h, k));
  const auto ah = sorted_angles(h);
  const auto ak = sorted_angles(k);
  for (std::size_t i = 0; i < ah.size(); ++i) EXPECT_NEAR(ah[i], ak[i], 1e-12);
}

TEST(Conjugate, ReferenceVectorIsRational) {
  // (17, -3, -5) / 39, norm about 0.4608.
  EXPECT_NEAR(kReferenceLog.x(), 17.0 / 39, 1e-15);
  EXPECT_NEAR(kReferenceLog.y(), -3.0 / 39, 1e-15);
  EXPECT_NEAR(kReferenceLog.z(), -5.0 / 39, 1e-15);
  EXPECT_EQ(default_conjugation(), kReferenceLog);
}

TEST(Intersection, SelfAndStandardFrames) {
  const auto h = generate_platonic(PlatonicKind::Icosahedral);
  EXPECT_FALSE(trivial_intersection(h, h));
  // Standard octahedral and icosahedral groups share the tetrahedral subgroup.
  const auto o = generate_platonic(PlatonicKind::Octahedral);
  EXPECT_EQ(common_elements(o, h).size(), 12u);
  EXPECT_FALSE(trivial_intersection(o, h));
  // The conjugated Delta used by the SE(3) alphabet is disjoint from it.
  EXPECT_TRUE(trivial_intersection(o, conjugate_group(h, exp_so3(default_conjugation()))));
}
