#include "icotomo/slicing.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace icotomo;

namespace {

const GoldenRat kT = GoldenRat::tau();
const GoldenRat kTc = GoldenRat(GoldenInt::tau_conj());
const GoldenRat kHalf = GoldenRat::fraction(1, 2);

GoldenRat random_rat(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::uniform_int_distribution<int> den(1, 6);
  return GoldenRat(GoldenInt(d(rng), d(rng)), den(rng));
}

std::size_t index_of(const ModelSetPatch& patch, const Vec3i& num) {
  for (std::size_t i = 0; i < patch.points.size(); ++i)
    if (patch.points[i].num == num) return i;
  return patch.points.size();
}

}  // namespace

TEST(Phi, BasisImages) {
  EXPECT_EQ(phi(Vec3q{0, 1, 0}), (CycPoint{1, 0}));
  EXPECT_EQ(phi(Vec3q{-kHalf, -kHalf * kTc, kHalf * kT}), (CycPoint{0, 1}));
  EXPECT_EQ(phi_star(Vec3q{0, 1, 0}), (CycPoint{1, 0}));
  EXPECT_EQ(phi_star(Vec3q{-kHalf, -kHalf * kT, kHalf * kTc}), (CycPoint{0, 1}));
  EXPECT_THROW(phi(Vec3q{1, 0, 0}), NotInPlane);
  EXPECT_THROW(phi_star(Vec3q{0, 0, 1}), NotInPlane);
}

TEST(Phi, UnitPentagonEdge) {
  Vec3q v = Vec3q{0, 1, 0} + Vec3q{-kHalf, -kHalf * kTc, kHalf * kT};
  EXPECT_EQ(norm2(v), GoldenRat(2) - kTc);
  EXPECT_EQ(norm2(v), GoldenRat(1) + kT);
  EXPECT_EQ(abs2(CycPoint{1, 1}), kT * kT);
  EXPECT_EQ(abs2(phi(v)), norm2(v));
}

TEST(Phi, IsometryOnRandomPlanePoints) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 1000; ++n) {
    CycPoint z{random_rat(rng, 30), random_rat(rng, 30)};
    Vec3q v = phi_inverse(z);
    ASSERT_TRUE(height(v).is_zero());
    ASSERT_EQ(phi(v), z);
    ASSERT_EQ(norm2(v), abs2(z));
    Vec3q w = phi_star_inverse(z);
    ASSERT_EQ(phi_star(w), z);
    ASSERT_EQ(norm2(w), abs2_internal(z));
    // Phi* o star = star5 o Phi
    ASSERT_EQ(phi_star(star(v)), star5(z));
  }
}

TEST(Slicing, BasisCheck) {
  EXPECT_TRUE(slice_basis_check(ModelType::B));
  EXPECT_TRUE(slice_basis_check(ModelType::F));
  EXPECT_TRUE(height(Vec3q{0, 1, 0}).is_zero());
  EXPECT_TRUE(dot(Vec3q{0, 1, 0}, slice_normal_star()).is_zero());
}

TEST(Slicing, CentralCrossSectionIsDecagon) {
  SliceWindow w = slice_window(icosahedron_window(), {0, 0, 0});
  EXPECT_EQ(w.vertices.size(), 10u);
  // a plane missing the window yields an empty window
  SliceWindow far = slice_window(icosahedron_window(), {10, 0, 10});
  EXPECT_TRUE(far.empty());
}

TEST(Slicing, SliceContainsLambda) {
  PatchParams p;
  p.radius = 8;
  auto patch = enumerate_patch(p);
  auto zero = index_of(patch, {0, 0, 0});
  ASSERT_LT(zero, patch.points.size());
  Slice s = slice_patch(patch, zero);
  EXPECT_TRUE(std::binary_search(s.points.begin(), s.points.end(), CycPoint{0, 0}, StructLess{}));
  for (const auto& z : s.points) {
    EXPECT_TRUE(z.is_integral());
    EXPECT_TRUE(s.window.contains(star5(z)));
  }
}

TEST(Slicing, SlicesPartitionThePatch) {
  PatchParams p;
  p.type = ModelType::F;
  p.radius = 7;
  auto patch = enumerate_patch(p);
  std::size_t total = 0;
  for (const auto& [h, idx] : slices_by_height(patch)) {
    Slice s = slice_patch(patch, idx.front());
    EXPECT_EQ(s.points.size(), idx.size());
    for (const auto& z : s.points) EXPECT_EQ(height(phi_inverse(z) + s.lambda), h);
    total += s.points.size();
  }
  EXPECT_EQ(total, patch.points.size());
}

TEST(Slicing, MatchesDirectCyclotomicGeneration) {
  for (ModelType type : {ModelType::B, ModelType::F}) {
    PatchParams p;
    p.type = type;
    p.radius = 9;
    auto patch = enumerate_patch(p);
    std::mt19937_64 rng(33);
    for (int n = 0; n < 6; ++n) {
      std::size_t li = rng() % patch.points.size();
      Vec3q lambda = patch.physical(patch.points[li]);
      GoldenRat r2 = inner_disk_radius2(patch, lambda);
      if (r2.is_zero()) continue;
      Slice s = slice_patch(patch, li);
      auto direct = cyclotomic_patch(s.window, r2);
      EXPECT_EQ(restrict_to_disk(s.points, r2), direct) << to_string(type) << " slice " << n;
    }
  }
}
