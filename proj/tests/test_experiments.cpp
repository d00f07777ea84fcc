#include "icotomo/experiments.hpp"
#include "icotomo/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace icotomo;
using namespace icotomo::testing;

TEST(Weyl, WindowCentroidIsShift) {
  ExperimentConfig cfg;
  EXPECT_EQ(window_moments(cfg.params.window).centroid, default_window_shift());
  Vec3q s{GoldenRat::fraction(1, 7), 0, GoldenRat::fraction(-2, 5)};
  EXPECT_EQ(window_moments(icosahedron_window(s)).centroid, s);
}

TEST(Weyl, DeviationDecreases) {
  ExperimentConfig cfg;
  cfg.workers = 4;
  auto rep = weyl_experiment(cfg);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.strictly_decreasing());
  EXPECT_TRUE(rep.below_threshold());
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) EXPECT_LT(rep.rows[i].card, rep.rows[i + 1].card);

  // a different ball centre: deviations stay on a decreasing envelope
  cfg.params.center = {GoldenRat::fraction(7, 3), GoldenRat(-1), GoldenRat::fraction(1, 2)};
  auto other = weyl_experiment(cfg);
  EXPECT_LT(other.rows.back().deviation, rep.rows.front().deviation);
  EXPECT_LT(other.rows.back().deviation, other.rows.front().deviation);
}

TEST(Weyl, StarCentroidMatchesEnumeration) {
  PatchParams p;
  p.radius = 5;
  auto patch = enumerate_patch(p);
  std::array<double, 3> sum{};
  for (const auto& x : patch.physical_points()) {
    auto y = embed(star(x));
    for (std::size_t i = 0; i < 3; ++i) sum[i] += y[i];
  }
  auto c = star_centroid(p, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(c[i], sum[i] / patch.points.size(), 1e-12);
}

TEST(Weyl, Errors) {
  ExperimentConfig cfg;
  cfg.radii = {};
  EXPECT_THROW(weyl_experiment(cfg), std::invalid_argument);
  cfg.radii = {20, 10};
  EXPECT_THROW(weyl_experiment(cfg), std::invalid_argument);
  cfg.radii = {GoldenRat::fraction(1, 1000000000)};
  cfg.params.center = {GoldenRat::fraction(1, 3), GoldenRat::fraction(1, 7), GoldenRat::fraction(1, 11)};
  EXPECT_THROW(weyl_experiment(cfg), EmptyPatch);
}

TEST(CentroidRecovery, EstimatesShift) {
  PatchParams p;
  p.radius = 40;
  const Vec3q s = default_window_shift();
  const Vec3q s2{GoldenRat::fraction(1, 5), GoldenRat::fraction(-1, 10), GoldenRat::fraction(3, 20)};
  auto e1 = centroid_window_recovery(p, {s, s2}, 4);
  EXPECT_EQ(e1.best, 0u);
  EXPECT_LT(e1.residual, 0.1);

  PatchParams q = p;
  q.window = icosahedron_window(s2);
  auto e2 = centroid_window_recovery(q, {s, s2}, 4);
  EXPECT_EQ(e2.best, 1u);
  auto d = embed(s2 - s);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(e2.estimate[i] - e1.estimate[i], d[i], 0.02);

  // the stored-set version agrees with the streamed one
  p.radius = 8;
  auto patch = enumerate_patch(p);
  auto a = centroid_window_recovery(patch.physical_points(), p.translate, p.window, {s});
  auto b = centroid_window_recovery(p, {s});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(a.estimate[i], b.estimate[i], 1e-12);

  p.radius = 10;
  auto r10 = centroid_window_recovery(p, {s}).residual;
  p.radius = 40;
  EXPECT_LT(centroid_window_recovery(p, {s}, 4).residual, r10);
}

TEST(Io, Scalars) {
  using namespace io;
  GoldenInt big{Integer("123456789012345678901234567890"), -3};
  auto j = to_json(big);
  EXPECT_TRUE(j[0].is_string());
  EXPECT_EQ(golden_int_from(j), big);
  GoldenRat r(GoldenInt(3, -4), 7);
  EXPECT_EQ(to_json(r).dump(), "[3,-4,7]");
  EXPECT_EQ(golden_rat_from(to_json(r)), r);
  EXPECT_THROW(golden_rat_from(json::parse("[1,2,0]")), FormatError);
  EXPECT_THROW(golden_int_from(json::parse("[1]")), FormatError);
  EXPECT_THROW(integer_from(json::parse("\"x1\"")), FormatError);
}

TEST(Io, PatchRoundTrip) {
  PatchParams p;
  p.type = ModelType::F;
  p.radius = 5;
  auto patch = enumerate_patch(p);
  auto text = io::to_json(patch).dump();
  auto back = io::patch_from(io::json::parse(text));
  EXPECT_TRUE(io::same_patch(patch, back));
  EXPECT_EQ(io::to_json(back).dump(), text);

  auto bad = io::to_json(patch);
  bad["points"].push_back(io::to_json(Vec3i{1, 0, 0}));
  EXPECT_THROW(io::patch_from(bad), io::FormatError);
}

TEST(Io, SliceRoundTrip) {
  const auto& patch = patch_B(8);
  auto s = slice_patch(patch, 0);
  auto back = io::slice_from(io::to_json(s));
  EXPECT_EQ(back.height, s.height);
  EXPECT_EQ(back.lambda, s.lambda);
  EXPECT_EQ(back.points, s.points);
  EXPECT_EQ(back.window.vertices, s.window.vertices);
  for (const auto& z : s.points) EXPECT_NE(back.window.classify(star5(z)), Location::Outside);
  EXPECT_EQ(io::to_json(back).dump(), io::to_json(s).dump());
}

TEST(Io, XRayAndInstanceRoundTrip) {
  const auto U = plane_directions();
  std::mt19937_64 rng(3);
  PatchParams p;
  p.radius = 6;
  auto F = random_subset(patch_B(6).physical_points(), 10, rng);
  io::InstanceFile f{xray(F, U[0]), xray(F, U[1]), p};
  auto text = io::to_json(f).dump();
  auto back = io::instance_from(io::json::parse(text));
  EXPECT_EQ(back.p1, f.p1);
  EXPECT_EQ(back.p2, f.p2);
  EXPECT_EQ(io::to_json(back).dump(), text);
  auto inst = io::load_instance(back);
  EXPECT_TRUE(consistency(inst));

  std::vector<CycPoint> G{{1, 0}, {GoldenRat(GoldenInt(1, 1)), GoldenRat(2)}};
  auto x2 = xray(G, make_direction(CycPoint{0, 1}));
  EXPECT_EQ(io::xray2_from(io::to_json(x2)), x2);
  EXPECT_EQ(io::points_from(io::points_json(F)), F);
  EXPECT_EQ(io::cyc_points_from(io::points_json(G)), G);
}

TEST(Io, ReportsAndConfig) {
  ExperimentConfig cfg;
  cfg.radii = {5, 8};
  auto rep = weyl_experiment(cfg);
  auto text = io::to_json(rep).dump();
  EXPECT_EQ(io::to_json(io::centroid_report_from(io::json::parse(text))).dump(), text);

  cfg.seed = 99;
  cfg.directions = "ico";
  auto c = io::config_from(io::to_json(cfg));
  EXPECT_EQ(io::to_json(c).dump(), io::to_json(cfg).dump());
  EXPECT_THROW(io::config_from(io::json::parse(R"({"radii": [[20,0,1],[10,0,1]]})")), std::invalid_argument);
}
