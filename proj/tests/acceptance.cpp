// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include "icotomo/icotomo.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace icotomo;
using namespace icotomo::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

GoldenRat random_rat(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return {GoldenInt(d(rng), d(rng)), 1 + static_cast<int>(rng() % 9)};
}

GoldenInt random_int(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return {d(rng), d(rng)};
}

void icosian_closure(Outcome& o) {
  auto g = icosian_group();
  bool norms = std::all_of(g.begin(), g.end(), [](const auto& q) { return reduced_norm(q) == GoldenRat(1); });
  auto Y = rotation_group(RotationGroup::Y).size();
  auto Yhs = rotation_group(RotationGroup::Yhstar).size();
  o.require(g.size() == 120, "icosian group order");
  o.require(norms, "reduced norms");
  o.require(Y == 60, "|Y|");
  o.require(Yhs == 120, "|Y_h*|");
  o.detail << "|I^x| = " << g.size() << ", |Y| = " << Y << ", |Y_h*| = " << Yhs;
}

void module_arithmetic(Outcome& o) {
  long index = module_index_MF_in_MB();
  o.require(index == 4, "index");
  std::mt19937_64 rng(2);
  const auto mb = module_bases(ModuleTag::MB), mf = module_bases(ModuleTag::MF);
  int in_mb = 0, in_mf = 0, disagreements = 0;
  for (int n = 0; n < 10000; ++n) {
    Vec3i v{random_int(rng, 5), random_int(rng, 5), random_int(rng, 5)};
    Vec3q q = to_rat(v);
    auto r = residues(v);
    bool b1 = mb_congruence(r), b2 = basis_contains(mb[0], q), b3 = basis_contains(mb[1], q);
    bool f1 = mf_congruence(r), f2 = mf_congruence_via_sum(r), f3 = basis_contains(mf[0], q),
         f4 = basis_contains(mf[1], q);
    if (!(b1 == b2 && b2 == b3 && f1 == f2 && f2 == f3 && f3 == f4) || (f1 && !b1)) ++disagreements;
    in_mb += b1;
    in_mf += f1;
  }
  o.require(disagreements == 0, "congruence forms disagree");
  o.detail << "[M_B : M_F] = " << index << "; 10^4 probes: " << in_mb << " in M_B, " << in_mf << " in M_F, "
           << disagreements << " disagreements";
}

void slice_identity(Outcome& o) {
  int compared = 0;
  std::size_t points = 0;
  for (ModelType type : {ModelType::B, ModelType::F}) {
    PatchParams p;
    p.type = type;
    p.radius = 15;
    auto patch = enumerate_patch(p, 4);
    std::mt19937_64 rng(type == ModelType::B ? 15 : 16);
    std::set<GoldenRat, StructLess> heights;
    int done = 0;
    for (int attempt = 0; done < 6 && attempt < 100; ++attempt) {
      std::size_t li = attempt == 0 ? 0 : rng() % patch.points.size();
      if (attempt == 0)
        while (!is_zero(patch.points[li].num)) ++li;
      Vec3q lambda = patch.physical(patch.points[li]);
      if (heights.count(height(lambda))) continue;
      GoldenRat r2 = inner_disk_radius2(patch, lambda);
      if (sign(r2 - GoldenRat(4)) < 0) continue;
      heights.insert(height(lambda));
      Slice s = slice_patch(patch, li);
      auto mine = restrict_to_disk(s.points, r2);
      auto direct = cyclotomic_patch(s.window, r2);
      o.require(mine == direct, std::string(to_string(type)) + " slice set equality");
      points += direct.size();
      ++done;
      ++compared;
    }
    o.require(done >= 5, std::string("fewer than 5 slices for ") + to_string(type));
  }
  o.detail << compared << " slices (B and F, radius 15), " << points << " points compared";
}

void phi_isometry(Outcome& o) {
  std::mt19937_64 rng(4);
  const GoldenRat tc = GoldenRat(GoldenInt::tau_conj());
  int bad = 0;
  for (int n = 0; n < 1000; ++n) {
    CycPoint z{random_rat(rng, 25), random_rat(rng, 25)};
    Vec3q v = phi_inverse(z);
    GoldenRat formula = z.alpha * z.alpha + z.beta * z.beta - z.alpha * z.beta * tc;
    if (!height(v).is_zero() || phi(v) != z || norm2(v) != formula || abs2(z) != formula) ++bad;
  }
  bool edge = abs2(CycPoint{1, 1}) == GoldenRat::tau() * GoldenRat::tau();
  o.require(bad == 0, "squared length identity");
  o.require(edge, "|1 + zeta|^2 = tau^2");
  o.detail << "10^3 samples, " << bad << " mismatches; |1+zeta|^2 = tau^2: " << (edge ? "yes" : "no");
}

void star_contraction(Outcome& o) {
  std::mt19937_64 rng(5);
  const GoldenRat t = GoldenRat::tau();
  int bad = 0;
  for (int n = 0; n < 1000; ++n) {
    Vec3q a{random_rat(rng, 30), random_rat(rng, 30), random_rat(rng, 30)};
    auto [x, y] = mtau_star_contraction_check(a);
    GoldenRat direct = norm2(star(t * a)), expect = norm2(star(a)) / (t * t);
    if (x != y || direct != expect || x != direct) ++bad;
  }
  o.require(bad == 0, "contraction identity");
  o.detail << "10^3 samples, " << bad << " mismatches";
}

void small_sets_determined(Outcome& o) {
  const auto& pts = patch_B(8).physical_points();
  auto U = u_ico_directions(ModelType::B);
  std::mt19937_64 rng(6);
  int checked = 0, bad = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<Direction3> Uk(U.begin(), U.begin() + static_cast<long>(k + 1));
    for (std::size_t i = 0; i < Uk.size(); ++i) {
      o.require(height(Uk[i].rep()).is_zero(), "direction outside H");
      for (std::size_t j = i + 1; j < Uk.size(); ++j) o.require(!parallel(Uk[i], Uk[j]), "parallel directions");
    }
    for (int n = 0; n < 200; ++n) {
      auto F = canonical_set(random_subset(pts, 1 + rng() % k, rng));
      if (grid(F, Uk) != F) ++bad;
      ++checked;
    }
  }
  o.require(bad == 0, "grid(F, U) = F");
  o.detail << checked << " sets (k = 1..3), " << bad << " with a larger grid";
}

void switching_components(Outcome& o) {
  PatchParams params;
  params.radius = 60;
  auto U = u_ico_directions(ModelType::B);
  std::ostringstream cards;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<Direction3> Uk(U.begin(), U.begin() + static_cast<long>(k));
    SwitchingPair sp;
    try {
      sp = switching_pair(Uk, params);
    } catch (const std::exception& e) {
      o.require(false, std::string("k = ") + std::to_string(k) + ": " + e.what());
      continue;
    }
    const std::size_t want = std::size_t{1} << (k - 1);
    o.require(sp.F.size() == want && sp.G.size() == want, "cardinality");
    std::set<Vec3q, StructLess> f(sp.F.begin(), sp.F.end());
    bool disjoint = std::none_of(sp.G.begin(), sp.G.end(), [&](const Vec3q& x) { return f.count(x) > 0; });
    o.require(disjoint && canonical_set(sp.F) != canonical_set(sp.G), "disjoint and distinct");
    for (const auto& x : sp.F) o.require(in_model_set(params, x), "F inside the model set");
    for (const auto& x : sp.G) o.require(in_model_set(params, x), "G inside the model set");
    for (const auto* S : {&sp.F, &sp.G})
      for (const auto& x : *S)
        o.require(sign(params.radius * params.radius - norm2(x - params.center)) > 0, "inside the patch ball");
    o.require(same_xrays(sp.F, sp.G, Uk), "equal X-rays");
    for (GoldenRat lambda : {GoldenRat::tau(), GoldenRat(3), GoldenRat::fraction(2, 7)})
      o.require(homothety_transport(sp.F, sp.G, Uk, lambda, Vec3q{1, GoldenRat::fraction(1, 3), GoldenRat::tau()}),
                "homothety transport");
    for (const auto& u : Uk) o.require(centroid_check(sp.F, sp.G, u), "centroid collinearity");
    cards << (k > 1 ? ", " : "") << sp.F.size();
  }
  o.detail << "k = 1..4, card " << cards.str() << " (patch radius 60)";
}

void property_E(Outcome& o) {
  const GoldenInt t = GoldenInt::tau();
  auto e = property_E_check(CycPoint{GoldenRat(GoldenInt(1, 1)), 1}, CycPoint{GoldenRat(-t), 1});
  o.require(e.determinant == t * t * t, "determinant tau^3");
  o.require(e.is_unit && norm(e.determinant) == -1, "unit of norm -1");
  o.require(has_property_E(u5_directions()), "U5 has property (E)");
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-4, 4);
  int bad = 0;
  for (int n = 0; n < 100; ++n) {
    std::vector<CycPoint> F;
    for (int i = 0, m = 1 + static_cast<int>(rng() % 7); i < m; ++i)
      F.push_back({GoldenInt(d(rng), d(rng)), GoldenInt(d(rng), d(rng))});
    if (!grid_integrality(canonical_set(F), u5_directions())) ++bad;
  }
  o.require(bad == 0, "grid integrality");
  o.detail << "det = " << to_string(e.determinant) << " (norm " << norm(e.determinant) << "); 100 sets, " << bad
           << " non-integral grids";
}

void convex_uniqueness(Outcome& o) {
  PatchParams p;
  p.radius = 15;
  auto patch = enumerate_patch(p, 4);
  SamplerConfig cfg;
  cfg.samples = 200;
  int slices = 0, distinct = 0;
  std::size_t collisions = 0;
  std::mt19937_64 rng(9);
  std::set<GoldenRat, StructLess> heights;
  for (int attempt = 0; slices < 3 && attempt < 100; ++attempt) {
    std::size_t li = 0;
    if (attempt == 0) {
      while (!is_zero(patch.points[li].num)) ++li;
    } else {
      li = rng() % patch.points.size();
    }
    Vec3q lambda = patch.physical(patch.points[li]);
    GoldenRat r2 = inner_disk_radius2(patch, lambda);
    if (sign(r2 - GoldenRat(64)) < 0 || heights.count(height(lambda))) continue;
    heights.insert(height(lambda));
    Slice s = slice_patch(patch, li);
    cfg.seed = 100 + static_cast<std::uint64_t>(slices);
    auto rep = uniqueness_experiment_slice(restrict_to_disk(s.points, r2), u5_directions(), cfg, r2);
    o.require(rep.distinct == cfg.samples, "distinct slice samples");
    o.require(rep.all_convex, "slice samples convex");
    collisions += rep.collisions.size();
    distinct += rep.distinct;
    ++slices;
  }
  o.require(slices == 3, "three slices with a large inner disk");
  PatchParams q;
  q.radius = 6;
  SamplerConfig c3;
  c3.samples = 100;
  c3.seed = 10;
  auto rep3 = uniqueness_experiment_3d(enumerate_patch(q).physical_points(), u_ico_directions(ModelType::B), c3);
  o.require(rep3.distinct == 100 && rep3.all_convex, "3D samples");
  collisions += rep3.collisions.size();
  o.require(collisions == 0, "signature collision");
  o.detail << slices << " slices x 200 planar sets (U5) + " << rep3.distinct << " spatial sets (U_ico): "
           << collisions << " collisions";
}

void reconstruction_oracle(Outcome& o) {
  std::mt19937_64 rng(10);
  int mismatches = 0, infeasible = 0, nonunique = 0;
  for (int n = 0; n < 100; ++n) {
    auto inst = small_instance(rng, 20);
    auto all = brute_force_oracle(inst);
    bool cons = consistency(inst);
    bool feasible = true;
    std::vector<Vec3q> G;
    try {
      G = reconstruct(inst);
    } catch (const Infeasible&) {
      feasible = false;
    }
    bool ok = cons == !all.empty() && feasible == cons;
    if (cons) {
      ok = ok && std::find(all.begin(), all.end(), G) != all.end();
      ok = ok && uniqueness(inst).unique == (all.size() == 1);
      nonunique += all.size() > 1;
    } else {
      ++infeasible;
    }
    mismatches += !ok;
  }
  o.require(mismatches == 0, "oracle verdicts");
  o.require(infeasible > 0 && nonunique > 0, "instance mix");

  const auto U = plane_directions();
  const auto& pts = patch_B(10).physical_points();
  double worst = 0;
  std::size_t most = 0;
  int roundtrip_bad = 0;
  for (int n = 0; n < 100; ++n) {
    // a dense local cluster makes many line pairs meet inside the patch
    const Vec3q& c = pts[rng() % pts.size()];
    std::vector<Vec3q> near;
    for (const auto& x : pts) {
      auto d = embed(x - c);
      if (d[0] * d[0] + d[1] * d[1] + d[2] * d[2] < 9) near.push_back(x);
    }
    auto F = random_subset(near, n % 2 == 0 ? 5 + rng() % 46 : 50 + rng() % 251, rng);
    std::size_t i = rng() % U.size(), j = (i + 1 + rng() % (U.size() - 1)) % U.size();
    auto inst = make_instance(F, U[i], U[j], pts);
    auto t0 = std::chrono::steady_clock::now();
    std::size_t cand = candidate_count(inst);
    auto G = reconstruct(inst);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, secs);
    most = std::max(most, cand);
    if (!(xray(G, U[i]) == inst.p1 && xray(G, U[j]) == inst.p2)) ++roundtrip_bad;
  }
  o.require(roundtrip_bad == 0, "round trip");
  o.require(most <= 1000, "candidate bound");
  o.require(worst < 2.0, "time per large instance");
  o.detail << "100 small instances (" << infeasible << " infeasible, " << nonunique << " non-unique), " << mismatches
           << " mismatches; 100 round trips, up to " << most << " candidates, slowest " << std::fixed
           << std::setprecision(3) << worst << " s";
}

void weyl_trend(Outcome& o) {
  ExperimentConfig cfg;
  cfg.workers = 4;
  auto rep = weyl_experiment(cfg);
  o.require(rep.window_centroid == default_window_shift(), "window centroid = s");
  o.require(rep.strictly_decreasing(), "strictly decreasing deviations");
  o.require(rep.below_threshold(), "final deviation below threshold");
  o.detail << "deviation (edge units)";
  for (const auto& row : rep.rows) o.detail << " R=" << to_string(row.radius) << ": " << row.deviation_edge;
  o.detail << "; threshold " << rep.threshold;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"icosian group closure and rotation group orders", icosian_closure},
      {"module index and congruence descriptions", module_arithmetic},
      {"slice patches equal cyclotomic patches", slice_identity},
      {"Phi isometry", phi_isometry},
      {"star contraction of tau-multiples", star_contraction},
      {"k+1 directions determine sets of card <= k", small_sets_determined},
      {"switching components for k = 1..4", switching_components},
      {"property (E) and grid integrality", property_E},
      {"convex subsets have distinct X-ray signatures", convex_uniqueness},
      {"two-direction reconstruction matches the oracle", reconstruction_oracle},
      {"Weyl star-centroid trend", weyl_trend},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << "  ("
              << std::fixed << std::setprecision(1) << secs << " s)  " << o.detail.str() << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
