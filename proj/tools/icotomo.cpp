#include "icotomo/icotomo.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace icotomo;
using io::json;

namespace {

struct Common {
  std::string out;
  std::string config;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_json(const json& j, const std::string& out) {
  std::string text = j.dump() + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ICOTOMO_SEED")) return std::stoull(s);
  return 1;
}

ExperimentConfig load_config(const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : io::config_from(read_json(c.config));
  cfg.workers = std::max(cfg.workers, c.workers);
  return cfg;
}

std::vector<Direction3> direction_set(const std::string& name, ModelType type) {
  if (name == "u5") return to_directions3(u5_directions(), type);
  if (name == "ico") return u_ico_directions(type);
  throw std::invalid_argument("unknown direction set " + name + " (expected u5 or ico)");
}

// the patch point closest to the patch centre
std::size_t central_index(const ModelSetPatch& patch) {
  std::size_t best = 0;
  GoldenRat bd;
  for (std::size_t i = 0; i < patch.points.size(); ++i) {
    GoldenRat d = norm2(patch.physical(patch.points[i]) - patch.center);
    if (i == 0 || sign(d - bd) < 0) {
      bd = d;
      best = i;
    }
  }
  return best;
}

bool is_patch_file(const json& j) { return j.contains("type") && j.contains("points"); }

std::vector<Vec3q> load_points(const json& j) {
  return is_patch_file(j) ? io::patch_from(j).physical_points() : io::points_from(j);
}

struct SelfCheck {
  int failed = 0;
  void operator()(const std::string& name, bool ok) {
    std::cerr << (ok ? "PASS " : "FAIL ") << name << "\n";
    failed += !ok;
  }
};

int selftest(std::uint64_t seed) {
  SelfCheck check;
  check("icosian group has 120 units of norm 1", [] {
    auto g = icosian_group();
    return g.size() == 120 &&
           std::all_of(g.begin(), g.end(), [](const auto& q) { return reduced_norm(q) == GoldenRat(1); });
  }());
  check("[M_B : M_F] = 4", module_index_MF_in_MB() == 4);
  check("slice basis (B)", slice_basis_check(ModelType::B));
  check("slice basis (F)", slice_basis_check(ModelType::F));
  check("|1 + zeta|^2 = tau^2", abs2(CycPoint{1, 1}) == GoldenRat::tau() * GoldenRat::tau());
  std::mt19937_64 rng(seed);
  PatchParams p;
  p.radius = 6;
  auto pts = enumerate_patch(p).physical_points();
  auto U = to_directions3(u5_directions(), ModelType::B);
  std::vector<Vec3q> F;
  for (int i = 0; i < 20; ++i) F.push_back(pts[rng() % pts.size()]);
  F = canonical_set(std::move(F));
  auto inst = make_instance(F, U[0], U[1], pts);
  auto G = reconstruct(inst);
  check("two-direction reconstruction round trip", same_xrays(F, G, {U[0], U[1]}));
  auto sp = switching_pair({U[0], U[1]}, p);
  check("switching pair for two directions", sp.F != sp.G && same_xrays(sp.F, sp.G, {U[0], U[1]}));
  return check.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete tomography of icosahedral model sets"};
  app.require_subcommand(1);
  Common common;
  common.seed = default_seed();
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", common.out, "output file (default stdout)");
    sub->add_option("--seed", common.seed, "random seed (default $ICOTOMO_SEED or 1)");
    sub->add_option("--workers", common.workers, "worker threads");
    sub->add_option("--config", common.config, "experiment config (JSON)")->check(CLI::ExistingFile);
  };

  // generate
  auto* gen = app.add_subcommand("generate", "enumerate a model set patch");
  std::string type = "B", radius = "10", shift, translate = "0,0,0", center = "0,0,0";
  gen->add_option("--type", type)->check(CLI::IsMember({"B", "F"}));
  gen->add_option("--radius", radius);
  gen->add_option("--shift", shift, "window shift s (default 0.001,0.001,0.001)");
  gen->add_option("--t", translate, "translation t");
  gen->add_option("--center", center, "ball centre a");
  add_common(gen);

  // slice
  auto* sl = app.add_subcommand("slice", "slice a patch through one of its points");
  std::string patch_file, csv;
  std::size_t lambda_index = 0;
  bool central = false;
  sl->add_option("patch", patch_file)->required()->check(CLI::ExistingFile);
  sl->add_option("--lambda-index", lambda_index);
  sl->add_flag("--central", central, "slice through the point nearest the centre");
  sl->add_option("--csv", csv, "also write the points as CSV");
  add_common(sl);

  // xray
  auto* xr = app.add_subcommand("xray", "X-ray of a patch or point set");
  std::string input;
  std::vector<std::string> dirs;
  std::string module = "ImIcosian", instance_patch;
  std::size_t sample = 0;
  xr->add_option("input", input)->required()->check(CLI::ExistingFile);
  xr->add_option("--dir", dirs, "direction, e.g. \"tau,0,1\" (two give an instance file)")->required();
  xr->add_option("--module", module, "lattice of the direction (ImIcosian or Icosian0)");
  xr->add_option("--sample", sample, "use a random subset of this size");
  xr->add_option("--patch", instance_patch, "patch for the instance domain")->check(CLI::ExistingFile);
  add_common(xr);

  // grid
  auto* gr = app.add_subcommand("grid", "grid of a set of X-ray files");
  std::vector<std::string> xray_files;
  gr->add_option("xrays", xray_files)->required()->check(CLI::ExistingFile);
  add_common(gr);

  // reconstruct / uniq-instance
  auto* rc = app.add_subcommand("reconstruct", "two-direction reconstruction inside a patch");
  std::string instance_file;
  rc->add_option("instance", instance_file)->required()->check(CLI::ExistingFile);
  add_common(rc);
  auto* ui = app.add_subcommand("uniq-instance", "decide uniqueness of a two-direction instance");
  ui->add_option("instance", instance_file)->required()->check(CLI::ExistingFile);
  add_common(ui);

  // uniq
  auto* uq = app.add_subcommand("uniq", "X-ray signatures of random convex subsets");
  std::string dset = "u5";
  int samples = 200;
  uq->add_option("patch", patch_file)->required()->check(CLI::ExistingFile);
  uq->add_option("--directions", dset)->check(CLI::IsMember({"u5", "ico"}));
  uq->add_option("--samples", samples);
  add_common(uq);

  // weyl
  auto* wy = app.add_subcommand("weyl", "star-centroid against window centroid");
  std::string radii;
  wy->add_option("--radii", radii, "comma-separated increasing radii (default 10,20,40)");
  wy->add_option("--center", center);
  wy->add_option("--shift", shift);
  wy->add_option("--type", type)->check(CLI::IsMember({"B", "F"}));
  add_common(wy);

  // switching
  auto* sw = app.add_subcommand("switching", "switching component for k directions");
  int k = 2;
  sw->add_option("--k", k)->check(CLI::Range(1, 5));
  sw->add_option("--radius", radius);
  sw->add_option("--type", type)->check(CLI::IsMember({"B", "F"}));
  add_common(sw);

  auto* st = app.add_subcommand("selftest", "run the built-in invariant checks");
  add_common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    const ModelType mtype = type == "F" ? ModelType::F : ModelType::B;
    if (*gen) {
      ExperimentConfig cfg = load_config(common);
      PatchParams p = cfg.params;
      p.type = mtype;
      p.radius = io::parse_golden(radius);
      p.translate = io::parse_vec3(translate);
      p.center = io::parse_vec3(center);
      if (!shift.empty()) p.window = p.window.with_shift(io::parse_vec3(shift));
      auto patch = enumerate_patch(p, cfg.workers);
      std::cerr << "patch: " << patch.points.size() << " points, " << patch.boundary_hits
                << " star images on the window boundary\n";
      write_json(io::to_json(patch), common.out);
    } else if (*sl) {
      auto patch = io::patch_from(read_json(patch_file));
      if (central) lambda_index = central_index(patch);
      if (lambda_index >= patch.points.size()) throw std::out_of_range("lambda index outside the patch");
      auto s = slice_patch(patch, lambda_index);
      std::cerr << "slice at height " << to_string(s.height) << ": " << s.points.size() << " points\n";
      if (!csv.empty()) {
        std::ofstream f(csv);
        f << "alpha_a,alpha_b,beta_a,beta_b,x,y\n";
        f.precision(17);
        for (const auto& z : s.points) {
          auto e = embed(z);
          f << z.alpha.num().a() << ',' << z.alpha.num().b() << ',' << z.beta.num().a() << ',' << z.beta.num().b()
            << ',' << e[0] << ',' << e[1] << '\n';
        }
      }
      write_json(io::to_json(s), common.out);
    } else if (*xr) {
      json in = read_json(input);
      auto pts = load_points(in);
      if (sample > 0) {
        std::mt19937_64 rng(common.seed);
        std::shuffle(pts.begin(), pts.end(), rng);
        if (sample < pts.size()) pts.resize(sample);
        pts = canonical_set(std::move(pts));
      }
      ModuleTag tag = io::module_tag_from(module);
      std::vector<Direction3> U;
      for (const auto& d : dirs) U.push_back(make_direction(io::parse_vec3(d), tag));
      if (U.size() == 1) {
        auto x = xray(pts, U[0]);
        std::cerr << "X-ray: " << x.counts.size() << " lines, " << x.total() << " points\n";
        write_json(io::to_json(x), common.out);
      } else if (U.size() == 2) {
        for (const auto& u : U)
          if (!height(u.rep()).is_zero()) throw NotCoplanarDirections();
        json pj = !instance_patch.empty() ? read_json(instance_patch) : in;
        if (!is_patch_file(pj)) throw std::invalid_argument("an instance needs --patch when the input is a point set");
        io::InstanceFile f{xray(pts, U[0]), xray(pts, U[1]), io::patch_params_from(pj)};
        std::cerr << "instance: " << f.p1.total() << " points, " << f.p1.counts.size() << " + "
                  << f.p2.counts.size() << " lines\n";
        write_json(io::to_json(f), common.out);
      } else {
        throw std::invalid_argument("give one direction for an X-ray or two for an instance");
      }
    } else if (*gr) {
      std::vector<XRayImage<Vec3q>> images;
      for (const auto& f : xray_files) images.push_back(io::xray3_from(read_json(f)));
      auto g = grid_from_xrays(images);
      std::cerr << "grid: " << g.size() << " points\n";
      write_json(io::points_json(g), common.out);
    } else if (*rc) {
      auto inst = io::load_instance(io::instance_from(read_json(instance_file)), common.workers);
      try {
        auto F = reconstruct(inst);
        std::cerr << "reconstructed " << F.size() << " points\n";
        write_json(io::points_json(F), common.out);
      } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
      }
    } else if (*ui) {
      auto inst = io::load_instance(io::instance_from(read_json(instance_file)), common.workers);
      try {
        auto r = uniqueness(inst);
        std::cerr << (r.unique ? "unique" : "not unique") << "\n";
        json j = {{"unique", r.unique}, {"solution", io::array_json(r.solution)}};
        if (!r.unique) j["other"] = io::array_json(r.other);
        write_json(j, common.out);
      } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
      }
    } else if (*uq) {
      ExperimentConfig cfg = load_config(common);
      auto patch = io::patch_from(read_json(patch_file));
      SamplerConfig sc;
      sc.samples = uq->count("--samples") || common.config.empty() ? samples : cfg.samples;
      sc.seed = common.seed;
      json report;
      std::size_t collisions = 0;
      if (dset == "u5") {
        auto s = slice_patch(patch, central_index(patch));
        GoldenRat r2 = inner_disk_radius2(patch, s.lambda);
        auto rep = uniqueness_experiment_slice(restrict_to_disk(s.points, r2), u5_directions(), sc, r2);
        collisions = rep.collisions.size();
        report = io::to_json(rep);
      } else {
        auto rep = uniqueness_experiment_3d(patch.physical_points(), direction_set("ico", patch.type), sc);
        collisions = rep.collisions.size();
        report = io::to_json(rep);
      }
      report["seed"] = common.seed;
      std::cerr << report["distinct"] << " distinct convex sets, " << collisions << " collisions\n";
      write_json(report, common.out);
      return collisions == 0 ? 0 : 1;
    } else if (*wy) {
      ExperimentConfig cfg = load_config(common);
      if (wy->count("--type")) cfg.params.type = mtype;
      if (!radii.empty()) cfg.radii = io::parse_golden_list(radii);
      if (wy->count("--center")) cfg.params.center = io::parse_vec3(center);
      if (!shift.empty()) cfg.params.window = cfg.params.window.with_shift(io::parse_vec3(shift));
      auto rep = weyl_experiment(cfg);
      for (const auto& row : rep.rows)
        std::cerr << "R = " << to_string(row.radius) << ": " << row.card << " points, deviation " << row.deviation
                  << " (" << row.deviation_edge << " edges)\n";
      write_json(io::to_json(rep), common.out);
    } else if (*sw) {
      PatchParams p = load_config(common).params;
      p.type = mtype;
      p.radius = io::parse_golden(radius);
      auto all = to_directions3(u5_directions(), mtype);
      std::vector<Direction3> U(all.begin(), all.begin() + std::min<std::size_t>(static_cast<std::size_t>(k), all.size()));
      if (k == 5) U.push_back(make_direction(Vec3q{1, 0, 0}, lattice_tag(mtype)));
      auto sp = switching_pair(U, p);
      std::cerr << "switching pair: 2 x " << sp.F.size() << " points, homothety tau^" << sp.h.k << "\n";
      write_json({{"directions", io::array_json(U)},
                  {"F", io::array_json(sp.F)},
                  {"G", io::array_json(sp.G)},
                  {"homothety", {{"k", sp.h.k}, {"offset", io::to_json(sp.h.offset)}}}},
                 common.out);
    } else if (*st) {
      return selftest(common.seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
