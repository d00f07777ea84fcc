// JSON file formats. GoldenInt is [a, b], GoldenRat is [a, b, den]; an
// integer that does not fit in int64 is written as a decimal string.
#pragma once

#include "icotomo/convex.hpp"
#include "icotomo/experiments.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/reconstruction.hpp"
#include "icotomo/slicing.hpp"
#include "icotomo/tomography.hpp"

#include <json.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace icotomo::io {

using json = nlohmann::ordered_json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw FormatError("expected an integer, got " + j.dump());
}

inline json to_json(const GoldenInt& x) { return json::array({to_json(x.a()), to_json(x.b())}); }
inline json to_json(const GoldenRat& x) {
  return json::array({to_json(x.num().a()), to_json(x.num().b()), to_json(x.den())});
}

inline GoldenInt golden_int_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [a, b], got " + j.dump());
  return {integer_from(j[0]), integer_from(j[1])};
}

inline GoldenRat golden_rat_from(const json& j) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw FormatError("expected [a, b, den], got " + j.dump());
  GoldenInt n{integer_from(j[0]), integer_from(j[1])};
  if (j.size() == 2) return n;
  Integer d = integer_from(j[2]);
  if (d == 0) throw FormatError("zero denominator");
  return {n, d};
}

inline json to_json(const Vec3q& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }
inline json to_json(const Vec3i& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }
inline json to_json(const CycPoint& z) { return json::array({to_json(z.alpha), to_json(z.beta)}); }

inline json to_json(const Direction3& d);
inline json to_json(const Direction2& d);

template <class T>
json array_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Vec3q vec3q_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("expected a 3-vector, got " + j.dump());
  return {golden_rat_from(j[0]), golden_rat_from(j[1]), golden_rat_from(j[2])};
}
inline Vec3i vec3i_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("expected a 3-vector, got " + j.dump());
  return {golden_int_from(j[0]), golden_int_from(j[1]), golden_int_from(j[2])};
}
inline CycPoint cyc_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [alpha, beta], got " + j.dump());
  return {golden_rat_from(j[0]), golden_rat_from(j[1])};
}

template <class F>
auto vector_from(const json& j, F&& f) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  std::vector<decltype(f(j))> out;
  for (const auto& x : j) out.push_back(f(x));
  return out;
}

inline ModelType model_type_from(const json& j) {
  auto s = j.get<std::string>();
  if (s == "B") return ModelType::B;
  if (s == "F") return ModelType::F;
  throw FormatError("model type must be \"B\" or \"F\", got " + s);
}

inline ModuleTag module_tag_from(const std::string& s) {
  for (auto t : {ModuleTag::MB, ModuleTag::MF, ModuleTag::MP, ModuleTag::ImIcosian, ModuleTag::Icosian0})
    if (to_string(t) == s) return t;
  throw FormatError("unknown module tag " + s);
}

/// Parses command-line scalars: sums of terms like 3, -1/2, 0.001, tau,
/// 2tau, 3/2*tau.
inline GoldenRat parse_golden(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw FormatError("empty number");
  GoldenRat total = 0;
  std::size_t i = 0;
  auto digits = [&](std::string& out) {
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) out += t[i++];
  };
  while (i < t.size()) {
    bool neg = false;
    if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
    std::string whole, frac, den;
    digits(whole);
    GoldenRat coef = 1;
    bool have_number = !whole.empty();
    if (i < t.size() && t[i] == '.') {
      ++i;
      digits(frac);
      have_number = true;
      Integer scale = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
      coef = GoldenRat::fraction(Integer((whole.empty() ? "0" : whole) + frac), scale);
    } else if (have_number) {
      coef = GoldenRat(GoldenInt(Integer(whole)));
      if (i < t.size() && t[i] == '/') {
        ++i;
        digits(den);
        if (den.empty() || Integer(den) == 0) throw FormatError("bad denominator in " + text);
        coef = GoldenRat::fraction(Integer(whole), Integer(den));
      }
    }
    if (have_number && i < t.size() && t[i] == '*') ++i;
    bool tau = t.compare(i, 3, "tau") == 0;
    if (tau) {
      i += 3;
      coef = coef * GoldenRat::tau();
    } else if (!have_number) {
      throw FormatError("cannot parse number " + text);
    }
    total += neg ? -coef : coef;
    if (i < t.size() && t[i] != '+' && t[i] != '-') throw FormatError("cannot parse number " + text);
  }
  return total;
}

inline std::vector<GoldenRat> parse_golden_list(const std::string& text) {
  std::vector<GoldenRat> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    out.push_back(parse_golden(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Vec3q parse_vec3(const std::string& text) {
  auto v = parse_golden_list(text);
  if (v.size() != 3) throw FormatError("expected three comma-separated numbers, got " + text);
  return {v[0], v[1], v[2]};
}

// Window
inline json to_json(const Window& w) { return {{"vertices", array_json(w.vertices())}, {"shift", to_json(w.shift())}}; }
inline Window window_from(const json& j) {
  return Window::from_vertices(vector_from(j.at("vertices"), vec3q_from), vec3q_from(j.at("shift")));
}
inline bool same_window(const Window& a, const Window& b) {
  return a.shift() == b.shift() && canonical_set(a.vertices()) == canonical_set(b.vertices());
}

// Patch parameters and patches
inline json to_json(const PatchParams& p) {
  return {{"type", to_string(p.type)},
          {"t", to_json(p.translate)},
          {"center", to_json(p.center)},
          {"radius", to_json(p.radius)},
          {"window", to_json(p.window)}};
}
inline PatchParams patch_params_from(const json& j) {
  PatchParams p;
  p.type = model_type_from(j.at("type"));
  if (j.contains("t")) p.translate = vec3q_from(j["t"]);
  if (j.contains("center")) p.center = vec3q_from(j["center"]);
  if (j.contains("radius")) p.radius = golden_rat_from(j["radius"]);
  if (j.contains("window")) p.window = window_from(j["window"]);
  return p;
}

inline json to_json(const ModelSetPatch& patch) {
  json j = to_json(patch.params());
  j["boundary_hits"] = patch.boundary_hits;
  json pts = json::array();
  for (const auto& p : patch.points) pts.push_back(to_json(p.num));
  j["points"] = std::move(pts);
  return j;
}
inline ModelSetPatch patch_from(const json& j) {
  ModelSetPatch patch;
  auto p = patch_params_from(j);
  patch.type = p.type;
  patch.translate = p.translate;
  patch.center = p.center;
  patch.radius = p.radius;
  patch.window = p.window;
  patch.boundary_hits = j.value("boundary_hits", std::size_t{0});
  const ModuleTag tag = lattice_tag(p.type);
  for (const auto& x : j.at("points")) {
    Vec3i num = vec3i_from(x);
    if (!module_contains_integral(num, numerator_tag(p.type)))
      throw FormatError("patch point " + x.dump() + " is not a doubled numerator of the lattice");
    patch.points.push_back({std::move(num), tag});
  }
  return patch;
}
inline bool same_patch(const ModelSetPatch& a, const ModelSetPatch& b) {
  if (a.type != b.type || a.translate != b.translate || a.center != b.center || a.radius != b.radius ||
      a.boundary_hits != b.boundary_hits || !same_window(a.window, b.window) || a.points.size() != b.points.size())
    return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].num != b.points[i].num) return false;
  return true;
}

// Slices
inline json integral_point_json(const CycPoint& z) {
  if (!z.alpha.is_integral() || !z.beta.is_integral()) throw FormatError("slice point is not in Z[zeta]");
  return json::array({to_json(z.alpha.num()), to_json(z.beta.num())});
}
inline json to_json(const Slice& s) {
  json pts = json::array();
  for (const auto& z : s.points) pts.push_back(integral_point_json(z));
  return {{"height", to_json(s.height)},
          {"lambda", to_json(s.lambda)},
          {"points", std::move(pts)},
          {"window_polygon", array_json(s.window.vertices)}};
}
inline Slice slice_from(const json& j) {
  Slice s;
  s.height = golden_rat_from(j.at("height"));
  s.lambda = vec3q_from(j.at("lambda"));
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) throw FormatError("expected [alpha, beta], got " + p.dump());
    s.points.push_back({golden_int_from(p[0]), golden_int_from(p[1])});
  }
  // the polygon alone is stored; halfplanes are rebuilt from it
  auto verts = vector_from(j.at("window_polygon"), cyc_from);
  s.window.vertices = verts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& p = verts[i];
    const auto& q = verts[(i + 1) % verts.size()];
    GoldenRat a = q.beta - p.beta, b = p.alpha - q.alpha;  // interior on the left of p -> q
    s.window.halfplanes.push_back({a, b, a * p.alpha + b * p.beta});
  }
  return s;
}

// Directions and X-rays
inline json to_json(const Direction3& d) { return {{"rep", to_json(d.prim)}, {"module", to_string(d.tag)}}; }
inline Direction3 direction3_from(const json& j) {
  ModuleTag tag = module_tag_from(j.value("module", std::string("ImIcosian")));
  return make_direction(to_rat(vec3i_from(j.at("rep"))), tag);
}
inline json to_json(const Direction2& d) { return {{"rep", to_json(d.rep)}}; }
inline Direction2 direction2_from(const json& j) { return make_direction(cyc_from(j.at("rep"))); }

template <class P>
json to_json(const XRayImage<P>& x) {
  json lines = json::array();
  for (const auto& [k, c] : x.counts) lines.push_back({{"key", to_json(k)}, {"count", c}});
  return {{"direction", to_json(x.direction)}, {"lines", std::move(lines)}};
}
inline XRayImage<Vec3q> xray3_from(const json& j) {
  XRayImage<Vec3q> x{direction3_from(j.at("direction")), {}};
  for (const auto& l : j.at("lines")) {
    long c = l.at("count").get<long>();
    if (c <= 0) throw FormatError("X-ray counts must be positive");
    x.counts[vec3q_from(l.at("key"))] = c;
  }
  return x;
}
inline XRayImage<CycPoint> xray2_from(const json& j) {
  XRayImage<CycPoint> x{direction2_from(j.at("direction")), {}};
  for (const auto& l : j.at("lines")) {
    long c = l.at("count").get<long>();
    if (c <= 0) throw FormatError("X-ray counts must be positive");
    x.counts[golden_rat_from(l.at("key"))] = c;
  }
  return x;
}

// Point sets
inline json points_json(const std::vector<Vec3q>& F) { return {{"points", array_json(F)}}; }
inline std::vector<Vec3q> points_from(const json& j) { return vector_from(j.at("points"), vec3q_from); }
inline json points_json(const std::vector<CycPoint>& F) { return {{"points", array_json(F)}}; }
inline std::vector<CycPoint> cyc_points_from(const json& j) { return vector_from(j.at("points"), cyc_from); }

// Reconstruction instances: the domain is the patch regenerated from its parameters
struct InstanceFile {
  XRayImage<Vec3q> p1;
  XRayImage<Vec3q> p2;
  PatchParams patch;
};
inline json to_json(const InstanceFile& f) {
  return {{"p1", to_json(f.p1)}, {"p2", to_json(f.p2)}, {"patch", to_json(f.patch)}};
}
inline InstanceFile instance_from(const json& j) {
  return {xray3_from(j.at("p1")), xray3_from(j.at("p2")), patch_params_from(j.at("patch"))};
}
inline TomographyInstance load_instance(const InstanceFile& f, unsigned workers = 1) {
  return {f.p1, f.p2, enumerate_patch(f.patch, workers).physical_points()};
}

// Reports
template <class P>
json to_json(const UniquenessReport<P>& r) {
  json coll = json::array();
  for (const auto& c : r.collisions) coll.push_back({{"first", array_json(c.first)}, {"second", array_json(c.second)}});
  return {{"directions", array_json(r.directions)},
          {"requested", r.requested},
          {"distinct", r.distinct},
          {"cardinalities", r.cardinalities},
          {"collisions", std::move(coll)},
          {"slice_localized", r.slice_localized},
          {"all_convex", r.all_convex}};
}

inline json to_json(const CentroidReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"radius", to_json(row.radius)},
                    {"card", row.card},
                    {"star_centroid", row.star_centroid},
                    {"deviation", row.deviation},
                    {"deviation_edge_units", row.deviation_edge}});
  return {{"window_centroid", to_json(r.window_centroid)},
          {"edge_length", r.edge_length},
          {"threshold", r.threshold},
          {"strictly_decreasing", r.strictly_decreasing()},
          {"below_threshold", r.below_threshold()},
          {"rows", std::move(rows)}};
}
inline CentroidReport centroid_report_from(const json& j) {
  CentroidReport r;
  r.window_centroid = vec3q_from(j.at("window_centroid"));
  r.edge_length = j.at("edge_length").get<double>();
  r.threshold = j.at("threshold").get<double>();
  for (const auto& row : j.at("rows")) {
    CentroidRow c;
    c.radius = golden_rat_from(row.at("radius"));
    c.card = row.at("card").get<std::size_t>();
    c.star_centroid = row.at("star_centroid").get<std::array<double, 3>>();
    c.deviation = row.at("deviation").get<double>();
    c.deviation_edge = row.at("deviation_edge_units").get<double>();
    r.rows.push_back(c);
  }
  return r;
}

// Experiment configuration; every field optional
inline json to_json(const ExperimentConfig& c) {
  return {{"patch", to_json(c.params)},     {"radii", array_json(c.radii)}, {"seed", c.seed},
          {"samples", c.samples},           {"directions", c.directions},   {"workers", c.workers},
          {"threshold", c.threshold}};
}
inline ExperimentConfig config_from(const json& j) {
  ExperimentConfig c;
  if (j.contains("patch")) c.params = patch_params_from(j["patch"]);
  if (j.contains("radii")) c.radii = vector_from(j["radii"], golden_rat_from);
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  c.directions = j.value("directions", c.directions);
  c.workers = j.value("workers", c.workers);
  c.threshold = j.value("threshold", c.threshold);
  c.validate();
  return c;
}

}  // namespace icotomo::io
