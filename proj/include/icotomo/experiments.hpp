// Weyl-type centroid experiments on icosahedral model sets.
#pragma once

#include "icotomo/model_set.hpp"
#include "icotomo/window.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace icotomo {

struct EmptyPatch : std::runtime_error {
  EmptyPatch() : std::runtime_error("patch contains no points") {}
};

struct ExperimentConfig {
  PatchParams params;                       // radius ignored; see radii
  std::vector<GoldenRat> radii{10, 20, 40};  // strictly increasing
  std::uint64_t seed = 1;
  int samples = 200;
  std::string directions = "u5";
  unsigned workers = 1;
  double threshold = 0.05;  // final Weyl deviation, in window-edge units

  void validate() const {
    if (radii.empty()) throw std::invalid_argument("radii list is empty");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
      if (sign(radii[i + 1] - radii[i]) <= 0) throw std::invalid_argument("radii must be strictly increasing");
  }
};

struct CentroidRow {
  GoldenRat radius;
  std::size_t card = 0;
  std::array<double, 3> star_centroid{};
  double deviation = 0;        // |star centroid - window centroid|
  double deviation_edge = 0;   // the same in units of the shortest window edge
};

struct CentroidReport {
  Vec3q window_centroid;
  double edge_length = 0;
  double threshold = 0.05;
  std::vector<CentroidRow> rows;

  bool strictly_decreasing() const {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      if (!(rows[i + 1].deviation < rows[i].deviation)) return false;
    return true;
  }
  bool below_threshold() const { return !rows.empty() && rows.back().deviation_edge < threshold; }
};

inline double shortest_edge(const Window& w) {
  double best = std::numeric_limits<double>::infinity();
  const auto& v = w.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::min(best, std::sqrt(embed(norm2(v[i] - v[j]))));
  return best;
}

struct StarSum {
  std::size_t card = 0;
  std::array<long double, 3> sum{};
};

/// Sum of the star images alpha* over the patch, without storing it.
inline StarSum star_sum(const PatchParams& params, unsigned workers = 1) {
  detail::PatchEnumerator e(params);
  const std::size_t n0 = e.lists[0].size();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n0, 1))));
  std::vector<StarSum> parts(workers);
  auto job = [&](unsigned w) {
    e.run(n0 * w / workers, n0 * (w + 1) / workers, [&](const Vec3i&, Location, const auto&, const auto& ystar) {
      ++parts[w].card;
      for (int i = 0; i < 3; ++i) parts[w].sum[static_cast<std::size_t>(i)] += ystar[static_cast<std::size_t>(i)];
    });
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(job, w);
    for (auto& t : threads) t.join();
  }
  StarSum total;
  const auto ts = embed(star(params.translate));
  for (const auto& p : parts) {
    total.card += p.card;
    for (std::size_t i = 0; i < 3; ++i) total.sum[i] += p.sum[i];
  }
  for (std::size_t i = 0; i < 3; ++i) total.sum[i] += static_cast<long double>(total.card) * ts[i];
  return total;
}

inline std::array<double, 3> star_centroid(const PatchParams& params, unsigned workers = 1) {
  auto s = star_sum(params, workers);
  if (s.card == 0) throw EmptyPatch();
  std::array<double, 3> c{};
  for (std::size_t i = 0; i < 3; ++i) c[i] = static_cast<double>(s.sum[i] / static_cast<long double>(s.card));
  return c;
}

/// Star-centroid of the patch for each radius against the exact centroid of s + W.
inline CentroidReport weyl_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  CentroidReport rep;
  rep.window_centroid = window_moments(cfg.params.window).centroid;
  rep.edge_length = shortest_edge(cfg.params.window);
  rep.threshold = cfg.threshold;
  const auto wc = embed(rep.window_centroid);
  for (const auto& R : cfg.radii) {
    PatchParams p = cfg.params;
    p.radius = R;
    auto s = star_sum(p, cfg.workers);
    if (s.card == 0) throw EmptyPatch();
    CentroidRow row;
    row.radius = R;
    row.card = s.card;
    double d2 = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      row.star_centroid[i] = static_cast<double>(s.sum[i] / static_cast<long double>(s.card));
      d2 += (row.star_centroid[i] - wc[i]) * (row.star_centroid[i] - wc[i]);
    }
    row.deviation = std::sqrt(d2);
    row.deviation_edge = row.deviation / rep.edge_length;
    rep.rows.push_back(row);
  }
  return rep;
}

struct ShiftEstimate {
  std::array<double, 3> estimate{};  // star-centroid(F - t) minus centroid of W
  std::size_t best = 0;              // nearest candidate shift
  double residual = 0;               // distance from the estimate to it
};

inline ShiftEstimate nearest_shift(const std::array<double, 3>& est, const std::vector<Vec3q>& candidates) {
  ShiftEstimate r;
  r.estimate = est;
  r.residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    auto c = embed(candidates[k]);
    double d = std::sqrt((c[0] - est[0]) * (c[0] - est[0]) + (c[1] - est[1]) * (c[1] - est[1]) +
                         (c[2] - est[2]) * (c[2] - est[2]));
    if (d < r.residual) {
      r.residual = d;
      r.best = k;
    }
  }
  return r;
}

/// Estimates the window shift of Lambda from F = B_R(a) cap Lambda, knowing
/// t and the unshifted window W.
inline ShiftEstimate centroid_window_recovery(const std::vector<Vec3q>& F, const Vec3q& t, const Window& W,
                                              const std::vector<Vec3q>& candidates) {
  if (F.empty()) throw EmptyPatch();
  std::array<long double, 3> sum{};
  for (const auto& x : F) {
    auto y = embed(star(x - t));
    for (std::size_t i = 0; i < 3; ++i) sum[i] += y[i];
  }
  auto w0 = embed(window_moments(W.with_shift({0, 0, 0})).centroid);
  std::array<double, 3> est{};
  for (std::size_t i = 0; i < 3; ++i) est[i] = static_cast<double>(sum[i] / static_cast<long double>(F.size())) - w0[i];
  return nearest_shift(est, candidates);
}

/// Same estimate for the whole patch B_R(a) cap Lambda(params), streamed.
inline ShiftEstimate centroid_window_recovery(const PatchParams& params, const std::vector<Vec3q>& candidates,
                                              unsigned workers = 1) {
  auto c = star_centroid(params, workers);
  auto ts = embed(star(params.translate));
  auto w0 = embed(window_moments(params.window.with_shift({0, 0, 0})).centroid);
  std::array<double, 3> est{};
  for (std::size_t i = 0; i < 3; ++i) est[i] = c[i] - ts[i] - w0[i];
  return nearest_shift(est, candidates);
}

}  // namespace icotomo
