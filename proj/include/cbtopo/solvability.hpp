#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbtopo/complex.hpp"
#include "cbtopo/connectivity.hpp"
#include "cbtopo/subdivision.hpp"
#include "cbtopo/task.hpp"

namespace cbtopo {

enum class Verdict { UnsolvableByObstruction, NoMapUpToDepth, MapFound, Inconclusive };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::UnsolvableByObstruction: return "UnsolvableByObstruction";
    case Verdict::NoMapUpToDepth: return "NoMapUpToDepth";
    case Verdict::MapFound: return "MapFound";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Why the t-skeleton cannot be mapped continuously into the output: the
/// skeleton is connected (spanning tree below) while two of its simplices
/// have carriers confined to different output components.
struct ObstructionEvidence {
  std::size_t skeleton_components = 0;
  BettiReport skeleton_betti;
  std::size_t output_components = 0;
  std::vector<std::pair<Vertex, Vertex>> spanning_tree;
  std::vector<Simplex> witnesses;
  std::vector<Complex> witness_images;
  std::vector<std::size_t> witness_components;
};

/// One entry of a found carried simplicial map: subdivision vertex id, its
/// carrier in the original input, and where it is sent.
struct MapEntry {
  std::uint32_t vertex = 0;
  Simplex carrier;
  Vertex image;
};

struct SolvabilityReport {
  Verdict verdict = Verdict::Inconclusive;
  int n = 0;
  int t = 0;
  int depth = 0;
  std::optional<ObstructionEvidence> obstruction;
  std::vector<MapEntry> assignment;
  std::uint64_t search_nodes = 0;
  std::string reason;
};

struct SearchOptions {
  std::uint64_t node_budget = 10'000'000;
};

/// Budget from CBTOPO_NODE_BUDGET when set to a positive integer, else 10^7.
inline std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("CBTOPO_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

/// 0 < t and 2t < n + 1.
inline void check_resilience(int n, int t) {
  if (t <= 0 || 2 * t >= n + 1)
    throw error(errc::bad_resilience,
                "t = " + std::to_string(t) + " violates 0 < t < (n+1)/2 for n = " + std::to_string(n));
}

inline SolvabilityReport connectivity_obstruction(const Task& task, int t) {
  const int n = task.input.dimension();
  check_resilience(n, t);

  SolvabilityReport report;
  report.n = n;
  report.t = t;

  const Complex skel = skeleton(task.input, t);
  const ComponentMap<Vertex> skel_parts(skel);
  const ComponentMap<Vertex> out_parts(task.output);

  ObstructionEvidence ev;
  ev.skeleton_components = skel_parts.count();
  ev.skeleton_betti = reduced_betti(skel, t - 1);
  ev.output_components = out_parts.count();
  ev.spanning_tree = skel_parts.spanning_forest();

  if (ev.skeleton_components != 1) {
    report.reason = "t-skeleton of the input is disconnected";
  } else if (ev.output_components < 2) {
    report.reason = "output complex is connected";
  } else {
    // Top-dimensional simplices of the skeleton first, canonical order within.
    auto groups = skel.simplices_by_dimension();
    for (auto g = groups.rbegin(); g != groups.rend() && ev.witnesses.size() < 2; ++g)
      for (const auto& sigma : *g) {
        const Complex& image = carrier_at(task, sigma);
        const std::size_t c = out_parts.common_component(image.vertices());
        if (c == ComponentMap<Vertex>::npos) continue;
        if (!ev.witness_components.empty() && ev.witness_components.front() == c) continue;
        ev.witnesses.push_back(sigma);
        ev.witness_images.push_back(image);
        ev.witness_components.push_back(c);
        if (ev.witnesses.size() == 2) break;
      }
    if (ev.witnesses.size() == 2)
      report.verdict = Verdict::UnsolvableByObstruction;
    else
      report.reason = "no two skeleton simplices have carriers in distinct output components";
  }
  report.obstruction = std::move(ev);
  return report;
}

namespace detail {

// Finite-domain constraint search: variables are subdivision vertices,
// values are output vertices, and every subdivision simplex must land on a
// simplex of the carrier of that subdivision simplex.
class CarriedMapSearch {
 public:
  CarriedMapSearch(const Task& task, const Subdivision<Vertex>& sub, std::uint64_t budget)
      : out_(task.output.vertices()), budget_(budget) {
    const std::size_t nvars = sub.vertex_count();
    alive_.assign(nvars, std::vector<char>(out_.size(), 0));
    live_count_.assign(nvars, 0);
    assigned_.assign(nvars, -1);
    by_var_.resize(nvars);

    for (std::uint32_t u = 0; u < nvars; ++u)
      for (const auto& y : carrier_at(task, sub.carrier_of(u)).vertices()) {
        auto it = std::lower_bound(out_.begin(), out_.end(), y);
        if (it == out_.end() || *it != y) continue;
        alive_[u][static_cast<std::size_t>(it - out_.begin())] = 1;
        ++live_count_[u];
      }

    for (const auto& group : sub.complex.simplices_by_dimension()) {
      if (group.front().dimension() == 0) continue;
      for (const auto& s : group) {
        const std::size_t id = constraints_.size();
        constraints_.push_back({s.vertices(), &carrier_at(task, sub.carrier_of(s))});
        for (std::uint32_t u : s) by_var_[u].push_back(id);
      }
    }
  }

  bool solve() {
    for (std::size_t c : live_count_)
      if (c == 0) return false;
    return search();
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  const Vertex& image_of(std::uint32_t u) const { return out_[static_cast<std::size_t>(assigned_[u])]; }

 private:
  struct Constraint {
    std::vector<std::uint32_t> vars;
    const Complex* image;
  };

  bool search() {
    std::size_t best = alive_.size();
    for (std::size_t u = 0; u < alive_.size(); ++u)
      if (assigned_[u] < 0 && (best == alive_.size() || live_count_[u] < live_count_[best])) best = u;
    if (best == alive_.size()) return true;

    for (std::size_t y = 0; y < out_.size(); ++y) {
      if (!alive_[best][y]) continue;
      if (++nodes_ > budget_)
        throw error(errc::resource_bound, "carried-map search exceeded " + std::to_string(budget_) + " nodes");
      const std::size_t mark = trail_.size();
      for (std::size_t other = 0; other < out_.size(); ++other)
        if (other != y && alive_[best][other]) remove(best, other);
      assigned_[best] = static_cast<int>(y);
      if (propagate(best) && search()) return true;
      assigned_[best] = -1;
      undo(mark);
    }
    return false;
  }

  bool spans_simplex(const Constraint& c, std::vector<Vertex> imgs) const {
    return imgs.empty() || c.image->contains(Simplex::spanned_by(std::move(imgs)));
  }

  // Forward checking from a freshly assigned variable.
  bool propagate(std::size_t var) {
    for (std::size_t id : by_var_[var]) {
      const Constraint& c = constraints_[id];
      std::vector<Vertex> imgs;
      std::vector<std::uint32_t> open;
      for (std::uint32_t u : c.vars) {
        if (assigned_[u] >= 0)
          imgs.push_back(out_[static_cast<std::size_t>(assigned_[u])]);
        else
          open.push_back(u);
      }
      if (open.size() == 1) {
        const std::uint32_t u = open.front();
        for (std::size_t y = 0; y < out_.size(); ++y) {
          if (!alive_[u][y]) continue;
          auto trial = imgs;
          trial.push_back(out_[y]);
          if (!spans_simplex(c, std::move(trial))) remove(u, y);
        }
        if (live_count_[u] == 0) return false;
      } else if (!spans_simplex(c, std::move(imgs))) {
        return false;
      }
    }
    return true;
  }

  void remove(std::size_t u, std::size_t y) {
    alive_[u][y] = 0;
    --live_count_[u];
    trail_.emplace_back(u, y);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [u, y] = trail_.back();
      trail_.pop_back();
      alive_[u][y] = 1;
      ++live_count_[u];
    }
  }

  std::vector<Vertex> out_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<char>> alive_;
  std::vector<std::size_t> live_count_;
  std::vector<int> assigned_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> by_var_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
};

}  // namespace detail

/// Looks for a simplicial map from the depth-fold barycentric subdivision of
/// the input's t-skeleton into the output, carried by the task's carrier map.
inline SolvabilityReport search_carried_simplicial_map(const Task& task, int t, int depth,
                                                       const SearchOptions& opts = {}) {
  const int n = task.input.dimension();
  check_resilience(n, t);
  if (depth < 0) throw error(errc::invalid_config, "subdivision depth must be non-negative");

  const Subdivision<Vertex> sub = barycentric_subdivide(skeleton(task.input, t), depth);
  detail::CarriedMapSearch engine(task, sub, opts.node_budget);

  SolvabilityReport report;
  report.n = n;
  report.t = t;
  report.depth = depth;
  const bool found = engine.solve();
  report.search_nodes = engine.nodes();
  if (found) {
    report.verdict = Verdict::MapFound;
    for (std::uint32_t u = 0; u < sub.vertex_count(); ++u)
      report.assignment.push_back({u, sub.carrier_of(u), engine.image_of(u)});
  } else {
    report.verdict = Verdict::NoMapUpToDepth;
  }
  return report;
}

/// Colored tasks are projected to their colorless counterpart first. The
/// obstruction answers for every depth at once; otherwise the search runs at
/// depths 0..max_depth.
inline SolvabilityReport decide(const Task& task, int t, int max_depth, const SearchOptions& opts = {}) {
  const Task working = task.colored ? colorless_projection(task) : task;
  SolvabilityReport obstruction = connectivity_obstruction(working, t);
  if (obstruction.verdict == Verdict::UnsolvableByObstruction) return obstruction;

  SolvabilityReport last;
  std::uint64_t total_nodes = 0;
  for (int depth = 0; depth <= max_depth; ++depth) {
    last = search_carried_simplicial_map(working, t, depth, opts);
    total_nodes += last.search_nodes;
    if (last.verdict == Verdict::MapFound) break;
  }
  last.search_nodes = total_nodes;
  last.obstruction = std::move(obstruction.obstruction);
  if (last.reason.empty()) last.reason = obstruction.reason;
  return last;
}

}  // namespace cbtopo
