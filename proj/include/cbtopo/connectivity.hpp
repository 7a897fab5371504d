#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cbtopo/complex.hpp"
#include "cbtopo/gf2.hpp"
#include "cbtopo/union_find.hpp"

namespace cbtopo {

/// Reduced GF(2) Betti numbers b~_0..b~_k plus the component count.
/// Always reduced_betti[0] == components - 1.
struct BettiReport {
  std::vector<std::size_t> reduced_betti;
  std::size_t components = 1;

  bool vanishes() const {
    return std::all_of(reduced_betti.begin(), reduced_betti.end(), [](std::size_t b) { return b == 0; });
  }
  friend bool operator==(const BettiReport&, const BettiReport&) = default;
};

/// Vertex partition of a complex by reachability in its 1-skeleton.
/// Components are ordered by their smallest vertex.
template <class V>
class ComponentMap {
 public:
  explicit ComponentMap(const BasicComplex<V>& complex) : vertices_(complex.vertices()) {
    DisjointSets sets(vertices_.size());
    for (const auto& f : complex.facets())
      for (std::size_t i = 1; i < f.size(); ++i) {
        std::size_t a = index_of(f[0]);
        std::size_t b = index_of(f[i]);
        if (sets.unite(a, b)) tree_.emplace_back(f[0], f[i]);
      }
    std::map<std::size_t, std::size_t> root_to_label;
    label_.resize(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      auto [it, fresh] = root_to_label.emplace(sets.find(i), root_to_label.size());
      label_[i] = it->second;
    }
    count_ = root_to_label.size();
  }

  std::size_t count() const noexcept { return count_; }

  std::size_t component_of(const V& v) const { return label_.at(index_of(v)); }

  /// Component holding every vertex of `s`, or npos if `s` spans several.
  template <class Range>
  std::size_t common_component(const Range& vs) const {
    std::size_t c = npos;
    for (const auto& v : vs) {
      std::size_t here = component_of(v);
      if (c == npos)
        c = here;
      else if (c != here)
        return npos;
    }
    return c;
  }

  std::vector<std::vector<V>> partition() const {
    std::vector<std::vector<V>> out(count_);
    for (std::size_t i = 0; i < vertices_.size(); ++i) out[label_[i]].push_back(vertices_[i]);
    return out;
  }

  /// Edges of a spanning forest of the 1-skeleton: a certificate for the
  /// partition, |V| - components edges long.
  const std::vector<std::pair<V, V>>& spanning_forest() const noexcept { return tree_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t index_of(const V& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) throw error(errc::unknown_vertex, to_display(v) + " is not a vertex of the complex");
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::vector<V> vertices_;
  std::vector<std::size_t> label_;
  std::vector<std::pair<V, V>> tree_;
  std::size_t count_ = 0;
};

template <class V>
std::vector<std::vector<V>> connected_components(const BasicComplex<V>& complex) {
  return ComponentMap<V>(complex).partition();
}

namespace detail {

template <class V>
Gf2Matrix boundary_between(const std::vector<BasicSimplex<V>>& lower, const std::vector<BasicSimplex<V>>& upper) {
  Gf2Matrix m(lower.size(), upper.size());
  for (std::size_t c = 0; c < upper.size(); ++c)
    for (const auto& face : upper[c].boundary_faces()) {
      auto it = std::lower_bound(lower.begin(), lower.end(), face);
      m.set(static_cast<std::size_t>(it - lower.begin()), c);
    }
  return m;
}

}  // namespace detail

/// Boundary operator from k-chains to (k-1)-chains. Rows and columns follow
/// the canonical simplex order of each dimension.
template <class V>
Gf2Matrix boundary_matrix(const BasicComplex<V>& complex, int k) {
  if (k < 1 || k > complex.dimension())
    throw error(errc::dimension_out_of_range, "boundary operator index " + std::to_string(k) + " outside [1, dim]");
  auto groups = complex.simplices_by_dimension();
  return detail::boundary_between(groups[static_cast<std::size_t>(k - 1)], groups[static_cast<std::size_t>(k)]);
}

template <class V>
BettiReport reduced_betti(const BasicComplex<V>& complex, int up_to) {
  if (up_to < 0 || up_to > complex.dimension())
    throw error(errc::dimension_out_of_range, "Betti range " + std::to_string(up_to) + " outside [0, dim]");
  auto groups = complex.simplices_by_dimension();
  const auto dim = static_cast<std::size_t>(complex.dimension());

  // rank[k] = rank of the boundary from dimension k to k-1; the augmentation
  // map C_0 -> GF(2) has rank 1 on a non-empty complex.
  std::vector<std::size_t> rank(dim + 2, 0);
  rank[0] = 1;
  for (std::size_t k = 1; k <= std::min(dim, static_cast<std::size_t>(up_to) + 1); ++k)
    rank[k] = detail::boundary_between(groups[k - 1], groups[k]).rank();

  BettiReport report;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(up_to); ++k)
    report.reduced_betti.push_back(groups[k].size() - rank[k] - rank[k + 1]);
  report.components = ComponentMap<V>(complex).count();
  return report;
}

}  // namespace cbtopo
