#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "cbtopo/complex.hpp"

namespace cbtopo {

/// Result of subdividing a complex over vertex type V. Vertices of the
/// subdivided complex are dense ids; `carriers[u]` is the smallest simplex of
/// the original complex whose realization contains the point u.
template <class V>
struct Subdivision {
  BasicComplex<std::uint32_t> complex;
  std::vector<BasicSimplex<V>> carriers;

  const BasicSimplex<V>& carrier_of(std::uint32_t u) const { return carriers.at(u); }

  /// Carrier of a whole subdivision simplex: the union of its vertices' carriers.
  BasicSimplex<V> carrier_of(const BasicSimplex<std::uint32_t>& s) const {
    BasicSimplex<V> out = carriers.at(s[0]);
    for (std::uint32_t u : s) out = out.united_with(carriers.at(u));
    return out;
  }

  std::size_t vertex_count() const noexcept { return carriers.size(); }
};

namespace detail {

template <class V>
Subdivision<V> relabel(const BasicComplex<V>& complex) {
  const std::vector<V> verts = complex.vertices();
  auto id_of = [&](const V& v) {
    return static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::vector<BasicSimplex<std::uint32_t>> facets;
  for (const auto& f : complex.facets()) {
    std::vector<std::uint32_t> ids;
    for (const auto& v : f) ids.push_back(id_of(v));
    facets.emplace_back(std::move(ids));
  }
  std::vector<BasicSimplex<V>> carriers;
  for (const auto& v : verts) carriers.push_back(BasicSimplex<V>{v});
  return {BasicComplex<std::uint32_t>::from_maximal_facets(std::move(facets)), std::move(carriers)};
}

// One round: a vertex per simplex, a facet per maximal flag of faces.
template <class V>
Subdivision<V> subdivide_once(const Subdivision<V>& prev) {
  using IdSimplex = BasicSimplex<std::uint32_t>;
  std::map<IdSimplex, std::uint32_t> id;
  std::vector<BasicSimplex<V>> carriers;
  for (const auto& s : prev.complex.simplices()) {
    id.emplace(s, static_cast<std::uint32_t>(carriers.size()));
    carriers.push_back(prev.carrier_of(s));
  }

  std::vector<IdSimplex> facets;
  for (const auto& f : prev.complex.facets()) {
    std::vector<std::uint32_t> order(f.begin(), f.end());
    do {
      std::vector<std::uint32_t> flag;
      std::vector<std::uint32_t> prefix;
      for (std::uint32_t v : order) {
        prefix.push_back(v);
        flag.push_back(id.at(IdSimplex(prefix)));
      }
      facets.emplace_back(std::move(flag));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return {BasicComplex<std::uint32_t>::from_maximal_facets(std::move(facets)), std::move(carriers)};
}

}  // namespace detail

/// Applies barycentric subdivision `rounds` times. Round zero relabels the
/// complex with identity carriers.
template <class V>
Subdivision<V> barycentric_subdivide(const BasicComplex<V>& complex, int rounds) {
  if (rounds < 0) throw error(errc::invalid_config, "subdivision depth must be non-negative");
  Subdivision<V> current = detail::relabel(complex);
  for (int i = 0; i < rounds; ++i) current = detail::subdivide_once(current);
  return current;
}

}  // namespace cbtopo
