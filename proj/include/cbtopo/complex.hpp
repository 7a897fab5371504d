#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "cbtopo/error.hpp"
#include "cbtopo/simplex.hpp"

namespace cbtopo {

/// Finite abstract simplicial complex, stored as its inclusion-maximal
/// facets in ascending order. Downward closure is implicit: a simplex is a
/// member iff it is a face of some facet. Never empty.
template <class V>
class BasicComplex {
 public:
  using vertex_type = V;
  using simplex_type = BasicSimplex<V>;

  /// Drops duplicates and every listed simplex that is a face of another.
  static BasicComplex from_facets(std::vector<simplex_type> simplices) {
    if (simplices.empty()) throw error(errc::empty_input, "complex needs at least one facet");
    std::sort(simplices.begin(), simplices.end(), [](const simplex_type& a, const simplex_type& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    std::vector<simplex_type> kept;
    for (auto& s : simplices) {
      bool dominated = std::any_of(kept.begin(), kept.end(), [&](const simplex_type& f) { return s.is_face_of(f); });
      if (!dominated) kept.push_back(std::move(s));
    }
    return from_maximal_facets(std::move(kept));
  }

  /// Caller guarantees that no simplex in `facets` is a face of another.
  static BasicComplex from_maximal_facets(std::vector<simplex_type> facets) {
    if (facets.empty()) throw error(errc::empty_input, "complex needs at least one facet");
    std::sort(facets.begin(), facets.end());
    return BasicComplex(std::move(facets));
  }

  const std::vector<simplex_type>& facets() const noexcept { return facets_; }

  int dimension() const noexcept {
    int d = 0;
    for (const auto& f : facets_) d = std::max(d, f.dimension());
    return d;
  }

  std::vector<V> vertices() const {
    std::vector<V> out;
    for (const auto& f : facets_) out.insert(out.end(), f.begin(), f.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool contains(const simplex_type& s) const {
    return std::any_of(facets_.begin(), facets_.end(), [&](const simplex_type& f) { return s.is_face_of(f); });
  }

  bool has_vertex(const V& v) const {
    return std::any_of(facets_.begin(), facets_.end(), [&](const simplex_type& f) { return f.has_vertex(v); });
  }

  /// All simplices grouped by dimension; each group ascending.
  std::vector<std::vector<simplex_type>> simplices_by_dimension() const {
    std::vector<std::vector<simplex_type>> out(static_cast<std::size_t>(dimension()) + 1);
    for (const auto& f : facets_)
      f.for_each_face([&](simplex_type face) { out[static_cast<std::size_t>(face.dimension())].push_back(std::move(face)); });
    for (auto& group : out) {
      std::sort(group.begin(), group.end());
      group.erase(std::unique(group.begin(), group.end()), group.end());
    }
    return out;
  }

  std::vector<simplex_type> simplices_of_dimension(int k) const {
    if (k < 0 || k > dimension()) return {};
    return simplices_by_dimension()[static_cast<std::size_t>(k)];
  }

  /// Every simplex, ordered by dimension and then canonically.
  std::vector<simplex_type> simplices() const {
    std::vector<simplex_type> out;
    for (auto& group : simplices_by_dimension())
      for (auto& s : group) out.push_back(std::move(s));
    return out;
  }

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> out;
    for (const auto& group : simplices_by_dimension()) out.push_back(group.size());
    return out;
  }

  long euler_characteristic() const {
    long chi = 0;
    long sign = 1;
    for (std::size_t count : f_vector()) {
      chi += sign * static_cast<long>(count);
      sign = -sign;
    }
    return chi;
  }

  bool is_subcomplex_of(const BasicComplex& other) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const simplex_type& f) { return other.contains(f); });
  }

  friend bool operator==(const BasicComplex&, const BasicComplex&) = default;

 private:
  explicit BasicComplex(std::vector<simplex_type> facets) : facets_(std::move(facets)) {}

  std::vector<simplex_type> facets_;
};

using Complex = BasicComplex<Vertex>;

template <class V>
BasicComplex<V> make_complex(std::vector<BasicSimplex<V>> facets) {
  return BasicComplex<V>::from_facets(std::move(facets));
}

template <class V>
BasicComplex<V> closure(const BasicSimplex<V>& s) {
  return BasicComplex<V>::from_maximal_facets({s});
}

template <class V>
int dimension(const BasicComplex<V>& k) {
  return k.dimension();
}

/// All faces of dimension at most `k`.
template <class V>
BasicComplex<V> skeleton(const BasicComplex<V>& complex, int k) {
  if (k < 0) throw error(errc::dimension_out_of_range, "skeleton dimension must be non-negative");
  if (k >= complex.dimension()) return complex;
  std::vector<BasicSimplex<V>> pieces;
  for (const auto& f : complex.facets()) {
    if (f.dimension() <= k) {
      pieces.push_back(f);
      continue;
    }
    f.for_each_face([&](BasicSimplex<V> face) {
      if (face.dimension() == k) pieces.push_back(std::move(face));
    });
  }
  return BasicComplex<V>::from_facets(std::move(pieces));
}

template <class V>
bool is_pure(const BasicComplex<V>& complex) {
  const auto& fs = complex.facets();
  return std::all_of(fs.begin(), fs.end(), [&](const auto& f) { return f.dimension() == fs.front().dimension(); });
}

/// Every simplex of `complex` whose vertices all lie in `keep`.
template <class V>
BasicComplex<V> induced_subcomplex(const BasicComplex<V>& complex, std::vector<V> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw error(errc::empty_input, "induced subcomplex on an empty vertex set");
  for (const auto& v : keep)
    if (!complex.has_vertex(v)) throw error(errc::unknown_vertex, to_display(v) + " is not a vertex of the complex");
  std::vector<BasicSimplex<V>> pieces;
  for (const auto& f : complex.facets()) {
    std::vector<V> part;
    std::set_intersection(f.begin(), f.end(), keep.begin(), keep.end(), std::back_inserter(part));
    if (!part.empty()) pieces.emplace_back(std::move(part));
  }
  return BasicComplex<V>::from_facets(std::move(pieces));
}

template <class V>
BasicComplex<V> complex_union(const BasicComplex<V>& a, const BasicComplex<V>& b) {
  std::vector<BasicSimplex<V>> all = a.facets();
  all.insert(all.end(), b.facets().begin(), b.facets().end());
  return BasicComplex<V>::from_facets(std::move(all));
}

template <class V>
std::ostream& operator<<(std::ostream& os, const BasicComplex<V>& k) {
  os << '[';
  bool first = true;
  for (const auto& f : k.facets()) {
    if (!first) os << ", ";
    os << f;
    first = false;
  }
  return os << ']';
}

}  // namespace cbtopo
