#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <iterator>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbtopo/error.hpp"

namespace cbtopo {

/// Local transaction status carried by a vertex. Bottom marks a block whose
/// branch lost a fork race; it appears on input vertices only.
enum class Value : std::uint8_t { Zero, One, Bottom };

constexpr std::string_view to_string(Value v) noexcept {
  switch (v) {
    case Value::Zero: return "0";
    case Value::One: return "1";
    case Value::Bottom: return "bot";
  }
  return "?";
}

inline std::optional<Value> value_from_string(std::string_view s) noexcept {
  if (s == "0") return Value::Zero;
  if (s == "1") return Value::One;
  if (s == "bot") return Value::Bottom;
  return std::nullopt;
}

/// Block `block` on blockchain `chain`.
struct BlockRef {
  int chain = 0;
  int block = 0;

  friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
};

/// A labeled 0-simplex. Colored vertices name a block; colorless ones only
/// carry a value. Ordering is by block (colorless first), then value.
struct Vertex {
  std::optional<BlockRef> block;
  Value value = Value::Zero;

  static Vertex colored(int chain, Value v, int block_index = 0) {
    if (chain < 0 || block_index < 0)
      throw error(errc::invalid_config, "block coordinates must be non-negative");
    return Vertex{BlockRef{chain, block_index}, v};
  }
  static Vertex colorless(Value v) { return Vertex{std::nullopt, v}; }

  bool is_colored() const noexcept { return block.has_value(); }
  int chain() const { return block.value().chain; }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  if (v.block) return os << "(v" << v.block->chain << '^' << v.block->block << ',' << to_string(v.value) << ')';
  return os << '(' << to_string(v.value) << ')';
}

/// A non-empty, duplicate-free vertex set stored in ascending order.
template <class V>
class BasicSimplex {
 public:
  using vertex_type = V;

  /// Sorts `vs`; a repeated vertex or an empty list is rejected.
  explicit BasicSimplex(std::vector<V> vs) : vertices_(std::move(vs)) {
    if (vertices_.empty()) throw error(errc::malformed_simplex, "simplex has no vertices");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw error(errc::malformed_simplex, "simplex repeats a vertex");
  }

  BasicSimplex(std::initializer_list<V> vs) : BasicSimplex(std::vector<V>(vs)) {}

  /// Builds the simplex spanned by a vertex multiset (duplicates collapse).
  static BasicSimplex spanned_by(std::vector<V> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return BasicSimplex(std::move(vs));
  }

  const std::vector<V>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }
  const V& operator[](std::size_t i) const { return vertices_[i]; }

  bool has_vertex(const V& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  /// True iff every vertex of this simplex lies in `other`.
  bool is_face_of(const BasicSimplex& other) const {
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
  }

  /// Calls `fn(face)` for every non-empty face, including the simplex itself.
  template <class Fn>
  void for_each_face(Fn&& fn) const {
    const std::size_t k = vertices_.size();
    if (k >= 31) throw error(errc::dimension_out_of_range, "simplex too large to enumerate faces");
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<V> face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) face.push_back(vertices_[i]);
      fn(BasicSimplex(std::move(face), sorted_tag{}));
    }
  }

  /// Faces of exactly one dimension lower; empty for a vertex.
  std::vector<BasicSimplex> boundary_faces() const {
    std::vector<BasicSimplex> out;
    if (vertices_.size() < 2) return out;
    for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
      std::vector<V> face;
      face.reserve(vertices_.size() - 1);
      for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (i != skip) face.push_back(vertices_[i]);
      out.push_back(BasicSimplex(std::move(face), sorted_tag{}));
    }
    return out;
  }

  BasicSimplex united_with(const BasicSimplex& other) const {
    std::vector<V> u;
    std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                   std::back_inserter(u));
    return BasicSimplex(std::move(u), sorted_tag{});
  }

  friend bool operator==(const BasicSimplex&, const BasicSimplex&) = default;
  friend auto operator<=>(const BasicSimplex& a, const BasicSimplex& b) { return a.vertices_ <=> b.vertices_; }

 private:
  struct sorted_tag {};
  BasicSimplex(std::vector<V> vs, sorted_tag) : vertices_(std::move(vs)) {}

  std::vector<V> vertices_;
};

template <class V>
std::ostream& operator<<(std::ostream& os, const BasicSimplex<V>& s) {
  os << '{';
  bool first = true;
  for (const auto& v : s) {
    if (!first) os << ' ';
    os << v;
    first = false;
  }
  return os << '}';
}

template <class T>
std::string to_display(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

using Simplex = BasicSimplex<Vertex>;

}  // namespace cbtopo
