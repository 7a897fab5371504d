#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "test_support.hpp"

using namespace cbtopo;
using namespace cbtopo::testing;

namespace {

// Oracle for one round on a single l-simplex: vertices are the non-empty
// faces, facets are the orderings of the l+1 vertices (one maximal flag each).
std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace

TEST(Barycentric, DepthZeroIsIdentityWithSingletonCarriers) {
  const Complex k = cx({{0, 1, 2}, {2, 3}});
  const auto sub = barycentric_subdivide(k, 0);
  EXPECT_EQ(sub.complex.f_vector(), k.f_vector());
  const auto verts = k.vertices();
  ASSERT_EQ(sub.vertex_count(), verts.size());
  for (std::uint32_t u = 0; u < sub.vertex_count(); ++u) EXPECT_EQ(sub.carrier_of(u), Simplex({verts[u]}));
}

TEST(Barycentric, OneRoundOnTriangle) {
  const auto sub = barycentric_subdivide(cx({{0, 1, 2}}), 1);
  const auto faces = power_set_profile(3);
  EXPECT_EQ(sub.vertex_count(), std::accumulate(faces.begin(), faces.end(), std::size_t{0}));
  EXPECT_EQ(sub.vertex_count(), 7u);
  EXPECT_EQ(sub.complex.facets().size(), factorial(3));
  EXPECT_EQ(sub.complex.facets().size(), 6u);
}

TEST(Barycentric, FacetCountIsFactorialForSingleSimplices) {
  for (int l = 1; l <= 3; ++l) {
    std::vector<Vertex> vs;
    for (int i = 0; i <= l; ++i) vs.push_back(lv(i));
    const auto sub = barycentric_subdivide(closure(Simplex(vs)), 1);
    EXPECT_EQ(sub.complex.facets().size(), factorial(static_cast<std::size_t>(l) + 1)) << "l = " << l;
  }
}

TEST(Barycentric, CarriersAlongEveryFacetFormAChain) {
  for (const auto& k : test_complexes())
    for (int depth = 1; depth <= 2; ++depth) {
      const auto sub = barycentric_subdivide(k, depth);
      for (const auto& f : sub.complex.facets()) {
        std::vector<Simplex> cs;
        for (auto u : f) cs.push_back(sub.carrier_of(u));
        std::sort(cs.begin(), cs.end(), [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
        for (std::size_t i = 1; i < cs.size(); ++i) EXPECT_TRUE(cs[i - 1].is_face_of(cs[i]));
        EXPECT_TRUE(k.contains(cs.back()));
      }
    }
}

TEST(Barycentric, FirstRoundCarriersAreExactlyTheOriginalSimplices) {
  const Complex k = cx({{0, 1, 2}, {2, 3}});
  const auto sub = barycentric_subdivide(k, 1);
  std::set<Simplex> carriers;
  for (std::uint32_t u = 0; u < sub.vertex_count(); ++u) carriers.insert(sub.carrier_of(u));
  const auto all = k.simplices();
  EXPECT_EQ(carriers, std::set<Simplex>(all.begin(), all.end()));
}

TEST(Barycentric, PreservesEulerCharacteristicAndComponents) {
  for (const auto& k : test_complexes()) {
    ASSERT_LE(k.facets().size(), 50u);
    const long chi = k.euler_characteristic();
    const std::size_t comps = bfs_components(k);
    for (int depth = 0; depth <= 2; ++depth) {
      const auto sub = barycentric_subdivide(k, depth);
      EXPECT_EQ(sub.complex.euler_characteristic(), chi) << k << " depth " << depth;
      EXPECT_EQ(bfs_components(sub.complex), comps) << k << " depth " << depth;
    }
  }
}

TEST(Barycentric, SkeletonOfCbtInputSubdividesToThirtySixVertices) {
  const Complex skel = skeleton(build_input_complex(CbtConfig{2, 0}), 1);
  const auto sub = barycentric_subdivide(skel, 1);
  EXPECT_EQ(sub.vertex_count(), 9u + 27u);
  EXPECT_EQ(sub.complex.facets().size(), 2u * 27u);
}

TEST(Barycentric, NegativeDepthRejected) { EXPECT_THROW(barycentric_subdivide(cx({{0}}), -1), error); }
