#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace cbtopo;
using namespace cbtopo::testing;

TEST(Simplex, CanonicalOrderIgnoresInsertionOrder) {
  EXPECT_EQ(sx({2, 0, 1}), sx({0, 1, 2}));
  EXPECT_EQ(sx({2, 0, 1}).dimension(), 2);
}

TEST(Simplex, RepeatedVertexIsMalformed) {
  try {
    Simplex({lv(0), lv(0)});
    FAIL() << "expected MalformedSimplex";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::malformed_simplex);
  }
  EXPECT_THROW(Simplex(std::vector<Vertex>{}), error);
}

TEST(Simplex, VertexOrderPutsColorlessFirstThenBlockThenValue) {
  const Vertex c0 = Vertex::colorless(Value::Zero);
  const Vertex a = Vertex::colored(0, Value::Bottom);
  const Vertex b = Vertex::colored(1, Value::Zero);
  const Vertex b1 = Vertex::colored(1, Value::One);
  EXPECT_LT(c0, a);
  EXPECT_LT(a, b);
  EXPECT_LT(b, b1);
}

TEST(MakeComplex, PathOfTwoEdges) {
  const Complex k = cx({{0, 1}, {1, 2}});
  EXPECT_EQ(k.facets().size(), 2u);
  EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{3, 2}));
  EXPECT_TRUE(k.contains(sx({1})));
  EXPECT_FALSE(k.contains(sx({0, 2})));
}

TEST(MakeComplex, AbsorbsFacesAndDuplicates) {
  const Complex k = cx({{0, 1}, {0}, {1, 0}});
  ASSERT_EQ(k.facets().size(), 1u);
  EXPECT_EQ(k.facets().front(), sx({0, 1}));
}

TEST(MakeComplex, TriangleHasSevenFacesLikeItsPowerSet) {
  const Complex k = cx({{0, 1, 2}});
  const auto oracle = power_set_profile(3);
  EXPECT_EQ(k.f_vector(), oracle);
  EXPECT_EQ(k.simplices().size(), 7u);
}

TEST(MakeComplex, EmptyFacetListIsAnError) {
  try {
    make_complex(std::vector<Simplex>{});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::empty_input);
  }
}

TEST(Dimension, Basics) {
  EXPECT_EQ(cx({{0}}).dimension(), 0);
  EXPECT_EQ(cx({{0, 1}, {2, 3, 4}}).dimension(), 2);
  EXPECT_EQ(build_input_complex(CbtConfig{2, 0}).dimension(), 2);
}

TEST(Skeleton, TriangleBoundary) {
  const Complex s = skeleton(cx({{0, 1, 2}}), 1);
  EXPECT_EQ(s, cx({{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(s.f_vector(), (std::vector<std::size_t>{3, 3}));
}

TEST(Skeleton, IdentityAtOrAboveDimension) {
  const Complex k = cx({{0, 1, 2}, {2, 3}});
  EXPECT_EQ(skeleton(k, 2), k);
  EXPECT_EQ(skeleton(k, 5), k);
}

TEST(Skeleton, CbtInputOneSkeletonMatchesPairEnumeration) {
  // Oracle: vertices are (chain, value) pairs; an edge joins two vertices on
  // different chains.
  std::size_t verts = 0, edges = 0;
  for (int c1 = 0; c1 < 3; ++c1)
    for (int v1 = 0; v1 < 3; ++v1) {
      ++verts;
      for (int c2 = c1 + 1; c2 < 3; ++c2)
        for (int v2 = 0; v2 < 3; ++v2) ++edges;
    }
  ASSERT_EQ(verts, 9u);
  ASSERT_EQ(edges, 27u);
  const Complex s = skeleton(build_input_complex(CbtConfig{2, 0}), 1);
  EXPECT_EQ(s.f_vector(), (std::vector<std::size_t>{verts, edges}));
}

TEST(Skeleton, NegativeLevelRejected) { EXPECT_THROW(skeleton(cx({{0, 1}}), -1), error); }

TEST(Skeleton, IsIdempotentOnRandomComplexes) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Complex k = random_complex(rng, 8, 10);
    for (int lvl = 0; lvl <= 3; ++lvl) {
      const Complex s = skeleton(k, lvl);
      EXPECT_EQ(skeleton(s, lvl), s);
      EXPECT_LE(s.dimension(), lvl);
      for (const auto& simplex : k.simplices())
        EXPECT_EQ(s.contains(simplex), simplex.dimension() <= lvl);
    }
  }
}

TEST(Purity, Basics) {
  EXPECT_FALSE(is_pure(cx({{0, 1}, {2}})));
  EXPECT_TRUE(is_pure(cx({{0, 1, 2}})));
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(is_pure(build_input_complex(CbtConfig{n, 0})));
}

TEST(InducedSubcomplex, PicksOneOfTwoTriangles) {
  const Complex k = cx({{0, 1, 2}, {3, 4, 5}});
  EXPECT_EQ(induced_subcomplex(k, {lv(0), lv(1), lv(2)}), cx({{0, 1, 2}}));
  EXPECT_EQ(induced_subcomplex(k, {lv(4)}), cx({{4}}));
}

TEST(InducedSubcomplex, UnknownVertexIsAnError) {
  try {
    induced_subcomplex(cx({{0, 1}}), {lv(9)});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unknown_vertex);
  }
}

TEST(InducedSubcomplex, FullVertexSetOfCbtOutputKeepsBothFacets) {
  const Complex out = build_output_complex(CbtConfig{2, 0});
  const Complex all = induced_subcomplex(out, out.vertices());
  EXPECT_EQ(all, out);
  EXPECT_EQ(all.facets().size(), 2u);
}

TEST(DownwardClosure, EveryFaceOfEveryMemberIsAMember) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Complex k = random_complex(rng, 8, 8);
    auto half = k.vertices();
    half.resize((half.size() + 1) / 2);
    const Complex i = induced_subcomplex(k, half);
    for (const Complex* c : {&k, &i})
      for (const auto& s : c->simplices())
        s.for_each_face([&](const Simplex& f) { EXPECT_TRUE(c->contains(f)); });
    for (const auto& s : i.simplices()) EXPECT_TRUE(k.contains(s));
  }
}

TEST(MakeComplex, NoFacetIsAFaceOfAnother) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex k = random_complex(rng, 6, 15);
    const auto& fs = k.facets();
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = 0; b < fs.size(); ++b)
        if (a != b) EXPECT_FALSE(fs[a].is_face_of(fs[b]));
  }
}
