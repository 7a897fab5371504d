#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace cbtopo;
using namespace cbtopo::testing;

namespace {

Vertex cv(int chain, Value v) { return Vertex::colored(chain, v); }
Vertex nv(Value v) { return Vertex::colorless(v); }

}  // namespace

namespace {

bool has_bottom(const Simplex& s) {
  for (const auto& v : s)
    if (v.value == Value::Bottom) return true;
  return false;
}

// Oracle: every pair tau < sigma of the carrier domain, checked directly.
std::set<std::pair<Simplex, Simplex>> non_monotone_pairs(const Task& task) {
  std::set<std::pair<Simplex, Simplex>> bad;
  for (const auto& [sigma, image] : task.carrier)
    for (const auto& [tau, face_image] : task.carrier)
      if (tau != sigma && tau.is_face_of(sigma) && !face_image.is_subcomplex_of(image)) bad.emplace(tau, sigma);
  return bad;
}

Task restrict_to_vertices(const Task& task, const std::vector<Vertex>& keep) {
  Task out{induced_subcomplex(task.input, keep), task.output, {}, task.colored};
  for (const auto& s : out.input.simplices()) out.carrier.emplace(s, task.carrier.at(s));
  return out;
}

}  // namespace

// Adding a suspended vertex to a simplex without one shrinks the image to the
// all-0 side, so the rules as stated fail containment exactly on those pairs.
TEST(Monotonic, CbtTaskFailsExactlyWhereASuspendedVertexIsAdded) {
  for (int n = 1; n <= 3; ++n) {
    const Task task = build_task(CbtConfig{n, 0});
    const auto bad = non_monotone_pairs(task);
    std::size_t predicted = 0;
    for (const auto& [sigma, image] : task.carrier)
      for (const auto& [tau, face_image] : task.carrier)
        if (tau != sigma && tau.is_face_of(sigma) && !has_bottom(tau) && has_bottom(sigma)) {
          ++predicted;
          EXPECT_TRUE(bad.count({tau, sigma})) << tau << " < " << sigma;
        }
    EXPECT_EQ(bad.size(), predicted);
    EXPECT_GT(predicted, 0u);

    const auto r = verify_monotonic(task);
    ASSERT_FALSE(r.holds);
    ASSERT_EQ(r.witness.size(), 2u);
    EXPECT_TRUE(bad.count({r.witness[0], r.witness[1]}));
  }
}

TEST(Monotonic, SmallestCounterexampleForTwoChains) {
  const Task task = build_task(CbtConfig{1, 0});
  const Simplex tau({cv(0, Value::Zero)});
  const Simplex sigma({cv(0, Value::Zero), cv(1, Value::Bottom)});
  EXPECT_TRUE(task.carrier.at(tau).contains(Simplex({cv(0, Value::One)})));
  EXPECT_FALSE(task.carrier.at(sigma).contains(Simplex({cv(0, Value::One)})));
}

TEST(Monotonic, HoldsOnTheSuspensionFreeAndAllSuspendedParts) {
  for (int n = 1; n <= 3; ++n) {
    const Task task = build_task(CbtConfig{n, 0});
    std::vector<Vertex> live, suspended;
    for (const auto& v : task.input.vertices()) (v.value == Value::Bottom ? suspended : live).push_back(v);
    EXPECT_TRUE(verify_monotonic(restrict_to_vertices(task, live)).holds);
    EXPECT_TRUE(verify_monotonic(restrict_to_vertices(task, suspended)).holds);
  }
}

TEST(Monotonic, CbtTaskHasSixtyThreeSimplicesAtNEqualsTwo) {
  EXPECT_EQ(build_task(CbtConfig{2, 0}).carrier.size(), 63u);
}

TEST(Monotonic, DroppingAVertexFromAnImageIsReported) {
  Task task = identity_task(cx({{0, 1}}));
  ASSERT_TRUE(verify_monotonic(task).holds);
  task.carrier.at(sx({0, 1})) = cx({{0}});
  const auto r = verify_monotonic(task);
  ASSERT_FALSE(r.holds);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(r.witness[0], sx({1}));
  EXPECT_EQ(r.witness[1], sx({0, 1}));
}

TEST(Rigid, CbtTaskHolds) {
  EXPECT_EQ(build_task(CbtConfig{1, 0}).carrier.size(), 15u);
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(verify_rigid(build_task(CbtConfig{n, 0})).holds);
}

TEST(Rigid, EdgeSentToAVertexFails) {
  Task task = build_task(CbtConfig{1, 0});
  const Simplex sigma({cv(0, Value::Zero), cv(1, Value::Bottom)});
  task.carrier.at(sigma) = make_complex(std::vector<Simplex>{Simplex({cv(0, Value::Zero)})});
  const auto r = verify_rigid(task);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness.at(0), sigma);
}

TEST(NamePreserving, CbtTaskHolds) {
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(verify_name_preserving(build_task(CbtConfig{n, 0})).holds);
}

TEST(NamePreserving, ForeignBlockFails) {
  Task task = build_task(CbtConfig{2, 0});
  const Simplex sigma({cv(0, Value::One)});
  task.carrier.at(sigma) = make_complex(std::vector<Simplex>{Simplex({cv(1, Value::One)})});
  const auto r = verify_name_preserving(task);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness.at(0), sigma);
}

TEST(NamePreserving, ColorlessTaskIsAnError) {
  try {
    verify_name_preserving(build_colorless_task(CbtConfig{1, 0}));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_colored);
  }
}

TEST(WellFormed, CbtTasksAndMissingEntry) {
  for (int n = 1; n <= 3; ++n) {
    EXPECT_TRUE(verify_well_formed(build_task(CbtConfig{n, 0})).holds);
    EXPECT_TRUE(verify_well_formed(build_colorless_task(CbtConfig{n, 0})).holds);
  }
  Task task = build_task(CbtConfig{1, 0});
  task.carrier.erase(task.carrier.begin());
  EXPECT_FALSE(verify_well_formed(task).holds);
}

TEST(RestrictToSkeleton, CountsForTwoAndThree) {
  const Task t2 = restrict_to_skeleton(build_task(CbtConfig{2, 0}), 1);
  EXPECT_EQ(t2.input.f_vector(), (std::vector<std::size_t>{9, 27}));
  EXPECT_EQ(t2.carrier.size(), 36u);
  EXPECT_TRUE(verify_well_formed(t2).holds);

  // 3(n+1) vertices; C(4,2) chain pairs times 3*3 value pairs.
  const Task t3 = restrict_to_skeleton(build_task(CbtConfig{3, 0}), 1);
  EXPECT_EQ(t3.input.f_vector(), (std::vector<std::size_t>{12, 6 * 9}));
}

TEST(RestrictToSkeleton, FullDimensionIsIdentity) {
  const Task task = build_task(CbtConfig{2, 0});
  const Task same = restrict_to_skeleton(task, 2);
  EXPECT_EQ(same.input, task.input);
  EXPECT_EQ(same.carrier, task.carrier);
}

TEST(RestrictToSkeleton, LevelOutsideRange) {
  const Task task = build_task(CbtConfig{2, 0});
  for (int t : {0, 3}) {
    try {
      restrict_to_skeleton(task, t);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::bad_resilience);
    }
  }
}

TEST(ColorlessProjection, OutputCollapsesToTwoPoints) {
  const Task task = colorless_projection(build_task(CbtConfig{2, 0}));
  EXPECT_FALSE(task.colored);
  EXPECT_EQ(task.output, make_complex(std::vector<Simplex>{Simplex({nv(Value::Zero)}), Simplex({nv(Value::One)})}));
  EXPECT_EQ(connected_components(task.output).size(), 2u);
}

TEST(ColorlessProjection, AllCommittedEdgeGoesToOne) {
  const Task task = colorless_projection(build_task(CbtConfig{1, 0}));
  const Simplex sigma({cv(0, Value::One), cv(1, Value::One)});
  EXPECT_EQ(task.carrier.at(sigma), closure(Simplex({nv(Value::One)})));
}

TEST(ColorlessProjection, ProjectingTwiceIsAnError) {
  const Task task = colorless_projection(build_task(CbtConfig{1, 0}));
  EXPECT_THROW(colorless_projection(task), error);
  EXPECT_THROW(project(nv(Value::One)), error);
}

TEST(ColorlessProjection, ImagesEqualVertexwiseProjection) {
  for (int n = 1; n <= 3; ++n) {
    const Task colored = build_task(CbtConfig{n, 0});
    const Task colorless = colorless_projection(colored);
    for (const auto& [sigma, image] : colored.carrier) {
      // Oracle: project each vertex of each image simplex and rebuild.
      std::vector<Simplex> projected;
      for (const auto& s : image.simplices()) {
        std::vector<Vertex> vs;
        for (const auto& v : s) vs.push_back(nv(v.value));
        projected.push_back(Simplex::spanned_by(vs));
      }
      EXPECT_EQ(colorless.carrier.at(sigma), make_complex(projected));
      EXPECT_TRUE(colorless.carrier.at(sigma).is_subcomplex_of(colorless.output));
    }
    // Projection keeps the suspended-vertex containment gap.
    EXPECT_FALSE(verify_monotonic(colorless).holds);
  }
}
