#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace cbtopo;
using namespace cbtopo::testing;

namespace {

Vertex cv(int chain, Value v) { return Vertex::colored(chain, v); }
Vertex nv(Value v) { return Vertex::colorless(v); }

std::size_t pow3(int e) { return static_cast<std::size_t>(std::lround(std::pow(3.0, e))); }

}  // namespace

TEST(InputComplex, CountsAndPurity) {
  for (int n = 1; n <= 4; ++n) {
    const Complex in = build_input_complex(CbtConfig{n, 0});
    EXPECT_EQ(in.vertices().size(), static_cast<std::size_t>(3 * (n + 1)));
    EXPECT_EQ(in.dimension(), n);
    EXPECT_EQ(in.facets().size(), pow3(n + 1));
    EXPECT_TRUE(is_pure(in));
  }
}

TEST(InputComplex, SameBlockVerticesShareNoSimplex) {
  const Complex in = build_input_complex(CbtConfig{2, 0});
  EXPECT_FALSE(in.contains(Simplex({cv(0, Value::Zero), cv(0, Value::One)})));
  EXPECT_TRUE(in.contains(Simplex({cv(0, Value::Zero), cv(1, Value::One)})));
}

TEST(InputComplex, BlockIndexIsCarriedOnEveryVertex) {
  const Complex in = build_input_complex(CbtConfig{1, 7});
  for (const auto& v : in.vertices()) EXPECT_EQ(v.block->block, 7);
}

TEST(InputComplex, FewerThanTwoChainsRejected) {
  try {
    build_input_complex(CbtConfig{0, 0});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_config);
  }
}

TEST(OutputComplex, TwoDisjointFullSimplices) {
  const Complex out2 = build_output_complex(CbtConfig{2, 0});
  EXPECT_EQ(out2.vertices().size(), 6u);
  EXPECT_EQ(out2.facets().size(), 2u);
  EXPECT_EQ(out2.dimension(), 2);
  EXPECT_EQ(connected_components(out2).size(), 2u);
  EXPECT_FALSE(out2.contains(Simplex({cv(0, Value::Zero), cv(1, Value::One)})));

  const Complex out1 = build_output_complex(CbtConfig{1, 0});
  EXPECT_EQ(out1.f_vector(), (std::vector<std::size_t>{4, 2}));
}

TEST(CarrierMap, RuleOneAllCommitted) {
  const CarrierMap map = build_carrier_map(CbtConfig{1, 0});
  const Simplex sigma({cv(0, Value::One), cv(1, Value::One)});
  EXPECT_EQ(map.at(sigma), closure(Simplex({cv(0, Value::One), cv(1, Value::One)})));
}

TEST(CarrierMap, RuleTwoAnySuspended) {
  const CarrierMap map = build_carrier_map(CbtConfig{1, 0});
  const Simplex sigma({cv(0, Value::One), cv(1, Value::Bottom)});
  EXPECT_EQ(map.at(sigma), closure(Simplex({cv(0, Value::Zero), cv(1, Value::Zero)})));
}

TEST(CarrierMap, RuleThreeMixed) {
  const CarrierMap map = build_carrier_map(CbtConfig{1, 0});
  const Simplex sigma({cv(0, Value::One), cv(1, Value::Zero)});
  const Complex expected = make_complex(std::vector<Simplex>{Simplex({cv(0, Value::Zero), cv(1, Value::Zero)}),
                                                             Simplex({cv(0, Value::One), cv(1, Value::One)})});
  EXPECT_EQ(map.at(sigma), expected);
}

TEST(CarrierMap, EveryInputSimplexMatchesExactlyOneRule) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& sigma : build_input_complex(CbtConfig{n, 0}).simplices()) {
      int hits = 0;
      bool any_bot = false, all_one = true;
      for (const auto& v : sigma) {
        any_bot |= v.value == Value::Bottom;
        all_one &= v.value == Value::One;
      }
      hits += all_one && !any_bot;
      hits += any_bot;
      hits += !all_one && !any_bot;
      EXPECT_EQ(hits, 1);
      const CarrierRule r = classify(sigma);
      EXPECT_EQ(r == CarrierRule::AnySuspended, any_bot);
      EXPECT_EQ(r == CarrierRule::AllCommitted, all_one);
    }
}

TEST(CarrierMap, MixedValueSimplicesOnlyUnderRuleThree) {
  for (int n = 1; n <= 3; ++n) {
    const Task task = build_task(CbtConfig{n, 0});
    for (const auto& [sigma, image] : task.carrier) {
      bool has0 = false, has1 = false;
      for (const auto& v : image.vertices()) (v.value == Value::Zero ? has0 : has1) = true;
      if (has0 && has1) EXPECT_EQ(classify(sigma), CarrierRule::Undetermined);
      for (const auto& f : image.facets()) {
        for (const auto& v : f) EXPECT_EQ(v.value, f[0].value);
      }
    }
  }
}

TEST(BuildTask, DomainSizes) {
  EXPECT_EQ(build_task(CbtConfig{1, 0}).carrier.size(), 6u + 9u);
  EXPECT_EQ(build_task(CbtConfig{2, 0}).carrier.size(), 9u + 27u + 27u);
  const Task t = build_task(CbtConfig{2, 0});
  EXPECT_TRUE(verify_rigid(t).holds);
  EXPECT_TRUE(verify_name_preserving(t).holds);
}

TEST(BuildColorlessTask, TwoPointOutput) {
  const Task task = build_colorless_task(CbtConfig{2, 0});
  EXPECT_EQ(task.output.facets().size(), 2u);
  EXPECT_EQ(connected_components(task.output).size(), 2u);
}

TEST(BuildColorlessTask, FacetImages) {
  const Task task = build_colorless_task(CbtConfig{2, 0});
  const Simplex all_one({cv(0, Value::One), cv(1, Value::One), cv(2, Value::One)});
  EXPECT_EQ(task.carrier.at(all_one), closure(Simplex({nv(Value::One)})));
  const Simplex with_bot({cv(0, Value::One), cv(1, Value::Zero), cv(2, Value::Bottom)});
  EXPECT_EQ(task.carrier.at(with_bot), closure(Simplex({nv(Value::Zero)})));
}
