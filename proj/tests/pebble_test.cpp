#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "toomcirc/costmodel.hpp"
#include "toomcirc/pebble.hpp"

using namespace toomcirc;
using Kind = PebbleAction::Kind;

namespace {

const std::vector<std::uint64_t> kGrid = {6, 36, 216, 1296};

double slope_of(const std::vector<std::uint64_t>& ns,
                const std::function<double(std::uint64_t)>& f) {
  std::vector<std::pair<double, double>> s;
  for (auto n : ns) s.emplace_back(static_cast<double>(n), f(n));
  return fit_exponent(s);
}

}  // namespace

TEST(RecursionTree, HeightAndNodeSizes) {
  EXPECT_EQ(RecursionTree(1).height(), 0u);
  EXPECT_EQ(RecursionTree(6).height(), 1u);
  EXPECT_EQ(RecursionTree(7).height(), 2u);
  EXPECT_EQ(RecursionTree(216).height(), 3u);
  const RecursionTree t(100);
  EXPECT_EQ(t.node_size(0), 100u);
  EXPECT_EQ(t.node_size(1), 17u);
  EXPECT_EQ(t.node_size(2), 3u);
  EXPECT_EQ(t.nodes_at(2), 256u);
  EXPECT_THROW(RecursionTree(0), std::invalid_argument);
}

TEST(OptimalCutLevel, KnownValues) {
  EXPECT_EQ(optimal_cut_level(0), 0u);
  EXPECT_EQ(optimal_cut_level(2), 1u);
  EXPECT_EQ(optimal_cut_level(3), 2u);
  // Independent oracle: floor(N / (2 - ln6/ln16)).
  for (unsigned n = 0; n <= 20; ++n) {
    const double d = 2.0 - std::log(6.0) / std::log(16.0);
    EXPECT_EQ(optimal_cut_level(n), static_cast<unsigned>(std::floor(n / d)));
  }
}

TEST(MakeSchedule, SingleNode) {
  const RecursionTree t(1);
  const PebbleSchedule s = make_schedule(t, 0);
  EXPECT_EQ(s.actions, (std::vector<PebbleAction>{{Kind::Compute, 0, 0},
                                                  {Kind::CopyOut, 0, 0}}));
  EXPECT_EQ(s.text(), "COMPUTE r\nCOPY r\n");
}

TEST(MakeSchedule, FullCutEqualsUnoptimizedSpace) {
  const RecursionTree t(6);
  EXPECT_EQ(make_schedule(t, 1).peak_space, space_unoptimized(6));
  EXPECT_THROW(make_schedule(t, 2), std::out_of_range);
}

TEST(MakeSchedule, ReplayIsValidAndBalanced) {
  for (std::uint64_t n : {6u, 36u, 216u}) {
    const RecursionTree t(n);
    for (unsigned k = 0; k <= t.height(); ++k) {
      const PebbleSchedule s = make_schedule(t, k);
      for (const PebbleCosts& c :
           {PebbleCosts::idealized(t), PebbleCosts::measured(t)}) {
        const ReplayResult r = replay(t, s.actions, c);
        EXPECT_TRUE(r.valid) << r.error;
        EXPECT_EQ(r.final_live, 0u);
        EXPECT_TRUE(r.only_product_left) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(MakeSchedule, OptimalCutIsNoWorseThanOthers) {
  for (std::uint64_t n : {6u, 36u, 216u}) {
    const RecursionTree t(n);
    const unsigned ks = optimal_cut_level(t.height());
    const auto best = make_schedule(t, ks).peak_space;
    for (unsigned k = 0; k <= t.height(); ++k) {
      EXPECT_LE(best, make_schedule(t, k).peak_space) << "n=" << n << " k=" << k;
    }
  }
}

TEST(MakeSchedule, MeasuredCostsKeepOptimalCutAtSmallSizes) {
  for (std::uint64_t n : {36u, 216u}) {
    const RecursionTree t(n);
    const PebbleCosts m = PebbleCosts::measured(t);
    const auto peak = [&](unsigned k) {
      return replay(t, make_schedule(t, k).actions, m).peak;
    };
    const auto best = peak(optimal_cut_level(t.height()));
    for (unsigned k = 0; k <= t.height(); ++k) EXPECT_LE(best, peak(k));
  }
}

TEST(Replay, RejectsBadOrders) {
  const RecursionTree t(6);
  const auto c = PebbleCosts::idealized(t);
  // Parent before its children.
  EXPECT_FALSE(replay(t, {{Kind::Compute, 0, 0}}, c).valid);
  // Leaf uncomputed before anything used it.
  std::vector<PebbleAction> a = {{Kind::Compute, 1, 0}, {Kind::Uncompute, 1, 0}};
  EXPECT_FALSE(replay(t, a, c).valid);
  // Parent uncomputed after one of its children is gone.
  std::vector<PebbleAction> b;
  for (std::uint64_t i = 0; i < 16; ++i) b.push_back({Kind::Compute, 1, i});
  b.push_back({Kind::Compute, 0, 0});
  b.push_back({Kind::CopyOut, 0, 0});
  b.push_back({Kind::Uncompute, 1, 3});
  b.push_back({Kind::Uncompute, 0, 0});
  const ReplayResult r = replay(t, b, c);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.error.find("uncompute after children"), std::string::npos);
}

TEST(NodePath, Format) {
  EXPECT_EQ(node_path(0, 0), "r");
  EXPECT_EQ(node_path(1, 3), "r.3");
  EXPECT_EQ(node_path(2, 3 * 16 + 15), "r.3.15");
}

TEST(SpaceUnoptimized, KnownValues) {
  EXPECT_EQ(space_unoptimized(1), 0u);
  EXPECT_EQ(space_unoptimized(36), 132u);
  EXPECT_NEAR(space_unoptimized_closed_form(36), 132.0, 1e-9);
  for (std::uint64_t n : {6u, 216u, 1296u}) {
    EXPECT_NEAR(space_unoptimized_closed_form(static_cast<double>(n)),
                static_cast<double>(space_unoptimized(n)), 1e-6 * n * n);
  }
}

TEST(DepthUnderSchedule, KnownValues) {
  EXPECT_EQ(depth_under_schedule(RecursionTree(1), 0), 1u);
  EXPECT_EQ(depth_under_schedule(RecursionTree(5), 1), 5u);
  // 16^(N-k) sequential subtrees of depth n / 6^(N-k).
  EXPECT_EQ(depth_under_schedule(RecursionTree(216), 2), 16u * 36u);
  EXPECT_THROW(depth_under_schedule(RecursionTree(216), 4), std::out_of_range);
}

TEST(Exponents, OptimizedSpaceAndDepth) {
  const double opt = slope_of(kGrid, [](std::uint64_t n) {
    const RecursionTree t(n);
    return static_cast<double>(make_schedule(t, optimal_cut_level(t.height())).peak_space);
  });
  EXPECT_NEAR(opt, 1.404, 0.10);
  const double depth = slope_of(kGrid, [](std::uint64_t n) {
    const RecursionTree t(n);
    return static_cast<double>(depth_under_schedule(t, optimal_cut_level(t.height())));
  });
  EXPECT_NEAR(depth, 1.143, 0.10);
  const double unopt = slope_of(kGrid, [](std::uint64_t n) {
    return static_cast<double>(space_unoptimized(n));
  });
  EXPECT_GE(unopt - opt, 0.1);
}

TEST(PebbleCosts, LeavesAreFree) {
  const RecursionTree t(216);
  for (const auto& c : {PebbleCosts::idealized(t), PebbleCosts::measured(t)}) {
    EXPECT_EQ(c.node.back(), 0u);
    EXPECT_EQ(c.copy.back(), 0u);
    EXPECT_GT(c.node.front(), 0u);
  }
  const auto ideal = PebbleCosts::idealized(t);
  EXPECT_EQ(ideal.node[1], 36u);
  EXPECT_EQ(PebbleCosts::measured(t).copy[1], 72u);
}
