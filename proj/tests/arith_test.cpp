#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "toomcirc/arith.hpp"
#include "toomcirc/netlist.hpp"

using namespace toomcirc;
using toomcirc::testing::pow2;
using toomcirc::testing::run_many;
using toomcirc::testing::Values;

namespace {

std::vector<Values> exhaustive_pairs(std::size_t w, const char* a, const char* b) {
  std::vector<Values> v;
  for (std::uint64_t x = 0; x < (1ULL << w); ++x) {
    for (std::uint64_t y = 0; y < (1ULL << w); ++y) {
      v.push_back({{a, BigInt(x)}, {b, BigInt(y)}});
    }
  }
  return v;
}

std::vector<Values> random_pairs(std::size_t w, std::size_t count,
                                 const char* a, const char* b, unsigned seed) {
  std::mt19937_64 rng(seed);
  const BigInt mask = pow2(w) - 1;
  std::vector<Values> v;
  for (std::size_t k = 0; k < count; ++k) {
    v.push_back({{a, BigInt(rng()) & mask}, {b, BigInt(rng()) & mask}});
  }
  return v;
}

BigInt anc(const Values& v) {
  auto it = v.find("anc");
  return it == v.end() ? BigInt(0) : it->second;
}

std::vector<std::size_t> wide_widths() { return {7, 8, 13, 16, 31, 32, 48, 64}; }

}  // namespace

TEST(CuccaroAdder, KnownValues) {
  EXPECT_EQ(count_resources(build_cuccaro_adder(1).circuit).toffoli_count, 1u);
  const auto h = build_cuccaro_adder(4);
  auto r = run_registers(h.circuit, {{"a", 3}, {"b", 5}});
  EXPECT_EQ(r["b"], 8);
  EXPECT_EQ(r["a"], 3);
  EXPECT_EQ(anc(r), 0);
  r = run_registers(h.circuit, {{"a", 15}, {"b", 1}});
  EXPECT_EQ(r["b"], 0);
  EXPECT_EQ(r["carry"], 1);
}

TEST(CuccaroAdder, ExhaustiveWidthsOneToSix) {
  for (std::size_t w = 1; w <= 6; ++w) {
    const auto h = build_cuccaro_adder(w);
    const auto ins = exhaustive_pairs(w, "a", "b");
    const auto outs = run_many(h.circuit, ins);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      const BigInt sum = ins[k].at("a") + ins[k].at("b");
      ASSERT_EQ(outs[k].at("b"), sum % pow2(w)) << "w=" << w;
      ASSERT_EQ(outs[k].at("carry"), sum >> w);
      ASSERT_EQ(outs[k].at("a"), ins[k].at("a"));
      ASSERT_EQ(anc(outs[k]), 0);
    }
  }
}

TEST(CuccaroAdder, RandomWideWidths) {
  for (auto w : wide_widths()) {
    const auto h = build_cuccaro_adder(w);
    const auto ins = random_pairs(w, 10000 / wide_widths().size(), "a", "b", w);
    const auto outs = run_many(h.circuit, ins);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      const BigInt sum = ins[k].at("a") + ins[k].at("b");
      ASSERT_EQ(outs[k].at("b"), sum % pow2(w));
      ASSERT_EQ(outs[k].at("carry"), sum >> w);
      ASSERT_EQ(anc(outs[k]), 0);
    }
  }
}

TEST(CuccaroAdder, DeclaredCountsWidthsOneTo64) {
  for (std::size_t w = 1; w <= 64; ++w) {
    const auto r = count_resources(build_cuccaro_adder(w).circuit);
    EXPECT_EQ(r.toffoli_count, 2 * w - 1) << w;
    EXPECT_LE(r.cnot_count, 5 * w) << w;
    EXPECT_EQ(r.cnot_count, w == 1 ? 1 : 4 * w);
    EXPECT_EQ(r.qubit_count, w == 1 ? 3 : 2 * w + 2);
  }
}

TEST(Subtractor, KnownValues) {
  const auto h = build_subtractor(4);
  auto r = run_registers(h.circuit, {{"a", 3}, {"b", 5}});
  EXPECT_EQ(r["b"], 2);
  r = run_registers(h.circuit, {{"a", 5}, {"b", 3}});
  EXPECT_EQ(r["b"], 14);
  EXPECT_EQ(to_signed(r["b"], 4), -2);
  EXPECT_EQ(r["borrow"], 1);
  for (int x = 0; x < 16; ++x) {
    r = run_registers(h.circuit, {{"a", 0}, {"b", x}});
    EXPECT_EQ(r["b"], x);
  }
}

TEST(Subtractor, ExhaustiveAndCost) {
  for (std::size_t w = 1; w <= 6; ++w) {
    const auto h = build_subtractor(w);
    const auto ins = exhaustive_pairs(w, "a", "b");
    const auto outs = run_many(h.circuit, ins);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      const BigInt a = ins[k].at("a"), b = ins[k].at("b");
      ASSERT_EQ(outs[k].at("b"), ((b - a) % pow2(w) + pow2(w)) % pow2(w));
      ASSERT_EQ(outs[k].at("borrow"), a > b ? 1 : 0);
      ASSERT_EQ(anc(outs[k]), 0);
    }
    // Priced like an adder in Toffolis.
    EXPECT_EQ(count_resources(h.circuit).toffoli_count,
              count_resources(build_cuccaro_adder(w).circuit).toffoli_count);
  }
}

TEST(ControlledAdder, KnownValues) {
  const auto h = build_controlled_adder(4);
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const auto r = run_registers(h.circuit, {{"ctl", 0}, {"a", a}, {"b", b}});
      ASSERT_EQ(r.at("b"), b);
      ASSERT_EQ(r.at("carry"), 0);
    }
  }
  const auto r = run_registers(h.circuit, {{"ctl", 1}, {"a", 6}, {"b", 7}});
  EXPECT_EQ(r.at("b"), 13);
  EXPECT_EQ(count_resources(build_controlled_adder(8).circuit).cnot_count, 16u);
}

TEST(ControlledAdder, ExhaustiveAndCounts) {
  for (std::size_t w = 1; w <= 5; ++w) {
    const auto h = build_controlled_adder(w);
    std::vector<Values> ins;
    for (int c = 0; c < 2; ++c) {
      for (const auto& v : exhaustive_pairs(w, "a", "b")) {
        Values x = v;
        x["ctl"] = c;
        ins.push_back(x);
      }
    }
    const auto outs = run_many(h.circuit, ins);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      const BigInt sum = ins[k].at("b") + ins[k].at("ctl") * ins[k].at("a");
      ASSERT_EQ(outs[k].at("b"), sum % pow2(w));
      ASSERT_EQ(outs[k].at("carry"), sum >> w);
      ASSERT_EQ(outs[k].at("a"), ins[k].at("a"));
      ASSERT_EQ(anc(outs[k]), 0);
    }
  }
  for (std::size_t w = 1; w <= 64; ++w) {
    const auto r = count_resources(build_controlled_adder(w).circuit);
    EXPECT_EQ(r.cnot_count, 2 * w);
    EXPECT_EQ(r.toffoli_count, 4 * w);
  }
}

TEST(Copy, KnownValuesAndCounts) {
  const auto h = build_copy(6);
  auto r = run_registers(h.circuit, {{"src", 0}});
  EXPECT_EQ(r["dst"], 0);
  r = run_registers(h.circuit, {{"src", 45}});
  EXPECT_EQ(r["dst"], 45);
  EXPECT_EQ(r["src"], 45);
  for (std::size_t w = 1; w <= 64; ++w) {
    EXPECT_EQ(count_resources(build_copy(w).circuit).cnot_count, w);
  }
}

TEST(ShiftHalve, RelabelsWithoutGates) {
  Builder b;
  const Reg r = b.alloc(4);
  b.x(r[1]);
  b.x(r[2]);  // holds 6
  const std::size_t before = b.position();
  const Reg h = blocks::shift_halve(b, r, "halve");
  EXPECT_EQ(b.position(), before);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_FALSE(b.allocator().allocated(r[0]));
  const Circuit c = std::move(b).finish({});
  BasisState s = simulate(c, BasisState(c.width()));
  EXPECT_EQ(s.read(h), 3);
  ASSERT_EQ(c.zero_checks().size(), 1u);
  EXPECT_EQ(c.zero_checks()[0].wire, r[0]);

  Builder z;
  const Reg zr = z.alloc(3);
  const Reg zh = blocks::shift_halve(z, zr, "halve");
  const Circuit zc = std::move(z).finish({});
  EXPECT_EQ(simulate(zc, BasisState(zc.width())).read(zh), 0);
}

TEST(ConditionalNegate, KnownValues) {
  const auto h = build_conditional_negate(4);
  for (int v = 0; v < 16; ++v) {
    EXPECT_EQ(run_registers(h.circuit, {{"sign", 0}, {"v", v}}).at("v"), v);
  }
  EXPECT_EQ(run_registers(h.circuit, {{"sign", 1}, {"v", 3}}).at("v"), 13);
  EXPECT_EQ(run_registers(h.circuit, {{"sign", 1}, {"v", 0}}).at("v"), 0);
}

TEST(ConditionalNegate, ExhaustiveAndCounts) {
  for (std::size_t w = 1; w <= 7; ++w) {
    const auto h = build_conditional_negate(w);
    for (int s = 0; s < 2; ++s) {
      for (std::uint64_t v = 0; v < (1ULL << w); ++v) {
        const auto r = run_registers(h.circuit, {{"sign", s}, {"v", v}});
        const BigInt want = s ? (pow2(w) - v) % pow2(w) : BigInt(v);
        ASSERT_EQ(r.at("v"), want);
        ASSERT_EQ(r.at("sign"), s);
        ASSERT_EQ(anc(r), 0);
      }
    }
    const auto rep = count_resources(h.circuit);
    const auto c = cost::conditional_negate(w);
    EXPECT_EQ(rep.toffoli_count, c.toffoli);
    EXPECT_EQ(rep.cnot_count, c.cnot);
  }
}

TEST(BlockCosts, FormulasMatchEmittedGates) {
  for (std::size_t wt = 1; wt <= 20; ++wt) {
    for (std::size_t wa = 1; wa <= wt; ++wa) {
      for (int sub = 0; sub < 2; ++sub) {
        Builder b;
        const Reg a = b.alloc(wa), t = b.alloc(wt);
        const std::size_t base = b.width();
        if (sub) {
          blocks::sub_into(b, a, t);
        } else {
          blocks::add_into(b, a, t);
        }
        const BlockCost want = sub ? cost::sub_into(wa, wt) : cost::add_into(wa, wt);
        EXPECT_EQ(b.width() - base, want.scratch) << wa << "/" << wt;
        EXPECT_EQ(b.live(), wa + wt);
        const Circuit c = std::move(b).finish({});
        EXPECT_EQ(tally(c), want.tally()) << wa << "/" << wt << " sub=" << sub;
      }
    }
  }
}

TEST(BlockCosts, AddIntoZeroExtendsNarrowOperand) {
  Builder b;
  const Reg a = b.alloc(3), t = b.alloc(7);
  blocks::add_into(b, a, t);
  const Circuit c =
      std::move(b).finish({{"a", a, Interpretation::Unsigned, RegisterRole::Input},
                           {"t", t, Interpretation::Unsigned, RegisterRole::Output}});
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 128; y += 5) {
      EXPECT_EQ(run_registers(c, {{"a", x}, {"t", y}}).at("t"), (x + y) % 128);
    }
  }
}

TEST(Blocks, FollowedByReverseIsIdentity) {
  std::mt19937_64 rng(3);
  const std::vector<Circuit> blocks = {
      build_cuccaro_adder(5).circuit, build_subtractor(5).circuit,
      build_controlled_adder(5).circuit, build_copy(5).circuit,
      build_conditional_negate(5).circuit};
  for (const auto& c : blocks) {
    const Circuit r = reverse(c);
    for (int k = 0; k < 200; ++k) {
      BasisState s(c.width());
      for (Wire w = 0; w < c.width(); ++w) s.set(w, rng() & 1);
      ASSERT_EQ(simulate(r, simulate(c, s)), s);
    }
  }
}
