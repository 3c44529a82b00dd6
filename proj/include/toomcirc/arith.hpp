#pragma once

// Reversible arithmetic blocks: Cuccaro ripple-carry adders, subtraction by
// complementing, controlled addition, copy, halving by relabel, and
// conditional negation. Each emitter has a closed-form cost next to it.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "builder.hpp"
#include "netlist.hpp"

namespace toomcirc {

/// Gate counts of one block invocation plus the clean scratch wires it
/// borrows from the allocator and hands back before returning.
struct BlockCost {
  std::uint64_t toffoli = 0;
  std::uint64_t cnot = 0;
  std::uint64_t not_ = 0;
  std::uint64_t scratch = 0;

  [[nodiscard]] GateTally tally() const { return {toffoli, cnot, not_}; }
  friend bool operator==(const BlockCost&, const BlockCost&) = default;
};

namespace cost {

// t += a (mod 2^w), both w bits.
inline BlockCost add_mod(std::uint64_t w) {
  if (w == 1) return {0, 1, 0, 0};
  return {2 * w - 2, 4 * w - 3, 0, 1};
}

// (t, z) += a with the carry out of bit w-1 xored into z.
inline BlockCost add_carry(std::uint64_t w) {
  if (w == 1) return {1, 1, 0, 0};
  return {2 * w - 1, 4 * w, 0, 1};
}

// t += a (mod 2^wt) for wa <= wt; a is zero-extended with scratch wires.
inline BlockCost add_into(std::uint64_t wa, std::uint64_t wt) {
  if (wa == wt) return add_mod(wt);
  BlockCost c = add_carry(wt - 1);
  c.scratch += (wt - 1) - wa;
  return c;
}

inline BlockCost sub_into(std::uint64_t wa, std::uint64_t wt) {
  BlockCost c = add_into(wa, wt);
  c.not_ += 2 * wt;
  return c;
}

inline BlockCost controlled_add_carry(std::uint64_t w) {
  return {4 * w, 2 * w, 0, 1};
}

inline BlockCost copy(std::uint64_t w) { return {0, w, 0, 0}; }

inline BlockCost conditional_negate(std::uint64_t w) {
  if (w == 1) return {};
  BlockCost c = add_into(1, w);
  c.cnot += w;
  return c;
}

}  // namespace cost

namespace blocks {

namespace detail {

inline void check_width(std::size_t w, const char* what) {
  if (w == 0) throw std::invalid_argument(std::string(what) + ": width 0");
}

// Cuccaro majority: leaves the carry out of this position in `a`.
inline void maj(Builder& b, Wire slot, Wire t, Wire a) {
  b.cx(a, t);
  b.cx(a, slot);
  b.ccx(slot, t, a);
}

// Unmajority-and-add; the last CNOT is skipped when the slot is known zero.
inline void uma(Builder& b, Wire slot, Wire t, Wire a, bool slot_is_zero) {
  b.ccx(slot, t, a);
  b.cx(a, slot);
  if (!slot_is_zero) b.cx(slot, t);
}

inline void check_same(const Reg& a, const Reg& t, const char* what) {
  if (a.size() != t.size()) {
    throw std::invalid_argument(std::string(what) + ": width mismatch");
  }
  check_width(a.size(), what);
}

}  // namespace detail

/// t += a (mod 2^w).
inline void add_mod(Builder& b, const Reg& a, const Reg& t) {
  detail::check_same(a, t, "add_mod");
  const std::size_t w = a.size();
  if (w == 1) {
    b.cx(a[0], t[0]);
    return;
  }
  const Wire c0 = b.alloc();
  auto slot = [&](std::size_t i) { return i == 0 ? c0 : a[i - 1]; };
  for (std::size_t i = 0; i + 1 < w; ++i) detail::maj(b, slot(i), t[i], a[i]);
  b.cx(a[w - 1], t[w - 1]);
  b.cx(slot(w - 1), t[w - 1]);
  for (std::size_t i = w - 1; i-- > 0;) {
    detail::uma(b, slot(i), t[i], a[i], i == 0);
  }
  b.release(c0);
}

/// (t, z) += a: t gets the w-bit sum, z is xored with the carry out.
inline void add_carry(Builder& b, const Reg& a, const Reg& t, Wire z) {
  detail::check_same(a, t, "add_carry");
  const std::size_t w = a.size();
  if (w == 1) {
    b.ccx(a[0], t[0], z);
    b.cx(a[0], t[0]);
    return;
  }
  const Wire c0 = b.alloc();
  auto slot = [&](std::size_t i) { return i == 0 ? c0 : a[i - 1]; };
  for (std::size_t i = 0; i + 1 < w; ++i) detail::maj(b, slot(i), t[i], a[i]);
  // Top position: z ^= maj(a, t, carry) and t ^= a ^ carry in one Toffoli.
  const Wire at = a[w - 1];
  const Wire tt = t[w - 1];
  const Wire s = slot(w - 1);
  b.cx(at, tt);
  b.cx(at, s);
  b.ccx(tt, s, z);
  b.cx(at, z);
  b.cx(at, s);
  b.cx(s, tt);
  for (std::size_t i = w - 1; i-- > 0;) {
    detail::uma(b, slot(i), t[i], a[i], i == 0);
  }
  b.release(c0);
}

/// t += a (mod 2^|t|) for |a| <= |t|.
inline void add_into(Builder& b, const Reg& a, const Reg& t) {
  if (a.size() > t.size()) {
    throw std::invalid_argument("add_into: addend wider than target");
  }
  detail::check_width(a.size(), "add_into");
  if (a.size() == t.size()) {
    add_mod(b, a, t);
    return;
  }
  const std::size_t low = t.size() - 1;
  const Reg pad = b.alloc(low - a.size());
  add_carry(b, join(a, pad), slice(t, 0, low), t.back());
  b.release(pad);
}

/// t -= a (mod 2^|t|), as complement, add, complement.
inline void sub_into(Builder& b, const Reg& a, const Reg& t) {
  for (Wire w : t) b.x(w);
  add_into(b, a, t);
  for (Wire w : t) b.x(w);
}

/// (t, z) += ctl * a, z xored with the carry out.
inline void controlled_add_carry(Builder& b, Wire ctl, const Reg& a,
                                 const Reg& t, Wire z) {
  detail::check_same(a, t, "controlled_add");
  const std::size_t w = a.size();
  const Wire s = b.alloc();
  auto slot = [&](std::size_t i) { return i == 0 ? s : a[i - 1]; };
  for (std::size_t i = 0; i < w; ++i) {
    b.ccx(ctl, a[i], t[i]);
    b.cx(a[i], slot(i));
    b.ccx(slot(i), t[i], a[i]);
  }
  b.ccx(ctl, a[w - 1], z);
  for (std::size_t i = w; i-- > 0;) {
    b.ccx(slot(i), t[i], a[i]);
    b.cx(a[i], slot(i));
    if (i != 0) b.ccx(ctl, slot(i), t[i]);
  }
  b.release(s);
}

/// dst ^= src on the low |src| wires of dst; dst must start at zero.
inline void copy(Builder& b, const Reg& src, const Reg& dst) {
  if (dst.size() < src.size()) {
    throw std::invalid_argument("copy: destination narrower than source");
  }
  for (std::size_t i = 0; i < src.size(); ++i) b.cx(src[i], dst[i]);
}

/// Drops the LSB by relabelling. The LSB must be zero here; the obligation
/// is recorded for the simulator and the wire goes back to the allocator.
inline Reg shift_halve(Builder& b, const Reg& r, const std::string& site) {
  if (r.size() < 2) {
    throw std::invalid_argument("shift_halve: register needs >= 2 wires");
  }
  b.zero_check(r[0], site);
  b.release(r[0]);
  return slice(r, 1, r.size() - 1);
}

/// v <- ctl ? -v : v (mod 2^|v|): complement under ctl, then add ctl as a
/// one-bit addend.
inline void conditional_negate(Builder& b, Wire ctl, const Reg& v) {
  detail::check_width(v.size(), "conditional_negate");
  if (v.size() == 1) return;  // -v == v (mod 2)
  for (Wire w : v) b.cx(ctl, w);
  add_into(b, Reg{ctl}, v);
}

}  // namespace blocks

/// A standalone block: its circuit plus the operand registers by name.
struct BlockHandle {
  Circuit circuit;

  [[nodiscard]] const Register& reg(const std::string& name) const {
    const Register* r = circuit.find_register(name);
    if (r == nullptr) throw std::out_of_range("no register " + name);
    return *r;
  }
};

namespace detail {

inline Register named(std::string name, Reg wires, RegisterRole role,
                      Interpretation interp = Interpretation::Unsigned) {
  return Register{std::move(name), std::move(wires), interp, role};
}

inline BlockHandle finish_block(Builder&& b, std::vector<Register> regs) {
  std::vector<const Reg*> taken;
  for (const auto& r : regs) taken.push_back(&r.wires);
  Reg rest = complement_wires(b.width(), taken);
  if (!rest.empty()) {
    regs.push_back(named("anc", std::move(rest), RegisterRole::Ancilla));
  }
  return BlockHandle{std::move(b).finish(std::move(regs))};
}

}  // namespace detail

/// (a, b, carry) -> (a, a+b mod 2^w, carry ^ overflow); 2w-1 Toffolis.
inline BlockHandle build_cuccaro_adder(std::size_t width) {
  if (width == 0) throw std::invalid_argument("adder width must be >= 1");
  Builder b;
  Reg a = b.alloc(width), t = b.alloc(width);
  Wire z = b.alloc();
  blocks::add_carry(b, a, t, z);
  return detail::finish_block(
      std::move(b), {detail::named("a", a, RegisterRole::Input),
                     detail::named("b", t, RegisterRole::Output),
                     detail::named("carry", {z}, RegisterRole::Output)});
}

/// (a, b, borrow) -> (a, b-a mod 2^w, borrow ^ [a > b]).
inline BlockHandle build_subtractor(std::size_t width) {
  if (width == 0) throw std::invalid_argument("subtractor width must be >= 1");
  Builder b;
  Reg a = b.alloc(width), t = b.alloc(width);
  Wire z = b.alloc();
  for (Wire w : t) b.x(w);
  blocks::add_carry(b, a, t, z);
  for (Wire w : t) b.x(w);
  return detail::finish_block(
      std::move(b),
      {detail::named("a", a, RegisterRole::Input),
       detail::named("b", t, RegisterRole::Output,
                     Interpretation::TwosComplement),
       detail::named("borrow", {z}, RegisterRole::Output)});
}

/// (ctl, a, b, carry) -> (ctl, a, b + ctl*a mod 2^w, carry ^ ctl*overflow).
inline BlockHandle build_controlled_adder(std::size_t width) {
  if (width == 0) throw std::invalid_argument("adder width must be >= 1");
  Builder b;
  Wire ctl = b.alloc();
  Reg a = b.alloc(width), t = b.alloc(width);
  Wire z = b.alloc();
  blocks::controlled_add_carry(b, ctl, a, t, z);
  return detail::finish_block(
      std::move(b), {detail::named("ctl", {ctl}, RegisterRole::Input),
                     detail::named("a", a, RegisterRole::Input),
                     detail::named("b", t, RegisterRole::Output),
                     detail::named("carry", {z}, RegisterRole::Output)});
}

inline BlockHandle build_copy(std::size_t width) {
  if (width == 0) throw std::invalid_argument("copy width must be >= 1");
  Builder b;
  Reg src = b.alloc(width), dst = b.alloc(width);
  blocks::copy(b, src, dst);
  return detail::finish_block(
      std::move(b), {detail::named("src", src, RegisterRole::Input),
                     detail::named("dst", dst, RegisterRole::Output)});
}

inline BlockHandle build_conditional_negate(std::size_t width) {
  if (width == 0) throw std::invalid_argument("negate width must be >= 1");
  Builder b;
  Wire sign = b.alloc();
  Reg v = b.alloc(width);
  blocks::conditional_negate(b, sign, v);
  return detail::finish_block(
      std::move(b),
      {detail::named("sign", {sign}, RegisterRole::Sign),
       detail::named("v", v, RegisterRole::Output,
                     Interpretation::TwosComplement)});
}

}  // namespace toomcirc
