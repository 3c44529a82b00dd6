#pragma once

// Recursive multiplier constructions (Toom-2.5, Karatsuba, shift-add).
//
// Each construction is written once, as a template over an "ops" backend:
// GateOps emits real gates into a Builder, CostOps only tallies the closed
// form block costs and tracks live/peak wire counts. ShapeModel memoizes the
// cost backend per operand shape and doubles as the limb-size planner.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "builder.hpp"
#include "netlist.hpp"

namespace toomcirc {

enum class Method : std::uint8_t { Toom25, Karatsuba, Naive };
enum class EvalPoints : std::uint8_t { ZeroOneMinusOneInf, ZeroOneTwoInf };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Toom25: return "toom25";
    case Method::Karatsuba: return "karatsuba";
    case Method::Naive: return "naive";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "toom25") return Method::Toom25;
  if (s == "karatsuba") return Method::Karatsuba;
  if (s == "naive") return Method::Naive;
  throw std::invalid_argument("unknown method: " + s);
}

struct MultiplierConfig {
  Method method = Method::Toom25;
  // Operands whose narrower side has at most this many bits use shift-add.
  std::uint32_t base_threshold = 5;
  EvalPoints eval_points = EvalPoints::ZeroOneMinusOneInf;
  bool uncompute = true;

  void validate() const {
    if (base_threshold < 1) {
      throw std::invalid_argument("base_threshold must be >= 1");
    }
  }
};

/// Split of an n-bit operand into `parts` limbs of i = ceil(n/parts) bits.
struct LimbSplit {
  std::uint32_t n = 0;
  std::uint32_t parts = 0;
  std::uint32_t i = 0;

  /// Significant bits of each limb before zero padding to i.
  [[nodiscard]] std::vector<std::uint32_t> limb_bits() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t k = 0; k < parts; ++k) {
      const std::uint32_t lo = std::min(n, k * i);
      const std::uint32_t hi = std::min(n, (k + 1) * i);
      out.push_back(hi - lo);
    }
    return out;
  }

  [[nodiscard]] std::vector<std::uint64_t> limbs(std::uint64_t value) const {
    std::vector<std::uint64_t> out;
    const std::uint64_t mask = i >= 64 ? ~0ULL : (1ULL << i) - 1;
    for (std::uint32_t k = 0; k < parts; ++k) {
      out.push_back(k * i >= 64 ? 0 : (value >> (k * i)) & mask);
    }
    return out;
  }

  [[nodiscard]] std::uint64_t reassemble(
      const std::vector<std::uint64_t>& limbs) const {
    std::uint64_t v = 0;
    for (std::uint32_t k = parts; k-- > 0;) {
      v = (i >= 64 ? 0 : v << i) | limbs[k];
    }
    return v;
  }
};

inline LimbSplit decompose(std::uint32_t n, std::uint32_t parts) {
  if (n == 0) throw std::invalid_argument("decompose: n must be >= 1");
  if (parts != 2 && parts != 3) {
    throw std::invalid_argument("decompose: parts must be 2 or 3");
  }
  return LimbSplit{n, parts, (n + parts - 1) / parts};
}

/// How one multiplication node of shape (a, b) is realized.
struct NodeChoice {
  enum class Kind : std::uint8_t { Naive, Toom, Karatsuba } kind = Kind::Naive;
  std::uint32_t i = 0;  // limb size for Toom/Karatsuba
};

namespace construct {

template <class Ops>
using RegOf = typename Ops::Reg;

/// Shift-add: the narrower operand's bits control rows of the wider one.
template <class Ops>
RegOf<Ops> naive(Ops& ops, const RegOf<Ops>& x, const RegOf<Ops>& y) {
  const bool x_narrow = ops.width(x) <= ops.width(y);
  const auto& c = x_narrow ? x : y;
  const auto& d = x_narrow ? y : x;
  const std::size_t wc = ops.width(c), wd = ops.width(d);
  auto out = ops.alloc(wc + wd);
  const auto c0 = ops.slice(c, 0, 1);
  for (std::size_t j = 0; j < wd; ++j) {
    ops.ccx(c0, ops.slice(d, j, 1), ops.slice(out, j, 1));
  }
  for (std::size_t k = 1; k < wc; ++k) {
    ops.controlled_add(ops.slice(c, k, 1), d, ops.slice(out, k, wd),
                       ops.slice(out, k + wd, 1));
  }
  return out;
}

/// `d` holds a two's complement difference in m+1 bits. Moves its sign to a
/// fresh wire, negates if set and returns the low m bits (the magnitude).
template <class Ops>
RegOf<Ops> magnitude_of_difference(Ops& ops, const RegOf<Ops>& d,
                                   std::size_t m, RegOf<Ops>& sign) {
  sign = ops.alloc(1);
  ops.mark_sign(sign);
  const auto top = ops.slice(d, m, 1);
  ops.cx(top, sign);
  ops.cneg(sign, d);
  ops.zero_check(top, "sign_guard");
  return ops.slice(d, 0, m);
}

/// R = (u0 - u1)(v0 - v1 + v2) as a two's complement value of `out_width`
/// bits: sign-magnitude operands, unsigned product, then conditional
/// negation under the xor of the two signs.
template <class Ops>
RegOf<Ops> signed_sub_multiply(Ops& ops, const RegOf<Ops>& u0,
                               const RegOf<Ops>& u1, const RegOf<Ops>& v0,
                               const RegOf<Ops>& v1, const RegOf<Ops>& v2,
                               std::size_t out_width) {
  const std::size_t mu = std::max(ops.width(u0), ops.width(u1));
  const std::size_t mv =
      std::max({ops.width(v0), ops.width(v1), ops.width(v2)});

  auto du = ops.alloc(mu + 1);
  ops.copy(u0, du);
  ops.sub_into(u1, du);
  RegOf<Ops> sgn_u{};
  const auto du_mag = magnitude_of_difference(ops, du, mu, sgn_u);

  auto dv = ops.alloc(mv + 2);
  ops.copy(v0, dv);
  ops.add_into(v2, dv);
  ops.sub_into(v1, dv);
  RegOf<Ops> sgn_v{};
  const auto dv_mag = magnitude_of_difference(ops, dv, mv + 1, sgn_v);

  const auto rm = ops.multiply(du_mag, dv_mag);
  auto sgn_r = ops.alloc(1);
  ops.mark_sign(sgn_r);
  ops.cx(sgn_u, sgn_r);
  ops.cx(sgn_v, sgn_r);
  const std::size_t wrm = ops.width(rm);
  if (out_width < wrm) {
    throw std::invalid_argument("signed_sub_multiply: output too narrow");
  }
  auto r = out_width > wrm ? ops.join(rm, ops.alloc(out_width - wrm)) : rm;
  ops.cneg(sgn_r, r);
  return r;
}

/// Adds the interpolated coefficients into the product accumulator:
/// out = P + C*2^i + B*2^{2i} + S*2^{3i}. P and S land on disjoint bit
/// ranges of a zero register, so they are copied rather than added.
template <class Ops>
RegOf<Ops> assemble(Ops& ops, std::size_t w, std::size_t i,
                    const RegOf<Ops>& p, const RegOf<Ops>& b,
                    const RegOf<Ops>& c, const RegOf<Ops>& s) {
  auto out = ops.alloc(w);
  ops.copy(p, ops.slice(out, 0, ops.width(p)));
  ops.copy(s, ops.slice(out, 3 * i, w - 3 * i));
  const std::size_t wc = std::min(ops.width(c), w - i);
  ops.add_into(ops.slice(c, 0, wc), ops.slice(out, i, w - i));
  const std::size_t wb = std::min(ops.width(b), w - 2 * i);
  ops.add_into(ops.slice(b, 0, wb), ops.slice(out, 2 * i, w - 2 * i));
  return out;
}

/// One Toom-2.5 node: u (narrower) is split in two limbs, v in three, both
/// at radix 2^i. The high limbs u1 and v2 take whatever bits remain.
template <class Ops>
RegOf<Ops> toom_node(Ops& ops, const RegOf<Ops>& u, const RegOf<Ops>& v,
                     std::size_t i) {
  const std::size_t a = ops.width(u), bw = ops.width(v);
  const std::size_t w = a + bw;
  const auto u0 = ops.slice(u, 0, i);
  const auto u1 = ops.slice(u, i, a - i);
  const auto v0 = ops.slice(v, 0, i);
  const auto v1 = ops.slice(v, i, i);
  const auto v2 = ops.slice(v, 2 * i, bw - 2 * i);
  const std::size_t mu = std::max(i, a - i);
  const std::size_t mv = std::max(i, bw - 2 * i);

  auto su = ops.alloc(mu + 1);
  ops.copy(u0, su);
  ops.add_into(u1, su);
  auto sv = ops.alloc(mv + 2);
  ops.copy(v0, sv);
  ops.add_into(v1, sv);
  ops.add_into(v2, sv);

  const auto p = ops.multiply(u0, v0);
  const auto s = ops.multiply(u1, v2);

  if (ops.eval_points() == EvalPoints::ZeroOneMinusOneInf) {
    const auto q = ops.multiply(su, sv);
    const std::size_t wq = ops.width(q);
    const auto r = signed_sub_multiply(ops, u0, u1, v0, v1, v2, wq + 1);

    // Q + R and Q - R are both even: 2(P' + S') and 2(C) in disguise.
    auto up = ops.alloc(wq + 1);
    ops.copy(q, up);
    ops.add_into(r, up);
    auto vm = ops.alloc(wq + 1);
    ops.copy(q, vm);
    ops.sub_into(r, vm);
    const auto uh = ops.halve(up, "halve(Q+R)");
    const auto vh = ops.halve(vm, "halve(Q-R)");

    auto bc = ops.alloc(wq);
    ops.copy(uh, bc);
    ops.sub_into(p, bc);
    auto cc = ops.alloc(wq);
    ops.copy(vh, cc);
    ops.sub_into(s, cc);
    ops.probe("B", bc);
    ops.probe("C", cc);
    return assemble(ops, w, i, p, bc, cc, s);
  }

  // Points {0, 1, 2, inf}: T = (u0 + 2u1)(v0 + 2v1 + 4v2) replaces R.
  const std::size_t wtu = std::max(i, a - i + 1) + 1;
  auto tu = ops.alloc(wtu);
  ops.copy(u0, tu);
  ops.add_into(u1, ops.slice(tu, 1, wtu - 1));
  const std::size_t wtv = mv + 3;
  auto tv = ops.alloc(wtv);
  ops.copy(v0, tv);
  ops.add_into(v1, ops.slice(tv, 1, wtv - 1));
  ops.add_into(v2, ops.slice(tv, 2, wtv - 2));

  const auto q = ops.multiply(su, sv);
  const auto t = ops.multiply(tu, tv);
  const std::size_t wq = ops.width(q), wt = ops.width(t);

  auto qp = ops.alloc(wq);  // Q - P - S = B + C
  ops.copy(q, qp);
  ops.sub_into(p, qp);
  ops.sub_into(s, qp);
  auto tp = ops.alloc(wt);  // T - P - 8S = 2C + 4B
  ops.copy(t, tp);
  ops.sub_into(p, tp);
  ops.sub_into(s, ops.slice(tp, 3, wt - 3));
  const auto th = ops.halve(tp, "halve(T-P-8S)");

  auto bc = ops.alloc(wt - 1);  // (C + 2B) - (B + C)
  ops.copy(th, bc);
  ops.sub_into(qp, bc);
  auto cc = ops.alloc(wq);  // (B + C) - B
  ops.copy(qp, cc);
  ops.sub_into(ops.slice(bc, 0, wq), cc);
  ops.probe("B", bc);
  ops.probe("C", cc);
  return assemble(ops, w, i, p, bc, cc, s);
}

/// One Karatsuba node on equal-width operands, h = ceil(n/2).
template <class Ops>
RegOf<Ops> karatsuba_node(Ops& ops, const RegOf<Ops>& x, const RegOf<Ops>& y,
                          std::size_t h) {
  const std::size_t n = ops.width(x);
  const auto x0 = ops.slice(x, 0, h), x1 = ops.slice(x, h, n - h);
  const auto y0 = ops.slice(y, 0, h), y1 = ops.slice(y, h, n - h);
  auto s1 = ops.alloc(h + 1);
  ops.copy(x0, s1);
  ops.add_into(x1, s1);
  auto s2 = ops.alloc(h + 1);
  ops.copy(y0, s2);
  ops.add_into(y1, s2);
  const auto p0 = ops.multiply(x0, y0);
  const auto p2 = ops.multiply(x1, y1);
  const auto p1 = ops.multiply(s1, s2);
  auto mid = ops.alloc(ops.width(p1));  // x0*y1 + x1*y0
  ops.copy(p1, mid);
  ops.sub_into(p0, mid);
  ops.sub_into(p2, mid);
  auto out = ops.alloc(2 * n);
  ops.copy(p0, ops.slice(out, 0, 2 * h));
  ops.copy(p2, ops.slice(out, 2 * h, 2 * (n - h)));
  const std::size_t wm = std::min(ops.width(mid), 2 * n - h);
  ops.add_into(ops.slice(mid, 0, wm), ops.slice(out, h, 2 * n - h));
  return out;
}

/// Realizes one node per `choice`; u must be the narrower operand for Toom.
template <class Ops>
RegOf<Ops> node(Ops& ops, const NodeChoice& choice, const RegOf<Ops>& u,
                const RegOf<Ops>& v) {
  switch (choice.kind) {
    case NodeChoice::Kind::Naive: return naive(ops, u, v);
    case NodeChoice::Kind::Toom: return toom_node(ops, u, v, choice.i);
    case NodeChoice::Kind::Karatsuba: return karatsuba_node(ops, u, v, choice.i);
  }
  throw std::logic_error("unknown node kind");
}

}  // namespace construct

/// Exact resources of one multiply() call, relative to the caller's state:
/// gates emitted, extra wires live at the high-water point, and wires still
/// held on return (product plus garbage).
struct ShapeCost {
  GateTally gates;
  std::uint64_t peak = 0;
  std::uint64_t live = 0;
};

class ShapeModel;

/// Cost backend: registers are just widths.
class CostOps {
 public:
  struct Reg {
    std::size_t w = 0;
  };

  explicit CostOps(ShapeModel& model) : model_(&model) {}

  [[nodiscard]] std::size_t width(const Reg& r) const { return r.w; }
  [[nodiscard]] EvalPoints eval_points() const;

  Reg alloc(std::size_t w) {
    live_ += w;
    bump(0);
    return {w};
  }
  Reg slice(const Reg& r, std::size_t from, std::size_t len) const {
    if (from + len > r.w) throw std::out_of_range("slice beyond register");
    return {len};
  }
  Reg join(const Reg& a, const Reg& b) const { return {a.w + b.w}; }

  void cx(const Reg&, const Reg&) { ++cost_.gates.cnot; }
  void ccx(const Reg&, const Reg&, const Reg&) { ++cost_.gates.toffoli; }
  void copy(const Reg& s, const Reg& d) { block(cost::copy(check(s, d))); }
  void add_into(const Reg& a, const Reg& t) {
    block(cost::add_into(check(a, t), t.w));
  }
  void sub_into(const Reg& a, const Reg& t) {
    block(cost::sub_into(check(a, t), t.w));
  }
  void cneg(const Reg&, const Reg& v) { block(cost::conditional_negate(v.w)); }
  void controlled_add(const Reg&, const Reg& a, const Reg&, const Reg&) {
    block(cost::controlled_add_carry(a.w));
  }
  Reg halve(const Reg& r, const char*) {
    --live_;
    return {r.w - 1};
  }
  void zero_check(const Reg&, const char*) {}
  void mark_sign(const Reg&) {}
  void probe(const char*, const Reg&) {}

  Reg multiply(const Reg& x, const Reg& y);

  [[nodiscard]] ShapeCost result() const {
    ShapeCost c = cost_;
    c.live = live_;
    return c;
  }
  [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>&
  children() const {
    return children_;
  }

 private:
  static std::size_t check(const Reg& a, const Reg& t) {
    if (a.w > t.w) throw std::invalid_argument("operand wider than target");
    return a.w;
  }
  void bump(std::uint64_t extra) {
    cost_.peak = std::max(cost_.peak, live_ + extra);
  }
  void block(const BlockCost& c) {
    cost_.gates += c.tally();
    bump(c.scratch);
  }

  ShapeModel* model_;
  ShapeCost cost_;
  std::uint64_t live_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> children_;
};

/// Per-configuration memo of node choices and exact costs, keyed by the
/// operand widths (narrower first).
class ShapeModel {
 public:
  struct Entry {
    NodeChoice choice;
    ShapeCost cost;
    // Operand widths of the direct sub-multiplications, in call order.
    std::vector<std::pair<std::size_t, std::size_t>> children;
  };

  explicit ShapeModel(MultiplierConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  [[nodiscard]] const MultiplierConfig& config() const { return cfg_; }

  const Entry& entry(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (a == 0) throw std::invalid_argument("multiply: zero-width operand");
    const auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Entry e = evaluate(a, b);
    return memo_.emplace(key, e).first->second;
  }

  /// Limb sizes tried for a Toom node of shape (a, b), a <= b: a small window
  /// around the balancing point (a+b)/5 plus the plain ceil/floor splits.
  static std::vector<std::size_t> toom_candidates(std::size_t a,
                                                  std::size_t b) {
    const std::size_t c = (a + b) / 5;
    std::vector<std::size_t> out;
    auto offer = [&](std::size_t i) {
      if (i >= 1 && i < a && 2 * i < b) out.push_back(i);
    };
    for (std::size_t d = 0; d <= 6; ++d) {
      if (c + 3 >= d) offer(c + 3 - d);
    }
    offer((a + 1) / 2);
    offer(a / 2);
    offer((b + 2) / 3);
    offer(b / 3);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  [[nodiscard]] std::size_t size() const { return memo_.size(); }

 private:
  Entry run(const NodeChoice& choice, std::size_t a, std::size_t b) {
    CostOps ops(*this);
    construct::node(ops, choice, CostOps::Reg{a}, CostOps::Reg{b});
    return {choice, ops.result(), ops.children()};
  }

  Entry evaluate(std::size_t a, std::size_t b) {
    const NodeChoice naive{NodeChoice::Kind::Naive, 0};
    if (a <= cfg_.base_threshold || cfg_.method == Method::Naive) {
      return run(naive, a, b);
    }
    if (cfg_.method == Method::Karatsuba) {
      const std::size_t h = (a + 1) / 2;
      if (a != b || h + 1 >= a) return run(naive, a, b);
      return run({NodeChoice::Kind::Karatsuba, static_cast<std::uint32_t>(h)},
                 a, b);
    }
    // Cheapest Toffoli count wins; ties keep the smallest limb size.
    std::optional<Entry> best;
    for (std::size_t i : toom_candidates(a, b)) {
      if (!shrinks(a, b, i)) continue;
      Entry e = run({NodeChoice::Kind::Toom, static_cast<std::uint32_t>(i)}, a, b);
      if (!best || e.cost.gates.toffoli < best->cost.gates.toffoli) {
        best = std::move(e);
      }
    }
    if (!best) return run(naive, a, b);
    return *best;
  }

  // Every child shape must have a smaller total width than its parent so the
  // recursion terminates.
  [[nodiscard]] bool shrinks(std::size_t a, std::size_t b,
                             std::size_t i) const {
    const std::size_t mu = std::max(i, a - i), mv = std::max(i, b - 2 * i);
    std::vector<std::size_t> sums = {2 * i, (a - i) + (b - 2 * i),
                                     (mu + 1) + (mv + 2)};
    if (cfg_.eval_points == EvalPoints::ZeroOneMinusOneInf) {
      sums.push_back(mu + mv + 1);
    } else {
      sums.push_back(std::max(i, a - i + 1) + 1 + mv + 3);
    }
    return std::all_of(sums.begin(), sums.end(),
                       [&](std::size_t s) { return s < a + b; });
  }

  MultiplierConfig cfg_;
  std::map<std::pair<std::size_t, std::size_t>, Entry> memo_;
};

inline EvalPoints CostOps::eval_points() const {
  return model_->config().eval_points;
}

inline CostOps::Reg CostOps::multiply(const Reg& x, const Reg& y) {
  children_.emplace_back(x.w, y.w);
  const ShapeCost& c = model_->entry(x.w, y.w).cost;
  cost_.gates += c.gates;
  bump(c.peak);
  live_ += c.live;
  return {x.w + y.w};
}

/// Instrumentation gathered while emitting gates.
struct BuildTrace {
  struct Probe {
    std::string label;
    std::size_t position = 0;
    Reg wires;
  };
  // multiply() invocations per recursion depth, root = depth 0.
  std::vector<std::uint64_t> calls_per_depth;
  // Interpolated coefficient registers of the root node, captured right
  // after they are formed.
  std::vector<Probe> root_probes;
  NodeChoice root_choice;
};

/// Gate backend.
class GateOps {
 public:
  using Reg = toomcirc::Reg;

  GateOps(Builder& b, ShapeModel& model, BuildTrace* trace)
      : b_(&b), model_(&model), trace_(trace) {}

  [[nodiscard]] std::size_t width(const Reg& r) const { return r.size(); }
  [[nodiscard]] EvalPoints eval_points() const {
    return model_->config().eval_points;
  }

  Reg alloc(std::size_t w) { return b_->alloc(w); }
  Reg slice(const Reg& r, std::size_t from, std::size_t len) const {
    return toomcirc::slice(r, from, len);
  }
  Reg join(const Reg& a, const Reg& b) const { return toomcirc::join(a, b); }

  void cx(const Reg& c, const Reg& t) { b_->cx(c.at(0), t.at(0)); }
  void ccx(const Reg& c0, const Reg& c1, const Reg& t) {
    b_->ccx(c0.at(0), c1.at(0), t.at(0));
  }
  void copy(const Reg& s, const Reg& d) { blocks::copy(*b_, s, d); }
  void add_into(const Reg& a, const Reg& t) { blocks::add_into(*b_, a, t); }
  void sub_into(const Reg& a, const Reg& t) { blocks::sub_into(*b_, a, t); }
  void cneg(const Reg& ctl, const Reg& v) {
    blocks::conditional_negate(*b_, ctl.at(0), v);
  }
  void controlled_add(const Reg& ctl, const Reg& a, const Reg& t,
                      const Reg& z) {
    blocks::controlled_add_carry(*b_, ctl.at(0), a, t, z.at(0));
  }
  Reg halve(const Reg& r, const char* site) {
    return blocks::shift_halve(*b_, r, site);
  }
  void zero_check(const Reg& r, const char* site) {
    b_->zero_check(r.at(0), site);
  }
  void mark_sign(const Reg& r) { signs_.push_back(r.at(0)); }
  void probe(const char* label, const Reg& r) {
    if (trace_ != nullptr && depth_ == 1) {
      trace_->root_probes.push_back({label, b_->position(), r});
    }
  }

  Reg multiply(const Reg& x, const Reg& y) {
    const auto& e = model_->entry(x.size(), y.size());
    if (trace_ != nullptr) {
      if (trace_->calls_per_depth.size() <= depth_) {
        trace_->calls_per_depth.resize(depth_ + 1, 0);
      }
      ++trace_->calls_per_depth[depth_];
      if (depth_ == 0) trace_->root_choice = e.choice;
    }
    ++depth_;
    const bool swap = x.size() > y.size();
    Reg out = construct::node(*this, e.choice, swap ? y : x, swap ? x : y);
    --depth_;
    return out;
  }

  [[nodiscard]] const Reg& sign_wires() const { return signs_; }

 private:
  Builder* b_;
  ShapeModel* model_;
  BuildTrace* trace_;
  std::size_t depth_ = 0;
  Reg signs_;
};

namespace detail {

inline Register reg(std::string name, Reg wires, RegisterRole role,
                    Interpretation interp = Interpretation::Unsigned) {
  return Register{std::move(name), std::move(wires), interp, role};
}

}  // namespace detail

/// Builds the full multiplier for `cfg.method`:
///   uncompute on:  (x, y, 0, 0) -> (x, y, x*y, 0)
///   uncompute off: (x, y, 0)    -> (x, y, x*y, garbage)
/// Shift-add needs no garbage cleanup and is always built garbage-free.
inline Circuit build_multiplier(std::uint32_t n, const MultiplierConfig& cfg,
                                BuildTrace* trace = nullptr) {
  if (n == 0) throw std::invalid_argument("operand width must be >= 1");
  cfg.validate();
  ShapeModel model(cfg);
  Builder b;
  GateOps ops(b, model, trace);
  const Reg x = b.alloc(n), y = b.alloc(n);
  std::vector<Register> regs = {detail::reg("x", x, RegisterRole::Input),
                                detail::reg("y", y, RegisterRole::Input)};
  Reg garbage_role_wires;
  if (cfg.method == Method::Naive || !cfg.uncompute) {
    const Reg out = ops.multiply(x, y);
    regs.push_back(detail::reg("p", out, RegisterRole::Output));
    const RegisterRole rest_role = cfg.method == Method::Naive
                                       ? RegisterRole::Ancilla
                                       : RegisterRole::Garbage;
    std::vector<const Reg*> taken = {&x, &y, &out};
    Reg rest = complement_wires(b.width(), taken);
    if (!rest.empty()) {
      regs.push_back(detail::reg(
          rest_role == RegisterRole::Ancilla ? "anc" : "garbage",
          std::move(rest), rest_role));
    }
    return std::move(b).finish(std::move(regs));
  }
  const Reg p = b.alloc(2 * n);
  const std::size_t start = b.position();
  const Reg out = ops.multiply(x, y);
  const std::size_t end = b.position();
  blocks::copy(b, out, p);
  b.append_reverse(start, end);
  regs.push_back(detail::reg("p", p, RegisterRole::Output));
  const Reg& signs = ops.sign_wires();
  std::vector<const Reg*> taken = {&x, &y, &p, &signs};
  Reg rest = complement_wires(b.width(), taken);
  if (!signs.empty()) {
    regs.push_back(detail::reg("sign", signs, RegisterRole::Sign));
  }
  if (!rest.empty()) {
    regs.push_back(detail::reg("anc", std::move(rest), RegisterRole::Ancilla));
  }
  return std::move(b).finish(std::move(regs));
}

inline Circuit build_toom25(std::uint32_t n, MultiplierConfig cfg = {},
                            BuildTrace* trace = nullptr) {
  cfg.method = Method::Toom25;
  return build_multiplier(n, cfg, trace);
}

inline Circuit build_karatsuba(std::uint32_t n, MultiplierConfig cfg = {},
                               BuildTrace* trace = nullptr) {
  cfg.method = Method::Karatsuba;
  return build_multiplier(n, cfg, trace);
}

inline Circuit build_naive(std::uint32_t n, MultiplierConfig cfg = {}) {
  cfg.method = Method::Naive;
  return build_multiplier(n, cfg);
}

/// Limb widths of a standalone signed-difference product.
struct SignedSubWidths {
  std::uint32_t u = 1;  // width of u0 and u1
  std::uint32_t v = 1;  // width of v0, v1 and v2
};

/// Standalone R = (x0 - x1)(y0 - y1 + y2) block, result in two's complement
/// on register "r" (garbage left in place). Products of the magnitudes
/// recurse through `cfg`.
inline Circuit build_signed_sub_multiply(SignedSubWidths w,
                                         MultiplierConfig cfg = {}) {
  if (w.u == 0 || w.v == 0) {
    throw std::invalid_argument("limb widths must be >= 1");
  }
  cfg.validate();
  ShapeModel model(cfg);
  Builder b;
  GateOps ops(b, model, nullptr);
  const Reg x0 = b.alloc(w.u), x1 = b.alloc(w.u);
  const Reg y0 = b.alloc(w.v), y1 = b.alloc(w.v), y2 = b.alloc(w.v);
  const std::size_t out_width = (w.u + 1) + (w.v + 2) + 1;
  const Reg r =
      construct::signed_sub_multiply(ops, x0, x1, y0, y1, y2, out_width);
  std::vector<Register> regs = {
      detail::reg("x0", x0, RegisterRole::Input),
      detail::reg("x1", x1, RegisterRole::Input),
      detail::reg("y0", y0, RegisterRole::Input),
      detail::reg("y1", y1, RegisterRole::Input),
      detail::reg("y2", y2, RegisterRole::Input),
      detail::reg("r", r, RegisterRole::Output,
                  Interpretation::TwosComplement)};
  const Reg& signs = ops.sign_wires();
  std::vector<const Reg*> taken = {&x0, &x1, &y0, &y1, &y2, &r, &signs};
  regs.push_back(detail::reg("sign", signs, RegisterRole::Sign));
  Reg rest = complement_wires(b.width(), taken);
  if (!rest.empty()) {
    regs.push_back(detail::reg("garbage", std::move(rest), RegisterRole::Garbage));
  }
  return std::move(b).finish(std::move(regs));
}

}  // namespace toomcirc
