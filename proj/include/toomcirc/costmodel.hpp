#pragma once

// Closed-form resource evaluators: published per-method cost formulas, the
// Toom-2.5 Toffoli/CNOT recurrences, the exact mirror of our construction,
// and log-log exponent fitting.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "multipliers.hpp"
#include "netlist.hpp"

namespace toomcirc {

enum class CostMethod : std::uint8_t { Naive, Karatsuba, Toom25, ConstMult };

inline const char* to_string(CostMethod m) {
  switch (m) {
    case CostMethod::Naive: return "naive";
    case CostMethod::Karatsuba: return "karatsuba";
    case CostMethod::Toom25: return "toom25";
    case CostMethod::ConstMult: return "const_mult";
  }
  return "?";
}

inline CostMethod parse_cost_method(const std::string& s) {
  if (s == "naive") return CostMethod::Naive;
  if (s == "karatsuba") return CostMethod::Karatsuba;
  if (s == "toom25") return CostMethod::Toom25;
  if (s == "const_mult") return CostMethod::ConstMult;
  throw std::invalid_argument("unknown cost method: " + s);
}

namespace exponents {

inline double log_base(double b, double x) { return std::log(x) / std::log(b); }

inline double toom_tc() { return log_base(6, 16); }      // ~1.547
inline double karatsuba_tc() { return std::log2(3.0); }  // ~1.585
/// 2 - log_3 2 and 2 - log_16 6: the pebbling denominators.
inline double karatsuba_pebble() { return 2.0 - log_base(3, 2); }
inline double toom_pebble() { return 2.0 - log_base(16, 6); }

}  // namespace exponents

/// Real-valued cell values of one row of the published cost table.
struct CostFormulaValues {
  double qubits = 0;
  double toffoli = 0;
  double toffoli_depth = 0;
  double cnot = 0;
};

inline CostFormulaValues cost_formulas(CostMethod m, double n) {
  using namespace exponents;
  CostFormulaValues v;
  switch (m) {
    case CostMethod::Naive:
      v.qubits = 4 * n + 1;
      v.toffoli = 4 * n * n - 3 * n;
      v.toffoli_depth = 4 * n * n - 4 * n + 1;
      v.cnot = 2 * n * n - 2 * n;
      break;
    case CostMethod::Karatsuba:
      v.qubits = n * std::pow(1.5, std::log2(n) / karatsuba_pebble());
      v.toffoli = 42 * std::pow(n, karatsuba_tc());
      v.toffoli_depth =
          n * std::pow(1.5, (1 - 1 / karatsuba_pebble()) * std::log2(n));
      v.cnot = 100 * std::pow(n, karatsuba_tc());
      break;
    case CostMethod::Toom25:
      v.qubits = n * std::pow(8.0 / 3.0, log_base(6, n) / toom_pebble());
      v.toffoli = 49 * std::pow(n, toom_tc());
      v.toffoli_depth =
          n * std::pow(8.0 / 3.0, (1 - 1 / toom_pebble()) * log_base(6, n));
      v.cnot = 116 * std::pow(n, toom_tc());
      break;
    case CostMethod::ConstMult:
      v.qubits = 3 * n + 1;
      v.toffoli = 4 * n * (n + 1);
      v.toffoli_depth = 8 * n;
      v.cnot = 2 * n;
      break;
  }
  return v;
}

/// The published row for `m` at n bits, rounded to the nearest integer.
inline ResourceReport paper_cost(CostMethod m, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("paper_cost: n must be >= 1");
  const CostFormulaValues v = cost_formulas(m, static_cast<double>(n));
  auto r = [](double x) { return static_cast<std::uint64_t>(std::llround(x)); };
  GateTally t;
  t.toffoli = r(v.toffoli);
  t.cnot = r(v.cnot);
  return make_report(t, r(v.qubits), r(v.toffoli_depth));
}

namespace detail {

inline bool is_power_of(std::uint64_t n, std::uint64_t base) {
  if (n == 0) return false;
  while (n % base == 0) n /= base;
  return n == 1;
}

// 16 X_{n/6} + 40 A_{n/6} + 22 A_{n/3} + 4 A_{n/2} + 4 A_{5n/6}, A_m = c*m.
inline std::uint64_t toom_recurrence(std::uint64_t n, std::uint64_t per_bit,
                                     std::uint64_t base) {
  if (n == 1) return base;
  return 16 * toom_recurrence(n / 6, per_bit, base) +
         per_bit * (40 * (n / 6) + 22 * (n / 3) + 4 * (n / 2) + 4 * (5 * n / 6));
}

inline void require_power_of_six(std::uint64_t n) {
  if (!is_power_of(n, 6)) {
    throw std::invalid_argument("recurrence is defined for powers of 6 only, got " +
                                std::to_string(n));
  }
}

}  // namespace detail

/// TC_n with adders at 2m Toffolis and TC_1 = 1, doubled for uncompute.
inline std::uint64_t paper_toffoli_recurrence(std::uint64_t n,
                                              bool with_uncompute = true) {
  detail::require_power_of_six(n);
  const std::uint64_t tc = detail::toom_recurrence(n, 2, 1);
  return with_uncompute ? 2 * tc : tc;
}

/// CC_n with adders at 5m CNOTs and CC_1 = 0, doubled for uncompute. The
/// O(n) product-copy CNOTs are left out, as in the published bound.
inline std::uint64_t paper_cnot_recurrence(std::uint64_t n,
                                           bool with_uncompute = true) {
  detail::require_power_of_six(n);
  const std::uint64_t cc = detail::toom_recurrence(n, 5, 0);
  return with_uncompute ? 2 * cc : cc;
}

inline double toom_toffoli_bound(double n) {
  return 49 * std::pow(n, exponents::toom_tc());
}
inline double toom_cnot_bound(double n) {
  return 116 * std::pow(n, exponents::toom_tc());
}

/// Exact gate and qubit counts of build_multiplier(n, cfg), obtained from the
/// memoized block-cost recursion without emitting gates.
inline ResourceReport mirror_counts(std::uint32_t n, const MultiplierConfig& cfg,
                                    std::uint64_t toffoli_depth = 0) {
  if (n == 0) throw std::invalid_argument("mirror: n must be >= 1");
  ShapeModel model(cfg);
  const ShapeCost& c = model.entry(n, n).cost;
  const bool garbage_free = cfg.method == Method::Naive || !cfg.uncompute;
  GateTally t = c.gates;
  std::uint64_t qubits = 2ULL * n + c.peak;
  if (!garbage_free) {
    t = t * 2;
    t.cnot += 2ULL * n;  // product copy
    qubits += 2ULL * n;  // separate product register
  }
  return make_report(t, qubits, toffoli_depth);
}

/// mirror_counts plus the Toffoli depth. ASAP layer counts do not compose
/// across blocks, so the depth comes from laying out the construction once.
inline ResourceReport mirror_cost(std::uint32_t n, const MultiplierConfig& cfg) {
  const Circuit c = build_multiplier(n, cfg);
  return mirror_counts(n, cfg, schedule_depth(c));
}

/// Census of block invocations in the two top recursion levels of a square
/// Toom node (the collapsed 16-way step), keyed "<block>:<target width>".
struct NodeCensus {
  std::map<std::string, std::uint64_t> blocks;
  std::uint64_t own_toffoli = 0;  // Toffolis outside the 16 grandchildren
  std::uint64_t subproducts = 0;  // multiplications below the two levels
};

namespace detail {

class CensusOps : public CostOps {
 public:
  CensusOps(ShapeModel& m, NodeCensus& c) : CostOps(m), census_(&c) {}
  void copy(const Reg& s, const Reg& d) {
    note("copy", d.w);
    CostOps::copy(s, d);
  }
  void add_into(const Reg& a, const Reg& t) {
    note("add", t.w);
    CostOps::add_into(a, t);
  }
  void sub_into(const Reg& a, const Reg& t) {
    note("sub", t.w);
    CostOps::sub_into(a, t);
  }
  void cneg(const Reg& c, const Reg& v) {
    note("negate", v.w);
    CostOps::cneg(c, v);
  }
  void controlled_add(const Reg& c, const Reg& a, const Reg& t, const Reg& z) {
    note("controlled_add", t.w);
    CostOps::controlled_add(c, a, t, z);
  }
  Reg multiply(const Reg& x, const Reg& y) {
    ++census_->subproducts;
    return CostOps::multiply(x, y);
  }

 private:
  void note(const char* kind, std::size_t w) {
    ++census_->blocks[std::string(kind) + ":" + std::to_string(w)];
  }
  NodeCensus* census_;
};

}  // namespace detail

inline NodeCensus toom_node_census(std::uint32_t n, MultiplierConfig cfg = {}) {
  cfg.method = Method::Toom25;
  ShapeModel model(cfg);
  NodeCensus census;
  auto expand = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    const auto& e = model.entry(a, b);
    detail::CensusOps ops(model, census);
    construct::node(ops, e.choice, CostOps::Reg{a}, CostOps::Reg{b});
    std::uint64_t child_t = 0;
    for (const auto& [ca, cb] : e.children) {
      child_t += model.entry(ca, cb).cost.gates.toffoli;
    }
    census.own_toffoli += e.cost.gates.toffoli - child_t;
    return e.children;
  };
  const auto kids = expand(n, n);
  if (model.entry(n, n).choice.kind != NodeChoice::Kind::Toom) return census;
  census.subproducts = 0;
  for (const auto& [a, b] : kids) expand(a, b);
  return census;
}

/// Adder Toffolis charged per collapsed node by the published recurrence:
/// 40 A_{n/6} + 22 A_{n/3} + 4 A_{n/2} + 4 A_{5n/6} with A_m = 2m.
inline double paper_node_adder_toffoli(double n) {
  return 2 * (40 * n / 6 + 22 * n / 3 + 4 * n / 2 + 4 * 5 * n / 6);
}

/// Least-squares slope of log(value) against log(n).
inline double fit_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) {
    throw std::invalid_argument("fit_exponent needs at least 3 samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, v] : samples) {
    if (n <= 0 || v <= 0) {
      throw std::invalid_argument("fit_exponent needs positive samples");
    }
    const double x = std::log(n), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(samples.size());
  const double den = k * sxx - sx * sx;
  if (den <= 1e-12 * k * sxx) {
    throw std::invalid_argument("fit_exponent needs distinct n");
  }
  return (k * sxy - sx * sy) / den;
}

/// First n in [1, max_n] where method `a` needs fewer Toffolis than `b`
/// by the published formulas, or 0 if none.
inline std::uint64_t toffoli_crossover(CostMethod a, CostMethod b,
                                       std::uint64_t max_n) {
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    if (cost_formulas(a, n).toffoli < cost_formulas(b, n).toffoli) return n;
  }
  return 0;
}

}  // namespace toomcirc
