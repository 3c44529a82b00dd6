#pragma once

// Exact basis-state simulation and the multiplier verification harness.
//
// The batch engine packs 64 independent basis states into one uint64_t per
// wire, so each gate costs a couple of word operations for 64 vectors.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netlist.hpp"

namespace toomcirc {

using BigInt = boost::multiprecision::cpp_int;

class BasisState {
 public:
  BasisState() = default;
  explicit BasisState(std::size_t width) : bits_(width, 0) {}

  [[nodiscard]] std::size_t width() const { return bits_.size(); }
  [[nodiscard]] bool get(Wire w) const { return bits_.at(w) != 0; }
  void set(Wire w, bool v) { bits_.at(w) = v ? 1 : 0; }
  void flip(Wire w) { bits_[w] ^= 1; }

  /// Writes `value` LSB-first onto the given wires (excess high bits dropped).
  void load(const std::vector<Wire>& wires, const BigInt& value) {
    for (std::size_t k = 0; k < wires.size(); ++k) {
      set(wires[k], boost::multiprecision::bit_test(value, k));
    }
  }

  [[nodiscard]] BigInt read(const std::vector<Wire>& wires) const {
    BigInt v = 0;
    for (std::size_t k = wires.size(); k-- > 0;) {
      v <<= 1;
      if (get(wires[k])) v |= 1;
    }
    return v;
  }

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline BasisState simulate(const Circuit& c, BasisState s) {
  if (s.width() != c.width()) {
    throw std::invalid_argument("simulate: state width " +
                                std::to_string(s.width()) +
                                " != circuit width " +
                                std::to_string(c.width()));
  }
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Not: s.flip(g.target); break;
      case GateKind::Cnot:
        if (s.get(g.control0)) s.flip(g.target);
        break;
      case GateKind::Toffoli:
        if (s.get(g.control0) && s.get(g.control1)) s.flip(g.target);
        break;
    }
  }
  return s;
}

/// Two's complement reading of an unsigned register value.
inline BigInt to_signed(const BigInt& v, std::size_t width) {
  if (width > 0 && boost::multiprecision::bit_test(v, width - 1)) {
    return v - (BigInt(1) << width);
  }
  return v;
}

/// Runs `c` once with the named registers preset (everything else zero) and
/// returns the final value of every register.
inline std::map<std::string, BigInt> run_registers(
    const Circuit& c, const std::map<std::string, BigInt>& inputs) {
  BasisState s(c.width());
  for (const auto& [name, value] : inputs) {
    const Register* r = c.find_register(name);
    if (r == nullptr) throw std::out_of_range("no register " + name);
    s.load(r->wires, value);
  }
  s = simulate(c, s);
  std::map<std::string, BigInt> out;
  for (const auto& r : c.registers()) out[r.name] = s.read(r.wires);
  return out;
}

/// 64 basis states side by side, one word per wire.
class BatchState {
 public:
  static constexpr std::size_t kLanes = 64;

  explicit BatchState(std::size_t width) : words_(width, 0) {}

  void load(const std::vector<Wire>& wires, std::size_t lane,
            const BigInt& value) {
    const std::uint64_t bit = 1ULL << lane;
    for (std::size_t k = 0; k < wires.size(); ++k) {
      if (boost::multiprecision::bit_test(value, k)) {
        words_[wires[k]] |= bit;
      } else {
        words_[wires[k]] &= ~bit;
      }
    }
  }

  [[nodiscard]] BigInt read(const std::vector<Wire>& wires,
                            std::size_t lane) const {
    BigInt v = 0;
    for (std::size_t k = wires.size(); k-- > 0;) {
      v <<= 1;
      if ((words_[wires[k]] >> lane) & 1ULL) v |= 1;
    }
    return v;
  }

  /// Lanes in which any of the wires is nonzero.
  [[nodiscard]] std::uint64_t dirty_lanes(const std::vector<Wire>& wires) const {
    std::uint64_t m = 0;
    for (Wire w : wires) m |= words_[w];
    return m;
  }

  /// Applies the circuit; `on_check(check_index, violating_lanes)` fires for
  /// each zero check that some lane violates.
  template <class OnCheck>
  void run(const Circuit& c, OnCheck&& on_check) {
    if (words_.size() != c.width()) {
      throw std::invalid_argument("batch width mismatch");
    }
    const auto& checks = c.zero_checks();
    std::vector<std::size_t> order(checks.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) {
      return checks[l].position < checks[r].position;
    });
    std::size_t next = 0;
    auto fire_until = [&](std::size_t pos) {
      while (next < order.size() && checks[order[next]].position <= pos) {
        const auto& z = checks[order[next]];
        if (words_[z.wire] != 0) on_check(order[next], words_[z.wire]);
        ++next;
      }
    };
    const auto& gates = c.gates();
    std::uint64_t* w = words_.data();
    for (std::size_t k = 0; k < gates.size(); ++k) {
      if (next < order.size()) fire_until(k);
      const Gate& g = gates[k];
      switch (g.kind) {
        case GateKind::Not: w[g.target] = ~w[g.target]; break;
        case GateKind::Cnot: w[g.target] ^= w[g.control0]; break;
        case GateKind::Toffoli:
          w[g.target] ^= w[g.control0] & w[g.control1];
          break;
      }
    }
    fire_until(gates.size());
  }

  void run(const Circuit& c) {
    run(c, [](std::size_t, std::uint64_t) {});
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct TestVectorPlan {
  enum class Mode : std::uint8_t { Exhaustive, Random } mode = Mode::Random;
  std::uint64_t samples = 100;
  std::uint64_t seed = 42;

  static TestVectorPlan exhaustive() { return {Mode::Exhaustive, 0, 42}; }
  static TestVectorPlan random(std::uint64_t samples, std::uint64_t seed = 42) {
    return {Mode::Random, samples, seed};
  }
};

inline constexpr std::size_t kMaxExhaustiveBits = 24;

/// Produces the operand tuples of a plan in a fixed order: exhaustive plans
/// count with the first operand outermost; random plans draw each operand
/// from consecutive 64-bit outputs of mt19937_64.
class VectorSource {
 public:
  VectorSource(std::vector<std::size_t> widths, const TestVectorPlan& plan)
      : widths_(std::move(widths)), plan_(plan), rng_(plan.seed) {
    std::size_t total = 0;
    for (auto w : widths_) total += w;
    if (plan_.mode == TestVectorPlan::Mode::Exhaustive) {
      if (total > kMaxExhaustiveBits) {
        throw std::invalid_argument(
            "exhaustive testing needs at most " +
            std::to_string(kMaxExhaustiveBits) + " input bits, got " +
            std::to_string(total));
      }
      count_ = 1ULL << total;
    } else {
      if (plan_.samples == 0) {
        throw std::invalid_argument("random plan needs at least one sample");
      }
      count_ = plan_.samples;
    }
  }

  [[nodiscard]] std::uint64_t count() const { return count_; }

  /// Operands of vector `index`; random plans must be read in order.
  std::vector<BigInt> next() {
    std::vector<BigInt> out;
    if (plan_.mode == TestVectorPlan::Mode::Exhaustive) {
      std::uint64_t rest = index_;
      std::vector<std::uint64_t> vals(widths_.size());
      for (std::size_t k = widths_.size(); k-- > 0;) {
        vals[k] = rest & ((1ULL << widths_[k]) - 1);
        rest >>= widths_[k];
      }
      for (auto v : vals) out.emplace_back(v);
    } else {
      for (auto w : widths_) {
        BigInt v = 0;
        for (std::size_t got = 0; got < w; got += 64) {
          v |= BigInt(rng_()) << got;
        }
        v &= (BigInt(1) << w) - 1;
        out.push_back(v);
      }
    }
    ++index_;
    return out;
  }

 private:
  std::vector<std::size_t> widths_;
  TestVectorPlan plan_;
  std::mt19937_64 rng_;
  std::uint64_t count_ = 0;
  std::uint64_t index_ = 0;
};

struct VerifyFailure {
  std::uint64_t index = 0;
  BigInt x, y, got, want;
  std::string reason;
};

struct VerifyReport {
  std::size_t n = 0;
  std::uint64_t checked = 0;
  std::vector<VerifyFailure> failures;

  [[nodiscard]] bool passed() const { return failures.empty(); }

  /// One `FAIL ...` line per failing vector, or a single `PASS <count>`.
  [[nodiscard]] std::string text() const {
    std::ostringstream os;
    if (failures.empty()) {
      os << "PASS " << checked << "\n";
      return os.str();
    }
    for (const auto& f : failures) {
      os << "FAIL n=" << n << " x=" << f.x << " y=" << f.y << " got=" << f.got
         << " want=" << f.want;
      if (!f.reason.empty()) os << " reason=" << f.reason;
      os << "\n";
    }
    return os.str();
  }
};

namespace detail {

inline const Register& required(const Circuit& c, const char* name,
                                RegisterRole role) {
  const Register* r = c.find_register(name);
  if (r == nullptr || r->role != role) {
    throw std::invalid_argument(std::string("circuit lacks register '") +
                                name + "' with role " + to_string(role));
  }
  return *r;
}

}  // namespace detail

/// Checks (x, y, 0...) -> (x, y, x*y, 0...): product register "p", inputs
/// preserved, every ancilla and sign wire back at 0, every zero check held.
/// Garbage-role wires are not inspected.
inline VerifyReport verify_multiplier(const Circuit& c, std::size_t n,
                                      const TestVectorPlan& plan) {
  const Register& x = detail::required(c, "x", RegisterRole::Input);
  const Register& y = detail::required(c, "y", RegisterRole::Input);
  const Register& p = detail::required(c, "p", RegisterRole::Output);
  if (x.size() != n || y.size() != n) {
    throw std::invalid_argument("operand registers are not n bits wide");
  }
  std::vector<Wire> clean;
  for (const auto& r : c.registers()) {
    if (r.role == RegisterRole::Ancilla || r.role == RegisterRole::Sign) {
      clean.insert(clean.end(), r.wires.begin(), r.wires.end());
    }
  }

  VectorSource src({n, n}, plan);
  VerifyReport rep;
  rep.n = n;
  const std::uint64_t total = src.count();
  for (std::uint64_t base = 0; base < total; base += BatchState::kLanes) {
    const std::size_t lanes =
        static_cast<std::size_t>(std::min<std::uint64_t>(BatchState::kLanes,
                                                         total - base));
    BatchState st(c.width());
    std::vector<BigInt> xs(lanes), ys(lanes);
    for (std::size_t l = 0; l < lanes; ++l) {
      auto v = src.next();
      xs[l] = v[0];
      ys[l] = v[1];
      st.load(x.wires, l, xs[l]);
      st.load(y.wires, l, ys[l]);
    }
    std::uint64_t check_lanes = 0;
    std::vector<std::string> check_site(lanes);
    st.run(c, [&](std::size_t idx, std::uint64_t bad) {
      for (std::size_t l = 0; l < lanes; ++l) {
        if (((bad >> l) & 1ULL) && !((check_lanes >> l) & 1ULL)) {
          check_site[l] = c.zero_checks()[idx].site;
        }
      }
      check_lanes |= bad;
    });
    const std::uint64_t dirty = st.dirty_lanes(clean);
    for (std::size_t l = 0; l < lanes; ++l) {
      const BigInt want = xs[l] * ys[l];
      const BigInt got = st.read(p.wires, l);
      std::string reason;
      if (got != want) {
        reason = "product";
      } else if (st.read(x.wires, l) != xs[l] || st.read(y.wires, l) != ys[l]) {
        reason = "inputs_modified";
      } else if ((dirty >> l) & 1ULL) {
        reason = "ancilla_not_clean";
      } else if ((check_lanes >> l) & 1ULL) {
        reason = "zero_check:" + check_site[l];
      }
      if (!reason.empty()) {
        rep.failures.push_back({base + l, xs[l], ys[l], got, want, reason});
      }
    }
    rep.checked += lanes;
  }
  return rep;
}

struct ParityViolation {
  std::uint64_t index = 0;
  std::string site;
  std::size_t position = 0;
  std::vector<BigInt> inputs;
};

struct ParityReport {
  std::uint64_t checked = 0;
  std::size_t sites = 0;
  std::vector<ParityViolation> violations;
  [[nodiscard]] bool passed() const { return violations.empty(); }
};

/// Drives every Input-role register from the plan (zeros elsewhere) and
/// reports each recorded zero check that fails, with the offending vector.
inline ParityReport check_parity_sites(const Circuit& c,
                                       const TestVectorPlan& plan) {
  std::vector<const Register*> inputs = c.registers_with_role(RegisterRole::Input);
  std::vector<std::size_t> widths;
  for (const auto* r : inputs) widths.push_back(r->size());
  ParityReport rep;
  rep.sites = c.zero_checks().size();
  VectorSource src(widths, plan);
  const std::uint64_t total = src.count();
  for (std::uint64_t base = 0; base < total; base += BatchState::kLanes) {
    const std::size_t lanes =
        static_cast<std::size_t>(std::min<std::uint64_t>(BatchState::kLanes,
                                                         total - base));
    BatchState st(c.width());
    std::vector<std::vector<BigInt>> vals(lanes);
    for (std::size_t l = 0; l < lanes; ++l) {
      vals[l] = src.next();
      for (std::size_t r = 0; r < inputs.size(); ++r) {
        st.load(inputs[r]->wires, l, vals[l][r]);
      }
    }
    std::vector<bool> reported(lanes, false);
    st.run(c, [&](std::size_t idx, std::uint64_t bad) {
      for (std::size_t l = 0; l < lanes; ++l) {
        if (((bad >> l) & 1ULL) && !reported[l]) {
          reported[l] = true;
          const auto& z = c.zero_checks()[idx];
          rep.violations.push_back({base + l, z.site, z.position, vals[l]});
        }
      }
    });
    rep.checked += lanes;
  }
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const auto& a, const auto& b) { return a.index < b.index; });
  return rep;
}

}  // namespace toomcirc
