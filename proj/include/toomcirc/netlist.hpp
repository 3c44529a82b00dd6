#pragma once

// Gate-level IR for classical-reversible circuits over {X, CX, CCX}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace toomcirc {

using Wire = std::uint32_t;

enum class GateKind : std::uint8_t { Not, Cnot, Toffoli };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::Not: return "x";
    case GateKind::Cnot: return "cx";
    case GateKind::Toffoli: return "ccx";
  }
  return "?";
}

/// One self-inverse reversible primitive. Unused control slots hold the
/// target index so that `wires()` stays branch-free for callers.
struct Gate {
  GateKind kind = GateKind::Not;
  Wire target = 0;
  Wire control0 = 0;
  Wire control1 = 0;

  static Gate x(Wire t) { return Gate{GateKind::Not, t, t, t}; }

  static Gate cx(Wire c, Wire t) {
    if (c == t) {
      throw std::invalid_argument("cx: control and target coincide");
    }
    return Gate{GateKind::Cnot, t, c, c};
  }

  static Gate ccx(Wire c0, Wire c1, Wire t) {
    if (c0 == c1 || c0 == t || c1 == t) {
      throw std::invalid_argument("ccx: wires must be pairwise distinct");
    }
    return Gate{GateKind::Toffoli, t, c0, c1};
  }

  [[nodiscard]] std::size_t arity() const {
    switch (kind) {
      case GateKind::Not: return 1;
      case GateKind::Cnot: return 2;
      case GateKind::Toffoli: return 3;
    }
    return 0;
  }

  /// Wires touched, controls first, target last.
  [[nodiscard]] std::vector<Wire> wires() const {
    switch (kind) {
      case GateKind::Not: return {target};
      case GateKind::Cnot: return {control0, target};
      case GateKind::Toffoli: return {control0, control1, target};
    }
    return {};
  }

  [[nodiscard]] Wire max_wire() const {
    return std::max({target, control0, control1});
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class Interpretation : std::uint8_t { Unsigned, TwosComplement };

// Garbage marks wires that a compute-only circuit leaves dirty.
enum class RegisterRole : std::uint8_t { Input, Output, Ancilla, Sign, Garbage };

inline const char* to_string(RegisterRole role) {
  switch (role) {
    case RegisterRole::Input: return "input";
    case RegisterRole::Output: return "output";
    case RegisterRole::Ancilla: return "ancilla";
    case RegisterRole::Sign: return "sign";
    case RegisterRole::Garbage: return "garbage";
  }
  return "?";
}

inline const char* to_string(Interpretation interp) {
  return interp == Interpretation::Unsigned ? "unsigned" : "twos_complement";
}

inline RegisterRole parse_role(const std::string& s) {
  if (s == "input") return RegisterRole::Input;
  if (s == "output") return RegisterRole::Output;
  if (s == "ancilla") return RegisterRole::Ancilla;
  if (s == "sign") return RegisterRole::Sign;
  if (s == "garbage") return RegisterRole::Garbage;
  throw std::invalid_argument("unknown register role: " + s);
}

inline Interpretation parse_interpretation(const std::string& s) {
  if (s == "unsigned") return Interpretation::Unsigned;
  if (s == "twos_complement") return Interpretation::TwosComplement;
  throw std::invalid_argument("unknown interpretation: " + s);
}

/// Named wire slice, least significant wire first.
struct Register {
  std::string name;
  std::vector<Wire> wires;
  Interpretation interpretation = Interpretation::Unsigned;
  RegisterRole role = RegisterRole::Ancilla;

  [[nodiscard]] std::size_t size() const { return wires.size(); }
  friend bool operator==(const Register&, const Register&) = default;
};

/// Proof obligation: `wire` reads 0 after the first `position` gates ran.
/// Halving sites and sign-guard bits register these during construction.
struct ZeroCheck {
  std::size_t position = 0;
  Wire wire = 0;
  std::string site;
  friend bool operator==(const ZeroCheck&, const ZeroCheck&) = default;
};

class Circuit {
 public:
  Circuit() = default;

  Circuit(std::size_t width, std::vector<Gate> gates,
          std::vector<Register> registers = {},
          std::vector<ZeroCheck> zero_checks = {})
      : width_(width),
        gates_(std::move(gates)),
        registers_(std::move(registers)),
        zero_checks_(std::move(zero_checks)) {
    validate();
  }

  [[nodiscard]] std::size_t width() const { return width_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const std::vector<Register>& registers() const {
    return registers_;
  }
  [[nodiscard]] const std::vector<ZeroCheck>& zero_checks() const {
    return zero_checks_;
  }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }
  [[nodiscard]] bool empty() const { return gates_.empty(); }

  [[nodiscard]] const Register* find_register(const std::string& name) const {
    for (const auto& r : registers_) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }

  [[nodiscard]] std::vector<const Register*> registers_with_role(
      RegisterRole role) const {
    std::vector<const Register*> out;
    for (const auto& r : registers_) {
      if (r.role == role) out.push_back(&r);
    }
    return out;
  }

 private:
  void validate() const {
    for (const auto& g : gates_) {
      if (g.max_wire() >= width_) {
        throw std::out_of_range("gate references wire " +
                                std::to_string(g.max_wire()) +
                                " beyond circuit width " +
                                std::to_string(width_));
      }
    }
    std::unordered_set<Wire> owned;
    std::unordered_set<std::string> names;
    for (const auto& r : registers_) {
      if (!names.insert(r.name).second) {
        throw std::invalid_argument("duplicate register name: " + r.name);
      }
      for (Wire w : r.wires) {
        if (w >= width_) {
          throw std::out_of_range("register " + r.name +
                                  " references wire beyond width");
        }
        if (!owned.insert(w).second) {
          throw std::invalid_argument("wire " + std::to_string(w) +
                                      " owned by more than one register");
        }
      }
    }
    for (const auto& z : zero_checks_) {
      if (z.wire >= width_ || z.position > gates_.size()) {
        throw std::out_of_range("zero check outside circuit: " + z.site);
      }
    }
  }

  std::size_t width_ = 0;
  std::vector<Gate> gates_;
  std::vector<Register> registers_;
  std::vector<ZeroCheck> zero_checks_;
};

/// Every primitive is self-inverse, so reversal is reordering.
inline Circuit reverse(const Circuit& c) {
  std::vector<Gate> gates(c.gates().rbegin(), c.gates().rend());
  std::vector<ZeroCheck> checks;
  checks.reserve(c.zero_checks().size());
  for (auto it = c.zero_checks().rbegin(); it != c.zero_checks().rend();
       ++it) {
    checks.push_back({c.size() - it->position, it->wire, it->site});
  }
  return Circuit(c.width(), std::move(gates), c.registers(),
                 std::move(checks));
}

/// Gates of `a` followed by gates of `b` relabelled through `wire_map`
/// (`wire_map[w]` is the combined index of b's wire w).
inline Circuit concat(const Circuit& a, const Circuit& b,
                      std::span<const Wire> wire_map) {
  if (wire_map.size() < b.width()) {
    throw std::invalid_argument("concat: wire_map does not cover b");
  }
  std::unordered_set<Wire> image;
  std::size_t width = a.width();
  for (std::size_t w = 0; w < b.width(); ++w) {
    if (!image.insert(wire_map[w]).second) {
      throw std::invalid_argument("concat: wire_map is not injective");
    }
    width = std::max<std::size_t>(width, std::size_t{wire_map[w]} + 1);
  }
  std::vector<Gate> gates = a.gates();
  gates.reserve(a.size() + b.size());
  for (Gate g : b.gates()) {
    g.target = wire_map[g.target];
    g.control0 = wire_map[g.control0];
    g.control1 = wire_map[g.control1];
    gates.push_back(g);
  }
  std::vector<Register> registers = a.registers();
  for (const auto& r : b.registers()) {
    if (a.find_register(r.name) != nullptr) {
      throw std::invalid_argument("concat: register name collision: " +
                                  r.name);
    }
    Register m = r;
    for (auto& w : m.wires) w = wire_map[w];
    registers.push_back(std::move(m));
  }
  std::vector<ZeroCheck> checks = a.zero_checks();
  for (const auto& z : b.zero_checks()) {
    checks.push_back({z.position + a.size(), wire_map[z.wire], z.site});
  }
  return Circuit(width, std::move(gates), std::move(registers),
                 std::move(checks));
}

inline std::vector<Wire> identity_map(std::size_t width) {
  std::vector<Wire> m(width);
  for (std::size_t i = 0; i < width; ++i) m[i] = static_cast<Wire>(i);
  return m;
}

struct GateTally {
  std::uint64_t toffoli = 0;
  std::uint64_t cnot = 0;
  std::uint64_t not_ = 0;

  void add(GateKind k, std::uint64_t times = 1) {
    switch (k) {
      case GateKind::Not: not_ += times; break;
      case GateKind::Cnot: cnot += times; break;
      case GateKind::Toffoli: toffoli += times; break;
    }
  }
  GateTally& operator+=(const GateTally& o) {
    toffoli += o.toffoli;
    cnot += o.cnot;
    not_ += o.not_;
    return *this;
  }
  friend GateTally operator+(GateTally a, const GateTally& b) { return a += b; }
  friend GateTally operator*(GateTally a, std::uint64_t k) {
    a.toffoli *= k;
    a.cnot *= k;
    a.not_ *= k;
    return a;
  }
  friend bool operator==(const GateTally&, const GateTally&) = default;
};

inline constexpr std::uint64_t kTPerToffoli = 7;
inline constexpr std::uint64_t kTDepthPerToffoliLayer = 3;

struct ResourceReport {
  std::uint64_t toffoli_count = 0;
  std::uint64_t cnot_count = 0;
  std::uint64_t not_count = 0;
  std::uint64_t qubit_count = 0;
  std::uint64_t toffoli_depth = 0;
  std::uint64_t t_count = 0;
  std::uint64_t t_depth = 0;

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

/// Fills the Clifford+T fields from the Toffoli figures (7x count, 3x depth).
inline ResourceReport make_report(const GateTally& t, std::uint64_t qubits,
                                  std::uint64_t toffoli_depth) {
  ResourceReport r;
  r.toffoli_count = t.toffoli;
  r.cnot_count = t.cnot;
  r.not_count = t.not_;
  r.qubit_count = qubits;
  r.toffoli_depth = toffoli_depth;
  r.t_count = kTPerToffoli * t.toffoli;
  r.t_depth = kTDepthPerToffoliLayer * toffoli_depth;
  return r;
}

inline GateTally tally(const Circuit& c) {
  GateTally t;
  for (const auto& g : c.gates()) t.add(g.kind);
  return t;
}

/// ASAP layer (1-based) of every gate: 1 + the latest layer among the gates
/// that previously touched its wires.
inline std::vector<std::uint32_t> asap_layers(const Circuit& c) {
  std::vector<std::uint32_t> last(c.width(), 0);
  std::vector<std::uint32_t> out;
  out.reserve(c.gates().size());
  for (const auto& g : c.gates()) {
    std::uint32_t layer = 0;
    for (Wire w : {g.target, g.control0, g.control1}) {
      layer = std::max(layer, last[w]);
    }
    ++layer;
    for (Wire w : {g.target, g.control0, g.control1}) last[w] = layer;
    out.push_back(layer);
  }
  return out;
}

/// Number of ASAP layers holding at least one Toffoli.
inline std::uint64_t schedule_depth(const Circuit& c) {
  const auto layers = asap_layers(c);
  std::vector<bool> has_toffoli;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (c.gates()[k].kind != GateKind::Toffoli) continue;
    if (has_toffoli.size() <= layers[k]) has_toffoli.resize(layers[k] + 1, false);
    has_toffoli[layers[k]] = true;
  }
  return static_cast<std::uint64_t>(
      std::count(has_toffoli.begin(), has_toffoli.end(), true));
}

inline ResourceReport count_resources(const Circuit& c) {
  return make_report(tally(c), c.width(), schedule_depth(c));
}

}  // namespace toomcirc
