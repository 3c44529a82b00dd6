#pragma once

// Shared helpers for the unit tests: batched register-level simulation.

#include <map>
#include <string>
#include <vector>

#include "toomcirc/sim.hpp"

namespace toomcirc::testing {

using Values = std::map<std::string, BigInt>;

/// Runs each input assignment through `c` (64 at a time) and returns the
/// final value of every register for each.
inline std::vector<Values> run_many(const Circuit& c, const std::vector<Values>& ins) {
  std::vector<Values> out;
  out.reserve(ins.size());
  for (std::size_t base = 0; base < ins.size(); base += BatchState::kLanes) {
    const std::size_t lanes = std::min(BatchState::kLanes, ins.size() - base);
    BatchState s(c.width());
    for (std::size_t l = 0; l < lanes; ++l) {
      for (const auto& [name, v] : ins[base + l]) {
        const Register* r = c.find_register(name);
        if (r == nullptr) throw std::out_of_range("no register " + name);
        s.load(r->wires, l, v);
      }
    }
    s.run(c);
    for (std::size_t l = 0; l < lanes; ++l) {
      Values v;
      for (const auto& r : c.registers()) v[r.name] = s.read(r.wires, l);
      out.push_back(std::move(v));
    }
  }
  return out;
}

inline BigInt pow2(std::size_t k) { return BigInt(1) << k; }

}  // namespace toomcirc::testing
