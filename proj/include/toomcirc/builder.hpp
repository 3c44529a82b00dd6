#pragma once

// Incremental circuit construction with a free-list wire allocator.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netlist.hpp"

namespace toomcirc {

/// LSB-first list of wires; the working currency of the block emitters.
using Reg = std::vector<Wire>;

inline Reg slice(const Reg& r, std::size_t from, std::size_t len) {
  if (from + len > r.size()) {
    throw std::out_of_range("slice beyond register end");
  }
  return Reg(r.begin() + static_cast<std::ptrdiff_t>(from),
             r.begin() + static_cast<std::ptrdiff_t>(from + len));
}

inline Reg join(Reg lo, const Reg& hi) {
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

/// Hands out wires, smallest free index first. Released wires must be clean;
/// the builder trusts its callers here and the simulator checks it.
class WireAllocator {
 public:
  Wire acquire() {
    Wire w;
    if (!free_.empty()) {
      w = free_.top();
      free_.pop();
    } else {
      w = static_cast<Wire>(in_use_.size());
      in_use_.push_back(false);
    }
    in_use_[w] = true;
    ++live_;
    return w;
  }

  void release(Wire w) {
    if (w >= in_use_.size() || !in_use_[w]) {
      throw std::logic_error("release of wire " + std::to_string(w) +
                             " that is not allocated");
    }
    in_use_[w] = false;
    free_.push(w);
    --live_;
  }

  [[nodiscard]] bool allocated(Wire w) const {
    return w < in_use_.size() && in_use_[w];
  }
  /// High-water mark: every index below it has been handed out at least once.
  [[nodiscard]] std::size_t width() const { return in_use_.size(); }
  [[nodiscard]] std::size_t live() const { return live_; }

 private:
  std::vector<bool> in_use_;
  std::priority_queue<Wire, std::vector<Wire>, std::greater<>> free_;
  std::size_t live_ = 0;
};

class Builder {
 public:
  Wire alloc() { return alloc_.acquire(); }

  Reg alloc(std::size_t n) {
    Reg r(n);
    for (auto& w : r) w = alloc_.acquire();
    return r;
  }

  void release(Wire w) { alloc_.release(w); }
  void release(const Reg& r) {
    for (Wire w : r) alloc_.release(w);
  }

  void x(Wire t) { gates_.push_back(Gate::x(t)); }
  void cx(Wire c, Wire t) { gates_.push_back(Gate::cx(c, t)); }
  void ccx(Wire c0, Wire c1, Wire t) { gates_.push_back(Gate::ccx(c0, c1, t)); }

  /// Records that `w` must read 0 at the current program point.
  void zero_check(Wire w, std::string site) {
    checks_.push_back({gates_.size(), w, std::move(site)});
  }

  /// Appends the gates in [from, to) in reverse order, mirroring their checks.
  void append_reverse(std::size_t from, std::size_t to) {
    if (from > to || to > gates_.size()) {
      throw std::out_of_range("append_reverse: bad range");
    }
    const std::size_t base = gates_.size();
    std::vector<ZeroCheck> mirrored;
    for (const auto& z : checks_) {
      if (z.position >= from && z.position <= to) {
        mirrored.push_back({base + (to - z.position), z.wire, z.site});
      }
    }
    gates_.reserve(gates_.size() + (to - from));
    for (std::size_t k = to; k > from; --k) gates_.push_back(gates_[k - 1]);
    for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it) {
      checks_.push_back(*it);
    }
  }

  [[nodiscard]] std::size_t position() const { return gates_.size(); }
  [[nodiscard]] std::size_t width() const { return alloc_.width(); }
  [[nodiscard]] std::size_t live() const { return alloc_.live(); }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const WireAllocator& allocator() const { return alloc_; }

  Circuit finish(std::vector<Register> registers) && {
    return Circuit(alloc_.width(), std::move(gates_), std::move(registers),
                   std::move(checks_));
  }

 private:
  WireAllocator alloc_;
  std::vector<Gate> gates_;
  std::vector<ZeroCheck> checks_;
};

/// Every wire below `width` not listed in `taken`, in index order.
inline Reg complement_wires(std::size_t width,
                            const std::vector<const Reg*>& taken) {
  std::vector<bool> used(width, false);
  for (const Reg* r : taken) {
    for (Wire w : *r) used[w] = true;
  }
  Reg out;
  for (std::size_t w = 0; w < width; ++w) {
    if (!used[w]) out.push_back(static_cast<Wire>(w));
  }
  return out;
}

}  // namespace toomcirc
