#pragma once

// Reversible pebbling of the Toom-2.5 recursion tree.
//
// The two alternating Toom levels are collapsed into one 16-ary level: a node
// at level x (root = 0) stands for a multiplication of n/6^x bits. Leaves
// (level N) are single-bit products and carry no tree ancilla. Below a cut
// level, each subtree is computed, its result copied out, and the subtree
// uncomputed before the next sibling starts, so only the copies stay live.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multipliers.hpp"

namespace toomcirc {

inline constexpr std::uint64_t kPebbleArity = 16;
inline constexpr std::uint64_t kPebbleShrink = 6;

/// 2 - log_16 6, the denominator of the cut-level bound.
inline double cut_level_denominator() {
  return 2.0 - std::log(6.0) / std::log(16.0);
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

class RecursionTree {
 public:
  explicit RecursionTree(std::uint64_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("tree needs n >= 1");
    std::uint64_t reach = 1;
    while (reach < n) {
      reach *= kPebbleShrink;
      ++height_;
    }
  }

  [[nodiscard]] std::uint64_t n() const { return n_; }
  /// N = ceil(log_6 n).
  [[nodiscard]] unsigned height() const { return height_; }
  [[nodiscard]] std::uint64_t nodes_at(unsigned level) const {
    return ipow(kPebbleArity, level);
  }
  /// Bits handled by one node at `level`: ceil(n / 6^level).
  [[nodiscard]] std::uint64_t node_size(unsigned level) const {
    const std::uint64_t d = ipow(kPebbleShrink, level);
    return (n_ + d - 1) / d;
  }
  [[nodiscard]] std::uint64_t level_total(unsigned level) const {
    return nodes_at(level) * node_size(level);
  }

 private:
  std::uint64_t n_;
  unsigned height_ = 0;
};

/// k = floor(N / (2 - log_16 6)) clamped to [0, N].
inline unsigned optimal_cut_level(unsigned tree_height) {
  const double k = std::floor(static_cast<double>(tree_height) /
                              cut_level_denominator());
  return static_cast<unsigned>(
      std::clamp(k, 0.0, static_cast<double>(tree_height)));
}

/// n((16/6)^N - 1)/((16/6) - 1): every non-leaf level of the full tree,
/// summed with integer node sizes (levels 0..N-1).
inline std::uint64_t space_unoptimized(std::uint64_t n) {
  const RecursionTree t(n);
  std::uint64_t total = 0;
  for (unsigned x = 0; x < t.height(); ++x) total += t.level_total(x);
  return total;
}

/// The same sum in closed form over the reals, for cross-checking.
inline double space_unoptimized_closed_form(double n) {
  const double r = 16.0 / 6.0;
  const double levels = std::log(n) / std::log(6.0);
  return n * (std::pow(r, levels) - 1.0) / (r - 1.0);
}

/// Number of sequential cut-level subtrees times the depth of each:
/// 16^(N-k) * ceil(n / 6^(N-k)).
inline std::uint64_t depth_under_schedule(const RecursionTree& t, unsigned k) {
  if (k > t.height()) throw std::out_of_range("cut level k exceeds tree height");
  const unsigned level = t.height() - k;
  return t.nodes_at(level) * t.node_size(level);
}

/// Wires charged per node while it is computed and per copy of its result.
struct PebbleCosts {
  std::vector<std::uint64_t> node;  // indexed by level
  std::vector<std::uint64_t> copy;

  /// Node weight n/6^x for internal nodes, copies as big as the node.
  /// Leaves are free in both roles.
  static PebbleCosts idealized(const RecursionTree& t) {
    PebbleCosts c;
    for (unsigned x = 0; x <= t.height(); ++x) {
      const std::uint64_t v = x < t.height() ? t.node_size(x) : 0;
      c.node.push_back(v);
      c.copy.push_back(v);
    }
    return c;
  }

  /// Node weight taken from the real construction: wires a collapsed node
  /// of width w keeps live (its own Toom stage plus the four sub-stages
  /// below it, excluding their children), and a copy of its 2w-bit product.
  /// Leaf products are already counted inside their parent's footprint.
  static PebbleCosts measured(const RecursionTree& t,
                              MultiplierConfig cfg = {}) {
    cfg.method = Method::Toom25;
    ShapeModel model(cfg);
    auto own = [&](std::size_t a, std::size_t b) {
      const auto& e = model.entry(a, b);
      std::uint64_t v = e.cost.live;
      for (const auto& [ca, cb] : e.children) v -= model.entry(ca, cb).cost.live;
      return v;
    };
    PebbleCosts c;
    for (unsigned x = 0; x <= t.height(); ++x) {
      const std::size_t w = t.node_size(x);
      std::uint64_t v = 0;
      if (x < t.height()) {
        v = own(w, w);
        for (const auto& [ca, cb] : model.entry(w, w).children) {
          v += own(ca, cb);
        }
      }
      c.node.push_back(v);
      c.copy.push_back(x < t.height() ? 2 * w : 0);
    }
    return c;
  }
};

struct PebbleAction {
  enum class Kind : std::uint8_t { Compute, CopyOut, Uncompute } kind;
  unsigned level = 0;
  std::uint64_t index = 0;  // position within the level, left to right

  friend bool operator==(const PebbleAction&, const PebbleAction&) = default;
};

/// Dotted child indices from the root, e.g. "r", "r.3", "r.3.15".
inline std::string node_path(unsigned level, std::uint64_t index) {
  std::vector<std::uint64_t> digits;
  for (unsigned l = 0; l < level; ++l) {
    digits.push_back(index % kPebbleArity);
    index /= kPebbleArity;
  }
  std::string out = "r";
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    out += "." + std::to_string(*it);
  }
  return out;
}

struct PebbleSchedule {
  std::uint64_t n = 0;
  unsigned height = 0;
  unsigned cut = 0;  // k, counted from the leaves
  std::vector<PebbleAction> actions;
  std::uint64_t peak_space = 0;
  std::uint64_t total_depth_units = 0;

  /// Audit listing: one `COMPUTE|COPY|UNCOMPUTE <path>` line per action.
  [[nodiscard]] std::string text() const {
    std::ostringstream os;
    for (const auto& a : actions) {
      switch (a.kind) {
        case PebbleAction::Kind::Compute: os << "COMPUTE "; break;
        case PebbleAction::Kind::CopyOut: os << "COPY "; break;
        case PebbleAction::Kind::Uncompute: os << "UNCOMPUTE "; break;
      }
      os << node_path(a.level, a.index) << "\n";
    }
    return os.str();
  }
};

struct ReplayResult {
  bool valid = true;
  std::string error;
  std::uint64_t peak = 0;
  std::uint64_t final_live = 0;
  bool only_product_left = false;
};

/// Replays a schedule against a wire counter. Rules: a node may be computed
/// or uncomputed only while each child is live or held as a copy; a node may
/// be uncomputed only after its value was consumed (copied, or its parent was
/// computed from it); a copy toggles (the second copy of the same node
/// releases it). The root's copy is the product and is not charged.
inline ReplayResult replay(const RecursionTree& t,
                           const std::vector<PebbleAction>& actions,
                           const PebbleCosts& costs) {
  ReplayResult r;
  const unsigned height = t.height();
  std::vector<std::vector<std::uint8_t>> live(height + 1), copied(height + 1),
      consumed(height + 1);
  const std::uint64_t max_nodes = t.nodes_at(height);
  if (max_nodes > (1ULL << 26)) {
    throw std::invalid_argument("tree too large to replay");
  }
  for (unsigned x = 0; x <= height; ++x) {
    live[x].assign(t.nodes_at(x), 0);
    copied[x].assign(t.nodes_at(x), 0);
    consumed[x].assign(t.nodes_at(x), 0);
  }
  std::uint64_t cur = 0;
  auto fail = [&](const std::string& msg, const PebbleAction& a) {
    if (r.valid) {
      r.valid = false;
      r.error = msg + " at " + node_path(a.level, a.index);
    }
  };
  auto children_available = [&](const PebbleAction& a) {
    if (a.level == height) return true;
    for (std::uint64_t c = 0; c < kPebbleArity; ++c) {
      const std::uint64_t ci = a.index * kPebbleArity + c;
      if (!live[a.level + 1][ci] && !copied[a.level + 1][ci]) return false;
    }
    return true;
  };
  for (const auto& a : actions) {
    if (a.level > height || a.index >= t.nodes_at(a.level)) {
      fail("node outside tree", a);
      break;
    }
    switch (a.kind) {
      case PebbleAction::Kind::Compute:
        if (live[a.level][a.index]) fail("double compute", a);
        if (!children_available(a)) fail("compute before children", a);
        live[a.level][a.index] = 1;
        consumed[a.level][a.index] = 0;
        cur += costs.node[a.level];
        if (a.level < height) {
          for (std::uint64_t c = 0; c < kPebbleArity; ++c) {
            consumed[a.level + 1][a.index * kPebbleArity + c] = 1;
          }
        }
        break;
      case PebbleAction::Kind::CopyOut: {
        if (!live[a.level][a.index]) fail("copy of a value not live", a);
        const std::uint64_t size = a.level == 0 ? 0 : costs.copy[a.level];
        if (copied[a.level][a.index]) {
          copied[a.level][a.index] = 0;
          cur -= size;
        } else {
          copied[a.level][a.index] = 1;
          cur += size;
        }
        consumed[a.level][a.index] = 1;
        break;
      }
      case PebbleAction::Kind::Uncompute:
        if (!live[a.level][a.index]) fail("uncompute of a value not live", a);
        if (!consumed[a.level][a.index]) {
          fail("uncompute before the value was used", a);
        }
        if (!children_available(a)) fail("uncompute after children", a);
        live[a.level][a.index] = 0;
        cur -= costs.node[a.level];
        break;
    }
    r.peak = std::max(r.peak, cur);
  }
  r.final_live = cur;
  bool only_root = copied[0][0] != 0;
  for (unsigned x = 0; x <= height && only_root; ++x) {
    for (std::uint64_t i = 0; i < t.nodes_at(x); ++i) {
      if ((x > 0 && (live[x][i] || copied[x][i])) ||
          (x == 0 && live[x][i] && costs.node[0] != 0)) {
        only_root = false;
        break;
      }
    }
  }
  r.only_product_left = only_root && cur == 0;
  return r;
}

namespace detail {

inline void subtree_post_order(unsigned level, std::uint64_t index,
                               unsigned height, PebbleAction::Kind kind,
                               std::vector<PebbleAction>& out) {
  if (level < height) {
    for (std::uint64_t c = 0; c < kPebbleArity; ++c) {
      subtree_post_order(level + 1, index * kPebbleArity + c, height, kind, out);
    }
  }
  out.push_back({kind, level, index});
}

inline void append_reversed(std::vector<PebbleAction>& out, std::size_t from,
                            std::size_t to, bool flip_kind) {
  for (std::size_t k = to; k > from; --k) {
    PebbleAction a = out[k - 1];
    if (flip_kind) {
      if (a.kind == PebbleAction::Kind::Compute) {
        a.kind = PebbleAction::Kind::Uncompute;
      } else if (a.kind == PebbleAction::Kind::Uncompute) {
        a.kind = PebbleAction::Kind::Compute;
      }
    }
    out.push_back(a);
  }
}

}  // namespace detail

/// Builds the cut-level schedule for cut k (counted from the leaves) and
/// measures its peak with `costs` (idealized weights if omitted).
inline PebbleSchedule make_schedule(const RecursionTree& t, unsigned k,
                                    const PebbleCosts* costs = nullptr) {
  const unsigned height = t.height();
  if (k > height) throw std::out_of_range("cut level k exceeds tree height");
  PebbleSchedule s;
  s.n = t.n();
  s.height = height;
  s.cut = k;
  s.total_depth_units = depth_under_schedule(t, k);
  auto& out = s.actions;
  using Kind = PebbleAction::Kind;
  if (height == 0) {
    // A single garbage-free leaf writes the product directly.
    out = {{Kind::Compute, 0, 0}, {Kind::CopyOut, 0, 0}};
  } else {
    const unsigned cut_level = height - k;
    // Forward: every cut-level subtree computed, copied, uncomputed.
    for (std::uint64_t i = 0; i < t.nodes_at(cut_level); ++i) {
      if (cut_level == 0) break;
      const std::size_t begin = out.size();
      detail::subtree_post_order(cut_level, i, height, Kind::Compute, out);
      out.push_back({Kind::CopyOut, cut_level, i});
      detail::append_reversed(out, begin, out.size() - 1, true);
    }
    // Above the cut (the whole tree when the cut is the root).
    const std::size_t above_begin = out.size();
    const unsigned above_height = cut_level == 0 ? height : cut_level - 1;
    std::vector<PebbleAction> above;
    detail::subtree_post_order(0, 0, above_height, Kind::Compute, above);
    out.insert(out.end(), above.begin(), above.end());
    const std::size_t above_end = out.size();
    out.push_back({Kind::CopyOut, 0, 0});
    // Cleanup mirrors the forward phase, leaving only the product.
    detail::append_reversed(out, above_begin, above_end, true);
    if (cut_level > 0) {
      for (std::uint64_t i = t.nodes_at(cut_level); i-- > 0;) {
        const std::size_t begin = out.size();
        detail::subtree_post_order(cut_level, i, height, Kind::Compute, out);
        out.push_back({Kind::CopyOut, cut_level, i});
        detail::append_reversed(out, begin, out.size() - 1, true);
      }
    }
  }
  const PebbleCosts ideal = PebbleCosts::idealized(t);
  const ReplayResult r = replay(t, out, costs != nullptr ? *costs : ideal);
  if (!r.valid) throw std::logic_error("invalid pebble schedule: " + r.error);
  s.peak_space = r.peak;
  return s;
}

}  // namespace toomcirc
