#pragma once

// Command implementations behind the toomc tool. Each returns the process
// exit status: 0 success, 1 verification failure, 2 argument error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "costmodel.hpp"
#include "multipliers.hpp"
#include "netlist.hpp"
#include "pebble.hpp"
#include "qasm.hpp"
#include "sim.hpp"

namespace toomcirc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that overrides the default seed of 42.
inline constexpr const char* kSeedEnv = "TOOMC_SEED";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format : std::uint8_t { Csv, Table, Qasm };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  if (s == "qasm") return Format::Qasm;
  throw UsageError("unknown format: " + s);
}

struct CommandConfig {
  std::string subcommand;
  std::string method = "toom25";
  std::vector<std::string> methods = {"naive", "karatsuba", "toom25"};
  std::uint32_t bits = 0;
  std::vector<std::uint32_t> bit_range;
  std::uint64_t seed = 42;
  std::uint64_t samples = 0;  // 0 selects exhaustive
  std::string out = "-";
  Format format = Format::Csv;
  MultiplierConfig multiplier;
  std::uint32_t measured_cap = 1296;
  bool measured = true;
  int cut = -1;  // pebble: -1 selects k*
  bool fit = false;
  std::string schedule_out;

  void validate() const {
    if (samples == 0 && subcommand == "simulate" && bits * 2 > kMaxExhaustiveBits) {
      throw UsageError("exhaustive simulation limited to 2n <= " +
                       std::to_string(kMaxExhaustiveBits) + " input bits");
    }
    for (auto b : bit_range) {
      if (b == 0) throw UsageError("bits must be >= 1");
    }
    multiplier.validate();
  }
};

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string(kSeedEnv) + " is not an integer: " + env);
    }
  }
  return 42;
}

/// "start:stop:step" (inclusive stop), "start:stop:*factor", or "a,b,c".
inline std::vector<std::uint32_t> parse_bit_range(const std::string& spec) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad number in bit range: '" + s + "'");
    }
    return std::stoull(s);
  };
  std::vector<std::uint32_t> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("bit range needs start:stop:step");
    const std::uint64_t start = number(parts[0]), stop = number(parts[1]);
    const bool geometric = !parts[2].empty() && parts[2][0] == '*';
    const std::uint64_t step = number(geometric ? parts[2].substr(1) : parts[2]);
    if (start == 0) throw UsageError("bits must be >= 1");
    if (step == 0 || (geometric && step < 2)) throw UsageError("bad step");
    for (std::uint64_t n = start; n <= stop; n = geometric ? n * step : n + step) {
      out.push_back(static_cast<std::uint32_t>(n));
    }
  } else {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const std::uint64_t n = number(tok);
      if (n == 0) throw UsageError("bits must be >= 1");
      out.push_back(static_cast<std::uint32_t>(n));
    }
  }
  if (out.empty()) throw UsageError("empty bit range");
  return out;
}

inline std::string summary_line(const std::string& label, std::uint32_t n,
                                const ResourceReport& r) {
  std::ostringstream os;
  os << label << " n=" << n << " qubits=" << r.qubit_count
     << " toffoli=" << r.toffoli_count << " cnot=" << r.cnot_count
     << " not=" << r.not_count << " toffoli_depth=" << r.toffoli_depth
     << " t_count=" << r.t_count << " t_depth=" << r.t_depth;
  return os.str();
}

namespace detail {

/// Writes to `path`, or to `fallback` when the path is "-".
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path == "-" || path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  fn(f);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

inline MultiplierConfig config_for(const CommandConfig& cfg,
                                   const std::string& method) {
  MultiplierConfig m = cfg.multiplier;
  m.method = parse_method(method);
  return m;
}

}  // namespace detail

inline int cmd_build(const CommandConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  const MultiplierConfig m = detail::config_for(cfg, cfg.method);
  const Circuit c = build_multiplier(cfg.bits, m);
  const bool to_stdout = cfg.out == "-" || cfg.out.empty();
  detail::with_output(cfg.out, out, [&](std::ostream& os) { write_qasm(os, c); });
  (to_stdout ? err : out) << summary_line(cfg.method, cfg.bits, count_resources(c))
                          << "\n";
  return kExitOk;
}

/// Same netlist as build, in a chosen format: qasm, or csv with one row per
/// gate and its ASAP layer.
inline int cmd_export(const CommandConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  const MultiplierConfig m = detail::config_for(cfg, cfg.method);
  const Circuit c = build_multiplier(cfg.bits, m);
  detail::with_output(cfg.out, out, [&](std::ostream& os) {
    if (cfg.format == Format::Qasm) {
      write_qasm(os, c);
      return;
    }
    const auto layers = asap_layers(c);
    os << "index,kind,control0,control1,target,layer\n";
    for (std::size_t k = 0; k < c.gates().size(); ++k) {
      const Gate& g = c.gates()[k];
      os << k << ',' << to_string(g.kind) << ',';
      if (g.arity() >= 2) os << g.control0;
      os << ',';
      if (g.arity() == 3) os << g.control1;
      os << ',' << g.target << ',' << layers[k] << '\n';
    }
  });
  if (cfg.out != "-" && !cfg.out.empty()) {
    out << summary_line(cfg.method, cfg.bits, count_resources(c)) << "\n";
  } else {
    err << summary_line(cfg.method, cfg.bits, count_resources(c)) << "\n";
  }
  return kExitOk;
}

inline int cmd_simulate(const CommandConfig& cfg, std::ostream& out,
                        std::ostream&) {
  const MultiplierConfig m = detail::config_for(cfg, cfg.method);
  const Circuit c = build_multiplier(cfg.bits, m);
  const TestVectorPlan plan = cfg.samples == 0
                                  ? TestVectorPlan::exhaustive()
                                  : TestVectorPlan::random(cfg.samples, cfg.seed);
  const VerifyReport r = verify_multiplier(c, cfg.bits, plan);
  out << r.text();
  return r.passed() ? kExitOk : kExitVerifyFailed;
}

/// Published formula values, the mirrored construction and, for powers of
/// six, the Toom recurrences.
inline int cmd_estimate(const CommandConfig& cfg, std::ostream& out,
                        std::ostream&) {
  const std::uint32_t n = cfg.bits;
  const Method method = parse_method(cfg.method);
  const CostMethod cm = method == Method::Toom25 ? CostMethod::Toom25
                        : method == Method::Karatsuba ? CostMethod::Karatsuba
                                                      : CostMethod::Naive;
  out << summary_line(std::string(to_string(cm)) + " model", n, paper_cost(cm, n))
      << "\n";
  const MultiplierConfig m = detail::config_for(cfg, cfg.method);
  out << summary_line(cfg.method + " mirror", n, mirror_counts(n, m))
      << " (depth not evaluated)\n";
  if (method == Method::Toom25 && toomcirc::detail::is_power_of(n, 6)) {
    const double bound_t = toom_toffoli_bound(n), bound_c = toom_cnot_bound(n);
    const auto tr = paper_toffoli_recurrence(n), cr = paper_cnot_recurrence(n);
    const auto mc = mirror_counts(n, m);
    out << std::fixed << std::setprecision(3);
    out << "recurrence toffoli=" << tr << " bound=" << bound_t
        << " cnot=" << cr << " bound=" << bound_c << "\n";
    out << "mirror/bound toffoli=" << static_cast<double>(mc.toffoli_count) / bound_t
        << " cnot=" << static_cast<double>(mc.cnot_count) / bound_c << "\n";
    const NodeCensus census = toom_node_census(n, m);
    out << "top node adder toffoli=" << census.own_toffoli
        << " recurrence=" << paper_node_adder_toffoli(n)
        << " subproducts=" << census.subproducts << "\n";
    out << "top node blocks:";
    for (const auto& [k, v] : census.blocks) out << ' ' << k << 'x' << v;
    out << "\n";
    out << std::defaultfloat;
  }
  return kExitOk;
}

inline const char* kCompareHeader =
    "n,method,qubits,toffoli,toffoli_depth,cnot,t_count,t_depth,source";

struct CompareRow {
  std::uint32_t n = 0;
  std::string method;
  ResourceReport report;
  std::string source;
};

inline std::vector<CompareRow> compare_rows(const CommandConfig& cfg) {
  std::vector<CompareRow> rows;
  for (const std::uint32_t n : cfg.bit_range) {
    for (const auto& name : cfg.methods) {
      const CostMethod cm = parse_cost_method(name);
      rows.push_back({n, name, paper_cost(cm, n), "model"});
      if (cm == CostMethod::ConstMult || !cfg.measured || n > cfg.measured_cap) {
        continue;
      }
      const Circuit c = build_multiplier(n, detail::config_for(cfg, name));
      rows.push_back({n, name, count_resources(c), "measured"});
    }
  }
  return rows;
}

inline void write_compare(std::ostream& os, const std::vector<CompareRow>& rows,
                          Format format) {
  if (format == Format::Table) {
    os << std::left << std::setw(7) << "n" << std::setw(12) << "method"
       << std::setw(10) << "source" << std::right << std::setw(12) << "qubits"
       << std::setw(14) << "toffoli" << std::setw(14) << "toffoli_depth"
       << std::setw(14) << "cnot" << std::setw(14) << "t_count"
       << std::setw(14) << "t_depth" << "\n";
    for (const auto& r : rows) {
      const auto& x = r.report;
      os << std::left << std::setw(7) << r.n << std::setw(12) << r.method
         << std::setw(10) << r.source << std::right << std::setw(12)
         << x.qubit_count << std::setw(14) << x.toffoli_count << std::setw(14)
         << x.toffoli_depth << std::setw(14) << x.cnot_count << std::setw(14)
         << x.t_count << std::setw(14) << x.t_depth << "\n";
    }
    return;
  }
  os << kCompareHeader << "\n";
  for (const auto& r : rows) {
    const auto& x = r.report;
    os << r.n << ',' << r.method << ',' << x.qubit_count << ',' << x.toffoli_count
       << ',' << x.toffoli_depth << ',' << x.cnot_count << ',' << x.t_count << ','
       << x.t_depth << ',' << r.source << "\n";
  }
}

/// First n among `rows` where toom25's model Toffoli count drops below
/// naive's, or 0.
inline std::uint32_t model_crossover(const std::vector<CompareRow>& rows) {
  std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> seen;
  std::map<std::uint32_t, int> have;
  for (const auto& r : rows) {
    if (r.source != "model") continue;
    if (r.method == "naive") {
      seen[r.n].first = r.report.toffoli_count;
      have[r.n] |= 1;
    } else if (r.method == "toom25") {
      seen[r.n].second = r.report.toffoli_count;
      have[r.n] |= 2;
    }
  }
  for (const auto& [n, v] : seen) {
    if (have[n] == 3 && v.second < v.first) return n;
  }
  return 0;
}

inline int cmd_compare(const CommandConfig& cfg, std::ostream& out,
                       std::ostream& err) {
  const auto rows = compare_rows(cfg);
  detail::with_output(cfg.out, out,
                      [&](std::ostream& os) { write_compare(os, rows, cfg.format); });
  if (const auto x = model_crossover(rows); x != 0) {
    err << "toom25 model Toffoli count first below naive at n=" << x
        << " (published remark: below 300 bits)\n";
  }
  return kExitOk;
}

struct PebbleLine {
  std::uint64_t n = 0;
  unsigned height = 0, cut = 0;
  std::size_t length = 0;
  std::uint64_t peak_idealized = 0, peak_measured = 0, depth_units = 0;
};

inline PebbleLine pebble_line(std::uint32_t n, int cut,
                              const MultiplierConfig& m,
                              std::string* schedule_text = nullptr) {
  const RecursionTree t(n);
  const unsigned k = cut < 0 ? optimal_cut_level(t.height())
                             : static_cast<unsigned>(cut);
  if (k > t.height()) {
    throw UsageError("cut level " + std::to_string(k) + " exceeds N=" +
                     std::to_string(t.height()));
  }
  const PebbleSchedule s = make_schedule(t, k);
  const PebbleCosts measured = PebbleCosts::measured(t, m);
  const ReplayResult rm = replay(t, s.actions, measured);
  if (schedule_text != nullptr) *schedule_text = s.text();
  return {n, t.height(), k, s.actions.size(), s.peak_space, rm.peak,
          s.total_depth_units};
}

inline int cmd_pebble(const CommandConfig& cfg, std::ostream& out,
                      std::ostream&) {
  auto print = [&](const PebbleLine& p) {
    out << "n=" << p.n << " N=" << p.height << " k=" << p.cut
        << " schedule_length=" << p.length
        << " peak_space_idealized=" << p.peak_idealized
        << " peak_space_measured=" << p.peak_measured
        << " depth_units=" << p.depth_units << "\n";
  };
  if (!cfg.fit) {
    std::string text;
    const PebbleLine p = pebble_line(cfg.bits, cfg.cut, cfg.multiplier,
                                     cfg.schedule_out.empty() ? nullptr : &text);
    print(p);
    if (!cfg.schedule_out.empty()) {
      detail::with_output(cfg.schedule_out, out,
                          [&](std::ostream& os) { os << text; });
    }
    return kExitOk;
  }
  std::vector<std::pair<double, double>> ideal, meas, depth, unopt;
  for (const std::uint32_t n : cfg.bit_range) {
    const PebbleLine p = pebble_line(n, cfg.cut, cfg.multiplier);
    print(p);
    if (p.peak_idealized > 0) ideal.emplace_back(n, p.peak_idealized);
    if (p.peak_measured > 0) meas.emplace_back(n, p.peak_measured);
    if (p.depth_units > 0) depth.emplace_back(n, p.depth_units);
    if (const auto u = space_unoptimized(n); u > 0) unopt.emplace_back(n, u);
  }
  auto slope = [&](const char* label, const auto& s, double target) {
    out << label << "_slope=";
    if (s.size() < 3) {
      out << "n/a";
    } else {
      out << std::fixed << std::setprecision(3) << fit_exponent(s)
          << std::defaultfloat;
    }
    out << " (target " << std::fixed << std::setprecision(3) << target
        << std::defaultfloat << ")\n";
  };
  slope("space_idealized", ideal, 1.404);
  slope("space_measured", meas, 1.404);
  slope("space_unoptimized", unopt, exponents::toom_tc());
  slope("depth_units", depth, 1.143);
  return kExitOk;
}

}  // namespace toomcirc::cli
