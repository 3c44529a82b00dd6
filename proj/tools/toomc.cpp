// toomc: build, simulate, estimate, compare, pebble and export multiplier
// circuits.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "toomcirc/cli.hpp"

namespace {

using toomcirc::cli::CommandConfig;

struct Raw {
  std::string range;
  std::string methods = "naive,karatsuba,toom25";
  std::string format = "csv";
  std::string export_format = "qasm";
  std::string points = "0,1,-1,inf";
  std::uint32_t threshold = 5;
  bool no_uncompute = false;
  bool exhaustive = false;
  bool no_measured = false;
};

void add_multiplier_flags(CLI::App* sub, CommandConfig& cfg, Raw& raw) {
  sub->add_option("--method,-m", cfg.method, "toom25 | karatsuba | naive")
      ->check(CLI::IsMember({"toom25", "karatsuba", "naive"}));
  sub->add_option("--threshold", raw.threshold,
                  "operands this narrow use the schoolbook base case")
      ->check(CLI::PositiveNumber);
  sub->add_option("--points", raw.points, "Toom evaluation points")
      ->check(CLI::IsMember({"0,1,-1,inf", "0,1,2,inf"}));
  sub->add_flag("--no-uncompute", raw.no_uncompute,
                "leave intermediate products as garbage");
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = toomcirc::cli;
  CLI::App app{"Reversible Toom-2.5 / Karatsuba / schoolbook multiplier circuits"};
  app.require_subcommand(1);
  CommandConfig cfg;
  Raw raw;
  try {
    cfg.seed = cli::default_seed();
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }

  auto* build = app.add_subcommand("build", "write a multiplier netlist (QASM)");
  add_multiplier_flags(build, cfg, raw);
  build->add_option("--bits,-n", cfg.bits, "operand width")->required()
      ->check(CLI::PositiveNumber);
  build->add_option("--out,-o", cfg.out, "output path, - for stdout");

  auto* exp = app.add_subcommand("export", "write a netlist as qasm or gate csv");
  add_multiplier_flags(exp, cfg, raw);
  exp->add_option("--bits,-n", cfg.bits, "operand width")->required()
      ->check(CLI::PositiveNumber);
  exp->add_option("--out,-o", cfg.out, "output path, - for stdout");
  exp->add_option("--format,-f", raw.export_format, "qasm | csv")
      ->check(CLI::IsMember({"qasm", "csv"}));

  auto* sim = app.add_subcommand("simulate", "verify a multiplier on test vectors");
  add_multiplier_flags(sim, cfg, raw);
  sim->add_option("--bits,-n", cfg.bits, "operand width")->required()
      ->check(CLI::PositiveNumber);
  auto* ex = sim->add_flag("--exhaustive", raw.exhaustive, "all operand pairs");
  auto* rnd = sim->add_option("--random", cfg.samples, "number of random pairs")
                  ->check(CLI::PositiveNumber);
  ex->excludes(rnd);
  sim->add_option("--seed", cfg.seed, std::string("RNG seed (default 42, or $") +
                                          cli::kSeedEnv + ")");

  auto* est = app.add_subcommand("estimate", "formula, mirror and recurrence costs");
  add_multiplier_flags(est, cfg, raw);
  est->add_option("--bits,-n", cfg.bits, "operand width")->required()
      ->check(CLI::PositiveNumber);

  auto* cmp = app.add_subcommand("compare", "CSV of model and measured resources");
  add_multiplier_flags(cmp, cfg, raw);
  cmp->add_option("--methods", raw.methods,
                  "comma list of naive, karatsuba, toom25, const_mult");
  cmp->add_option("--bits,-n", raw.range,
                  "start:stop:step, start:stop:*factor, or a,b,c")
      ->required();
  cmp->add_option("--format,-f", raw.format, "csv | table")
      ->check(CLI::IsMember({"csv", "table"}));
  cmp->add_option("--measured-cap", cfg.measured_cap,
                  "largest n that gets a measured row");
  cmp->add_flag("--no-measured", raw.no_measured, "model rows only");
  cmp->add_option("--out,-o", cfg.out, "output path, - for stdout");

  auto* peb = app.add_subcommand("pebble", "pebbling schedule of the recursion tree");
  add_multiplier_flags(peb, cfg, raw);
  peb->add_option("--bits,-n", raw.range, "operand width, or a grid with --fit")
      ->required();
  peb->add_option("--cut,-k", cfg.cut, "cut level (default: optimal)")
      ->check(CLI::NonNegativeNumber);
  peb->add_flag("--fit", cfg.fit, "fit space and depth slopes over the grid");
  peb->add_option("--schedule-out", cfg.schedule_out, "write the action listing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    cfg.multiplier.base_threshold = raw.threshold;
    cfg.multiplier.uncompute = !raw.no_uncompute;
    cfg.multiplier.eval_points = raw.points == "0,1,2,inf"
                                     ? toomcirc::EvalPoints::ZeroOneTwoInf
                                     : toomcirc::EvalPoints::ZeroOneMinusOneInf;
    cfg.format = cli::parse_format(raw.format);
    cfg.measured = !raw.no_measured;
    if (!raw.range.empty()) {
      cfg.bit_range = cli::parse_bit_range(raw.range);
      cfg.bits = cfg.bit_range.front();
      if (peb->parsed() && !cfg.fit && cfg.bit_range.size() != 1) {
        throw cli::UsageError("pebble takes one width unless --fit is given");
      }
    }
    if (cmp->parsed()) {
      cfg.methods = split(raw.methods);
      for (const auto& m : cfg.methods) toomcirc::parse_cost_method(m);
    }
    if (exp->parsed()) cfg.format = cli::parse_format(raw.export_format);
    if (sim->parsed()) {
      cfg.subcommand = "simulate";
      if (!raw.exhaustive && cfg.samples == 0) {
        throw cli::UsageError("simulate needs --exhaustive or --random N");
      }
    }
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }

  try {
    if (build->parsed()) return cli::cmd_build(cfg, std::cout, std::cerr);
    if (exp->parsed()) return cli::cmd_export(cfg, std::cout, std::cerr);
    if (sim->parsed()) return cli::cmd_simulate(cfg, std::cout, std::cerr);
    if (est->parsed()) return cli::cmd_estimate(cfg, std::cout, std::cerr);
    if (cmp->parsed()) return cli::cmd_compare(cfg, std::cout, std::cerr);
    if (peb->parsed()) return cli::cmd_pebble(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
