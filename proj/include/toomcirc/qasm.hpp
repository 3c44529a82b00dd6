#pragma once

// QASM-2.0-style netlist text. Gates address one flat register `q`; the
// register table and zero checks ride along as comments so a file reparses
// into an equivalent Circuit.

#include <cstdint>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netlist.hpp"

namespace toomcirc {

class QasmError : public std::runtime_error {
 public:
  QasmError(std::size_t line, const std::string& what)
      : std::runtime_error("qasm line " + std::to_string(line) + ": " + what) {}
};

inline void write_qasm(std::ostream& os, const Circuit& c) {
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  for (const auto& r : c.registers()) {
    os << "// register " << r.name << ' ' << to_string(r.role) << ' '
       << to_string(r.interpretation) << ' ';
    for (std::size_t k = 0; k < r.wires.size(); ++k) {
      os << (k ? "," : "") << r.wires[k];
    }
    if (r.wires.empty()) os << '-';
    os << '\n';
  }
  for (const auto& z : c.zero_checks()) {
    os << "// zero-check " << z.position << ' ' << z.wire << ' ' << z.site << '\n';
  }
  os << "qreg q[" << c.width() << "];\n";
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Not: os << "x q[" << g.target << "];\n"; break;
      case GateKind::Cnot:
        os << "cx q[" << g.control0 << "],q[" << g.target << "];\n";
        break;
      case GateKind::Toffoli:
        os << "ccx q[" << g.control0 << "],q[" << g.control1 << "],q["
           << g.target << "];\n";
        break;
    }
  }
}

inline std::string to_qasm(const Circuit& c) {
  std::ostringstream os;
  write_qasm(os, c);
  return os.str();
}

inline Circuit read_qasm(std::istream& is) {
  static const std::regex kQreg(R"(qreg\s+q\[(\d+)\];)");
  static const std::regex kGate(
      R"((x|cx|ccx)\s+q\[(\d+)\](?:\s*,\s*q\[(\d+)\])?(?:\s*,\s*q\[(\d+)\])?\s*;)");
  static const std::regex kRegister(R"(//\s*register\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+))");
  static const std::regex kCheck(R"(//\s*zero-check\s+(\d+)\s+(\d+)\s+(.+))");

  std::vector<Gate> gates;
  std::vector<Register> regs;
  std::vector<ZeroCheck> checks;
  std::size_t width = 0;
  bool have_header = false, have_qreg = false;
  std::string line;
  std::size_t lineno = 0;
  auto num = [&](const std::string& s) {
    return static_cast<Wire>(std::stoul(s));
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string t = line.substr(b, e - b + 1);
    std::smatch m;
    if (t == "OPENQASM 2.0;") {
      have_header = true;
    } else if (t.rfind("include", 0) == 0) {
      continue;
    } else if (std::regex_match(t, m, kRegister)) {
      Register r;
      r.name = m[1];
      r.role = parse_role(m[2]);
      r.interpretation = parse_interpretation(m[3]);
      if (m[4] != "-") {
        std::stringstream ss(m[4]);
        std::string tok;
        while (std::getline(ss, tok, ',')) r.wires.push_back(num(tok));
      }
      regs.push_back(std::move(r));
    } else if (std::regex_match(t, m, kCheck)) {
      checks.push_back({std::stoull(m[1]), num(m[2]), m[3]});
    } else if (t.rfind("//", 0) == 0) {
      continue;
    } else if (std::regex_match(t, m, kQreg)) {
      if (have_qreg) throw QasmError(lineno, "duplicate qreg");
      width = std::stoull(m[1]);
      have_qreg = true;
    } else if (std::regex_match(t, m, kGate)) {
      if (!have_qreg) throw QasmError(lineno, "gate before qreg");
      const std::string op = m[1];
      const std::size_t args = 1 + (m[3].matched ? 1 : 0) + (m[4].matched ? 1 : 0);
      try {
        if (op == "x" && args == 1) {
          gates.push_back(Gate::x(num(m[2])));
        } else if (op == "cx" && args == 2) {
          gates.push_back(Gate::cx(num(m[2]), num(m[3])));
        } else if (op == "ccx" && args == 3) {
          gates.push_back(Gate::ccx(num(m[2]), num(m[3]), num(m[4])));
        } else {
          throw QasmError(lineno, "wrong operand count for " + op);
        }
      } catch (const std::invalid_argument& err) {
        throw QasmError(lineno, err.what());
      }
    } else {
      throw QasmError(lineno, "unrecognized statement: " + t);
    }
  }
  if (!have_header) throw QasmError(lineno, "missing OPENQASM 2.0 header");
  if (!have_qreg) throw QasmError(lineno, "missing qreg declaration");
  return Circuit(width, std::move(gates), std::move(regs), std::move(checks));
}

inline Circuit parse_qasm(const std::string& text) {
  std::istringstream is(text);
  return read_qasm(is);
}

}  // namespace toomcirc
