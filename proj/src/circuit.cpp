// Copyright 2026 The atomplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atomplex/circuit.hpp"

#include "atomplex/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace atomplex {

GateId Circuit::add_gate(QubitId q0, QubitId q1, std::string label) {
  if (q0 == q1) {
    throw std::invalid_argument("gate operands must be distinct");
  }
  if (q0 >= num_qubits_ || q1 >= num_qubits_) {
    throw std::invalid_argument("gate operand out of range");
  }
  const auto id = static_cast<GateId>(gates_.size());
  gates_.push_back(Gate{id, {q0, q1}, std::move(label)});
  return id;
}

std::vector<std::size_t> LayeredCircuit::width_profile() const {
  std::vector<std::size_t> widths;
  widths.reserve(layers.size());
  for (const auto& layer : layers) {
    widths.push_back(layer.size());
  }
  return widths;
}

std::size_t LayeredCircuit::max_width() const {
  std::size_t w = 0;
  for (const auto& layer : layers) {
    w = std::max(w, layer.size());
  }
  return w;
}

LayeredCircuit layer_dag(const Circuit& c) {
  LayeredCircuit lc;
  lc.circuit = c;
  lc.layer_of.resize(c.num_gates());
  // next free layer per qubit
  std::vector<std::size_t> frontier(c.num_qubits(), 0);
  for (const Gate& g : c.gates()) {
    const std::size_t layer =
        std::max(frontier[g.qubits[0]], frontier[g.qubits[1]]);
    if (layer == lc.layers.size()) {
      lc.layers.emplace_back();
    }
    lc.layers[layer].push_back(g.id);
    lc.layer_of[g.id] = layer;
    frontier[g.qubits[0]] = frontier[g.qubits[1]] = layer + 1;
  }
  return lc;
}

CircuitShape shape(const LayeredCircuit& lc) {
  return CircuitShape{lc.length(), lc.width_profile()};
}

namespace {

//===----------------------------------------------------------------------===//
// QASM subset
//===----------------------------------------------------------------------===//

enum class Tok { Ident, Int, Real, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          t.text.push_back(advance());
        }
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        t.kind = Tok::Int;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
          if (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E') {
            t.kind = Tok::Real;
          }
          t.text.push_back(advance());
        }
      } else if (ch == '"') {
        t.kind = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"') {
          t.text.push_back(advance());
        }
        if (pos_ >= src_.size()) {
          throw ParseError("unterminated string", t.line, t.column);
        }
        advance();
      } else {
        t.kind = Tok::Symbol;
        t.text.push_back(advance());
        if ((ch == '-' && peek() == '>') || (ch == '=' && peek() == '=')) {
          t.text.push_back(advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  char advance() {
    const char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Register {
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// A gate argument: a single qubit or a whole register (broadcast).
struct Operand {
  std::vector<QubitId> qubits;
  bool whole_register = false;
};

class QasmParser {
public:
  QasmParser(std::string_view text, std::vector<std::string>* warnings)
      : tokens_(Lexer(text).run()), warnings_(warnings) {}

  Circuit run() {
    while (cur().kind != Tok::End) {
      statement();
    }
    Circuit c("", num_qubits_);
    for (const auto& [q0, q1, label] : pending_) {
      c.add_gate(q0, q1, label);
    }
    return c;
  }

private:
  const Token& cur() const { return tokens_[pos_]; }

  const Token& take() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::End) {
      ++pos_;
    }
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  void expect_symbol(std::string_view sym) {
    const Token& t = take();
    if (t.kind != Tok::Symbol || t.text != sym) {
      fail("expected '" + std::string(sym) + "'", t);
    }
  }

  std::size_t expect_int() {
    const Token& t = take();
    if (t.kind != Tok::Int) {
      fail("expected integer", t);
    }
    return std::stoul(t.text);
  }

  std::string expect_ident() {
    const Token& t = take();
    if (t.kind != Tok::Ident) {
      fail("expected identifier", t);
    }
    return t.text;
  }

  void warn_once(const std::string& what) {
    if (warnings_ != nullptr && warned_.insert(what).second) {
      warnings_->push_back("ignored statement: " + what);
    }
  }

  /// Skips to the terminating ';' of the current statement.
  void skip_statement(const Token& start) {
    while (!(cur().kind == Tok::Symbol && cur().text == ";")) {
      if (cur().kind == Tok::End) {
        fail("missing ';'", start);
      }
      take();
    }
    take();
  }

  void skip_block(const Token& start) {
    while (!(cur().kind == Tok::Symbol && cur().text == "{")) {
      if (cur().kind == Tok::End) {
        fail("missing '{'", start);
      }
      take();
    }
    int depth = 0;
    do {
      const Token& t = take();
      if (t.kind == Tok::End) {
        fail("unterminated block", start);
      }
      if (t.kind == Tok::Symbol && t.text == "{") {
        ++depth;
      } else if (t.kind == Tok::Symbol && t.text == "}") {
        --depth;
      }
    } while (depth > 0);
  }

  void statement() {
    const Token start = cur();
    if (start.kind == Tok::Symbol && start.text == ";") {
      take();
      return;
    }
    if (start.kind != Tok::Ident) {
      fail("unexpected '" + start.text + "'", start);
    }
    const std::string& kw = start.text;
    if (kw == "OPENQASM" || kw == "include" || kw == "creg") {
      take();
      skip_statement(start);
    } else if (kw == "qreg") {
      take();
      const std::string name = expect_ident();
      expect_symbol("[");
      const std::size_t n = expect_int();
      expect_symbol("]");
      expect_symbol(";");
      if (registers_.contains(name)) {
        fail("register '" + name + "' redeclared", start);
      }
      registers_[name] = Register{num_qubits_, n};
      num_qubits_ += n;
    } else if (kw == "gate") {
      take();
      warn_once("gate definition");
      skip_block(start);
    } else if (kw == "measure" || kw == "reset" || kw == "barrier" ||
               kw == "opaque" || kw == "if") {
      take();
      warn_once(kw);
      skip_statement(start);
    } else {
      application();
    }
  }

  Operand operand() {
    const Token& at = cur();
    const std::string name = expect_ident();
    const auto it = registers_.find(name);
    if (it == registers_.end()) {
      fail("undeclared register '" + name + "'", at);
    }
    const Register reg = it->second;
    Operand op;
    if (cur().kind == Tok::Symbol && cur().text == "[") {
      take();
      const Token& idx_tok = cur();
      const std::size_t idx = expect_int();
      expect_symbol("]");
      if (idx >= reg.size) {
        fail("qubit " + name + "[" + std::to_string(idx) + "] out of range",
             idx_tok);
      }
      op.qubits.push_back(static_cast<QubitId>(reg.offset + idx));
    } else {
      op.whole_register = true;
      for (std::size_t i = 0; i < reg.size; ++i) {
        op.qubits.push_back(static_cast<QubitId>(reg.offset + i));
      }
    }
    return op;
  }

  void application() {
    const Token start = take();
    std::string name = start.text;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (cur().kind == Tok::Symbol && cur().text == "(") {
      int depth = 0;
      do {
        const Token& t = take();
        if (t.kind == Tok::End) {
          fail("unterminated parameter list", start);
        }
        if (t.kind == Tok::Symbol && t.text == "(") {
          ++depth;
        } else if (t.kind == Tok::Symbol && t.text == ")") {
          --depth;
        }
      } while (depth > 0);
    }
    std::vector<Operand> ops;
    ops.push_back(operand());
    while (cur().kind == Tok::Symbol && cur().text == ",") {
      take();
      ops.push_back(operand());
    }
    expect_symbol(";");

    if (ops.size() > 2) {
      fail("gate '" + start.text + "' acts on " + std::to_string(ops.size()) +
               " qubits; only two-qubit gates are supported",
           start);
    }
    if (ops.size() == 1) {
      return;
    }
    if (name != "cx" && name != "cz") {
      warn_once("two-qubit gate '" + name + "'");
      return;
    }
    const Operand& a = ops[0];
    const Operand& b = ops[1];
    const std::size_t width = std::max(a.qubits.size(), b.qubits.size());
    if (a.whole_register && b.whole_register &&
        a.qubits.size() != b.qubits.size()) {
      fail("register size mismatch in broadcast", start);
    }
    for (std::size_t i = 0; i < width; ++i) {
      const QubitId q0 = a.qubits[a.whole_register ? i : 0];
      const QubitId q1 = b.qubits[b.whole_register ? i : 0];
      if (q0 == q1) {
        fail("gate '" + name + "' repeats a qubit", start);
      }
      pending_.push_back({q0, q1, name});
    }
  }

  struct PendingGate {
    QubitId q0;
    QubitId q1;
    std::string label;
  };

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string>* warnings_;
  std::set<std::string> warned_;
  std::map<std::string, Register> registers_;
  std::size_t num_qubits_ = 0;
  std::vector<PendingGate> pending_;
};

//===----------------------------------------------------------------------===//
// JSON gate list
//===----------------------------------------------------------------------===//

Circuit parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset only; report it as a column on line 1
    throw ParseError(e.what(), 1, e.byte);
  }

  const nlohmann::json* gates = nullptr;
  std::string name;
  std::optional<std::size_t> declared;
  if (doc.is_array()) {
    gates = &doc;
  } else if (doc.is_object()) {
    if (!doc.contains("gates") || !doc["gates"].is_array()) {
      throw ParseError("missing \"gates\" array", 1, 1);
    }
    gates = &doc["gates"];
    name = doc.value("name", "");
    if (doc.contains("num_qubits")) {
      if (!doc["num_qubits"].is_number_unsigned()) {
        throw ParseError("\"num_qubits\" must be a non-negative integer", 1, 1);
      }
      declared = doc["num_qubits"].get<std::size_t>();
    }
  } else {
    throw ParseError("expected an object or an array of gates", 1, 1);
  }

  std::vector<std::array<std::size_t, 2>> pairs;
  std::vector<std::string> labels;
  std::size_t max_q = 0;
  for (std::size_t i = 0; i < gates->size(); ++i) {
    const auto& g = (*gates)[i];
    if (!g.is_array() || g.size() < 2) {
      throw ParseError("gate " + std::to_string(i) + " is not a qubit pair", 1, 1);
    }
    if (g.size() > 2 && !(g.size() == 3 && g[2].is_string())) {
      throw ParseError("gate " + std::to_string(i) +
                           " acts on more than two qubits; only two-qubit "
                           "gates are supported",
                       1, 1);
    }
    if (!g[0].is_number_unsigned() || !g[1].is_number_unsigned()) {
      throw ParseError("gate " + std::to_string(i) + " has a non-integer operand", 1, 1);
    }
    const auto q0 = g[0].get<std::size_t>();
    const auto q1 = g[1].get<std::size_t>();
    if (q0 == q1) {
      throw ParseError("gate " + std::to_string(i) + " repeats a qubit", 1, 1);
    }
    max_q = std::max({max_q, q0 + 1, q1 + 1});
    pairs.push_back({q0, q1});
    labels.push_back(g.size() == 3 ? g[2].get<std::string>() : "cz");
  }
  const std::size_t n = declared.value_or(max_q);
  if (max_q > n) {
    throw ParseError("gate references qubit " + std::to_string(max_q - 1) +
                         " beyond num_qubits " + std::to_string(n),
                     1, 1);
  }
  Circuit c(name, n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    c.add_gate(static_cast<QubitId>(pairs[i][0]), static_cast<QubitId>(pairs[i][1]),
               labels[i]);
  }
  return c;
}

} // namespace

Circuit parse_circuit(std::string_view text, CircuitFormat format,
                      std::vector<std::string>* warnings) {
  switch (format) {
  case CircuitFormat::QasmSubset:
    return QasmParser(text, warnings).run();
  case CircuitFormat::JsonGateList:
    return parse_json(text);
  }
  throw std::invalid_argument("unknown circuit format");
}

Circuit load_circuit(const std::filesystem::path& path,
                     std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const auto ext = path.extension().string();
  const CircuitFormat fmt =
      ext == ".json" ? CircuitFormat::JsonGateList : CircuitFormat::QasmSubset;
  Circuit c = parse_circuit(buf.str(), fmt, warnings);
  if (c.name().empty()) {
    c.set_name(path.stem().string());
  }
  return c;
}

} // namespace atomplex
