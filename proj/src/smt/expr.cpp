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

#include "atomplex/smt/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace atomplex::smt {

Expr Expr::make(Op op, bool is_bool, std::vector<Expr> args, std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->is_bool = is_bool;
  n->value = value;
  for (const Expr& a : args) {
    n->max_var = std::max(n->max_var, a.max_var());
  }
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr Expr::constant(std::int64_t v) { return make(Op::IntConst, false, {}, v); }

Expr Expr::boolean(bool b) { return make(Op::BoolConst, true, {}, b ? 1 : 0); }

Expr Expr::variable(VarId id) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = id;
  n->max_var = id;
  return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  std::vector<Expr> terms;
  std::int64_t c = 0;
  for (const Expr* e : {&a, &b}) {
    if (e->op() == Op::IntConst) {
      c += e->value();
    } else if (e->op() == Op::Add) {
      for (const Expr& t : e->args()) {
        if (t.op() == Op::IntConst) {
          c += t.value();
        } else {
          terms.push_back(t);
        }
      }
    } else {
      terms.push_back(*e);
    }
  }
  if (c != 0) {
    terms.push_back(Expr::constant(c));
  }
  if (terms.empty()) {
    return Expr::constant(0);
  }
  if (terms.size() == 1) {
    return terms.front();
  }
  return Expr::make(Op::Add, false, std::move(terms));
}

Expr operator*(std::int64_t k, const Expr& a) {
  if (a.op() == Op::IntConst) {
    return Expr::constant(k * a.value());
  }
  if (k == 0) {
    return Expr::constant(0);
  }
  if (k == 1) {
    return a;
  }
  if (a.op() == Op::Mul) {
    return (k * a.value()) * a.args().front();
  }
  return Expr::make(Op::Mul, false, {a}, k);
}

Expr ite(const Expr& c, const Expr& a, const Expr& b) {
  if (c.is_true()) {
    return a;
  }
  if (c.is_false()) {
    return b;
  }
  if (a.id() == b.id()) {
    return a;
  }
  return Expr::make(Op::Ite, a.is_bool(), {c, a, b});
}

Expr cmp(Op op, const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) {
    const auto x = a.value();
    const auto y = b.value();
    switch (op) {
    case Op::Eq:
      return Expr::boolean(x == y);
    case Op::Ne:
      return Expr::boolean(x != y);
    case Op::Lt:
      return Expr::boolean(x < y);
    case Op::Le:
      return Expr::boolean(x <= y);
    default:
      break;
    }
    throw std::invalid_argument("not a comparison");
  }
  if (a.id() == b.id()) {
    return Expr::boolean(op == Op::Eq || op == Op::Le);
  }
  return Expr::make(op, true, {a, b});
}

Expr all_of(std::vector<Expr> terms) {
  std::vector<Expr> kept;
  for (Expr& t : terms) {
    if (t.is_true()) {
      continue;
    }
    if (t.is_false()) {
      return Expr::boolean(false);
    }
    if (t.op() == Op::And) {
      kept.insert(kept.end(), t.args().begin(), t.args().end());
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (kept.empty()) {
    return Expr::boolean(true);
  }
  if (kept.size() == 1) {
    return kept.front();
  }
  return Expr::make(Op::And, true, std::move(kept));
}

Expr any_of(std::vector<Expr> terms) {
  std::vector<Expr> kept;
  for (Expr& t : terms) {
    if (t.is_false()) {
      continue;
    }
    if (t.is_true()) {
      return Expr::boolean(true);
    }
    if (t.op() == Op::Or) {
      kept.insert(kept.end(), t.args().begin(), t.args().end());
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (kept.empty()) {
    return Expr::boolean(false);
  }
  if (kept.size() == 1) {
    return kept.front();
  }
  return Expr::make(Op::Or, true, std::move(kept));
}

Expr operator!(const Expr& a) {
  if (a.op() == Op::BoolConst) {
    return Expr::boolean(a.value() == 0);
  }
  if (a.op() == Op::Not) {
    return a.args().front();
  }
  return Expr::make(Op::Not, true, {a});
}

Expr implies(const Expr& a, const Expr& b) {
  if (a.is_true()) {
    return b;
  }
  if (a.is_false() || b.is_true()) {
    return Expr::boolean(true);
  }
  if (b.is_false()) {
    return !a;
  }
  return Expr::make(Op::Implies, true, {a, b});
}

Expr sum(const std::vector<Expr>& terms) {
  Expr total = Expr::constant(0);
  for (const Expr& t : terms) {
    total = total + (t.is_bool() ? as_int(t) : t);
  }
  return total;
}

std::int64_t evaluate(const Expr& e, std::span<const std::int64_t> values) {
  const auto& args = e.args();
  switch (e.op()) {
  case Op::IntConst:
  case Op::BoolConst:
    return e.value();
  case Op::Var:
    return values[e.var()];
  case Op::Add: {
    std::int64_t s = 0;
    for (const Expr& a : args) {
      s += evaluate(a, values);
    }
    return s;
  }
  case Op::Mul:
    return e.value() * evaluate(args[0], values);
  case Op::Ite:
    return evaluate(args[0], values) != 0 ? evaluate(args[1], values)
                                          : evaluate(args[2], values);
  case Op::Eq:
    return evaluate(args[0], values) == evaluate(args[1], values);
  case Op::Ne:
    return evaluate(args[0], values) != evaluate(args[1], values);
  case Op::Lt:
    return evaluate(args[0], values) < evaluate(args[1], values);
  case Op::Le:
    return evaluate(args[0], values) <= evaluate(args[1], values);
  case Op::And:
    for (const Expr& a : args) {
      if (evaluate(a, values) == 0) {
        return 0;
      }
    }
    return 1;
  case Op::Or:
    for (const Expr& a : args) {
      if (evaluate(a, values) != 0) {
        return 1;
      }
    }
    return 0;
  case Op::Not:
    return evaluate(args[0], values) == 0;
  case Op::Implies:
    return evaluate(args[0], values) == 0 || evaluate(args[1], values) != 0;
  }
  return 0;
}

std::string Expr::to_string() const {
  const auto join = [this](const char* sep) {
    std::string s = "(";
    for (std::size_t i = 0; i < args().size(); ++i) {
      if (i > 0) {
        s += sep;
      }
      s += args()[i].to_string();
    }
    return s + ")";
  };
  switch (op()) {
  case Op::IntConst:
    return std::to_string(value());
  case Op::BoolConst:
    return value() != 0 ? "true" : "false";
  case Op::Var:
    return "v" + std::to_string(var());
  case Op::Add:
    return join(" + ");
  case Op::Mul:
    return std::to_string(value()) + "*" + args()[0].to_string();
  case Op::Ite:
    return "ite" + join(", ");
  case Op::Eq:
    return join(" == ");
  case Op::Ne:
    return join(" != ");
  case Op::Lt:
    return join(" < ");
  case Op::Le:
    return join(" <= ");
  case Op::And:
    return join(" && ");
  case Op::Or:
    return join(" || ");
  case Op::Not:
    return "!" + args()[0].to_string();
  case Op::Implies:
    return join(" => ");
  }
  return "?";
}

} // namespace atomplex::smt
