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

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace atomplex::smt {

using VarId = std::uint32_t;

enum class Op {
  IntConst,
  BoolConst,
  Var,
  Add,
  Mul, ///< constant * term
  Ite,
  Eq,
  Ne,
  Lt,
  Le,
  And,
  Or,
  Not,
  Implies,
};

class Expr;

/// Immutable term over bounded integer variables: linear arithmetic,
/// comparisons and boolean connectives. Terms are shared, so building a
/// formula never copies its subterms. Constructors fold constants.
class Expr {
public:
  Expr() = default;

  static Expr constant(std::int64_t v);
  static Expr boolean(bool b);
  static Expr variable(VarId id);

  [[nodiscard]] bool valid() const { return node_ != nullptr; }
  [[nodiscard]] Op op() const { return node_->op; }
  [[nodiscard]] bool is_bool() const { return node_->is_bool; }
  /// Constant value; for Mul the coefficient.
  [[nodiscard]] std::int64_t value() const { return node_->value; }
  [[nodiscard]] VarId var() const { return node_->var; }
  [[nodiscard]] const std::vector<Expr>& args() const { return node_->args; }

  [[nodiscard]] bool is_true() const { return op() == Op::BoolConst && value() != 0; }
  [[nodiscard]] bool is_false() const { return op() == Op::BoolConst && value() == 0; }
  [[nodiscard]] bool is_constant() const {
    return op() == Op::IntConst || op() == Op::BoolConst;
  }

  /// Identity of the shared node, for memoization.
  [[nodiscard]] const void* id() const { return node_.get(); }

  /// Largest variable id in the term, or -1 when it has none.
  [[nodiscard]] std::int64_t max_var() const { return node_->max_var; }

  [[nodiscard]] std::string to_string() const;

private:
  struct Node {
    Op op = Op::IntConst;
    bool is_bool = false;
    std::int64_t value = 0;
    VarId var = 0;
    std::int64_t max_var = -1;
    std::vector<Expr> args;
  };

  static Expr make(Op op, bool is_bool, std::vector<Expr> args, std::int64_t value = 0);

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator*(std::int64_t k, const Expr& a);
  friend Expr ite(const Expr& c, const Expr& a, const Expr& b);
  friend Expr cmp(Op op, const Expr& a, const Expr& b);
  friend Expr all_of(std::vector<Expr> terms);
  friend Expr any_of(std::vector<Expr> terms);
  friend Expr operator!(const Expr& a);
  friend Expr implies(const Expr& a, const Expr& b);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator*(std::int64_t k, const Expr& a);
inline Expr operator-(const Expr& a, const Expr& b) { return a + (-1) * b; }
inline Expr operator+(const Expr& a, std::int64_t b) { return a + Expr::constant(b); }

Expr ite(const Expr& c, const Expr& a, const Expr& b);
Expr cmp(Op op, const Expr& a, const Expr& b);

inline Expr operator==(const Expr& a, const Expr& b) { return cmp(Op::Eq, a, b); }
inline Expr operator!=(const Expr& a, const Expr& b) { return cmp(Op::Ne, a, b); }
inline Expr operator<(const Expr& a, const Expr& b) { return cmp(Op::Lt, a, b); }
inline Expr operator<=(const Expr& a, const Expr& b) { return cmp(Op::Le, a, b); }
inline Expr operator>(const Expr& a, const Expr& b) { return cmp(Op::Lt, b, a); }
inline Expr operator>=(const Expr& a, const Expr& b) { return cmp(Op::Le, b, a); }

inline Expr operator==(const Expr& a, std::int64_t b) { return a == Expr::constant(b); }
inline Expr operator!=(const Expr& a, std::int64_t b) { return a != Expr::constant(b); }
inline Expr operator<(const Expr& a, std::int64_t b) { return a < Expr::constant(b); }
inline Expr operator<=(const Expr& a, std::int64_t b) { return a <= Expr::constant(b); }
inline Expr operator>(const Expr& a, std::int64_t b) { return a > Expr::constant(b); }
inline Expr operator>=(const Expr& a, std::int64_t b) { return a >= Expr::constant(b); }

Expr all_of(std::vector<Expr> terms);
Expr any_of(std::vector<Expr> terms);
Expr operator!(const Expr& a);
Expr implies(const Expr& a, const Expr& b);
inline Expr operator&&(const Expr& a, const Expr& b) { return all_of({a, b}); }
inline Expr operator||(const Expr& a, const Expr& b) { return any_of({a, b}); }

/// Sum of terms; booleans count as 0/1.
Expr sum(const std::vector<Expr>& terms);
/// 1 if `b` holds, else 0.
inline Expr as_int(const Expr& b) {
  return ite(b, Expr::constant(1), Expr::constant(0));
}

/// Evaluates under a complete assignment indexed by VarId. Booleans
/// evaluate to 0/1.
[[nodiscard]] std::int64_t evaluate(const Expr& e, std::span<const std::int64_t> values);

} // namespace atomplex::smt
