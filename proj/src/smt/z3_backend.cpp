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

#include "atomplex/errors.hpp"
#include "atomplex/smt/backend.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <z3++.h>

namespace atomplex::smt {

std::int64_t Model::operator[](VarId v) const {
  if (!has(v)) {
    throw ExtractionError("model has no value for variable " + std::to_string(v));
  }
  return *values_[v];
}

namespace {

class Z3Backend final : public Backend {
public:
  explicit Z3Backend(unsigned seed) : solver_(ctx_) {
    z3::params p(ctx_);
    p.set("random_seed", seed);
    solver_.set(p);
  }

  void declare(VarId id, const VarDecl& decl) override {
    if (id != vars_.size()) {
      throw std::logic_error("variables must be declared densely");
    }
    z3::expr v = ctx_.int_const(decl.name.c_str());
    vars_.push_back(v);
    solver_.add(v >= ctx_.int_val(decl.lo) && v <= ctx_.int_val(decl.hi));
    has_model_ = false;
  }

  void add(const Expr& assertion) override {
    solver_.add(as_bool(translate(assertion)));
    has_model_ = false;
  }

  void push() override { solver_.push(); }

  void pop() override {
    solver_.pop();
    has_model_ = false;
  }

  CheckResult check(std::int64_t timeout_ms) override {
    z3::params p(ctx_);
    // 0 would mean "time out immediately"; the Z3 convention for no limit is UINT_MAX
    p.set("timeout", timeout_ms > 0 ? static_cast<unsigned>(std::min<std::int64_t>(
                                          timeout_ms, std::numeric_limits<unsigned>::max()))
                                    : std::numeric_limits<unsigned>::max());
    solver_.set(p);
    has_model_ = false;
    switch (solver_.check()) {
    case z3::sat:
      has_model_ = true;
      return CheckResult::Sat;
    case z3::unsat:
      return CheckResult::Unsat;
    default:
      return CheckResult::Unknown;
    }
  }

  [[nodiscard]] Model model() const override {
    if (!has_model_) {
      throw ExtractionError("no model: last check was not sat");
    }
    z3::model m = solver_.get_model();
    std::vector<std::optional<std::int64_t>> values(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const z3::expr v = m.eval(vars_[i], true);
      std::int64_t out = 0;
      if (v.is_numeral_i64(out)) {
        values[i] = out;
      }
    }
    return Model(std::move(values));
  }

  [[nodiscard]] std::string name() const override { return "z3"; }

private:
  z3::expr as_bool(const z3::expr& e) { return e.is_bool() ? e : e != 0; }
  z3::expr as_int(const z3::expr& e) {
    return e.is_bool() ? z3::ite(e, ctx_.int_val(1), ctx_.int_val(0)) : e;
  }

  z3::expr translate(const Expr& e) {
    const auto it = memo_.find(e.id());
    if (it != memo_.end()) {
      return it->second;
    }
    z3::expr out = build(e);
    memo_.emplace(e.id(), out);
    keep_.push_back(e);
    return out;
  }

  z3::expr build(const Expr& e) {
    const auto& args = e.args();
    const auto both_int = [&](auto f) {
      return f(as_int(translate(args[0])), as_int(translate(args[1])));
    };
    switch (e.op()) {
    case Op::IntConst:
      return ctx_.int_val(e.value());
    case Op::BoolConst:
      return ctx_.bool_val(e.value() != 0);
    case Op::Var:
      if (e.var() >= vars_.size()) {
        throw std::logic_error("undeclared variable " + std::to_string(e.var()));
      }
      return vars_[e.var()];
    case Op::Add: {
      z3::expr_vector v(ctx_);
      for (const Expr& a : args) {
        v.push_back(as_int(translate(a)));
      }
      return z3::sum(v);
    }
    case Op::Mul:
      return ctx_.int_val(e.value()) * as_int(translate(args[0]));
    case Op::Ite: {
      z3::expr a = translate(args[1]);
      z3::expr b = translate(args[2]);
      if (a.is_bool() != b.is_bool()) {
        a = as_int(a);
        b = as_int(b);
      }
      return z3::ite(as_bool(translate(args[0])), a, b);
    }
    case Op::Eq:
    case Op::Ne: {
      z3::expr a = translate(args[0]);
      z3::expr b = translate(args[1]);
      if (a.is_bool() != b.is_bool()) {
        a = as_int(a);
        b = as_int(b);
      }
      return e.op() == Op::Eq ? a == b : a != b;
    }
    case Op::Lt:
      return both_int([](const z3::expr& a, const z3::expr& b) { return a < b; });
    case Op::Le:
      return both_int([](const z3::expr& a, const z3::expr& b) { return a <= b; });
    case Op::And:
    case Op::Or: {
      z3::expr_vector v(ctx_);
      for (const Expr& a : args) {
        v.push_back(as_bool(translate(a)));
      }
      return e.op() == Op::And ? z3::mk_and(v) : z3::mk_or(v);
    }
    case Op::Not:
      return !as_bool(translate(args[0]));
    case Op::Implies:
      return z3::implies(as_bool(translate(args[0])), as_bool(translate(args[1])));
    }
    throw std::logic_error("unknown operator");
  }

  z3::context ctx_;
  z3::solver solver_;
  std::vector<z3::expr> vars_;
  std::unordered_map<const void*, z3::expr> memo_;
  std::vector<Expr> keep_; ///< pins memo keys
  bool has_model_ = false;
};

} // namespace

std::unique_ptr<Backend> make_z3_backend(unsigned seed) {
  return std::make_unique<Z3Backend>(seed);
}

std::unique_ptr<Backend> make_backend(BackendKind kind, unsigned seed) {
  if (kind == BackendKind::Enumeration) {
    return make_enumeration_backend();
  }
  return make_z3_backend(seed);
}

} // namespace atomplex::smt
