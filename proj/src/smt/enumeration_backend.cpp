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

#include <chrono>
#include <stdexcept>

namespace atomplex::smt {

namespace {

enum class Stop { Exhausted, Visitor, Limit };

/// Depth-first enumeration in VarId order. Each assertion is checked as soon
/// as its largest variable is assigned.
class Search {
public:
  using Clock = std::chrono::steady_clock;

  Search(const std::vector<VarDecl>& vars, const std::vector<Expr>& assertions,
         std::uint64_t node_limit, std::optional<Clock::time_point> deadline)
      : vars_(vars), buckets_(vars.size() + 1), values_(vars.size(), 0),
        node_limit_(node_limit), deadline_(deadline) {
    for (const Expr& a : assertions) {
      // bucket 0 holds variable-free assertions
      buckets_[static_cast<std::size_t>(a.max_var() + 1)].push_back(a);
    }
  }

  Stop run(const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
    visit_ = &visit;
    if (!holds(0)) {
      return Stop::Exhausted;
    }
    return descend(0);
  }

private:
  bool holds(std::size_t bucket) const {
    for (const Expr& a : buckets_[bucket]) {
      if (evaluate(a, values_) == 0) {
        return false;
      }
    }
    return true;
  }

  Stop descend(std::size_t v) {
    if (v == vars_.size()) {
      return (*visit_)(values_) ? Stop::Exhausted : Stop::Visitor;
    }
    for (std::int64_t x = vars_[v].lo; x <= vars_[v].hi; ++x) {
      if (node_limit_ != 0 && ++nodes_ > node_limit_) {
        return Stop::Limit;
      }
      if (deadline_ && (nodes_ & 0xfff) == 0 && Clock::now() > *deadline_) {
        return Stop::Limit;
      }
      values_[v] = x;
      if (!holds(v + 1)) {
        continue;
      }
      if (const Stop s = descend(v + 1); s != Stop::Exhausted) {
        return s;
      }
    }
    return Stop::Exhausted;
  }

  const std::vector<VarDecl>& vars_;
  std::vector<std::vector<Expr>> buckets_;
  std::vector<std::int64_t> values_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::optional<Clock::time_point> deadline_;
  const std::function<bool(const std::vector<std::int64_t>&)>* visit_ = nullptr;
};

class EnumerationBackend final : public Backend {
public:
  explicit EnumerationBackend(std::uint64_t node_limit) : node_limit_(node_limit) {}

  void declare(VarId id, const VarDecl& decl) override {
    if (id != vars_.size()) {
      throw std::logic_error("variables must be declared densely");
    }
    if (decl.lo > decl.hi) {
      throw std::invalid_argument("empty domain for " + decl.name);
    }
    vars_.push_back(decl);
    model_.reset();
  }

  void add(const Expr& assertion) override {
    if (assertion.max_var() >= static_cast<std::int64_t>(vars_.size())) {
      throw std::logic_error("assertion uses an undeclared variable");
    }
    assertions_.push_back(assertion);
    model_.reset();
  }

  void push() override { scopes_.push_back(assertions_.size()); }

  void pop() override {
    if (scopes_.empty()) {
      throw std::logic_error("pop without push");
    }
    assertions_.resize(scopes_.back());
    scopes_.pop_back();
    model_.reset();
  }

  CheckResult check(std::int64_t timeout_ms) override {
    model_.reset();
    std::optional<Search::Clock::time_point> deadline;
    if (timeout_ms > 0) {
      deadline = Search::Clock::now() + std::chrono::milliseconds(timeout_ms);
    }
    Search search(vars_, assertions_, node_limit_, deadline);
    std::vector<std::int64_t> found;
    const Stop s = search.run([&](const std::vector<std::int64_t>& v) {
      found = v;
      return false;
    });
    switch (s) {
    case Stop::Visitor:
      model_ = std::move(found);
      return CheckResult::Sat;
    case Stop::Exhausted:
      return CheckResult::Unsat;
    case Stop::Limit:
      return CheckResult::Unknown;
    }
    return CheckResult::Unknown;
  }

  [[nodiscard]] Model model() const override {
    if (!model_) {
      throw ExtractionError("no model: last check was not sat");
    }
    return Model(std::vector<std::optional<std::int64_t>>(model_->begin(), model_->end()));
  }

  [[nodiscard]] std::string name() const override { return "enumeration"; }

private:
  std::vector<VarDecl> vars_;
  std::vector<Expr> assertions_;
  std::vector<std::size_t> scopes_;
  std::optional<std::vector<std::int64_t>> model_;
  std::uint64_t node_limit_;
};

} // namespace

std::unique_ptr<Backend> make_enumeration_backend(std::uint64_t node_limit) {
  return std::make_unique<EnumerationBackend>(node_limit);
}

void for_each_model(const std::vector<VarDecl>& vars, const std::vector<Expr>& assertions,
                    const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  Search(vars, assertions, 0, std::nullopt).run(visit);
}

} // namespace atomplex::smt
