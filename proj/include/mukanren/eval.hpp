#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mukanren/ast.hpp"
#include "mukanren/stdlib.hpp"
#include "mukanren/system.hpp"

namespace mukanren {

/// One answer: the final state plus the deep-resolved value of each query
/// variable.
struct Answer {
  State state;
  std::vector<Term> readbacks;
};

struct QueryResult {
  std::vector<Answer> answers;
  bool timed_out = false;
};

struct EvalOptions {
  /// Replaces every query's answer count.
  std::optional<std::size_t> count_override;
  /// Takes every answer regardless of the query's count.
  bool take_all = false;
  /// Evaluation stops (flushing answers found so far) once past this point.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

namespace detail {

struct CompiledProgram {
  std::map<std::string, ast::RelationDef> relations;
  ConstraintSystem sys;

  explicit CompiledProgram(ConstraintSystem system) : sys(std::move(system)) {}
};

using ProgramPtr = std::shared_ptr<const CompiledProgram>;

struct Env {
  std::vector<std::pair<std::string, Term>> bindings;

  Term lookup(const std::string& name, SourcePos pos) const {
    for (const auto& [n, t] : bindings) {
      if (n == name) return t;
    }
    throw ParseError("unbound identifier '" + name + "'", pos);
  }
};

inline Term eval_term(const ast::TermExpr& e, const Env& env) {
  if (const auto* v = std::get_if<ast::VarRef>(&e.node)) return env.lookup(v->name, e.pos);
  if (const auto* c = std::get_if<ast::Constant>(&e.node)) return c->value;
  const auto& pair = std::get<ast::ConsExpr>(e.node);
  return cons(eval_term(*pair.head, env), eval_term(*pair.tail, env));
}

inline Goal eval_goal(const ast::GoalExpr& g, const Env& env, const ProgramPtr& prog) {
  if (const auto* c = std::get_if<ast::ConstraintApp>(&g.node)) {
    std::vector<Term> args;
    args.reserve(c->args.size());
    for (const auto& a : c->args) args.push_back(eval_term(*a, env));
    return prog->sys.constructor(c->relation).apply(std::move(args));
  }
  if (const auto* r = std::get_if<ast::RelationApp>(&g.node)) {
    std::vector<Term> args;
    args.reserve(r->args.size());
    for (const auto& a : r->args) args.push_back(eval_term(*a, env));
    const ast::RelationDef* def = &prog->relations.at(r->name);
    // Arguments are evaluated at the call site; the body is built only
    // when the stream is forced.
    return delay([def, prog, args = std::move(args)]() {
      Env inner;
      for (std::size_t i = 0; i < def->params.size(); ++i)
        inner.bindings.emplace_back(def->params[i], args[i]);
      return eval_goal(*def->body, inner, prog);
    });
  }
  if (const auto* d = std::get_if<ast::Disj>(&g.node))
    return disj(eval_goal(*d->left, env, prog), eval_goal(*d->right, env, prog));
  if (const auto* c = std::get_if<ast::Conj>(&g.node))
    return conj(eval_goal(*c->left, env, prog), eval_goal(*c->right, env, prog));
  if (const auto* f = std::get_if<ast::Fresh>(&g.node)) {
    ast::GoalExprPtr body = f->body;
    std::string param = f->param;
    return call_fresh([body, param, env, prog](Term v) {
      Env inner = env;
      inner.bindings.emplace_back(param, std::move(v));
      return eval_goal(*body, inner, prog);
    });
  }
  if (const auto* i = std::get_if<ast::Ifte>(&g.node))
    return ifte(eval_goal(*i->condition, env, prog), eval_goal(*i->then_goal, env, prog),
                eval_goal(*i->else_goal, env, prog));
  const auto& o = std::get<ast::Once>(g.node);
  return once(eval_goal(*o.body, env, prog));
}

inline Goal wrap_query_vars(const ast::Query& query, std::size_t next, const Env& env,
                            const ProgramPtr& prog) {
  if (next == query.vars.size()) return eval_goal(*query.goal, env, prog);
  return call_fresh([query, next, env, prog](Term v) {
    Env inner = env;
    inner.bindings.emplace_back(query.vars[next], std::move(v));
    return wrap_query_vars(query, next + 1, inner, prog);
  });
}

/// take() with a cooperative deadline check between forcing steps.
inline QueryResult drive_query(const Goal& goal, const ConstraintSystem& sys,
                               std::optional<std::size_t> count, std::size_t var_count,
                               std::optional<std::chrono::steady_clock::time_point> deadline) {
  QueryResult result;
  auto expired = [&deadline] {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  };
  auto emit = [&result, var_count](const State& st) {
    std::optional<Substitution> s = valid_eq(st.store.tuples("=="));
    Answer answer{st, {}};
    for (std::size_t i = 0; i < var_count; ++i)
      answer.readbacks.push_back(walk_star(var(static_cast<VarIndex>(i)), *s));
    result.answers.push_back(std::move(answer));
  };

  if (count && *count == 0) return result;
  Stream s = goal(State{initial_store(sys), 0});
  for (;;) {
    while (s.is_immature()) {
      if (expired()) {
        result.timed_out = true;
        return result;
      }
      s = s.force();
    }
    if (s.is_empty()) return result;
    emit(s.head());
    if (count && result.answers.size() == *count) return result;
    s = s.rest();
  }
}

}  // namespace detail

/// Evaluates every query of the program in order. Each query scopes its
/// variables left to right (the first query variable is variable 0), runs
/// from the system's initial state, and reads back the variables' values
/// through the answer's solved substitution.
inline std::vector<QueryResult> eval_program(const ast::Program& program,
                                             const ConstraintSystem& sys,
                                             const EvalOptions& options = {}) {
  auto prog = std::make_shared<detail::CompiledProgram>(sys);
  for (const ast::RelationDef& def : program.relations) prog->relations.emplace(def.name, def);

  std::vector<QueryResult> results;
  for (const ast::Query& query : program.queries) {
    std::optional<std::size_t> count = query.count;
    if (options.take_all) {
      count = std::nullopt;
    } else if (options.count_override) {
      count = options.count_override;
    }
    Goal goal = detail::wrap_query_vars(query, 0, detail::Env{}, prog);
    results.push_back(
        detail::drive_query(goal, sys, count, query.vars.size(), options.deadline));
    if (results.back().timed_out) break;
  }
  return results;
}

}  // namespace mukanren
