#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mukanren/sexpr.hpp"
#include "mukanren/term.hpp"

namespace mukanren::ast {

struct TermExpr;
using TermExprPtr = std::shared_ptr<const TermExpr>;

/// Reference to a bound formal (a relation parameter or query variable).
struct VarRef {
  std::string name;
};

/// A ground constant from quoted data or a boolean literal.
struct Constant {
  Term value;
};

/// Pair template from quasiquotation; leaves are constants or variable
/// references.
struct ConsExpr {
  TermExprPtr head;
  TermExprPtr tail;
};

struct TermExpr {
  std::variant<VarRef, Constant, ConsExpr> node;
  SourcePos pos;
};

struct GoalExpr;
using GoalExprPtr = std::shared_ptr<const GoalExpr>;

/// Application of a registered constraint relation ("==", "=/=", ...).
struct ConstraintApp {
  std::string relation;
  std::vector<TermExprPtr> args;
};

/// Application of a user-defined relation.
struct RelationApp {
  std::string name;
  std::vector<TermExprPtr> args;
};

struct Disj {
  GoalExprPtr left;
  GoalExprPtr right;
};

struct Conj {
  GoalExprPtr left;
  GoalExprPtr right;
};

struct Fresh {
  std::string param;
  GoalExprPtr body;
};

struct Ifte {
  GoalExprPtr condition;
  GoalExprPtr then_goal;
  GoalExprPtr else_goal;
};

struct Once {
  GoalExprPtr body;
};

struct GoalExpr {
  std::variant<ConstraintApp, RelationApp, Disj, Conj, Fresh, Ifte, Once> node;
  SourcePos pos;
};

struct RelationDef {
  std::string name;
  std::vector<std::string> params;
  GoalExprPtr body;
  SourcePos pos;
};

struct Query {
  std::optional<std::size_t> count;  // absent = all answers
  std::vector<std::string> vars;
  GoalExprPtr goal;
  SourcePos pos;
};

struct Program {
  std::vector<RelationDef> relations;
  std::vector<Query> queries;
};

// Structural equality, used by the print/parse round-trip checks.

bool equal(const TermExpr& a, const TermExpr& b);
bool equal(const GoalExpr& a, const GoalExpr& b);

inline bool equal(const TermExprPtr& a, const TermExprPtr& b) { return equal(*a, *b); }
inline bool equal(const GoalExprPtr& a, const GoalExprPtr& b) { return equal(*a, *b); }

template <typename T>
bool equal_lists(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

inline bool equal(const TermExpr& a, const TermExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* v = std::get_if<VarRef>(&a.node))
    return v->name == std::get<VarRef>(b.node).name;
  if (const auto* c = std::get_if<Constant>(&a.node))
    return c->value == std::get<Constant>(b.node).value;
  const auto& pa = std::get<ConsExpr>(a.node);
  const auto& pb = std::get<ConsExpr>(b.node);
  return equal(pa.head, pb.head) && equal(pa.tail, pb.tail);
}

inline bool equal(const GoalExpr& a, const GoalExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* c = std::get_if<ConstraintApp>(&a.node)) {
    const auto& o = std::get<ConstraintApp>(b.node);
    return c->relation == o.relation && equal_lists(c->args, o.args);
  }
  if (const auto* r = std::get_if<RelationApp>(&a.node)) {
    const auto& o = std::get<RelationApp>(b.node);
    return r->name == o.name && equal_lists(r->args, o.args);
  }
  if (const auto* d = std::get_if<Disj>(&a.node)) {
    const auto& o = std::get<Disj>(b.node);
    return equal(d->left, o.left) && equal(d->right, o.right);
  }
  if (const auto* c = std::get_if<Conj>(&a.node)) {
    const auto& o = std::get<Conj>(b.node);
    return equal(c->left, o.left) && equal(c->right, o.right);
  }
  if (const auto* f = std::get_if<Fresh>(&a.node)) {
    const auto& o = std::get<Fresh>(b.node);
    return f->param == o.param && equal(f->body, o.body);
  }
  if (const auto* i = std::get_if<Ifte>(&a.node)) {
    const auto& o = std::get<Ifte>(b.node);
    return equal(i->condition, o.condition) && equal(i->then_goal, o.then_goal) &&
           equal(i->else_goal, o.else_goal);
  }
  const auto& oa = std::get<Once>(a.node);
  const auto& ob = std::get<Once>(b.node);
  return equal(oa.body, ob.body);
}

inline bool equal(const RelationDef& a, const RelationDef& b) {
  return a.name == b.name && a.params == b.params && equal(a.body, b.body);
}

inline bool equal(const Query& a, const Query& b) {
  return a.count == b.count && a.vars == b.vars && equal(a.goal, b.goal);
}

inline bool equal(const Program& a, const Program& b) {
  return equal_lists(a.relations, b.relations) && equal_lists(a.queries, b.queries);
}

}  // namespace mukanren::ast
