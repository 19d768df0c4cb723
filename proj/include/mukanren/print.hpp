#pragma once

#include <sstream>
#include <string>

#include "mukanren/ast.hpp"
#include "mukanren/stream.hpp"

namespace mukanren {

namespace detail {
inline void print_term_to(std::ostream& out, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::variable:
      out << t.var_index();
      return;
    case Term::Kind::symbol:
      out << t.sym_name();
      return;
    case Term::Kind::boolean:
      out << (t.bool_value() ? "#t" : "#f");
      return;
    case Term::Kind::nil:
      out << "()";
      return;
    case Term::Kind::pair:
      break;
  }
  out << '(';
  print_term_to(out, t.head());
  Term rest = t.tail();
  while (rest.is_pair()) {
    out << ' ';
    print_term_to(out, rest.head());
    rest = rest.tail();
  }
  if (!rest.is_nil()) {
    out << " . ";
    print_term_to(out, rest);
  }
  out << ')';
}
}  // namespace detail

/// Renders a term: variables as bare integers, symbols bare, booleans as
/// #t/#f, the empty list as (), pairs in list/dotted notation.
inline std::string term_to_string(const Term& t) {
  std::ostringstream out;
  detail::print_term_to(out, t);
  return out.str();
}

/// Renders a state's store as one s-expression: each field as
/// (id . tuple-list) in registration order with "==" first, tuples newest
/// first, and the counter as the final tail. Empty fields collapse to (id).
inline std::string store_to_string(const State& st) {
  std::ostringstream out;
  out << '(';
  const StoreLayout& layout = *st.store.layout();
  for (std::size_t i = 0; i < layout.field_count(); ++i) {
    if (i > 0) out << ' ';
    const TupleList& tuples = st.store.tuples_at(i);
    out << '(' << layout.field(i).id;
    if (!tuples.empty()) {
      out << " . (";
      bool first = true;
      for (const Term& t : tuples) {
        if (!first) out << ' ';
        first = false;
        detail::print_term_to(out, t);
      }
      out << ')';
    }
    out << ')';
  }
  out << " . " << st.counter << ')';
  return out.str();
}

namespace detail {

inline void print_datum_to(std::ostream& out, const Term& t) { print_term_to(out, t); }

void print_template_to(std::ostream& out, const ast::TermExpr& e);

/// Term expression in context: top-level constants are quoted, quasiquote
/// templates open with a backquote.
inline void print_term_expr_to(std::ostream& out, const ast::TermExpr& e) {
  if (const auto* v = std::get_if<ast::VarRef>(&e.node)) {
    out << v->name;
    return;
  }
  if (const auto* c = std::get_if<ast::Constant>(&e.node)) {
    if (c->value.is_bool()) {
      out << (c->value.bool_value() ? "#t" : "#f");
    } else {
      out << '\'';
      print_datum_to(out, c->value);
    }
    return;
  }
  out << '`';
  print_template_to(out, e);
}

inline void print_template_to(std::ostream& out, const ast::TermExpr& e) {
  if (const auto* v = std::get_if<ast::VarRef>(&e.node)) {
    out << ',' << v->name;
    return;
  }
  if (const auto* c = std::get_if<ast::Constant>(&e.node)) {
    print_datum_to(out, c->value);
    return;
  }
  const auto* pair = std::get_if<ast::ConsExpr>(&e.node);
  out << '(';
  print_template_to(out, *pair->head);
  const ast::TermExpr* rest = pair->tail.get();
  for (;;) {
    if (const auto* next = std::get_if<ast::ConsExpr>(&rest->node)) {
      out << ' ';
      print_template_to(out, *next->head);
      rest = next->tail.get();
      continue;
    }
    if (const auto* c = std::get_if<ast::Constant>(&rest->node); c && c->value.is_nil()) break;
    out << " . ";
    print_template_to(out, *rest);
    break;
  }
  out << ')';
}

inline void print_goal_to(std::ostream& out, const ast::GoalExpr& g) {
  if (const auto* c = std::get_if<ast::ConstraintApp>(&g.node)) {
    out << '(' << c->relation;
    for (const auto& arg : c->args) {
      out << ' ';
      print_term_expr_to(out, *arg);
    }
    out << ')';
    return;
  }
  if (const auto* r = std::get_if<ast::RelationApp>(&g.node)) {
    out << '(' << r->name;
    for (const auto& arg : r->args) {
      out << ' ';
      print_term_expr_to(out, *arg);
    }
    out << ')';
    return;
  }
  if (const auto* d = std::get_if<ast::Disj>(&g.node)) {
    out << "(disj ";
    print_goal_to(out, *d->left);
    out << ' ';
    print_goal_to(out, *d->right);
    out << ')';
    return;
  }
  if (const auto* c = std::get_if<ast::Conj>(&g.node)) {
    out << "(conj ";
    print_goal_to(out, *c->left);
    out << ' ';
    print_goal_to(out, *c->right);
    out << ')';
    return;
  }
  if (const auto* f = std::get_if<ast::Fresh>(&g.node)) {
    out << "(call/fresh (lambda (" << f->param << ") ";
    print_goal_to(out, *f->body);
    out << "))";
    return;
  }
  if (const auto* i = std::get_if<ast::Ifte>(&g.node)) {
    out << "(ifte ";
    print_goal_to(out, *i->condition);
    out << ' ';
    print_goal_to(out, *i->then_goal);
    out << ' ';
    print_goal_to(out, *i->else_goal);
    out << ')';
    return;
  }
  const auto& o = std::get<ast::Once>(g.node);
  out << "(once ";
  print_goal_to(out, *o.body);
  out << ')';
}

}  // namespace detail

/// Canonical rendering of a parsed program; parsing the output yields a
/// structurally identical program.
inline std::string program_to_string(const ast::Program& program) {
  std::ostringstream out;
  bool first = true;
  for (const ast::RelationDef& def : program.relations) {
    if (!first) out << '\n';
    first = false;
    out << "(define-relation (" << def.name;
    for (const std::string& p : def.params) out << ' ' << p;
    out << ") ";
    detail::print_goal_to(out, *def.body);
    out << ')';
  }
  for (const ast::Query& q : program.queries) {
    if (!first) out << '\n';
    first = false;
    if (q.count) {
      out << "(run " << *q.count << " (";
    } else {
      out << "(run* (";
    }
    for (std::size_t i = 0; i < q.vars.size(); ++i) {
      if (i > 0) out << ' ';
      out << q.vars[i];
    }
    out << ") ";
    detail::print_goal_to(out, *q.goal);
    out << ')';
  }
  out << '\n';
  return out.str();
}

}  // namespace mukanren
