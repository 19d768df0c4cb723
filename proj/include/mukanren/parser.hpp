#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mukanren/ast.hpp"
#include "mukanren/system.hpp"

namespace mukanren {

namespace detail {

inline bool is_builtin_operator(std::string_view name) {
  return name == "disj" || name == "conj" || name == "call/fresh" || name == "ifte" ||
         name == "once" || name == "define-relation" || name == "run" || name == "run*" ||
         name == "quote" || name == "quasiquote" || name == "unquote" || name == "lambda" ||
         name == "\xce\xbb";  // λ
}

class ProgramParser {
 public:
  ProgramParser(std::string_view text, const ConstraintSystem& sys) : sys_(sys), text_(text) {}

  ast::Program parse() {
    std::vector<SExpr> forms = read_sexprs(text_);

    // First pass: collect relation signatures so bodies can call forward.
    for (const SExpr& form : forms) {
      if (is_definition(form)) declare_relation(form);
    }

    ast::Program program;
    for (const SExpr& form : forms) {
      if (is_definition(form)) {
        program.relations.push_back(parse_definition(form));
      } else {
        program.queries.push_back(parse_query(form));
      }
    }
    if (program.queries.empty())
      throw ParseError("program contains no run form", SourcePos{1, 1});
    return program;
  }

 private:
  struct Env {
    std::vector<std::string> names;
    bool bound(std::string_view name) const {
      for (const std::string& n : names) {
        if (n == name) return true;
      }
      return false;
    }
  };

  static bool is_definition(const SExpr& form) {
    return form.is_list() && !form.dotted() && !form.items().empty() &&
           form.items()[0].is_symbol("define-relation");
  }

  void check_fresh_name(const SExpr& name_expr) {
    if (!name_expr.is_symbol())
      throw ParseError("expected an identifier", name_expr.pos());
    const std::string& name = name_expr.symbol();
    if (is_builtin_operator(name))
      throw ParseError("'" + name + "' is a reserved operator", name_expr.pos());
    if (sys_.has_relation(name))
      throw ParseError("'" + name + "' redefines a constraint relation", name_expr.pos());
  }

  void declare_relation(const SExpr& form) {
    const auto& items = form.items();
    if (items.size() != 3 || !items[1].is_list() || items[1].dotted() ||
        items[1].items().empty())
      throw ParseError("expected (define-relation (name params ...) goal)", form.pos());
    const SExpr& header = items[1];
    check_fresh_name(header.items()[0]);
    const std::string& name = header.items()[0].symbol();
    if (relation_arity_.count(name))
      throw ParseError("relation '" + name + "' is already defined", header.pos());
    relation_arity_[name] = header.items().size() - 1;
  }

  ast::RelationDef parse_definition(const SExpr& form) {
    const SExpr& header = form.items()[1];
    ast::RelationDef def;
    def.pos = form.pos();
    def.name = header.items()[0].symbol();
    Env env;
    for (std::size_t i = 1; i < header.items().size(); ++i) {
      const SExpr& param = header.items()[i];
      check_fresh_name(param);
      if (relation_arity_.count(param.symbol()))
        throw ParseError("'" + param.symbol() + "' shadows a relation", param.pos());
      if (env.bound(param.symbol()))
        throw ParseError("duplicate parameter '" + param.symbol() + "'", param.pos());
      def.params.push_back(param.symbol());
      env.names.push_back(param.symbol());
    }
    def.body = parse_goal(form.items()[2], env);
    return def;
  }

  ast::Query parse_query(const SExpr& form) {
    if (!form.is_list() || form.dotted() || form.items().empty() ||
        !(form.items()[0].is_symbol("run") || form.items()[0].is_symbol("run*")))
      throw ParseError("expected (define-relation ...) or (run ...) at top level", form.pos());

    const auto& items = form.items();
    bool exhaustive = items[0].is_symbol("run*");
    std::size_t expected = exhaustive ? 3 : 4;
    if (items.size() != expected)
      throw ParseError(exhaustive ? "expected (run* (vars ...) goal)"
                                  : "expected (run count (vars ...) goal)",
                       form.pos());

    ast::Query query;
    query.pos = form.pos();
    std::size_t vars_at = 1;
    if (!exhaustive) {
      if (!items[1].is_number() || items[1].number() < 0)
        throw ParseError("run expects a non-negative answer count", items[1].pos());
      query.count = static_cast<std::size_t>(items[1].number());
      vars_at = 2;
    }

    const SExpr& vars = items[vars_at];
    if (!vars.is_list() || vars.dotted() || vars.items().empty())
      throw ParseError("expected a non-empty list of query variables", vars.pos());
    Env env;
    for (const SExpr& v : vars.items()) {
      check_fresh_name(v);
      if (relation_arity_.count(v.symbol()))
        throw ParseError("'" + v.symbol() + "' shadows a relation", v.pos());
      if (env.bound(v.symbol()))
        throw ParseError("duplicate query variable '" + v.symbol() + "'", v.pos());
      query.vars.push_back(v.symbol());
      env.names.push_back(v.symbol());
    }
    query.goal = parse_goal(items[vars_at + 1], env);
    return query;
  }

  ast::GoalExprPtr parse_goal(const SExpr& form, const Env& env) {
    if (!form.is_list() || form.dotted() || form.items().empty())
      throw ParseError("expected a goal", form.pos());
    const SExpr& head = form.items()[0];
    if (!head.is_symbol()) throw ParseError("expected an operator or relation", head.pos());
    const std::string& op = head.symbol();
    const auto& items = form.items();

    auto goal = [&form](auto node) {
      return std::make_shared<const ast::GoalExpr>(
          ast::GoalExpr{std::move(node), form.pos()});
    };

    if (op == "disj" || op == "conj") {
      if (items.size() != 3)
        throw ParseError("'" + op + "' expects exactly two goals", form.pos());
      auto left = parse_goal(items[1], env);
      auto right = parse_goal(items[2], env);
      if (op == "disj") return goal(ast::Disj{left, right});
      return goal(ast::Conj{left, right});
    }
    if (op == "call/fresh") {
      if (items.size() != 2) throw ParseError("'call/fresh' expects one lambda", form.pos());
      const SExpr& fn = items[1];
      if (!fn.is_list() || fn.dotted() || fn.items().size() != 3 ||
          !(fn.items()[0].is_symbol("lambda") || fn.items()[0].is_symbol("\xce\xbb")) ||
          !fn.items()[1].is_list() || fn.items()[1].dotted() ||
          fn.items()[1].items().size() != 1)
        throw ParseError("'call/fresh' expects (lambda (x) goal)", fn.pos());
      const SExpr& param = fn.items()[1].items()[0];
      check_fresh_name(param);
      if (relation_arity_.count(param.symbol()))
        throw ParseError("'" + param.symbol() + "' shadows a relation", param.pos());
      Env inner = env;
      inner.names.push_back(param.symbol());
      return goal(ast::Fresh{param.symbol(), parse_goal(fn.items()[2], inner)});
    }
    if (op == "ifte") {
      if (items.size() != 4) throw ParseError("'ifte' expects three goals", form.pos());
      return goal(ast::Ifte{parse_goal(items[1], env), parse_goal(items[2], env),
                            parse_goal(items[3], env)});
    }
    if (op == "once") {
      if (items.size() != 2) throw ParseError("'once' expects one goal", form.pos());
      return goal(ast::Once{parse_goal(items[1], env)});
    }
    if (sys_.has_relation(op)) {
      std::size_t arity = sys_.arity_of(op);
      if (items.size() != arity + 1)
        throw ParseError("'" + op + "' expects " + std::to_string(arity) + " argument(s)",
                         form.pos());
      ast::ConstraintApp app{op, {}};
      for (std::size_t i = 1; i < items.size(); ++i)
        app.args.push_back(parse_term(items[i], env));
      return goal(std::move(app));
    }
    auto rel = relation_arity_.find(op);
    if (rel != relation_arity_.end()) {
      if (items.size() != rel->second + 1)
        throw ParseError("'" + op + "' expects " + std::to_string(rel->second) +
                             " argument(s)",
                         form.pos());
      ast::RelationApp app{op, {}};
      for (std::size_t i = 1; i < items.size(); ++i)
        app.args.push_back(parse_term(items[i], env));
      return goal(std::move(app));
    }
    throw ParseError("unknown operator '" + op + "'", head.pos());
  }

  ast::TermExprPtr parse_term(const SExpr& form, const Env& env) {
    auto make = [&form](auto node) {
      return std::make_shared<const ast::TermExpr>(
          ast::TermExpr{std::move(node), form.pos()});
    };
    switch (form.kind()) {
      case SExpr::Kind::symbol: {
        const std::string& name = form.symbol();
        if (!env.bound(name))
          throw ParseError("unbound identifier '" + name + "'", form.pos());
        return make(ast::VarRef{name});
      }
      case SExpr::Kind::number:
        throw ParseError("numeric literals are not terms (integers print variables)",
                         form.pos());
      case SExpr::Kind::boolean:
        return make(ast::Constant{boolean(form.boolean_value())});
      case SExpr::Kind::list:
        break;
    }
    const auto& items = form.items();
    if (!form.dotted() && items.size() == 2 && items[0].is_symbol("quote"))
      return make(ast::Constant{parse_datum(items[1])});
    if (!form.dotted() && items.size() == 2 && items[0].is_symbol("quasiquote"))
      return parse_template(items[1], env);
    if (!form.dotted() && items.size() == 2 && items[0].is_symbol("unquote"))
      throw ParseError("unquote outside quasiquote", form.pos());
    throw ParseError("expected a term (identifier, boolean, quote or quasiquote)",
                     form.pos());
  }

  Term parse_datum(const SExpr& form) {
    switch (form.kind()) {
      case SExpr::Kind::symbol:
        return sym(form.symbol());
      case SExpr::Kind::number:
        throw ParseError("numeric literals are not terms (integers print variables)",
                         form.pos());
      case SExpr::Kind::boolean:
        return boolean(form.boolean_value());
      case SExpr::Kind::list:
        break;
    }
    const auto& items = form.items();
    std::size_t proper = form.dotted() ? items.size() - 1 : items.size();
    Term out = form.dotted() ? parse_datum(items.back()) : nil();
    for (std::size_t i = proper; i-- > 0;) out = cons(parse_datum(items[i]), out);
    return out;
  }

  ast::TermExprPtr parse_template(const SExpr& form, const Env& env) {
    auto make = [&form](auto node) {
      return std::make_shared<const ast::TermExpr>(
          ast::TermExpr{std::move(node), form.pos()});
    };
    if (form.is_list() && !form.dotted() && form.items().size() == 2) {
      if (form.items()[0].is_symbol("unquote")) return parse_term(form.items()[1], env);
      if (form.items()[0].is_symbol("quasiquote"))
        throw ParseError("nested quasiquote is not supported", form.pos());
    }
    if (!form.is_list()) return make(ast::Constant{parse_datum(form)});

    const auto& items = form.items();
    std::size_t proper = form.dotted() ? items.size() - 1 : items.size();
    ast::TermExprPtr out = form.dotted()
                               ? parse_template(items.back(), env)
                               : make(ast::Constant{nil()});
    for (std::size_t i = proper; i-- > 0;) {
      ast::TermExprPtr head = parse_template(items[i], env);
      out = std::make_shared<const ast::TermExpr>(
          ast::TermExpr{ast::ConsExpr{std::move(head), std::move(out)}, items[i].pos()});
    }
    return out;
  }

  const ConstraintSystem& sys_;
  std::string_view text_;
  std::map<std::string, std::size_t> relation_arity_;
};

}  // namespace detail

/// Parses a program: define-relation forms and run/run* queries over the
/// given constraint system's relations.
inline ast::Program parse_program(std::string_view text, const ConstraintSystem& sys) {
  return detail::ProgramParser(text, sys).parse();
}

}  // namespace mukanren
