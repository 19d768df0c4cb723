#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "mukanren/detail/cons_list.hpp"

namespace mukanren {

/// Index of a logic variable. Indices are handed out sequentially by the
/// engine's fresh-variable counter and print as bare integers.
using VarIndex = std::uint32_t;

struct TermData;

/// An immutable first-order term: a logic variable, a symbol, a boolean,
/// the empty list, or a pair of terms. Copies are cheap (shared nodes) and
/// values are safe to share across threads.
class Term {
 public:
  enum class Kind { variable, symbol, boolean, nil, pair };

  Term();  // nil

  static Term make_var(VarIndex index);
  static Term make_sym(std::string_view name);
  static Term make_bool(bool value);
  static Term make_nil();
  static Term make_pair(Term head, Term tail);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::variable; }
  bool is_sym() const { return kind() == Kind::symbol; }
  bool is_bool() const { return kind() == Kind::boolean; }
  bool is_nil() const { return kind() == Kind::nil; }
  bool is_pair() const { return kind() == Kind::pair; }

  VarIndex var_index() const;
  const std::string& sym_name() const;
  bool bool_value() const;
  const Term& head() const;
  const Term& tail() const;

  /// Structural equality.
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  explicit Term(std::shared_ptr<const TermData> data) : data_(std::move(data)) {}
  std::shared_ptr<const TermData> data_;
};

struct TermData {
  struct Nil {};
  struct Pair {
    Term head;
    Term tail;
  };
  std::variant<VarIndex, std::string, bool, Nil, Pair> node;
};

inline Term Term::make_var(VarIndex index) {
  return Term(std::make_shared<const TermData>(TermData{index}));
}

inline Term Term::make_sym(std::string_view name) {
  return Term(std::make_shared<const TermData>(TermData{std::string(name)}));
}

inline Term Term::make_bool(bool value) {
  static const std::shared_ptr<const TermData> truthy =
      std::make_shared<const TermData>(TermData{true});
  static const std::shared_ptr<const TermData> falsy =
      std::make_shared<const TermData>(TermData{false});
  return Term(value ? truthy : falsy);
}

inline Term Term::make_nil() {
  static const std::shared_ptr<const TermData> nil_data =
      std::make_shared<const TermData>(TermData{TermData::Nil{}});
  return Term(nil_data);
}

inline Term Term::make_pair(Term head, Term tail) {
  return Term(std::make_shared<const TermData>(
      TermData{TermData::Pair{std::move(head), std::move(tail)}}));
}

inline Term::Term() : data_(make_nil().data_) {}

inline Term::Kind Term::kind() const {
  switch (data_->node.index()) {
    case 0: return Kind::variable;
    case 1: return Kind::symbol;
    case 2: return Kind::boolean;
    case 3: return Kind::nil;
    default: return Kind::pair;
  }
}

inline VarIndex Term::var_index() const { return std::get<VarIndex>(data_->node); }
inline const std::string& Term::sym_name() const { return std::get<std::string>(data_->node); }
inline bool Term::bool_value() const { return std::get<bool>(data_->node); }
inline const Term& Term::head() const { return std::get<TermData::Pair>(data_->node).head; }
inline const Term& Term::tail() const { return std::get<TermData::Pair>(data_->node).tail; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.data_ == b.data_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::variable: return a.var_index() == b.var_index();
    case Term::Kind::symbol: return a.sym_name() == b.sym_name();
    case Term::Kind::boolean: return a.bool_value() == b.bool_value();
    case Term::Kind::nil: return true;
    case Term::Kind::pair: return a.head() == b.head() && a.tail() == b.tail();
  }
  return false;
}

inline Term var(VarIndex index) { return Term::make_var(index); }
inline Term sym(std::string_view name) { return Term::make_sym(name); }
inline Term boolean(bool value) { return Term::make_bool(value); }
inline Term nil() { return Term::make_nil(); }
inline Term cons(Term head, Term tail) {
  return Term::make_pair(std::move(head), std::move(tail));
}

/// Proper list from the given elements.
inline Term list_of(std::initializer_list<Term> items) {
  Term out = nil();
  const Term* data = items.begin();
  for (std::size_t i = items.size(); i-- > 0;) out = cons(data[i], out);
  return out;
}

/// One variable-to-term binding.
struct Binding {
  VarIndex var;
  Term value;
  friend bool operator==(const Binding& a, const Binding& b) {
    return a.var == b.var && a.value == b.value;
  }
};

/// A substitution: bindings ordered newest first. Extension prepends and
/// never rebinds a variable that already walks to a value, so branches of
/// the search share binding tails.
class Substitution {
 public:
  Substitution() = default;

  std::size_t size() const { return bindings_.size(); }
  bool is_empty() const { return bindings_.empty(); }

  /// Prepends a binding. Callers are responsible for the occurs check
  /// (see ext_s) and for only binding unbound variables.
  Substitution extended(VarIndex x, Term value) const {
    Substitution out;
    out.bindings_ = bindings_.prepended(Binding{x, std::move(value)});
    return out;
  }

  /// First (newest) binding for x, or nullptr when x is unbound.
  const Term* lookup(VarIndex x) const {
    for (const Binding& b : bindings_) {
      if (b.var == x) return &b.value;
    }
    return nullptr;
  }

  detail::ConsList<Binding>::iterator begin() const { return bindings_.begin(); }
  detail::ConsList<Binding>::iterator end() const { return bindings_.end(); }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    if (a.bindings_.identical(b.bindings_)) return true;
    if (a.size() != b.size()) return false;
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
      if (!(*ia == *ib)) return false;
    }
    return true;
  }
  friend bool operator!=(const Substitution& a, const Substitution& b) { return !(a == b); }

 private:
  detail::ConsList<Binding> bindings_;
};

/// Resolves u through s: follows variable bindings until reaching a
/// non-variable term or an unbound variable. Does not descend into pairs.
inline Term walk(Term u, const Substitution& s) {
  while (u.is_var()) {
    const Term* bound = s.lookup(u.var_index());
    if (bound == nullptr) break;
    u = *bound;
  }
  return u;
}

/// True iff variable x appears in v once v's subterms are resolved through s.
inline bool occurs(VarIndex x, const Term& v_in, const Substitution& s) {
  Term v = walk(v_in, s);
  if (v.is_var()) return v.var_index() == x;
  if (v.is_pair()) return occurs(x, v.head(), s) || occurs(x, v.tail(), s);
  return false;
}

/// Binds x to v, refusing bindings that would introduce a cycle.
inline std::optional<Substitution> ext_s(VarIndex x, Term v, const Substitution& s) {
  if (occurs(x, v, s)) return std::nullopt;
  return s.extended(x, std::move(v));
}

namespace detail {
/// Equality after walking, in the sense of the host eqv?: equal atoms and
/// identical variables compare equal; distinct pairs do not (they are
/// unified componentwise instead).
inline bool walked_identical(const Term& u, const Term& v) {
  if (u.kind() != v.kind()) return false;
  switch (u.kind()) {
    case Term::Kind::variable: return u.var_index() == v.var_index();
    case Term::Kind::symbol: return u.sym_name() == v.sym_name();
    case Term::Kind::boolean: return u.bool_value() == v.bool_value();
    case Term::Kind::nil: return true;
    case Term::Kind::pair: return false;
  }
  return false;
}
}  // namespace detail

/// Most general unifier of u and v as an extension of s, or nullopt when
/// the terms do not unify. When both walked terms are variables, u's
/// variable is the one that gets bound.
inline std::optional<Substitution> unify(const Term& u_in, const Term& v_in,
                                         const Substitution& s) {
  Term u = walk(u_in, s);
  Term v = walk(v_in, s);
  if (detail::walked_identical(u, v)) return s;
  if (u.is_var()) return ext_s(u.var_index(), std::move(v), s);
  if (v.is_var()) return ext_s(v.var_index(), std::move(u), s);
  if (u.is_pair() && v.is_pair()) {
    std::optional<Substitution> s1 = unify(u.head(), v.head(), s);
    if (!s1) return std::nullopt;
    return unify(u.tail(), v.tail(), *s1);
  }
  return std::nullopt;
}

/// Deep resolution: every variable in t is recursively resolved through s;
/// unbound variables remain.
inline Term walk_star(const Term& t_in, const Substitution& s) {
  Term t = walk(t_in, s);
  if (t.is_pair()) return cons(walk_star(t.head(), s), walk_star(t.tail(), s));
  return t;
}

/// True iff u and v are already equal modulo s: unifying them succeeds
/// without adding any binding.
inline bool same_s(const Term& u, const Term& v, const Substitution& s) {
  std::optional<Substitution> r = unify(u, v, s);
  return r.has_value() && *r == s;
}

/// True iff u is already equal to v or to some subterm of v under s.
inline bool mem(const Term& u, const Term& v_in, const Substitution& s) {
  Term v = walk(v_in, s);
  if (same_s(u, v, s)) return true;
  return v.is_pair() && (mem(u, v.head(), s) || mem(u, v.tail(), s));
}

/// Walks x and then keeps walking the tail of each pair, returning the
/// final non-pair tail: a constant or an unbound variable.
inline Term walk_to_end(const Term& x_in, const Substitution& s) {
  Term x = walk(x_in, s);
  while (x.is_pair()) x = walk(x.tail(), s);
  return x;
}

}  // namespace mukanren
