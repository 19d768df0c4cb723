#pragma once

#include "mukanren/system.hpp"

namespace mukanren {

// The standard constraint library: disequality, subterm absence, the sort
// constraints symbolo / not-pairo / booleano, and proper-list listo. Each
// predicate detects one kind of violation; a constraint system combines
// them disjunctively.

/// Some "=/=" pair is already equal under the substitution.
inline bool neq_violated(const StoreView& view, const Substitution& s) {
  for (const Term& pr : view.tuples("=/=")) {
    if (same_s(pr.head(), pr.tail(), s)) return true;
  }
  return false;
}

/// Some "absento" pair's first term already occurs in (or equals) the second.
inline bool absento_violated(const StoreView& view, const Substitution& s) {
  for (const Term& pr : view.tuples("absento")) {
    if (mem(pr.head(), pr.tail(), s)) return true;
  }
  return false;
}

/// Some "symbolo" term resolves to a value that is neither a symbol nor a
/// variable.
inline bool symbolo_violated(const StoreView& view, const Substitution& s) {
  for (const Term& y : view.tuples("symbolo")) {
    Term t = walk(y, s);
    if (!t.is_sym() && !t.is_var()) return true;
  }
  return false;
}

/// Some "not-pairo" term resolves to a pair.
inline bool not_pairo_violated(const StoreView& view, const Substitution& s) {
  for (const Term& n : view.tuples("not-pairo")) {
    if (walk(n, s).is_pair()) return true;
  }
  return false;
}

namespace detail {
/// A disequality or absence constraint fires under the candidate
/// substitution.
inline bool neq_or_absento_violated(const StoreView& view, const Substitution& s) {
  for (const Term& pr : view.tuples("=/=")) {
    if (same_s(pr.head(), pr.tail(), s)) return true;
  }
  for (const Term& pr : view.tuples("absento")) {
    if (mem(pr.head(), pr.tail(), s)) return true;
  }
  return false;
}
}  // namespace detail

/// A "booleano" term still admits both boolean values, yet each candidate
/// value is separately forbidden by a disequality or absence constraint.
/// Both candidates are checked under their own extended substitution.
inline bool booleano_blocked_violated(const StoreView& view, const Substitution& s) {
  for (const Term& b : view.tuples("booleano")) {
    std::optional<Substitution> s1 = unify(b, boolean(true), s);
    std::optional<Substitution> s2 = unify(b, boolean(false), s);
    if (s1 && s2 && detail::neq_or_absento_violated(view, *s1) &&
        detail::neq_or_absento_violated(view, *s2)) {
      return true;
    }
  }
  return false;
}

/// Some "booleano" term resolves to a non-variable non-boolean.
inline bool booleano_sort_violated(const StoreView& view, const Substitution& s) {
  for (const Term& b : view.tuples("booleano")) {
    Term t = walk(b, s);
    if (!t.is_var() && !t.is_bool()) return true;
  }
  return false;
}

/// Some term is constrained to be both a boolean and a symbol.
inline bool booleano_symbolo_clash_violated(const StoreView& view, const Substitution& s) {
  for (const Term& b : view.tuples("booleano")) {
    for (const Term& y : view.tuples("symbolo")) {
      if (same_s(y, b, s)) return true;
    }
  }
  return false;
}

/// The end of some "listo" term is required to be a symbol.
inline bool listo_symbol_end_violated(const StoreView& view, const Substitution& s) {
  for (const Term& l : view.tuples("listo")) {
    Term end = walk_to_end(l, s);
    for (const Term& y : view.tuples("symbolo")) {
      if (same_s(y, end, s)) return true;
    }
  }
  return false;
}

/// The end of some "listo" term is required to be a boolean.
inline bool listo_boolean_end_violated(const StoreView& view, const Substitution& s) {
  for (const Term& l : view.tuples("listo")) {
    Term end = walk_to_end(l, s);
    for (const Term& b : view.tuples("booleano")) {
      if (same_s(b, end, s)) return true;
    }
  }
  return false;
}

/// The end of some "listo" term must be a definite last tail (a "not-pairo"
/// constraint pins it), yet closing it with the empty list trips a
/// disequality or absence constraint.
inline bool listo_closed_end_violated(const StoreView& view, const Substitution& s) {
  for (const Term& l : view.tuples("listo")) {
    Term end = walk_to_end(l, s);
    std::optional<Substitution> closed = unify(end, nil(), s);
    if (!closed) continue;
    bool pinned = false;
    for (const Term& n : view.tuples("not-pairo")) {
      if (same_s(end, n, s)) {
        pinned = true;
        break;
      }
    }
    if (pinned && detail::neq_or_absento_violated(view, *closed)) return true;
  }
  return false;
}

/// An "absento" constraint forbids the empty list from occurring in a term
/// that contains the end of some "listo" term.
inline bool listo_nil_absent_violated(const StoreView& view, const Substitution& s) {
  for (const Term& l : view.tuples("listo")) {
    Term end = walk_to_end(l, s);
    for (const Term& pr : view.tuples("absento")) {
      if (walk(pr.head(), s).is_nil() && mem(end, pr.tail(), s)) return true;
    }
  }
  return false;
}

/// The ready-made system: relations =/=, absento, symbolo, not-pairo,
/// booleano, listo with all of the predicates above in order.
inline ConstraintSystem standard_system() {
  return ConstraintSystem::Builder()
      .relation("=/=", 2)
      .relation("absento", 2)
      .relation("symbolo", 1)
      .relation("not-pairo", 1)
      .relation("booleano", 1)
      .relation("listo", 1)
      .violation(neq_violated)
      .violation(absento_violated)
      .violation(symbolo_violated)
      .violation(not_pairo_violated)
      .violation(booleano_blocked_violated)
      .violation(booleano_sort_violated)
      .violation(booleano_symbolo_clash_violated)
      .violation(listo_symbol_end_violated)
      .violation(listo_boolean_end_violated)
      .violation(listo_closed_end_violated)
      .violation(listo_nil_absent_violated)
      .build();
}

/// A system with only the built-in equality relation.
inline ConstraintSystem equality_only_system() {
  return ConstraintSystem::Builder().build();
}

}  // namespace mukanren
