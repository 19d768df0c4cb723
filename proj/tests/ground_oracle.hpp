#pragma once

// Independent decision procedure for "do these two terms have a common
// ground instance?", used to cross-check unification. It enumerates
// assignments of ground terms to the pair's variables, deepening the ground
// universe step by step, and checks candidate assignments by plain
// substitute-and-compare. It never consults walk/unify/Substitution, so it
// stays an independent witness for the unifier.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mukanren/term.hpp"

namespace mktest {

using namespace mukanren;

/// All ground terms of depth <= depth over the four atoms a, b, #t, ().
/// Depth 0 holds the atoms alone; each level adds every pair of the
/// previous level's terms. Sizes: 4, 20, 404, 163220.
inline const std::vector<Term>& ground_universe(int depth) {
  static std::vector<std::vector<Term>> levels = [] {
    std::vector<std::vector<Term>> out;
    out.push_back({sym("a"), sym("b"), boolean(true), nil()});
    return out;
  }();
  while (static_cast<int>(levels.size()) <= depth) {
    const std::vector<Term>& prev = levels.back();
    std::vector<Term> next = prev;
    next.reserve(prev.size() + prev.size() * prev.size());
    for (const Term& h : prev) {
      for (const Term& t : prev) next.push_back(cons(h, t));
    }
    levels.push_back(std::move(next));
  }
  return levels[static_cast<std::size_t>(depth)];
}

inline void collect_vars(const Term& t, std::vector<VarIndex>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_index()) == out.end())
      out.push_back(t.var_index());
  } else if (t.is_pair()) {
    collect_vars(t.head(), out);
    collect_vars(t.tail(), out);
  }
}

inline int term_depth(const Term& t) {
  if (!t.is_pair()) return 0;
  return 1 + std::max(term_depth(t.head()), term_depth(t.tail()));
}

namespace oracle_detail {

using Assignment = std::map<VarIndex, Term>;

/// No definite clash between u and v under the partial assignment: aligned
/// positions that are fully ground on both sides must be equal; positions
/// still containing an unassigned variable are unconstrained.
inline bool compatible(const Term& u, const Term& v, const Assignment& partial) {
  const Term* pu = &u;
  const Term* pv = &v;
  if (pu->is_var()) {
    auto it = partial.find(pu->var_index());
    if (it == partial.end()) return true;  // unconstrained so far
    pu = &it->second;
  }
  if (pv->is_var()) {
    auto it = partial.find(pv->var_index());
    if (it == partial.end()) return true;
    pv = &it->second;
  }
  // Assigned values are ground, so both sides are now variable-free at the
  // top: a pair-vs-atom mismatch is definite.
  if (pu->is_pair() && pv->is_pair())
    return compatible(pu->head(), pv->head(), partial) &&
           compatible(pu->tail(), pv->tail(), partial);
  if (pu->is_pair() || pv->is_pair()) return false;
  return *pu == *pv;
}

/// A term also counts ground once every variable in it is assigned; this
/// substitutes assigned values (assignments map to ground terms only).
inline Term plug(const Term& t, const Assignment& a) {
  if (t.is_var()) {
    auto it = a.find(t.var_index());
    return it == a.end() ? t : it->second;
  }
  if (t.is_pair()) return cons(plug(t.head(), a), plug(t.tail(), a));
  return t;
}

inline bool assign_next(const Term& u, const Term& v, const std::vector<VarIndex>& vars,
                        std::size_t next, const std::vector<Term>& candidates,
                        Assignment& partial, long& budget) {
  if (next == vars.size()) return plug(u, partial) == plug(v, partial);
  for (const Term& candidate : candidates) {
    if (--budget <= 0) return false;
    partial[vars[next]] = candidate;
    if (compatible(u, v, partial) &&
        assign_next(u, v, vars, next + 1, candidates, partial, budget))
      return true;
    partial.erase(vars[next]);
  }
  return false;
}

}  // namespace oracle_detail

struct OracleOutcome {
  bool instance_found = false;
  bool budget_exhausted = false;
};

/// Searches for a common ground instance of u and v, trying assignments
/// into ground universes of growing depth up to max_var_depth. The budget
/// bounds the number of candidate values tried across the whole search.
inline OracleOutcome find_common_instance(const Term& u, const Term& v, int max_var_depth,
                                          long budget = 4'000'000) {
  std::vector<VarIndex> vars;
  collect_vars(u, vars);
  collect_vars(v, vars);
  OracleOutcome out;
  if (vars.empty()) {
    out.instance_found = (u == v);
    return out;
  }
  oracle_detail::Assignment partial;
  if (!oracle_detail::compatible(u, v, partial)) return out;  // definite clash
  for (int depth = 0; depth <= max_var_depth; ++depth) {
    const std::vector<Term>& candidates = ground_universe(depth);
    if (oracle_detail::assign_next(u, v, vars, 0, candidates, partial, budget)) {
      out.instance_found = true;
      return out;
    }
    if (budget <= 0) {
      out.budget_exhausted = true;
      return out;
    }
  }
  return out;
}

}  // namespace mktest
