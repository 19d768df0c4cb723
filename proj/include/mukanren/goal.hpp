#pragma once

#include <functional>
#include <utility>

#include "mukanren/stream.hpp"

namespace mukanren {

/// A goal maps a state to a lazy stream of states. Goals never mutate their
/// input state.
using Goal = std::function<Stream(const State&)>;

/// Goal with exactly the input state as its one answer.
inline Goal succeed() {
  return [](const State& st) { return Stream::unit(st); };
}

/// Goal with no answers.
inline Goal fail() {
  return [](const State&) { return Stream::empty(); };
}

/// Scopes a fresh variable: the body receives the variable carrying the
/// current counter value and runs with the counter advanced.
inline Goal call_fresh(std::function<Goal(Term)> body) {
  return [body = std::move(body)](const State& st) {
    Goal g = body(var(st.counter));
    return g(State{st.store, st.counter + 1});
  };
}

/// Runs both goals on the same state and merges the answer streams.
inline Goal disj(Goal g1, Goal g2) {
  return [g1 = std::move(g1), g2 = std::move(g2)](const State& st) {
    return append_streams(g1(st), g2(st));
  };
}

/// Maps g over every state of s, merging the result streams.
inline Stream append_map_streams(const Goal& g, Stream s) {
  std::vector<State> prefix;
  while (s.is_mature()) {
    prefix.push_back(s.head());
    s = s.rest();
  }
  Stream out;
  if (s.is_empty()) {
    out = Stream::empty();
  } else {
    out = Stream::suspend([g, s]() { return append_map_streams(g, s.force()); });
  }
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = append_streams(g(*it), std::move(out));
  return out;
}

/// Runs g1, then g2 on each of g1's answers.
inline Goal conj(Goal g1, Goal g2) {
  return [g1 = std::move(g1), g2 = std::move(g2)](const State& st) {
    return append_map_streams(g2, g1(st));
  };
}

/// Wraps goal construction in an immature stream node. Recursive relations
/// are ordinary functions whose body is built inside the thunk, so applying
/// a relation never runs its body before the stream is forced:
///
///   Goal fives(Term x) {
///     return delay([x] { return disj(eq(x, sym("five")), fives(x)); });
///   }
///
/// Thunks are re-evaluated on every force (no memoization).
inline Goal delay(std::function<Goal()> make) {
  return [make = std::move(make)](const State& st) {
    return Stream::suspend([make, st]() { return make()(st); });
  };
}

namespace detail {
inline Stream ifte_step(Stream s, const Goal& g2, const Goal& g3, const State& st) {
  if (s.is_empty()) return g3(st);
  if (s.is_immature()) {
    return Stream::suspend([s, g2, g3, st]() { return ifte_step(s.force(), g2, g3, st); });
  }
  return append_map_streams(g2, s);
}

inline Stream once_step(Stream s) {
  if (s.is_empty()) return Stream::empty();
  if (s.is_immature()) {
    return Stream::suspend([s]() { return once_step(s.force()); });
  }
  return Stream::unit(s.head());
}
}  // namespace detail

/// Soft-cut: if g1 has any answer, commits to g2 mapped over all of g1's
/// answers; otherwise behaves as g3 on the original state.
inline Goal ifte(Goal g1, Goal g2, Goal g3) {
  return [g1 = std::move(g1), g2 = std::move(g2), g3 = std::move(g3)](const State& st) {
    return detail::ifte_step(g1(st), g2, g3, st);
  };
}

/// Committed choice: keeps only the first answer of g.
inline Goal once(Goal g) {
  return [g = std::move(g)](const State& st) { return detail::once_step(g(st)); };
}

}  // namespace mukanren
