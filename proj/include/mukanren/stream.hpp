#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "mukanren/store.hpp"

namespace mukanren {

/// One point of the search: the constraint store so far and the next fresh
/// variable index. Never mutated by goals.
struct State {
  ConstraintStore store;
  VarIndex counter = 0;

  friend bool operator==(const State& a, const State& b) {
    return a.counter == b.counter && a.store == b.store;
  }
  friend bool operator!=(const State& a, const State& b) { return !(a == b); }
};

/// A lazy, possibly infinite sequence of states. A node is either empty,
/// mature (a state plus the rest), or immature (a deferred computation that
/// yields the next node when forced). Forcing always terminates in one step;
/// thunks are not memoized, so re-forcing recomputes.
class Stream {
  struct Node;

 public:
  using Thunk = std::function<Stream()>;

  Stream() = default;  // empty

  static Stream empty() { return Stream(); }
  static Stream cons(State state, Stream rest);
  static Stream unit(State state) { return cons(std::move(state), empty()); }
  static Stream suspend(Thunk thunk);

  bool is_empty() const { return node_ == nullptr; }
  bool is_mature() const;
  bool is_immature() const;

  const State& head() const;
  const Stream& rest() const;

  /// One forcing step of an immature node.
  Stream force() const;

 private:
  explicit Stream(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Stream::Node {
  struct Mature {
    State state;
    Stream rest;
  };
  std::variant<Mature, Thunk> v;
};

inline Stream Stream::cons(State state, Stream rest) {
  return Stream(std::make_shared<const Node>(
      Node{Node::Mature{std::move(state), std::move(rest)}}));
}

inline Stream Stream::suspend(Thunk thunk) {
  return Stream(std::make_shared<const Node>(Node{std::move(thunk)}));
}

inline bool Stream::is_mature() const { return node_ && node_->v.index() == 0; }
inline bool Stream::is_immature() const { return node_ && node_->v.index() == 1; }

inline const State& Stream::head() const { return std::get<Node::Mature>(node_->v).state; }
inline const Stream& Stream::rest() const { return std::get<Node::Mature>(node_->v).rest; }

inline Stream Stream::force() const { return std::get<Thunk>(node_->v)(); }

/// Interleaving merge. Appending onto a mature prefix concatenates; hitting
/// an immature node defers with the arguments swapped, which is what makes
/// disjunction fair between branches.
inline Stream append_streams(Stream s1, Stream s2) {
  std::vector<State> prefix;
  while (s1.is_mature()) {
    prefix.push_back(s1.head());
    s1 = s1.rest();
  }
  Stream out;
  if (s1.is_empty()) {
    out = std::move(s2);
  } else {
    out = Stream::suspend([s1, s2]() { return append_streams(s2, s1.force()); });
  }
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = Stream::cons(std::move(*it), std::move(out));
  return out;
}

/// Forces immature nodes until the stream is empty or mature. May not
/// terminate on a stream with no answers and no productive end.
inline Stream pull(Stream s) {
  while (s.is_immature()) s = s.force();
  return s;
}

/// First n states of a pulled stream (all of them when n is absent),
/// pulling between elements.
inline std::vector<State> take(std::optional<std::size_t> n, Stream s) {
  std::vector<State> out;
  if (n && *n == 0) return out;
  s = pull(std::move(s));
  while (!s.is_empty()) {
    out.push_back(s.head());
    if (n && out.size() == *n) break;
    s = pull(s.rest());
  }
  return out;
}

}  // namespace mukanren
