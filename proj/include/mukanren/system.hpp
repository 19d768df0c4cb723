#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mukanren/goal.hpp"

namespace mukanren {

/// A total test supplied by the language designer: given the non-"==" tuple
/// lists and the substitution solved from the "==" field, reports whether
/// the store holds an unsatisfiable combination of constraints. Predicates
/// are expected to be monotone in the view: once true, adding tuples must
/// not make them false. The framework cannot enforce totality or
/// monotonicity; the property tests exercise both for the shipped library.
using ViolationPredicate = std::function<bool(const StoreView&, const Substitution&)>;

/// Folds unification over the packed "==" tuples, oldest constraint first,
/// starting from the empty substitution. Returns the most general unifier
/// of all the equations, or nullopt when they are unsatisfiable.
inline std::optional<Substitution> valid_eq(const TupleList& eqs) {
  std::vector<const Term*> ordered;
  ordered.reserve(eqs.size());
  for (const Term& pr : eqs) ordered.push_back(&pr);
  Substitution s;
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) {
    const Term& pr = **it;
    std::optional<Substitution> next = unify(pr.head(), pr.tail(), s);
    if (!next) return std::nullopt;
    s = std::move(*next);
  }
  return s;
}

namespace detail {
struct SystemData {
  StoreLayoutPtr layout;
  std::vector<ViolationPredicate> predicates;
};

inline bool store_invalid(const ConstraintStore& store, const SystemData& data) {
  std::optional<Substitution> s = valid_eq(store.tuples("=="));
  if (!s) return true;
  StoreView view(store);
  for (const ViolationPredicate& p : data.predicates) {
    if (p(view, *s)) return true;
  }
  return false;
}
}  // namespace detail

class GoalConstructor;

/// An immutable bundle of registered relations and violation predicates.
/// Built once via Builder, then shared freely; it generates the initial
/// store, the satisfiability check, and one goal constructor per relation.
class ConstraintSystem {
 public:
  class Builder {
   public:
    /// Registers a relation by name with a fixed arity ("==" is implicit
    /// and reserved).
    Builder& relation(std::string name, std::size_t arity) {
      relations_.push_back(StoreLayout::Field{std::move(name), arity});
      return *this;
    }

    /// Appends a violation predicate; predicates are consulted in
    /// registration order and combined disjunctively.
    Builder& violation(ViolationPredicate p) {
      predicates_.push_back(std::move(p));
      return *this;
    }

    ConstraintSystem build() const {
      auto data = std::make_shared<detail::SystemData>();
      data->layout = std::make_shared<const StoreLayout>(relations_);
      data->predicates = predicates_;
      return ConstraintSystem(std::move(data));
    }

   private:
    std::vector<StoreLayout::Field> relations_;
    std::vector<ViolationPredicate> predicates_;
  };

  const StoreLayoutPtr& layout() const { return data_->layout; }
  const std::vector<ViolationPredicate>& predicates() const { return data_->predicates; }

  bool has_relation(std::string_view id) const { return data_->layout->has(id); }
  std::size_t arity_of(std::string_view id) const { return data_->layout->arity_of(id); }

  GoalConstructor constructor(std::string_view id) const;

  friend class GoalConstructor;
  friend bool invalid(const ConstraintStore& store, const ConstraintSystem& sys);

 private:
  explicit ConstraintSystem(std::shared_ptr<const detail::SystemData> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const detail::SystemData> data_;
};

/// Store with every registered relation (including "==") mapped to the
/// empty tuple list.
inline ConstraintStore initial_store(const ConstraintSystem& sys) {
  return ConstraintStore(sys.layout());
}

/// True iff the store is unsatisfiable: either its equations have no
/// unifier, or some registered violation predicate fires given the solved
/// substitution.
inline bool invalid(const ConstraintStore& store, const ConstraintSystem& sys) {
  return detail::store_invalid(store, *sys.data_);
}

/// The implementation of one relation: applied to argument terms it yields
/// a goal that extends the store and keeps the state only if the extended
/// store is still satisfiable. Every constraint goal answers a stream of
/// length zero or one, with the counter unchanged.
class GoalConstructor {
 public:
  GoalConstructor(std::string id, const ConstraintSystem& sys)
      : id_(std::move(id)), data_(sys.data_) {
    arity_ = data_->layout->arity_of(id_);
  }

  const std::string& id() const { return id_; }
  std::size_t arity() const { return arity_; }

  Goal apply(std::vector<Term> ts) const {
    if (ts.size() != arity_)
      throw std::invalid_argument("relation " + id_ + " expects " + std::to_string(arity_) +
                                  " argument(s), got " + std::to_string(ts.size()));
    auto data = data_;
    std::string id = id_;
    return [data, id, ts = std::move(ts)](const State& st) {
      ConstraintStore extended =
          st.store.extended(id, std::span<const Term>(ts.data(), ts.size()));
      if (detail::store_invalid(extended, *data)) return Stream::empty();
      return Stream::unit(State{std::move(extended), st.counter});
    };
  }

  Goal operator()(Term a) const { return apply({std::move(a)}); }
  Goal operator()(Term a, Term b) const { return apply({std::move(a), std::move(b)}); }

 private:
  std::string id_;
  std::size_t arity_;
  std::shared_ptr<const detail::SystemData> data_;
};

inline GoalConstructor ConstraintSystem::constructor(std::string_view id) const {
  return GoalConstructor(std::string(id), *this);
}

/// Runs the goal on the fresh initial state of the system, pulls the
/// resulting stream, and takes at most n states (all of them when n is
/// absent).
inline std::vector<State> call_initial_state(std::optional<std::size_t> n, const Goal& g,
                                             const ConstraintSystem& sys) {
  return take(n, g(State{initial_store(sys), 0}));
}

}  // namespace mukanren
