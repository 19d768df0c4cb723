#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mukanren/term.hpp"

namespace mukanren {

/// Name of a constraint relation, e.g. "==", "=/=", "absento".
using RelationId = std::string;

/// Arguments of one atomic constraint, packed right-nested: a single
/// argument is stored as-is, two arguments as a pair with the second as the
/// raw tail, and so on with the last argument as the final tail.
inline Term pack_tuple(std::span<const Term> ts) {
  if (ts.empty()) throw std::invalid_argument("pack_tuple: empty argument list");
  Term out = ts.back();
  for (std::size_t i = ts.size() - 1; i-- > 0;) out = cons(ts[i], out);
  return out;
}

using TupleList = detail::ConsList<Term>;

/// The fixed field set of a constraint store: relation ids in registration
/// order with "==" always first, plus the declared arity of each. Shared by
/// every store of one constraint system.
class StoreLayout {
 public:
  struct Field {
    RelationId id;
    std::size_t arity;
  };

  explicit StoreLayout(std::vector<Field> extra_relations) {
    fields_.push_back(Field{"==", 2});
    for (Field& f : extra_relations) {
      if (f.id == "==") throw std::invalid_argument("relation id \"==\" is reserved");
      if (f.arity == 0) throw std::invalid_argument("relation arity must be at least 1");
      for (const Field& seen : fields_) {
        if (seen.id == f.id)
          throw std::invalid_argument("duplicate relation id: " + f.id);
      }
      fields_.push_back(std::move(f));
    }
  }

  std::size_t field_count() const { return fields_.size(); }
  const Field& field(std::size_t i) const { return fields_[i]; }

  bool has(std::string_view id) const {
    for (const Field& f : fields_) {
      if (f.id == id) return true;
    }
    return false;
  }

  std::size_t index_of(std::string_view id) const {
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (fields_[i].id == id) return i;
    }
    throw std::out_of_range("unknown relation id: " + std::string(id));
  }

  std::size_t arity_of(std::string_view id) const { return fields_[index_of(id)].arity; }

 private:
  std::vector<Field> fields_;
};

using StoreLayoutPtr = std::shared_ptr<const StoreLayout>;

/// Map from relation id to the list of packed constraint tuples added so
/// far, newest first. Fields only ever grow; extension produces a new store
/// sharing every untouched field.
class ConstraintStore {
 public:
  explicit ConstraintStore(StoreLayoutPtr layout)
      : layout_(std::move(layout)), fields_(layout_->field_count()) {}

  const StoreLayoutPtr& layout() const { return layout_; }

  const TupleList& tuples(std::string_view id) const {
    return fields_[layout_->index_of(id)];
  }

  const TupleList& tuples_at(std::size_t index) const { return fields_[index]; }

  /// New store with pack(ts) prepended to the id's field. The id must be
  /// registered and ts must match its declared arity.
  ConstraintStore extended(std::string_view id, std::span<const Term> ts) const {
    std::size_t index = layout_->index_of(id);
    if (ts.size() != layout_->field(index).arity)
      throw std::invalid_argument("arity mismatch for relation: " + std::string(id));
    ConstraintStore out = *this;
    out.fields_[index] = fields_[index].prepended(pack_tuple(ts));
    return out;
  }

  friend bool operator==(const ConstraintStore& a, const ConstraintStore& b) {
    if (a.fields_.size() != b.fields_.size()) return false;
    for (std::size_t i = 0; i < a.fields_.size(); ++i) {
      if (a.layout_->field(i).id != b.layout_->field(i).id) return false;
      const TupleList& ta = a.fields_[i];
      const TupleList& tb = b.fields_[i];
      if (ta.identical(tb)) continue;
      if (ta.size() != tb.size()) return false;
      auto ia = ta.begin(), ib = tb.begin();
      for (; ia != ta.end(); ++ia, ++ib) {
        if (!(*ia == *ib)) return false;
      }
    }
    return true;
  }
  friend bool operator!=(const ConstraintStore& a, const ConstraintStore& b) {
    return !(a == b);
  }

 private:
  StoreLayoutPtr layout_;
  std::vector<TupleList> fields_;
};

/// New store with the packed argument tuple prepended to key's field.
inline ConstraintStore ext_store(const ConstraintStore& store, std::string_view key,
                                 std::span<const Term> ts) {
  return store.extended(key, ts);
}

inline ConstraintStore ext_store(const ConstraintStore& store, std::string_view key,
                                 std::initializer_list<Term> ts) {
  return store.extended(key, std::span<const Term>(ts.begin(), ts.size()));
}

/// Read-only view handed to violation predicates: the tuple list of each
/// registered relation except "==", whose content predicates only ever see
/// through the solved substitution.
class StoreView {
 public:
  explicit StoreView(const ConstraintStore& store) : store_(&store) {}

  const TupleList& tuples(std::string_view id) const {
    if (id == "==") throw std::out_of_range("predicates cannot inspect the \"==\" field");
    return store_->tuples(id);
  }

 private:
  const ConstraintStore* store_;
};

}  // namespace mukanren
