#pragma once

#include <cstddef>
#include <iterator>
#include <memory>
#include <utility>

namespace mukanren::detail {

/// Persistent singly-linked list. Extension prepends and shares the tail,
/// so copies are O(1) and branches of a search share structure.
template <typename T>
class ConsList {
  struct Node {
    T value;
    std::shared_ptr<const Node> next;
  };

 public:
  ConsList() = default;

  ConsList prepended(T value) const {
    ConsList out;
    out.head_ = std::make_shared<const Node>(Node{std::move(value), head_});
    out.size_ = size_ + 1;
    return out;
  }

  bool empty() const { return head_ == nullptr; }
  std::size_t size() const { return size_; }

  const T& front() const { return head_->value; }

  ConsList rest() const {
    ConsList out;
    out.head_ = head_->next;
    out.size_ = size_ - 1;
    return out;
  }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = T;
    using difference_type = std::ptrdiff_t;
    using pointer = const T*;
    using reference = const T&;

    iterator() = default;
    explicit iterator(const Node* node) : node_(node) {}

    reference operator*() const { return node_->value; }
    pointer operator->() const { return &node_->value; }
    iterator& operator++() {
      node_ = node_->next.get();
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) = default;

   private:
    const Node* node_ = nullptr;
  };

  iterator begin() const { return iterator(head_.get()); }
  iterator end() const { return iterator(); }

  /// Shared-structure fast path: true when both lists share the same head node.
  bool identical(const ConsList& other) const { return head_ == other.head_; }

 private:
  std::shared_ptr<const Node> head_;
  std::size_t size_ = 0;
};

}  // namespace mukanren::detail
