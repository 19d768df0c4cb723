#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mukanren {

struct SourcePos {
  int line = 0;
  int col = 0;
};

/// Reader or program error with the position it was detected at.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourcePos pos)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " +
                           message),
        pos_(pos) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// One datum of the surface syntax: symbol, integer, boolean, or a
/// (possibly dotted) list. When dotted is set, the last item is the tail
/// after the dot and there are at least two items.
class SExpr {
 public:
  enum class Kind { symbol, number, boolean, list };

  static SExpr make_symbol(std::string name, SourcePos pos) {
    SExpr e(Kind::symbol, pos);
    e.text_ = std::move(name);
    return e;
  }
  static SExpr make_number(long long value, SourcePos pos) {
    SExpr e(Kind::number, pos);
    e.number_ = value;
    return e;
  }
  static SExpr make_boolean(bool value, SourcePos pos) {
    SExpr e(Kind::boolean, pos);
    e.flag_ = value;
    return e;
  }
  static SExpr make_list(std::vector<SExpr> items, bool dotted, SourcePos pos) {
    SExpr e(Kind::list, pos);
    e.items_ = std::move(items);
    e.dotted_ = dotted;
    return e;
  }

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

  bool is_symbol() const { return kind_ == Kind::symbol; }
  bool is_symbol(std::string_view name) const { return is_symbol() && text_ == name; }
  bool is_number() const { return kind_ == Kind::number; }
  bool is_boolean() const { return kind_ == Kind::boolean; }
  bool is_list() const { return kind_ == Kind::list; }

  const std::string& symbol() const { return text_; }
  long long number() const { return number_; }
  bool boolean_value() const { return flag_; }
  const std::vector<SExpr>& items() const { return items_; }
  bool dotted() const { return dotted_; }

 private:
  SExpr(Kind kind, SourcePos pos) : kind_(kind), pos_(pos) {}

  Kind kind_;
  SourcePos pos_;
  std::string text_;
  long long number_ = 0;
  bool flag_ = false;
  std::vector<SExpr> items_;
  bool dotted_ = false;
};

namespace detail {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_blank();
    while (!at_end()) {
      out.push_back(read_datum());
      skip_blank();
    }
    return out;
  }

 private:
  bool at_end() const { return index_ >= text_.size(); }
  char peek() const { return text_[index_]; }

  char advance() {
    char c = text_[index_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  SourcePos here() const { return SourcePos{line_, col_}; }

  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' ||
           c == '\'' || c == '`' || c == ',';
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read_datum() {
    skip_blank();
    if (at_end()) throw ParseError("unexpected end of input", here());
    SourcePos pos = here();
    char c = peek();
    if (c == '(') return read_list();
    if (c == ')') throw ParseError("unexpected ')'", pos);
    if (c == '\'') {
      advance();
      return wrap("quote", pos);
    }
    if (c == '`') {
      advance();
      return wrap("quasiquote", pos);
    }
    if (c == ',') {
      advance();
      return wrap("unquote", pos);
    }
    if (c == '#') return read_hash(pos);
    return read_atom(pos);
  }

  SExpr wrap(const char* head, SourcePos pos) {
    std::vector<SExpr> items;
    items.push_back(SExpr::make_symbol(head, pos));
    items.push_back(read_datum());
    return SExpr::make_list(std::move(items), false, pos);
  }

  SExpr read_hash(SourcePos pos) {
    advance();  // '#'
    if (!at_end() && (peek() == 't' || peek() == 'f')) {
      char c = advance();
      if (at_end() || is_delimiter(peek()))
        return SExpr::make_boolean(c == 't', pos);
    }
    throw ParseError("unknown '#' syntax (expected #t or #f)", pos);
  }

  SExpr read_atom(SourcePos pos) {
    std::string token;
    while (!at_end() && !is_delimiter(peek())) token.push_back(advance());
    if (token.empty()) throw ParseError("expected a datum", pos);
    if (std::isdigit(static_cast<unsigned char>(token[0]))) {
      for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError("malformed number: " + token, pos);
      }
      try {
        return SExpr::make_number(std::stoll(token), pos);
      } catch (const std::out_of_range&) {
        throw ParseError("number out of range: " + token, pos);
      }
    }
    return SExpr::make_symbol(std::move(token), pos);
  }

  SExpr read_list() {
    SourcePos pos = here();
    advance();  // '('
    std::vector<SExpr> items;
    bool dotted = false;
    for (;;) {
      skip_blank();
      if (at_end()) throw ParseError("unterminated list", pos);
      if (peek() == ')') {
        advance();
        break;
      }
      if (peek() == '.' && dot_is_separator()) {
        SourcePos dot_pos = here();
        advance();
        if (items.empty()) throw ParseError("'.' with no preceding datum", dot_pos);
        skip_blank();
        if (at_end() || peek() == ')') throw ParseError("'.' with no tail datum", dot_pos);
        items.push_back(read_datum());
        dotted = true;
        skip_blank();
        if (at_end() || peek() != ')') throw ParseError("expected ')' after dotted tail", here());
        advance();
        break;
      }
      items.push_back(read_datum());
    }
    return SExpr::make_list(std::move(items), dotted, pos);
  }

  bool dot_is_separator() const {
    // '.' starts a dotted tail only when it stands alone.
    std::size_t next = index_ + 1;
    return next >= text_.size() || is_delimiter(text_[next]);
  }

  std::string_view text_;
  std::size_t index_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

/// Reads every top-level datum of the given source text.
inline std::vector<SExpr> read_sexprs(std::string_view text) {
  return detail::Reader(text).read_all();
}

}  // namespace mukanren
