#pragma once
// Minimal s-expression reader for the PDDL subset. Atoms are lower-cased;
// ';' starts a comment that runs to the end of the line.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stacksolve/core.hpp"

namespace stacksolve {

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : ParseError("syntax error at offset " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct SExpr {
  std::string atom;  // set iff is_atom
  std::vector<SExpr> items;
  bool is_atom = false;
  std::size_t offset = 0;

  bool is_list() const { return !is_atom; }
  bool head_is(std::string_view name) const {
    return is_list() && !items.empty() && items.front().is_atom && items.front().atom == name;
  }
};

namespace detail {

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    for (skip(); pos_ < text_.size(); skip()) out.push_back(read());
    return out;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    const std::size_t start = pos_;
    char c = text_[pos_];
    if (c == ')') throw SyntaxError(pos_, "unexpected ')'");
    if (c == '(') {
      ++pos_;
      SExpr list;
      list.offset = start;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw SyntaxError(start, "unbalanced '('");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    SExpr atom;
    atom.is_atom = true;
    atom.offset = start;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == ';') break;
      atom.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      ++pos_;
    }
    return atom;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<SExpr> read_sexprs(std::string_view text) {
  return detail::SExprReader(text).read_all();
}

inline SExpr read_single_sexpr(std::string_view text) {
  auto all = read_sexprs(text);
  if (all.empty()) throw SyntaxError(0, "empty input");
  if (all.size() > 1) throw SyntaxError(all[1].offset, "trailing content after expression");
  return std::move(all.front());
}

}  // namespace stacksolve
