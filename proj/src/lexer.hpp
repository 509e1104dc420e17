#pragma once

// Tokenizer shared by the term, formula, and f-structure readers.

#include <string>
#include <string_view>
#include <vector>

#include "glue/error.hpp"

namespace glue::detail {

enum class Tok {
  Ident,    // [A-Za-z_][A-Za-z0-9_]*, optionally suffixed with "_σ"
  Quoted,   // 'text'
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Colon,
  Dot,
  Lambda,   // \ or λ
  Caret,    // ^ or ↑
  Star,     // * or ⊗
  Means,    // ~> or ⤳
  Limp,     // -o or ⊸
  Arrow,    // -> or →
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text, int first_line = 1, int first_column = 1);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace glue::detail
