#include "lexer.hpp"

#include <cctype>

namespace glue::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Symbol {
  std::string_view spelling;
  Tok kind;
};

// Longest spellings first.
constexpr Symbol kSymbols[] = {
    {"\xE2\xA4\xB3", Tok::Means},  // ⤳
    {"\xE2\x8A\xB8", Tok::Limp},   // ⊸
    {"\xE2\x8A\x97", Tok::Star},   // ⊗
    {"\xE2\x86\x92", Tok::Arrow},  // →
    {"\xE2\x86\x91", Tok::Caret},  // ↑
    {"\xCE\xBB", Tok::Lambda},     // λ
    {"~>", Tok::Means},
    {"-o", Tok::Limp},
    {"->", Tok::Arrow},
    {"(", Tok::LParen},
    {")", Tok::RParen},
    {"[", Tok::LBracket},
    {"]", Tok::RBracket},
    {"{", Tok::LBrace},
    {"}", Tok::RBrace},
    {",", Tok::Comma},
    {";", Tok::Semi},
    {":", Tok::Colon},
    {".", Tok::Dot},
    {"\\", Tok::Lambda},
    {"^", Tok::Caret},
    {"*", Tok::Star},
};

constexpr std::string_view kSigmaSuffix = "_\xCF\x83";  // _σ

}  // namespace

std::vector<Token> tokenize(std::string_view text, int first_line, int first_column) {
  std::vector<Token> out;
  int line = first_line;
  int column = first_column;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++column;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int tok_line = line;
    int tok_column = column;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      // "-o" must not be swallowed, but "f_σ" is one identifier.
      if (j > i + 1 && text[j - 1] == '_' && text.substr(j - 1, kSigmaSuffix.size()) == kSigmaSuffix) {
        j += kSigmaSuffix.size() - 1;
      }
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), tok_line, tok_column});
      advance(j - i);
      continue;
    }
    if (c == '\'') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '\'' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '\'') {
        throw ParseError("unterminated quoted symbol", tok_line, tok_column);
      }
      out.push_back({Tok::Quoted, std::string(text.substr(i + 1, j - i - 1)), tok_line, tok_column});
      advance(j + 1 - i);
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (text.substr(i, sym.spelling.size()) == sym.spelling) {
        out.push_back({sym.kind, std::string(sym.spelling), tok_line, tok_column});
        advance(sym.spelling.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(std::string("unexpected character '") + c + "'", tok_line, tok_column);
    }
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

}  // namespace glue::detail
