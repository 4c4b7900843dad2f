#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rvvport {

enum class TokenKind { kIdent, kNumber, kString, kChar, kPunct };

struct Token {
  TokenKind kind = TokenKind::kPunct;
  std::string text;
  int line = 0;
  int column = 0;

  bool is(std::string_view s) const { return text == s; }
  bool is_ident() const { return kind == TokenKind::kIdent; }
};

struct LexedSource {
  std::vector<Token> tokens;
  /// Names introduced by `#define NAME`.
  std::set<std::string> macros;
};

/// Tokenizes C source. Comments are dropped, preprocessor lines (including
/// backslash continuations) are skipped after recording #define names.
/// Throws ParseError on unterminated comments, strings or character constants.
LexedSource tokenize_c(std::string_view source);

/// Joins tokens with whitespace that never fuses two tokens into one.
std::string join_tokens(std::span<const Token> tokens);

}  // namespace rvvport
