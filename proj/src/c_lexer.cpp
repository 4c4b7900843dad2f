#include "rvvport/c_lexer.hpp"

#include <array>
#include <cctype>

#include "rvvport/error.hpp"

namespace rvvport {
namespace {

constexpr std::array<std::string_view, 24> kMultiPunct{
    ">>=", "<<=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "^=", "|=", "##", "::"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexedSource run() {
    LexedSource out;
    bool line_start = true;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        advance();
        line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {
        advance();
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        skip_line_comment();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (c == '#' && line_start) {
        directive(out);
        line_start = true;
        continue;
      }
      line_start = false;
      out.tokens.push_back(next_token());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_line_comment() {
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && peek(1) == '\n') advance();
      advance();
    }
  }

  void skip_block_comment() {
    const int line = line_, col = col_;
    advance();
    advance();
    while (pos_ < src_.size()) {
      if (src_[pos_] == '*' && peek(1) == '/') {
        advance();
        advance();
        return;
      }
      advance();
    }
    throw ParseError("unterminated comment", line, col);
  }

  void directive(LexedSource& out) {
    std::string text;
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && peek(1) == '\n') {
        advance();
        advance();
        text.push_back(' ');
        continue;
      }
      if (src_[pos_] == '/' && peek(1) == '*') {
        skip_block_comment();
        text.push_back(' ');
        continue;
      }
      if (src_[pos_] == '/' && peek(1) == '/') {
        skip_line_comment();
        break;
      }
      text.push_back(src_[pos_]);
      advance();
    }
    // "#  define NAME ..."
    std::size_t i = 1;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (text.compare(i, 6, "define") != 0) return;
    i += 6;
    skip_ws();
    std::size_t j = i;
    while (j < text.size() && ident_char(text[j])) ++j;
    if (j > i) out.macros.insert(text.substr(i, j - i));
  }

  Token next_token() {
    Token tok;
    tok.line = line_;
    tok.column = col_;
    const char c = src_[pos_];
    const std::size_t start = pos_;

    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
      // Wide/UTF string prefixes fold into the literal that follows.
      if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
        const auto prefix = src_.substr(start, pos_ - start);
        if (prefix == "L" || prefix == "u" || prefix == "U" || prefix == "u8") {
          return quoted(tok, start, src_[pos_]);
        }
      }
      tok.kind = TokenKind::kIdent;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      while (pos_ < src_.size()) {
        const char d = src_[pos_];
        if ((d == '+' || d == '-') && pos_ > start) {
          const char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_ - 1])));
          if (prev == 'e' || prev == 'p') {
            advance();
            continue;
          }
          break;
        }
        if (!ident_char(d) && d != '.') break;
        advance();
      }
      tok.kind = TokenKind::kNumber;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (c == '"' || c == '\'') return quoted(tok, start, c);

    for (auto p : kMultiPunct) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t k = 0; k < p.size(); ++k) advance();
        tok.kind = TokenKind::kPunct;
        tok.text = std::string(p);
        return tok;
      }
    }
    advance();
    tok.kind = TokenKind::kPunct;
    tok.text = std::string(1, c);
    return tok;
  }

  Token quoted(Token tok, std::size_t start, char quote) {
    advance();  // opening quote
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError(quote == '"' ? "unterminated string literal" : "unterminated character constant",
                         tok.line, tok.column);
      }
      if (src_[pos_] == '\\') {
        advance();
        if (pos_ < src_.size()) advance();
        continue;
      }
      if (src_[pos_] == quote) {
        advance();
        break;
      }
      advance();
    }
    tok.kind = quote == '"' ? TokenKind::kString : TokenKind::kChar;
    tok.text = std::string(src_.substr(start, pos_ - start));
    return tok;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool no_space_before(const Token& t) {
  return t.is(",") || t.is(";") || t.is(")") || t.is("]") || t.is(".") || t.is("->");
}

bool no_space_after(const Token& t) {
  return t.is("(") || t.is("[") || t.is(".") || t.is("->");
}

}  // namespace

LexedSource tokenize_c(std::string_view source) { return Lexer(source).run(); }

std::string join_tokens(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (i > 0) {
      const Token& prev = tokens[i - 1];
      const bool call_paren = t.is("(") && (prev.is_ident() || prev.is(")") || prev.is("]"));
      const bool index_bracket = t.is("[");
      const auto operand_end = [](const Token& x) { return x.is_ident() || x.kind == TokenKind::kNumber || x.is(")") || x.is("]"); };
      const bool postfix = (t.is("++") || t.is("--")) && operand_end(prev);
      const bool prefix = (prev.is("++") || prev.is("--")) && t.is_ident() && (i < 2 || !operand_end(tokens[i - 2]));
      if (!(no_space_before(t) || no_space_after(prev) || call_paren || index_bracket || postfix || prefix)) {
        out.push_back(' ');
      }
    }
    out += t.text;
  }
  return out;
}

}  // namespace rvvport
