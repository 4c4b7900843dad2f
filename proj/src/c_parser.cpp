#include <algorithm>
#include <array>

#include "front_detail.hpp"
#include "rvvport/error.hpp"
#include "rvvport/vector_type.hpp"

namespace rvvport::detail {
namespace {

constexpr std::array<std::string_view, 14> kTypeKeywords{
    "void", "char", "short", "int", "long", "float", "double", "signed", "unsigned",
    "_Bool", "bool", "_Float16", "__fp16", "_Complex"};

constexpr std::array<std::string_view, 13> kQualifiers{
    "const",    "volatile",   "static",     "register", "extern", "auto",           "restrict",
    "__restrict", "__restrict__", "inline", "__inline", "__inline__", "_Thread_local"};

constexpr std::array<std::string_view, 16> kOtherKeywords{
    "if",    "else",  "for",  "while",   "do",       "return",  "break",    "continue",
    "goto",  "switch", "case", "default", "sizeof",  "_Alignof", "typedef", "__attribute__"};

bool contains(auto const& list, std::string_view s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

[[noreturn]] void fail_at(const std::string& message, const Token& at) {
  throw ParseError(message, at.line, at.column);
}

/// Recursive-descent parser over a function body.
class StmtParser {
 public:
  StmtParser(TokenSpan tokens, const Token& fallback) : t_(tokens), fallback_(fallback) {}

  SyntaxNode parse_all() {
    SyntaxNode root;
    root.kind = SyntaxKind::kCompound;
    root.span = span_of(t_);
    while (pos_ < t_.size()) root.children.push_back(statement());
    return root;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < t_.size() ? t_[pos_ + ahead] : end_token();
  }

  const Token& end_token() const { return t_.empty() ? fallback_ : t_.back(); }

  bool at_end() const { return pos_ >= t_.size(); }

  const Token& expect(std::string_view text) {
    if (at_end()) fail_at("expected '" + std::string(text) + "' before end of function", end_token());
    if (!peek().is(text)) fail_at("expected '" + std::string(text) + "' but found '" + peek().text + "'", peek());
    return t_[pos_++];
  }

  /// Contents of a parenthesized group starting at the current '('.
  std::vector<Token> paren_group() {
    if (at_end() || !peek().is("(")) fail_at("expected '('", peek());
    const std::size_t close = find_match(t_, pos_);
    std::vector<Token> inner(t_.begin() + static_cast<std::ptrdiff_t>(pos_ + 1),
                             t_.begin() + static_cast<std::ptrdiff_t>(close));
    pos_ = close + 1;
    return inner;
  }

  /// Tokens up to the next top-level ';', which is consumed.
  std::vector<Token> until_semicolon() {
    std::vector<Token> out;
    while (true) {
      if (at_end()) fail_at("expected ';' before end of function", end_token());
      const Token& tok = peek();
      if (tok.is(";")) {
        ++pos_;
        return out;
      }
      if (tok.is("}")) fail_at("expected ';' before '}'", tok);
      if (tok.is(")") || tok.is("]")) fail_at("unbalanced '" + tok.text + "'", tok);
      if (tok.is("(") || tok.is("[") || tok.is("{")) {
        const std::size_t close = find_match(t_, pos_);
        out.insert(out.end(), t_.begin() + static_cast<std::ptrdiff_t>(pos_),
                   t_.begin() + static_cast<std::ptrdiff_t>(close + 1));
        pos_ = close + 1;
        continue;
      }
      out.push_back(tok);
      ++pos_;
    }
  }

  SyntaxNode statement() {
    if (at_end()) fail_at("expected a statement before end of function", end_token());
    const Token& tok = peek();
    const std::size_t start = pos_;
    SyntaxNode node;

    if (tok.is("{")) {
      const std::size_t close = find_match(t_, pos_);
      StmtParser inner(t_.subspan(pos_ + 1, close - pos_ - 1), tok);
      node = inner.parse_all();
      pos_ = close + 1;
    } else if (tok.is(";")) {
      ++pos_;
      node.kind = SyntaxKind::kEmpty;
    } else if (tok.is("}")) {
      fail_at("unbalanced braces: unexpected '}'", tok);
    } else if (tok.is_ident() && (tok.is("goto") || tok.is("switch") || tok.is("case") || tok.is("default") ||
                                  tok.is("asm") || tok.is("__asm__") || tok.is("__asm"))) {
      const std::string what = tok.text.rfind("__asm", 0) == 0 ? "asm" : tok.text;
      fail_at("unsupported construct: " + what, tok);
    } else if (tok.is_ident() && !is_c_keyword(tok.text) && peek(1).is(":")) {
      fail_at("unsupported construct: label '" + tok.text + "'", tok);
    } else if (tok.is("if")) {
      ++pos_;
      node.kind = SyntaxKind::kIf;
      node.cond = paren_group();
      if (node.cond.empty()) fail_at("empty if condition", tok);
      node.children.push_back(statement());
      if (!at_end() && peek().is("else")) {
        ++pos_;
        node.children.push_back(statement());
      }
    } else if (tok.is("else")) {
      fail_at("'else' without a matching 'if'", tok);
    } else if (tok.is("while")) {
      ++pos_;
      node.kind = SyntaxKind::kWhile;
      node.cond = paren_group();
      if (node.cond.empty()) fail_at("empty while condition", tok);
      node.children.push_back(statement());
    } else if (tok.is("do")) {
      ++pos_;
      node.kind = SyntaxKind::kDoWhile;
      node.children.push_back(statement());
      expect("while");
      node.cond = paren_group();
      if (node.cond.empty()) fail_at("empty do-while condition", tok);
      expect(";");
    } else if (tok.is("for")) {
      ++pos_;
      node.kind = SyntaxKind::kFor;
      const auto header = paren_group();
      std::vector<std::size_t> semis;
      for (std::size_t i = 0; i < header.size(); ++i) {
        const auto& h = header[i];
        if (h.is("(") || h.is("[") || h.is("{")) {
          i = find_match(header, i);
        } else if (h.is(";")) {
          semis.push_back(i);
        }
      }
      if (semis.size() != 2) fail_at("malformed for-loop header", tok);
      node.head.assign(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(semis[0]));
      node.cond.assign(header.begin() + static_cast<std::ptrdiff_t>(semis[0] + 1),
                       header.begin() + static_cast<std::ptrdiff_t>(semis[1]));
      node.step.assign(header.begin() + static_cast<std::ptrdiff_t>(semis[1] + 1), header.end());
      node.children.push_back(statement());
    } else if (tok.is("return")) {
      ++pos_;
      node.kind = SyntaxKind::kReturn;
      node.head = until_semicolon();
    } else if (tok.is("break") || tok.is("continue")) {
      ++pos_;
      node.kind = tok.is("break") ? SyntaxKind::kBreak : SyntaxKind::kContinue;
      expect(";");
    } else {
      node.head = until_semicolon();
      node.kind = SyntaxKind::kExpr;  // refined to kDecl by the caller's type knowledge
    }

    node.span = span_of(t_.subspan(start, pos_ - start));
    return node;
  }

  TokenSpan t_;
  const Token& fallback_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t find_match(TokenSpan tokens, std::size_t open) {
  std::vector<std::size_t> stack{open};
  auto closer = [](const std::string& s) { return s == "(" ? ")" : s == "[" ? "]" : "}"; };
  for (std::size_t i = open + 1; i < tokens.size(); ++i) {
    const auto& s = tokens[i].text;
    if (tokens[i].kind != TokenKind::kPunct) continue;
    if (s == "(" || s == "[" || s == "{") {
      stack.push_back(i);
    } else if (s == ")" || s == "]" || s == "}") {
      const auto& top = tokens[stack.back()];
      if (closer(top.text) != s) {
        if (s == "}" || top.is("{")) fail_at("unbalanced braces: unexpected '" + s + "'", tokens[i]);
        fail_at("unbalanced '" + s + "'", tokens[i]);
      }
      stack.pop_back();
      if (stack.empty()) return i;
    }
  }
  const auto& top = tokens[stack.back()];
  if (top.is("{")) fail_at("unbalanced braces: missing '}'", top);
  fail_at("unbalanced '" + top.text + "'", top);
}

bool is_type_keyword(const std::string& s) { return contains(kTypeKeywords, s); }
bool is_qualifier(const std::string& s) { return contains(kQualifiers, s); }

bool is_c_keyword(const std::string& s) {
  return is_type_keyword(s) || is_qualifier(s) || contains(kOtherKeywords, s) || s == "struct" ||
         s == "union" || s == "enum";
}

bool looks_like_type_name(const std::string& s, const std::set<std::string>& types) {
  if (is_type_keyword(s) || types.count(s) != 0) return true;
  if (parse_vector_type(s)) return true;
  return s.size() > 2 && s.compare(s.size() - 2, 2, "_t") == 0;
}

bool is_declaration(TokenSpan tokens, const std::set<std::string>& types) {
  std::size_t i = 0;
  while (i < tokens.size() && tokens[i].is_ident() && is_qualifier(tokens[i].text)) ++i;
  if (i >= tokens.size() || !tokens[i].is_ident()) return false;
  const auto& first = tokens[i].text;
  if (first == "struct" || first == "union" || first == "enum") return true;
  if (is_type_keyword(first)) return true;
  if (i > 0 && i + 1 < tokens.size() && tokens[i + 1].is_ident()) return true;  // "const T x"
  if (!looks_like_type_name(first, types)) return false;
  if (i + 1 >= tokens.size()) return false;
  const auto& next = tokens[i + 1];
  return next.is_ident() || next.is("*");
}

bool is_assignment_op(const Token& t) {
  if (t.kind != TokenKind::kPunct) return false;
  static const std::array<std::string_view, 11> ops{"=", "+=", "-=", "*=", "/=", "%=",
                                                    "&=", "|=", "^=", "<<=", ">>="};
  return contains(ops, t.text);
}

SourceSpan span_of(TokenSpan tokens) {
  if (tokens.empty()) return {};
  const auto& a = tokens.front();
  const auto& b = tokens.back();
  return {a.line, a.column, b.line, b.column + static_cast<int>(b.text.size())};
}

TopLevel scan_top_level(TokenSpan t) {
  TopLevel out;
  std::size_t decl_start = 0;

  auto record_declaration = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    const bool is_typedef = t[begin].is("typedef");
    int depth = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& tok = t[i];
      if (tok.is("(") || tok.is("[") || tok.is("{")) ++depth;
      if (tok.is(")") || tok.is("]") || tok.is("}")) --depth;
      if (!tok.is_ident() || is_c_keyword(tok.text)) continue;
      const bool last = i + 1 == end;
      const Token* next = last ? nullptr : &t[i + 1];
      if (depth == 0 && next && next->is("(")) {
        out.prototypes.insert(tok.text);
        continue;
      }
      if (depth != 0) continue;
      if (last || next->is("=") || next->is(",") || next->is("[")) {
        if (is_typedef) {
          out.types.insert(tok.text);
        } else {
          out.globals.insert(tok.text);
        }
      }
    }
  };

  std::size_t i = 0;
  while (i < t.size()) {
    const auto& tok = t[i];
    if (tok.is(";")) {
      record_declaration(decl_start, i);
      decl_start = ++i;
    } else if (tok.is("(") || tok.is("[")) {
      i = find_match(t, i) + 1;
    } else if (tok.is("}") || tok.is(")") || tok.is("]")) {
      fail_at(tok.is("}") ? "unbalanced braces: unexpected '}'" : "unbalanced '" + tok.text + "'", tok);
    } else if (tok.is("{")) {
      const std::size_t close = find_match(t, i);
      // A definition: "... name ( params ) {" possibly with trailing attributes.
      std::size_t k = i;
      while (k > decl_start && t[k - 1].is(")")) {
        const std::size_t open = [&] {
          // Walk back to the '(' matching t[k-1].
          int depth = 0;
          for (std::size_t j = k; j-- > decl_start;) {
            if (t[j].is(")")) ++depth;
            if (t[j].is("(")) {
              if (--depth == 0) return j;
            }
          }
          return decl_start;
        }();
        if (open > decl_start && t[open - 1].is_ident() && !t[open - 1].is("__attribute__") &&
            !is_c_keyword(t[open - 1].text)) {
          TopLevelFunction fn;
          fn.name = t[open - 1].text;
          fn.header_begin = decl_start;
          fn.header_end = k;
          fn.body_open = i;
          fn.body_close = close;
          out.functions.push_back(fn);
          break;
        }
        if (open > decl_start && t[open - 1].is("__attribute__")) {
          k = open - 1;
          continue;
        }
        break;
      }
      if (!out.functions.empty() && out.functions.back().body_open == i) {
        decl_start = close + 1;
      } else if (decl_start < t.size() && t[decl_start].is("enum")) {
        for (std::size_t j = i + 1; j < close; ++j) {
          if (t[j].is_ident() && (t[j + 1].is("=") || t[j + 1].is(",") || t[j + 1].is("}"))) {
            out.globals.insert(t[j].text);
          }
        }
      }
      i = close + 1;
    } else {
      ++i;
    }
  }
  return out;
}

SyntaxNode parse_body(TokenSpan tokens, const Token& open_brace) {
  StmtParser parser(tokens, open_brace);
  auto root = parser.parse_all();
  return root;
}

}  // namespace rvvport::detail
