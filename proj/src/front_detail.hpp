#pragma once

// Helpers shared by the parser, the CFG builder and the printer.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rvvport/c_lexer.hpp"
#include "rvvport/function_ir.hpp"

namespace rvvport::detail {

using TokenSpan = std::span<const Token>;

/// Index of the bracket closing the one at `open`; throws ParseError when
/// unbalanced.
std::size_t find_match(TokenSpan tokens, std::size_t open);

bool is_type_keyword(const std::string& s);
bool is_qualifier(const std::string& s);
bool is_c_keyword(const std::string& s);

/// `size_t`, `vint32m1_t`, `uint8_t` ... or a typedef in `types`.
bool looks_like_type_name(const std::string& s, const std::set<std::string>& types);

/// Whether a statement's tokens begin a declaration.
bool is_declaration(TokenSpan tokens, const std::set<std::string>& types);

bool is_assignment_op(const Token& t);

SourceSpan span_of(TokenSpan tokens);

struct TopLevelFunction {
  std::string name;
  std::size_t header_begin = 0;
  std::size_t header_end = 0;  // one past ')'
  std::size_t body_open = 0;   // '{'
  std::size_t body_close = 0;  // matching '}'
};

struct TopLevel {
  std::vector<TopLevelFunction> functions;
  std::set<std::string> globals;
  std::set<std::string> prototypes;
  std::set<std::string> types;
};

TopLevel scan_top_level(TokenSpan tokens);

/// Parses the statements between a function's braces (exclusive).
SyntaxNode parse_body(TokenSpan tokens, const Token& open_brace);

}  // namespace rvvport::detail
