#include <algorithm>
#include <optional>

#include "front_detail.hpp"
#include "rvvport/error.hpp"
#include "rvvport/rvv_front.hpp"

namespace rvvport {
namespace {

using detail::TokenSpan;

std::vector<Param> parse_params(TokenSpan t, const Token& where) {
  std::vector<Param> params;
  if (t.empty() || (t.size() == 1 && t[0].is("void"))) return params;
  std::size_t start = 0;
  auto add = [&](TokenSpan p) {
    if (p.empty()) throw ParseError("empty parameter", where.line, where.column);
    if (p.size() == 1 && p[0].is("...")) throw ParseError("variadic functions are not supported", p[0].line, p[0].column);
    std::size_t end = p.size();
    while (end > 0 && p[end - 1].is("]")) {
      std::size_t k = end - 1;
      while (k > 0 && !p[k].is("[")) --k;
      end = k;
    }
    if (end < 2 || !p[end - 1].is_ident() || detail::is_c_keyword(p[end - 1].text)) {
      throw ParseError("parameter without a name", p[0].line, p[0].column);
    }
    Param param;
    param.name = p[end - 1].text;
    std::vector<Token> type(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(end - 1));
    type.insert(type.end(), p.begin() + static_cast<std::ptrdiff_t>(end), p.end());
    param.type = join_tokens(type);
    params.push_back(std::move(param));
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is("(") || t[i].is("[")) {
      i = detail::find_match(t, i);
    } else if (t[i].is(",")) {
      add(t.subspan(start, i - start));
      start = i + 1;
    }
  }
  add(t.subspan(start));
  return params;
}

Signature signature_from_tokens(TokenSpan t) {
  if (!t.empty() && t.back().is(";")) t = t.first(t.size() - 1);
  if (t.empty()) throw ParseError("empty signature", 1, 1);
  if (!t.back().is(")")) throw ParseError("signature must end with ')'", t.back().line, t.back().column);
  std::size_t open = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is("(")) {
      open = i;
      break;
    }
  }
  if (open == 0 || detail::find_match(t, open) != t.size() - 1 || !t[open - 1].is_ident() ||
      detail::is_c_keyword(t[open - 1].text)) {
    throw ParseError("not a function declarator", t.front().line, t.front().column);
  }
  Signature sig;
  sig.name = t[open - 1].text;
  std::vector<Token> ret;
  for (std::size_t i = 0; i + 1 < open; ++i) {
    const auto& s = t[i].text;
    if (s == "static" || s == "inline" || s == "__inline" || s == "__inline__" || s == "extern") continue;
    ret.push_back(t[i]);
  }
  if (ret.empty()) throw ParseError("missing return type", t.front().line, t.front().column);
  sig.return_type = join_tokens(ret);
  sig.params = parse_params(t.subspan(open + 1, t.size() - open - 2), t[open]);
  return sig;
}

void refine_declarations(SyntaxNode& node, const std::set<std::string>& types) {
  if (node.kind == SyntaxKind::kExpr && detail::is_declaration(node.head, types)) node.kind = SyntaxKind::kDecl;
  for (auto& child : node.children) refine_declarations(child, types);
}

std::optional<VectorType> param_vector_type(const Param& p) {
  const auto tokens = tokenize_c(p.type).tokens;
  std::optional<VectorType> found;
  for (const auto& t : tokens) {
    if (t.is("*") || t.is("[")) return std::nullopt;
    if (auto vt = parse_vector_type(t.text)) found = vt;
  }
  return found;
}

FunctionIr parse_impl(std::string_view source, std::string_view name, const Signature* expected) {
  const LexedSource lexed = tokenize_c(source);
  const TokenSpan tokens(lexed.tokens);
  const auto top = detail::scan_top_level(tokens);
  if (top.functions.empty()) throw ParseError("no function definition found", 1, 1);

  const detail::TopLevelFunction* fn = nullptr;
  if (name.empty()) {
    if (top.functions.size() != 1) {
      throw ParseError("source defines " + std::to_string(top.functions.size()) +
                           " functions; name the one to analyze",
                       1, 1);
    }
    fn = &top.functions.front();
  } else {
    for (const auto& f : top.functions) {
      if (f.name == name) fn = &f;
    }
    if (!fn) throw ParseError("function '" + std::string(name) + "' is not defined in the source", 1, 1);
  }

  FunctionIr ir;
  ir.header.assign(tokens.begin() + static_cast<std::ptrdiff_t>(fn->header_begin),
                   tokens.begin() + static_cast<std::ptrdiff_t>(fn->header_end));
  const Signature sig = signature_from_tokens(ir.header);
  ir.name = sig.name;
  ir.return_type = sig.return_type;
  ir.params = sig.params;

  if (expected) {
    bool same = sig.return_type == expected->return_type && sig.params.size() == expected->params.size();
    for (std::size_t i = 0; same && i < sig.params.size(); ++i) {
      same = sig.params[i].type == expected->params[i].type && sig.params[i].name == expected->params[i].name;
    }
    if (!same) ir.warnings.push_back("definition header differs from the expected signature");
  }

  SymbolTable outer;
  for (const auto& t : top.types) outer.add_type(t);
  for (const auto& g : top.globals) outer.add_scalar(g);
  for (const auto& m : lexed.macros) outer.add_scalar(m);
  for (const auto& p : top.prototypes) outer.add_function(p);
  for (const auto& f : top.functions) outer.add_function(f.name);
  for (const auto& p : ir.params) {
    if (auto vt = param_vector_type(p)) {
      outer.add_vector(p.name, *vt);
    } else {
      outer.add_scalar(p.name);
    }
  }

  ir.body = detail::parse_body(tokens.subspan(fn->body_open + 1, fn->body_close - fn->body_open - 1),
                               tokens[fn->body_open]);
  refine_declarations(ir.body, top.types);

  auto built = build_cfg(ir.body, outer);
  ir.stmts = std::move(built.stmts);
  ir.cfg = std::move(built.cfg);
  ir.symbols = std::move(built.symbols);
  ir.scalars = std::move(built.scalars);
  for (const auto& p : ir.params) {
    if (!ir.symbols.count(p.name)) ir.scalars.insert(p.name);
  }
  ir.warnings.insert(ir.warnings.end(), built.warnings.begin(), built.warnings.end());
  return ir;
}

}  // namespace

Signature parse_signature(std::string_view signature) {
  const auto tokens = tokenize_c(signature).tokens;
  return signature_from_tokens(tokens);
}

FunctionIr parse_function(std::string_view source, std::string_view signature) {
  const Signature sig = parse_signature(signature);
  return parse_impl(source, sig.name, &sig);
}

FunctionIr parse_function_named(std::string_view source, std::string_view name) {
  return parse_impl(source, name, nullptr);
}

std::vector<std::string> list_functions(std::string_view source) {
  const auto lexed = tokenize_c(source);
  std::vector<std::string> names;
  for (const auto& f : detail::scan_top_level(lexed.tokens).functions) names.push_back(f.name);
  return names;
}

}  // namespace rvvport
