#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rvvport/c_lexer.hpp"
#include "rvvport/vector_type.hpp"

namespace rvvport {

struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;
};

using VarSet = std::set<std::string>;

enum class StmtKind { kDecl, kAssign, kCall, kReturn, kScalarOther };

std::string_view to_string(StmtKind kind);

/// One analyzable statement. `uses`/`defs` only ever contain vector-typed
/// variables, named by their function-unique name (see FunctionIr::symbols).
struct Stmt {
  int id = 0;
  StmtKind kind = StmtKind::kScalarOther;
  VarSet uses;
  VarSet defs;
  SourceSpan span;
  std::string text;
  int block = -1;
};

/// Basic blocks over statement ids. `exit` is synthetic and always empty.
struct Cfg {
  std::vector<std::vector<int>> blocks;
  std::vector<std::set<int>> successors;
  int entry = 0;
  int exit = 0;

  int block_count() const { return static_cast<int>(blocks.size()); }
  std::vector<std::set<int>> predecessors() const;
};

/// Structured statement tree retained from parsing; used for re-printing.
enum class SyntaxKind { kCompound, kDecl, kExpr, kIf, kFor, kWhile, kDoWhile, kReturn, kBreak, kContinue, kEmpty };

struct SyntaxNode {
  SyntaxKind kind = SyntaxKind::kEmpty;
  SourceSpan span;
  std::vector<Token> head;  // decl/expr/return payload, for-loop init
  std::vector<Token> cond;  // if/while/do/for condition
  std::vector<Token> step;  // for-loop increment
  std::vector<SyntaxNode> children;  // compound items; if: then[, else]; loops: body
};

struct Param {
  std::string type;
  std::string name;
};

struct FunctionIr {
  std::string name;
  std::string return_type;
  std::vector<Param> params;
  /// Vector-typed variables by unique name. A declaration that shadows an
  /// earlier one of the same spelling is renamed `name#2`, `name#3`, ...
  std::map<std::string, VectorType> symbols;
  VarSet scalars;
  std::vector<Stmt> stmts;
  Cfg cfg;

  std::vector<Token> header;
  SyntaxNode body;
  std::vector<std::string> warnings;
};

/// Source spelling of a unique variable name ("va#2" -> "va").
std::string display_name(const std::string& unique_name);

}  // namespace rvvport
