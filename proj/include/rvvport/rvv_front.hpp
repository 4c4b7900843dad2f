#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rvvport/function_ir.hpp"

namespace rvvport {

/// A C function declarator such as
/// `void vec_add(const float *a, const float *b, float *c, size_t n)`.
struct Signature {
  std::string return_type;
  std::string name;
  std::vector<Param> params;
};

/// Throws ParseError when the text is not a single function declarator.
Signature parse_signature(std::string_view signature);

/// Names visible to use/def extraction. Only vector entries matter for
/// liveness; the rest let the extractor tell "scalar" from "undeclared".
class SymbolTable {
 public:
  void add_vector(const std::string& name, const VectorType& type) { vectors_[name] = type; }
  void add_scalar(const std::string& name) { scalars_.insert(name); }
  void add_function(const std::string& name) { functions_.insert(name); }
  void add_type(const std::string& name) { types_.insert(name); }

  const VectorType* vector(const std::string& name) const {
    auto it = vectors_.find(name);
    return it == vectors_.end() ? nullptr : &it->second;
  }
  bool is_scalar(const std::string& name) const { return scalars_.count(name) != 0; }
  bool is_function(const std::string& name) const { return functions_.count(name) != 0; }
  bool is_type(const std::string& name) const { return types_.count(name) != 0; }
  const std::map<std::string, VectorType>& vectors() const { return vectors_; }
  const std::set<std::string>& types() const { return types_; }

 private:
  std::map<std::string, VectorType> vectors_;
  std::set<std::string> scalars_;
  std::set<std::string> functions_;
  std::set<std::string> types_;
};

struct UseDef {
  StmtKind kind = StmtKind::kScalarOther;
  VarSet uses;
  VarSet defs;
};

/// USE/DEF of a single statement (declaration, expression or return; the
/// trailing ';' is optional). DEF holds vector variables written, USE those
/// read, including mask and merge operands. Scalars never appear.
/// Throws AnalysisError on an identifier that is neither in `symbols`, a
/// call target, a type name nor macro-styled (ALL_CAPS).
UseDef extract_use_def(std::string_view statement, const SymbolTable& symbols);

struct CfgBuild {
  std::vector<Stmt> stmts;
  Cfg cfg;
  std::map<std::string, VectorType> symbols;
  VarSet scalars;
  std::vector<std::string> warnings;
};

/// Lowers a structured body into statements and basic blocks. Loops are
/// emitted in guarded bottom-test form (guard in the preheader, condition
/// re-evaluated at the end of the body), empty pass-through blocks are
/// removed, and straight-line chains are merged into maximal blocks.
/// `outer` supplies parameters, globals and local function names.
CfgBuild build_cfg(const SyntaxNode& body, const SymbolTable& outer);

/// Parses the definition matching `signature` (located by name). A header
/// that differs from the signature token-for-token is kept with a warning.
FunctionIr parse_function(std::string_view source, std::string_view signature);

/// Parses the function called `name`; an empty name selects the only
/// function defined in the source.
FunctionIr parse_function_named(std::string_view source, std::string_view name);

/// Names of the functions defined (with a body) in the source, in order.
std::vector<std::string> list_functions(std::string_view source);

/// Re-emits the function as normalized C; parsing the result yields the same
/// CFG shape and USE/DEF sets.
std::string print_function(const FunctionIr& ir);

/// Human-readable listing of symbols, blocks, edges and statements.
std::string dump_ir(const FunctionIr& ir);

/// Structural invariant violations; empty when the IR is well formed.
std::vector<std::string> check_ir(const FunctionIr& ir);

}  // namespace rvvport
