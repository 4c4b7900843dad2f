#include <algorithm>
#include <cctype>
#include <deque>
#include <optional>

#include "front_detail.hpp"
#include "rvvport/error.hpp"
#include "rvvport/rvv_front.hpp"

namespace rvvport {
namespace {

using detail::TokenSpan;

enum class NameKind { kVector, kScalar, kFunction, kType, kUnknown };

struct Resolved {
  NameKind kind = NameKind::kUnknown;
  std::string unique;
};

class NameEnv {
 public:
  virtual ~NameEnv() = default;
  virtual Resolved resolve(const std::string& name) const = 0;
  virtual const std::set<std::string>& type_names() const = 0;
};

/// Flat lookup over a SymbolTable.
class TableEnv : public NameEnv {
 public:
  explicit TableEnv(const SymbolTable& table) : table_(table) {}

  Resolved resolve(const std::string& name) const override {
    if (table_.vector(name)) return {NameKind::kVector, name};
    if (table_.is_scalar(name)) return {NameKind::kScalar, name};
    if (table_.is_function(name)) return {NameKind::kFunction, name};
    if (table_.is_type(name)) return {NameKind::kType, name};
    return {};
  }

  const std::set<std::string>& type_names() const override { return table_.types(); }

 private:
  const SymbolTable& table_;
};

bool macro_styled(const std::string& s) {
  bool has_alpha = false;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    has_alpha |= std::isupper(static_cast<unsigned char>(c)) != 0;
  }
  return has_alpha;
}

bool well_known_global(const std::string& s) {
  return s == "stdin" || s == "stdout" || s == "stderr" || s == "errno" || s == "true" || s == "false";
}

struct DeclaredName {
  std::string name;
  std::optional<VectorType> vector;
  bool initialized = false;
  const Token* at = nullptr;
};

/// USE/DEF extraction over token ranges.
class Analyzer {
 public:
  Analyzer(const NameEnv& env, UseDef& out) : env_(env), out_(out) {}

  void expression(TokenSpan t) {
    for (auto part : split_top_level(t, ",")) assignment(part);
  }

  /// Returns the declarators; the caller brings them into scope. Initializer
  /// uses are recorded before the declared names become visible.
  std::vector<DeclaredName> declaration(TokenSpan t) {
    std::vector<DeclaredName> out;
    auto parts = split_top_level(t, ",");
    std::vector<Token> spec;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      TokenSpan part = parts[p];
      std::size_t eq = part.size();
      int depth = 0;
      for (std::size_t i = 0; i < part.size(); ++i) {
        depth += open_delta(part[i]);
        if (depth == 0 && part[i].is("=")) {
          eq = i;
          break;
        }
      }
      TokenSpan left = part.subspan(0, eq);
      // Strip trailing array dimensions.
      bool is_array = false;
      while (!left.empty() && left.back().is("]")) {
        is_array = true;
        std::size_t depth_back = 0;
        std::size_t k = left.size();
        while (k-- > 0) {
          if (left[k].is("]")) ++depth_back;
          if (left[k].is("[") && --depth_back == 0) break;
        }
        left = left.subspan(0, k);
      }
      DeclaredName d;
      std::size_t name_at = left.size();
      if (!left.empty() && left.back().is(")")) {
        // Function pointer declarator "(*name)(...)": opaque scalar.
        for (std::size_t i = 0; i + 1 < left.size(); ++i) {
          if (left[i].is("*") && left[i + 1].is_ident()) {
            name_at = i + 1;
            break;
          }
        }
        if (name_at == left.size()) throw_at("unsupported declarator", left.front());
        d.name = left[name_at].text;
        d.at = &left[name_at];
      } else {
        if (left.empty() || !left.back().is_ident()) {
          throw_at("malformed declaration", part.empty() ? t.front() : part.front());
        }
        name_at = left.size() - 1;
        d.name = left.back().text;
        d.at = &left.back();
        int stars = 0;
        std::size_t spec_end = name_at;
        while (spec_end > 0 && (left[spec_end - 1].is("*") || detail::is_qualifier(left[spec_end - 1].text))) {
          if (left[spec_end - 1].is("*")) ++stars;
          --spec_end;
        }
        if (p == 0) spec.assign(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(spec_end));
        if (p == 0 && spec.empty()) throw_at("declaration without a type", left.front());
        if (stars == 0 && !is_array) {
          for (const auto& s : spec) {
            if (auto vt = parse_vector_type(s.text)) {
              d.vector = vt;
              break;
            }
          }
        }
      }
      if (eq < part.size()) {
        d.initialized = true;
        expression(part.subspan(eq + 1));
      }
      out.push_back(std::move(d));
    }
    return out;
  }

 private:
  static int open_delta(const Token& t) {
    if (t.kind != TokenKind::kPunct) return 0;
    if (t.is("(") || t.is("[") || t.is("{")) return 1;
    if (t.is(")") || t.is("]") || t.is("}")) return -1;
    return 0;
  }

  static std::vector<TokenSpan> split_top_level(TokenSpan t, std::string_view sep) {
    std::vector<TokenSpan> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      depth += open_delta(t[i]);
      if (depth == 0 && t[i].is(sep)) {
        parts.push_back(t.subspan(start, i - start));
        start = i + 1;
      }
    }
    parts.push_back(t.subspan(start));
    return parts;
  }

  [[noreturn]] static void throw_at(const std::string& message, const Token& at) {
    throw AnalysisError("line " + std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message);
  }

  void assignment(TokenSpan t) {
    int depth = 0;
    std::size_t op = t.size();
    for (std::size_t i = 0; i < t.size(); ++i) {
      depth += open_delta(t[i]);
      if (depth == 0 && detail::is_assignment_op(t[i])) {
        op = i;
        break;
      }
    }
    if (op == t.size()) {
      uses(t);
      return;
    }
    TokenSpan lhs = t.subspan(0, op);
    while (lhs.size() >= 2 && lhs.front().is("(") && detail::find_match(lhs, 0) == lhs.size() - 1) {
      lhs = lhs.subspan(1, lhs.size() - 2);
    }
    const bool compound = !t[op].is("=");
    if (lhs.size() == 1 && lhs.front().is_ident()) {
      const auto r = resolve_or_throw(lhs.front(), false);
      if (r.kind == NameKind::kVector) {
        out_.defs.insert(r.unique);
        if (compound) out_.uses.insert(r.unique);
      }
    } else {
      uses(lhs);
    }
    assignment(t.subspan(op + 1));
  }

  void uses(TokenSpan t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Token& tok = t[i];
      if (!tok.is_ident()) continue;
      if (detail::is_c_keyword(tok.text)) continue;
      if (i > 0 && (t[i - 1].is(".") || t[i - 1].is("->"))) continue;
      const bool called = i + 1 < t.size() && t[i + 1].is("(");
      const auto r = resolve_or_throw(tok, called);
      if (r.kind == NameKind::kVector && !called) out_.uses.insert(r.unique);
    }
  }

  Resolved resolve_or_throw(const Token& tok, bool called) const {
    auto r = env_.resolve(tok.text);
    if (r.kind != NameKind::kUnknown) return r;
    if (called) return {NameKind::kFunction, tok.text};
    if (detail::looks_like_type_name(tok.text, env_.type_names())) return {NameKind::kType, tok.text};
    if (macro_styled(tok.text) || well_known_global(tok.text) || tok.text.rfind("__", 0) == 0) {
      return {NameKind::kScalar, tok.text};
    }
    throw_at("undeclared identifier '" + tok.text + "'", tok);
  }

  const NameEnv& env_;
  UseDef& out_;
};

StmtKind classify_expression(TokenSpan t) {
  int depth = 0;
  for (const auto& tok : t) {
    if (tok.is("(") || tok.is("[") || tok.is("{")) ++depth;
    if (tok.is(")") || tok.is("]") || tok.is("}")) --depth;
    if (depth == 0 && detail::is_assignment_op(tok)) return StmtKind::kAssign;
  }
  if (t.size() >= 3 && t[0].is_ident() && t[1].is("(") && detail::find_match(t, 1) == t.size() - 1) {
    return StmtKind::kCall;
  }
  return StmtKind::kScalarOther;
}

/// Scoped names for one function body.
class ScopeEnv : public NameEnv {
 public:
  ScopeEnv(const SymbolTable& outer, std::set<std::string> types) : outer_(outer), types_(std::move(types)) {
    scopes_.emplace_back();
    for (const auto& [name, type] : outer.vectors()) spellings_[name] = 1;
  }

  Resolved resolve(const std::string& name) const override {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto f = it->find(name); f != it->end()) {
        const auto& unique = f->second;
        if (symbols_.count(unique)) return {NameKind::kVector, unique};
        return {NameKind::kScalar, unique};
      }
    }
    if (outer_.vector(name)) return {NameKind::kVector, name};
    if (outer_.is_scalar(name)) return {NameKind::kScalar, name};
    if (outer_.is_function(name)) return {NameKind::kFunction, name};
    if (outer_.is_type(name)) return {NameKind::kType, name};
    return {};
  }

  const std::set<std::string>& type_names() const override { return types_; }

  void push() { scopes_.emplace_back(); }
  void pop() { scopes_.pop_back(); }

  std::string declare(const std::string& name, const std::optional<VectorType>& vector) {
    const int n = ++spellings_[name];
    std::string unique = n == 1 ? name : name + "#" + std::to_string(n);
    scopes_.back()[name] = unique;
    if (vector) {
      symbols_[unique] = *vector;
    } else {
      scalars_.insert(unique);
    }
    return unique;
  }

  std::map<std::string, VectorType> symbols_;
  VarSet scalars_;

 private:
  const SymbolTable& outer_;
  std::set<std::string> types_;
  std::vector<std::map<std::string, std::string>> scopes_;
  std::map<std::string, int> spellings_;
};

class Builder {
 public:
  Builder(const SymbolTable& outer, std::set<std::string> types) : env_(outer, std::move(types)) {
    for (const auto& [name, type] : outer.vectors()) env_.symbols_[name] = type;
    entry_ = new_block();
    exit_ = new_block();
    blocks_[entry_].has_pred = true;
    cur_ = entry_;
  }

  CfgBuild run(const SyntaxNode& body) {
    lower(body);
    if (cur_) edge(*cur_, exit_);
    return finish();
  }

 private:
  struct Block {
    std::vector<int> stmts;
    std::set<int> succ;
    bool has_pred = false;
    bool alive = true;
  };

  struct LoopTargets {
    int continue_to;
    int break_to;
  };

  int new_block() {
    blocks_.emplace_back();
    return static_cast<int>(blocks_.size()) - 1;
  }

  void edge(int from, int to) {
    blocks_[from].succ.insert(to);
    blocks_[to].has_pred = true;
  }

  bool dead(const SyntaxNode& node) {
    if (cur_) return false;
    warnings_.push_back("unreachable statement at line " + std::to_string(node.span.line) + " ignored");
    return true;
  }

  void emit(StmtKind kind, UseDef ud, TokenSpan tokens, std::string text) {
    Stmt s;
    s.id = static_cast<int>(stmts_.size());
    s.kind = kind;
    s.uses = std::move(ud.uses);
    s.defs = std::move(ud.defs);
    s.span = detail::span_of(tokens);
    s.text = std::move(text);
    blocks_[*cur_].stmts.push_back(s.id);
    stmts_.push_back(std::move(s));
  }

  /// A declaration or expression statement (also for-loop init/step).
  void simple(TokenSpan tokens) {
    if (tokens.empty()) return;
    UseDef ud;
    Analyzer an(env_, ud);
    StmtKind kind;
    if (detail::is_declaration(tokens, env_.type_names())) {
      kind = StmtKind::kDecl;
      for (auto& d : an.declaration(tokens)) {
        const auto unique = env_.declare(d.name, d.vector);
        if (d.vector && d.initialized) ud.defs.insert(unique);
      }
    } else {
      kind = classify_expression(tokens);
      an.expression(tokens);
    }
    emit(kind, std::move(ud), tokens, join_tokens(tokens));
  }

  void condition(TokenSpan tokens) {
    UseDef ud;
    Analyzer(env_, ud).expression(tokens);
    emit(StmtKind::kScalarOther, std::move(ud), tokens, join_tokens(tokens));
  }

  void lower(const SyntaxNode& node) {
    switch (node.kind) {
      case SyntaxKind::kCompound:
        env_.push();
        for (const auto& child : node.children) lower(child);
        env_.pop();
        break;
      case SyntaxKind::kEmpty:
        break;
      case SyntaxKind::kDecl:
      case SyntaxKind::kExpr:
        if (!dead(node)) simple(node.head);
        break;
      case SyntaxKind::kReturn: {
        if (dead(node)) break;
        UseDef ud;
        Analyzer(env_, ud).expression(node.head);
        std::vector<Token> all;
        std::string text = "return";
        if (!node.head.empty()) text += " " + join_tokens(node.head);
        emit(StmtKind::kReturn, std::move(ud), node.head, text);
        if (node.head.empty()) stmts_.back().span = node.span;
        edge(*cur_, exit_);
        cur_.reset();
        break;
      }
      case SyntaxKind::kBreak:
      case SyntaxKind::kContinue: {
        if (loops_.empty()) {
          throw ParseError(std::string(node.kind == SyntaxKind::kBreak ? "'break'" : "'continue'") +
                               " outside of a loop",
                           node.span.line, node.span.column);
        }
        if (dead(node)) break;
        edge(*cur_, node.kind == SyntaxKind::kBreak ? loops_.back().break_to : loops_.back().continue_to);
        cur_.reset();
        break;
      }
      case SyntaxKind::kIf:
        lower_if(node);
        break;
      case SyntaxKind::kWhile:
        lower_loop(node, false);
        break;
      case SyntaxKind::kFor:
        env_.push();
        lower_loop(node, true);
        env_.pop();
        break;
      case SyntaxKind::kDoWhile:
        lower_do(node);
        break;
    }
  }

  void lower_if(const SyntaxNode& node) {
    if (dead(node)) return;
    condition(node.cond);
    const int from = *cur_;
    const int then_b = new_block();
    const int else_b = node.children.size() > 1 ? new_block() : -1;
    const int join = new_block();
    edge(from, then_b);
    edge(from, else_b >= 0 ? else_b : join);

    cur_ = then_b;
    lower(node.children[0]);
    if (cur_) edge(*cur_, join);
    if (else_b >= 0) {
      cur_ = else_b;
      lower(node.children[1]);
      if (cur_) edge(*cur_, join);
    }
    cur_ = blocks_[join].has_pred ? std::optional(join) : std::nullopt;
  }

  void lower_loop(const SyntaxNode& node, bool is_for) {
    if (dead(node)) return;
    if (is_for) simple(node.head);
    const bool has_cond = !node.cond.empty();
    const int after = new_block();
    const int body = new_block();
    const int latch = new_block();

    if (has_cond) condition(node.cond);
    edge(*cur_, body);
    if (has_cond) edge(*cur_, after);

    loops_.push_back({latch, after});
    cur_ = body;
    lower(node.children[0]);
    if (cur_) edge(*cur_, latch);
    loops_.pop_back();

    if (blocks_[latch].has_pred) {
      cur_ = latch;
      if (is_for) simple(node.step);
      if (has_cond) condition(node.cond);
      edge(latch, body);
      if (has_cond) {
        edge(latch, after);
      } else if (!blocks_[after].has_pred) {
        // Condition-less loop without break: keep the exit reachable. The
        // exit has no live-in values, so liveness is unaffected.
        edge(latch, exit_);
      }
    }
    cur_ = blocks_[after].has_pred ? std::optional(after) : std::nullopt;
  }

  void lower_do(const SyntaxNode& node) {
    if (dead(node)) return;
    const int body = new_block();
    const int latch = new_block();
    const int after = new_block();
    edge(*cur_, body);

    loops_.push_back({latch, after});
    cur_ = body;
    lower(node.children[0]);
    if (cur_) edge(*cur_, latch);
    loops_.pop_back();

    if (blocks_[latch].has_pred) {
      cur_ = latch;
      condition(node.cond);
      edge(latch, body);
      edge(latch, after);
    }
    cur_ = blocks_[after].has_pred ? std::optional(after) : std::nullopt;
  }

  std::vector<std::set<int>> preds() const {
    std::vector<std::set<int>> p(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (!blocks_[b].alive) continue;
      for (int s : blocks_[b].succ) p[s].insert(static_cast<int>(b));
    }
    return p;
  }

  void drop_unreachable() {
    std::vector<bool> seen(blocks_.size(), false);
    std::deque<int> work{entry_};
    seen[entry_] = true;
    while (!work.empty()) {
      const int b = work.front();
      work.pop_front();
      for (int s : blocks_[b].succ) {
        if (!seen[s]) {
          seen[s] = true;
          work.push_back(s);
        }
      }
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (!seen[b] && static_cast<int>(b) != exit_) blocks_[b].alive = false;
    }
  }

  bool remove_empty_passthrough() {
    bool changed = false;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const int b = static_cast<int>(bi);
      auto& blk = blocks_[bi];
      if (!blk.alive || b == entry_ || b == exit_ || !blk.stmts.empty() || blk.succ.size() != 1) continue;
      const int target = *blk.succ.begin();
      if (target == b) continue;
      for (auto& other : blocks_) {
        if (other.alive && other.succ.erase(b)) other.succ.insert(target);
      }
      blk.alive = false;
      changed = true;
    }
    return changed;
  }

  bool merge_chains() {
    bool changed = false;
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const int b = static_cast<int>(bi);
      if (!blocks_[bi].alive || b == exit_ || blocks_[bi].succ.size() != 1) continue;
      const int c = *blocks_[bi].succ.begin();
      if (c == b || c == entry_ || c == exit_) continue;
      const auto p = preds();
      if (p[c].size() != 1) continue;
      auto& src = blocks_[bi];
      auto& dst = blocks_[c];
      src.stmts.insert(src.stmts.end(), dst.stmts.begin(), dst.stmts.end());
      src.succ = dst.succ;
      if (src.succ.count(c)) {
        src.succ.erase(c);
        src.succ.insert(b);
      }
      dst.alive = false;
      changed = true;
    }
    return changed;
  }

  CfgBuild finish() {
    drop_unreachable();
    while (remove_empty_passthrough() || merge_chains()) {
    }

    // Renumber: entry first, then program order, exit last.
    std::vector<int> order;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int id = static_cast<int>(b);
      if (blocks_[b].alive && id != entry_ && id != exit_) order.push_back(id);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& sa = blocks_[a].stmts;
      const auto& sb = blocks_[b].stmts;
      const int ka = sa.empty() ? 1 << 30 : sa.front();
      const int kb = sb.empty() ? 1 << 30 : sb.front();
      return ka != kb ? ka < kb : a < b;
    });
    order.insert(order.begin(), entry_);
    order.push_back(exit_);
    std::vector<int> renum(blocks_.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) renum[order[i]] = static_cast<int>(i);

    CfgBuild out;
    out.cfg.blocks.resize(order.size());
    out.cfg.successors.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& blk = blocks_[order[i]];
      out.cfg.blocks[i] = blk.stmts;
      for (int s : blk.succ) out.cfg.successors[i].insert(renum[s]);
      for (int sid : blk.stmts) stmts_[sid].block = static_cast<int>(i);
    }
    out.cfg.entry = 0;
    out.cfg.exit = static_cast<int>(order.size()) - 1;
    out.stmts = std::move(stmts_);
    out.symbols = std::move(env_.symbols_);
    out.scalars = std::move(env_.scalars_);
    out.warnings = std::move(warnings_);
    return out;
  }

  ScopeEnv env_;
  std::vector<Block> blocks_;
  std::vector<Stmt> stmts_;
  std::vector<LoopTargets> loops_;
  std::vector<std::string> warnings_;
  std::optional<int> cur_;
  int entry_ = 0;
  int exit_ = 0;
};

}  // namespace

UseDef extract_use_def(std::string_view statement, const SymbolTable& symbols) {
  auto lexed = tokenize_c(statement);
  auto& tokens = lexed.tokens;
  if (!tokens.empty() && tokens.back().is(";")) tokens.pop_back();
  TableEnv env(symbols);
  UseDef out;
  Analyzer an(env, out);
  TokenSpan span(tokens);
  if (!tokens.empty() && tokens.front().is("return")) {
    out.kind = StmtKind::kReturn;
    an.expression(span.subspan(1));
  } else if (detail::is_declaration(span, env.type_names())) {
    out.kind = StmtKind::kDecl;
    for (const auto& d : an.declaration(span)) {
      if (d.vector && d.initialized) out.defs.insert(d.name);
    }
  } else {
    out.kind = classify_expression(span);
    an.expression(span);
  }
  return out;
}

CfgBuild build_cfg(const SyntaxNode& body, const SymbolTable& outer) {
  Builder builder(outer, outer.types());
  return builder.run(body);
}

std::vector<std::set<int>> Cfg::predecessors() const {
  std::vector<std::set<int>> p(blocks.size());
  for (std::size_t b = 0; b < successors.size(); ++b) {
    for (int s : successors[b]) p[s].insert(static_cast<int>(b));
  }
  return p;
}

std::string_view to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::kDecl: return "decl";
    case StmtKind::kAssign: return "assign";
    case StmtKind::kCall: return "call";
    case StmtKind::kReturn: return "return";
    case StmtKind::kScalarOther: return "scalar_other";
  }
  return "?";
}

std::string display_name(const std::string& unique_name) {
  return unique_name.substr(0, unique_name.find('#'));
}

}  // namespace rvvport
