#include <deque>
#include <sstream>

#include "front_detail.hpp"
#include "rvvport/rvv_front.hpp"

namespace rvvport {
namespace {

void indent(std::ostringstream& os, int depth) { os << std::string(static_cast<std::size_t>(depth) * 2, ' '); }

void print_node(std::ostringstream& os, const SyntaxNode& n, int depth);

/// Loop and branch bodies: compound bodies open on the same line.
void print_body(std::ostringstream& os, const SyntaxNode& n, int depth) {
  if (n.kind == SyntaxKind::kCompound) {
    os << " {\n";
    for (const auto& c : n.children) print_node(os, c, depth + 1);
    indent(os, depth);
    os << "}";
  } else {
    os << "\n";
    print_node(os, n, depth + 1);
  }
}

void print_node(std::ostringstream& os, const SyntaxNode& n, int depth) {
  switch (n.kind) {
    case SyntaxKind::kCompound:
      indent(os, depth);
      os << "{\n";
      for (const auto& c : n.children) print_node(os, c, depth + 1);
      indent(os, depth);
      os << "}\n";
      return;
    case SyntaxKind::kEmpty:
      indent(os, depth);
      os << ";\n";
      return;
    case SyntaxKind::kDecl:
    case SyntaxKind::kExpr:
      indent(os, depth);
      os << join_tokens(n.head) << ";\n";
      return;
    case SyntaxKind::kReturn:
      indent(os, depth);
      os << "return";
      if (!n.head.empty()) os << " " << join_tokens(n.head);
      os << ";\n";
      return;
    case SyntaxKind::kBreak:
      indent(os, depth);
      os << "break;\n";
      return;
    case SyntaxKind::kContinue:
      indent(os, depth);
      os << "continue;\n";
      return;
    case SyntaxKind::kIf:
      indent(os, depth);
      os << "if (" << join_tokens(n.cond) << ")";
      print_body(os, n.children[0], depth);
      if (n.children.size() > 1) {
        if (n.children[0].kind == SyntaxKind::kCompound) {
          os << " else";
        } else {
          indent(os, depth);
          os << "else";
        }
        print_body(os, n.children[1], depth);
      }
      if (n.children.back().kind == SyntaxKind::kCompound) os << "\n";
      return;
    case SyntaxKind::kWhile:
      indent(os, depth);
      os << "while (" << join_tokens(n.cond) << ")";
      print_body(os, n.children[0], depth);
      if (n.children[0].kind == SyntaxKind::kCompound) os << "\n";
      return;
    case SyntaxKind::kFor: {
      indent(os, depth);
      os << "for (" << join_tokens(n.head) << ";";
      if (!n.cond.empty()) os << " " << join_tokens(n.cond);
      os << ";";
      if (!n.step.empty()) os << " " << join_tokens(n.step);
      os << ")";
      print_body(os, n.children[0], depth);
      if (n.children[0].kind == SyntaxKind::kCompound) os << "\n";
      return;
    }
    case SyntaxKind::kDoWhile:
      indent(os, depth);
      os << "do";
      print_body(os, n.children[0], depth);
      if (n.children[0].kind == SyntaxKind::kCompound) {
        os << " ";
      } else {
        indent(os, depth);
      }
      os << "while (" << join_tokens(n.cond) << ");\n";
      return;
  }
}

std::string set_text(const VarSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : s) {
    if (!first) out += ", ";
    out += v;
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string print_function(const FunctionIr& ir) {
  std::ostringstream os;
  os << ir.return_type << " " << ir.name << "(";
  for (std::size_t i = 0; i < ir.params.size(); ++i) {
    if (i) os << ", ";
    const auto& type = ir.params[i].type;
    os << type << (!type.empty() && type.back() == '*' ? "" : " ") << ir.params[i].name;
  }
  if (ir.params.empty()) os << "void";
  os << ") {\n";
  for (const auto& c : ir.body.children) print_node(os, c, 1);
  os << "}\n";
  return os.str();
}

std::string dump_ir(const FunctionIr& ir) {
  std::ostringstream os;
  os << "function " << ir.name << "\n";
  os << "params:";
  if (ir.params.empty()) os << " (none)";
  for (const auto& p : ir.params) os << "\n  " << p.name << " : " << p.type;
  os << "\nvector symbols:";
  if (ir.symbols.empty()) os << " (none)";
  for (const auto& [name, type] : ir.symbols) {
    os << "\n  " << name << " : " << vector_type_name(type) << " lmul=" << to_string(type.lmul)
       << " fields=" << type.tuple_fields;
  }
  os << "\nblocks:\n";
  for (int b = 0; b < ir.cfg.block_count(); ++b) {
    os << "  B" << b;
    if (b == ir.cfg.entry) os << " (entry)";
    if (b == ir.cfg.exit) os << " (exit)";
    os << " ->";
    if (ir.cfg.successors[b].empty()) os << " (none)";
    for (int s : ir.cfg.successors[b]) os << " B" << s;
    os << "\n";
    for (int id : ir.cfg.blocks[b]) {
      const auto& s = ir.stmts[id];
      os << "    s" << s.id << " [" << to_string(s.kind) << "] line " << s.span.line << ": " << s.text
         << "\n      use=" << set_text(s.uses) << " def=" << set_text(s.defs) << "\n";
    }
  }
  for (const auto& w : ir.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::vector<std::string> check_ir(const FunctionIr& ir) {
  std::vector<std::string> problems;
  const auto& cfg = ir.cfg;
  const int n = cfg.block_count();
  if (cfg.successors.size() != cfg.blocks.size()) {
    problems.push_back("successor map size differs from block count");
    return problems;
  }
  if (n < 2 || cfg.entry < 0 || cfg.entry >= n || cfg.exit < 0 || cfg.exit >= n || cfg.entry == cfg.exit) {
    problems.push_back("entry/exit block ids invalid");
    return problems;
  }
  if (!cfg.blocks[cfg.exit].empty()) problems.push_back("exit block holds statements");
  if (!cfg.successors[cfg.exit].empty()) problems.push_back("exit block has successors");
  for (int b = 0; b < n; ++b) {
    if (b != cfg.exit && cfg.successors[b].empty()) {
      problems.push_back("block B" + std::to_string(b) + " has no successor");
    }
    for (int s : cfg.successors[b]) {
      if (s < 0 || s >= n) problems.push_back("block B" + std::to_string(b) + " has an out-of-range successor");
    }
  }

  std::vector<int> owner(ir.stmts.size(), -1);
  for (int b = 0; b < n; ++b) {
    int prev = -1;
    for (int id : cfg.blocks[b]) {
      if (id < 0 || id >= static_cast<int>(ir.stmts.size())) {
        problems.push_back("block B" + std::to_string(b) + " references unknown statement " + std::to_string(id));
        continue;
      }
      if (owner[id] != -1) problems.push_back("statement s" + std::to_string(id) + " appears in two blocks");
      owner[id] = b;
      if (id <= prev) problems.push_back("block B" + std::to_string(b) + " lists statements out of order");
      prev = id;
    }
  }
  for (std::size_t i = 0; i < ir.stmts.size(); ++i) {
    const auto& s = ir.stmts[i];
    if (s.id != static_cast<int>(i)) problems.push_back("statement ids are not dense");
    if (owner[i] == -1) problems.push_back("statement s" + std::to_string(i) + " is in no block");
    if (owner[i] != -1 && s.block != owner[i]) problems.push_back("statement s" + std::to_string(i) + " has a stale block id");
    for (const auto* set : {&s.uses, &s.defs}) {
      for (const auto& v : *set) {
        if (!ir.symbols.count(v)) problems.push_back("statement s" + std::to_string(i) + " names unknown vector " + v);
      }
    }
  }

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> work{cfg.entry};
  seen[cfg.entry] = true;
  while (!work.empty()) {
    const int b = work.front();
    work.pop_front();
    for (int s : cfg.successors[b]) {
      if (s >= 0 && s < n && !seen[s]) {
        seen[s] = true;
        work.push_back(s);
      }
    }
  }
  for (int b = 0; b < n; ++b) {
    if (!seen[b]) problems.push_back("block B" + std::to_string(b) + " is unreachable from entry");
  }
  return problems;
}

}  // namespace rvvport
