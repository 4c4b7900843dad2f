#include <gtest/gtest.h>

#include "rvvport/error.hpp"
#include "rvvport/rvv_front.hpp"
#include "scenario.hpp"

using namespace rvvport;
using namespace rvvport::testing;

namespace {

SymbolTable table() {
  SymbolTable t;
  t.add_vector("va", *parse_vector_type("vint32m1_t"));
  t.add_vector("vb", *parse_vector_type("vint32m1_t"));
  t.add_vector("m", *parse_vector_type("vbool32_t"));
  t.add_scalar("p");
  t.add_scalar("vl");
  return t;
}

std::vector<std::set<int>> succs(const FunctionIr& ir) { return ir.cfg.successors; }

}  // namespace

TEST(Signature, ParsesParams) {
  const auto s = parse_signature("void vec_add(const float *a, const float *b, float *c, size_t n)");
  EXPECT_EQ(s.name, "vec_add");
  EXPECT_EQ(s.return_type, "void");
  ASSERT_EQ(s.params.size(), 4u);
  EXPECT_EQ(s.params[0].name, "a");
  EXPECT_EQ(s.params[3].type, "size_t");
  EXPECT_THROW(parse_signature("not a signature"), ParseError);
}

TEST(UseDef, DeclarationAndCall) {
  const auto d = extract_use_def("vint32m1_t vc = __riscv_vadd_vv_i32m1(va, vb, vl);", [] {
    auto t = table();
    t.add_vector("vc", *parse_vector_type("vint32m1_t"));
    return t;
  }());
  EXPECT_EQ(d.kind, StmtKind::kDecl);
  EXPECT_EQ(d.uses, (VarSet{"va", "vb"}));
  EXPECT_EQ(d.defs, (VarSet{"vc"}));
}

TEST(UseDef, MaskAndMergeOperandsAreUses) {
  const auto d = extract_use_def("va = __riscv_vadd_vv_i32m1_mu(m, va, vb, vb, vl)", table());
  EXPECT_EQ(d.kind, StmtKind::kAssign);
  EXPECT_EQ(d.uses, (VarSet{"m", "va", "vb"}));
  EXPECT_EQ(d.defs, (VarSet{"va"}));
}

TEST(UseDef, StoreUsesOnly) {
  const auto d = extract_use_def("__riscv_vse32_v_i32m1(p, va, vl);", table());
  EXPECT_EQ(d.kind, StmtKind::kCall);
  EXPECT_EQ(d.uses, (VarSet{"va"}));
  EXPECT_TRUE(d.defs.empty());
}

TEST(UseDef, ScalarsNeverAppear) {
  const auto d = extract_use_def("p += vl", table());
  EXPECT_TRUE(d.uses.empty());
  EXPECT_TRUE(d.defs.empty());
}

TEST(UseDef, UndeclaredIdentifierIsAnError) {
  EXPECT_THROW(extract_use_def("va = __riscv_vadd_vv_i32m1(va, vx, vl)", table()), AnalysisError);
  // Macros and call targets are fine.
  EXPECT_NO_THROW(extract_use_def("va = __riscv_vmv_v_x_i32m1(INT32_MIN, vl)", table()));
}

TEST(Cfg, StraightLineIsOneBlock) {
  const auto ir = parse_function_named(R"(
void f(const int *p, int *q, size_t vl)
{
    vint32m1_t a = __riscv_vle32_v_i32m1(p, vl);
    __riscv_vse32_v_i32m1(q, a, vl);
}
)", "f");
  EXPECT_EQ(ir.cfg.block_count(), 2);
  EXPECT_EQ(ir.cfg.blocks[0].size(), 2u);
  EXPECT_TRUE(check_ir(ir).empty());
}

TEST(Cfg, IfElseDiamond) {
  const auto ir = parse_function_named(R"(
int f(int x)
{
    int y = 0;
    if (x > 0)
        y = 1;
    else
        y = 2;
    return y;
}
)", "f");
  // entry (decl + cond), then, else, join (return), exit
  EXPECT_EQ(ir.cfg.block_count(), 5);
  EXPECT_EQ(ir.cfg.successors[0].size(), 2u);
  EXPECT_TRUE(check_ir(ir).empty());
}

TEST(Cfg, BreakAndContinue) {
  const auto ir = parse_function_named(R"(
void f(int *p, int n)
{
    for (int i = 0; i < n; i++) {
        if (p[i] < 0)
            continue;
        if (p[i] == 0)
            break;
        p[i] = 1;
    }
}
)", "f");
  EXPECT_TRUE(check_ir(ir).empty());
  const auto exit = ir.cfg.exit;
  int into_exit = 0;
  for (const auto& s : succs(ir)) into_exit += s.count(exit);
  EXPECT_GE(into_exit, 2);  // loop guard/latch and the break
}

TEST(Cfg, ShadowedVectorsGetUniqueNames) {
  const auto ir = parse_function_named(R"(
void f(const int *p, size_t vl)
{
    vint32m1_t v = __riscv_vle32_v_i32m1(p, vl);
    {
        vint32m2_t v = __riscv_vle32_v_i32m2(p, vl);
        consume2(v);
    }
    consume1(v);
}
)", "f");
  ASSERT_EQ(ir.symbols.size(), 2u);
  EXPECT_TRUE(ir.symbols.count("v"));
  EXPECT_TRUE(ir.symbols.count("v#2"));
  EXPECT_EQ(display_name("v#2"), "v");
  EXPECT_EQ(ir.stmts.back().uses, (VarSet{"v"}));
}

TEST(Front, GotoIsRejectedWithLocation) {
  try {
    parse_function_named("void f(void)\n{\n    goto out;\nout:\n    return;\n}\n", "f");
    FAIL() << "goto accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("goto"), std::string::npos);
  }
}

TEST(Front, SwitchIsRejected) {
  EXPECT_THROW(parse_function_named("void f(int x)\n{\n    switch (x) { case 1: break; }\n}\n", "f"), ParseError);
}

TEST(Front, ScalarOnlyFunctionHasNoVectors) {
  const auto ir = parse_function_named("int sum(const int *p, int n)\n{\n    int s = 0;\n    for (int i = 0; i < n; i++)\n        s += p[i];\n    return s;\n}\n", "");
  EXPECT_TRUE(ir.symbols.empty());
  for (const auto& s : ir.stmts) {
    EXPECT_TRUE(s.uses.empty());
    EXPECT_TRUE(s.defs.empty());
  }
}

TEST(Front, ListsFunctions) {
  const auto names = list_functions("static int g;\nint a(void) { return 0; }\nint b(int);\nvoid c(void) { }\n");
  EXPECT_EQ(names, (std::vector<std::string>{"a", "c"}));
  EXPECT_THROW(parse_function_named("int a(void) { return 0; }\nint c(void) { return 1; }\n", ""), Error);
}

namespace {

// Blocks, edges and per-statement USE/DEF without source positions.
std::string shape(const FunctionIr& ir) {
  std::string out;
  for (int b = 0; b < ir.cfg.block_count(); ++b) {
    out += "B" + std::to_string(b) + "->";
    for (int s : ir.cfg.successors[b]) out += std::to_string(s) + ",";
    out += "[";
    for (int s : ir.cfg.blocks[b]) {
      const auto& st = ir.stmts[s];
      out += std::string(to_string(st.kind)) + " u";
      for (const auto& v : st.uses) out += v + " ";
      out += "d";
      for (const auto& v : st.defs) out += v + " ";
      out += ";";
    }
    out += "]\n";
  }
  return out;
}

}  // namespace

TEST(Front, PrintReparseRoundTripOnCorpus) {
  for (const auto& id : {"vec_add_f32", "sat_add_u8", "dot_f32", "max_s32", "deinterleave_u8", "qdmulh_s16",
                         "h2v1_upsample"}) {
    const auto c = bundled_case(id);
    for (const auto* text : {&c.native_text, &c.source_text}) {
      const auto ir = parse_function(*text, c.manifest.function_signature);
      EXPECT_TRUE(check_ir(ir).empty()) << id;
      const auto printed = print_function(ir);
      const auto again = parse_function_named(printed, ir.name);
      EXPECT_EQ(shape(ir), shape(again)) << id << "\n" << printed;
      EXPECT_EQ(print_function(again), printed) << id;
    }
  }
}
