#include <gtest/gtest.h>

#include "rvvport/vector_type.hpp"

using namespace rvvport;

TEST(VectorType, DecodesDataTypes) {
  const auto t = parse_vector_type("vuint16mf4_t");
  ASSERT_TRUE(t);
  EXPECT_EQ(t->kind, ElemKind::kUnsignedInt);
  EXPECT_EQ(t->elem_bits, 16);
  EXPECT_EQ(t->lmul, Rational(1, 4));
  EXPECT_EQ(t->tuple_fields, 1);

  const auto tuple = parse_vector_type("vfloat32m2x4_t");
  ASSERT_TRUE(tuple);
  EXPECT_EQ(tuple->kind, ElemKind::kFloat);
  EXPECT_EQ(tuple->tuple_fields, 4);
}

TEST(VectorType, MasksTakeOneRegister) {
  const auto m = parse_vector_type("vbool64_t");
  ASSERT_TRUE(m);
  EXPECT_TRUE(m->is_mask());
  EXPECT_EQ(register_footprint(*m, FootprintMode::kPaperLiteral), Rational(1));
  EXPECT_EQ(vector_type_name(*m), "vbool64_t");
}

TEST(VectorType, RejectsIllegalNames) {
  for (const char* bad : {"vint64mf2_t", "vint8mf16_t", "vfloat8m1_t", "vint32m4x3_t", "vint32m1x9_t", "vint32m1x1_t",
                          "vbool3_t", "vint32m1", "int32_t", "vint32m3_t", "vuint128m1_t", "float32x4_t"}) {
    EXPECT_FALSE(parse_vector_type(bad)) << bad;
  }
}

TEST(VectorType, EnumerationCountsAndUniqueness) {
  const auto all = all_vector_types();
  int masks = 0;
  std::set<std::string> names;
  for (const auto& t : all) {
    masks += t.is_mask();
    names.insert(vector_type_name(t));
  }
  EXPECT_EQ(all.size(), 292u);
  EXPECT_EQ(masks, 7);
  EXPECT_EQ(names.size(), all.size());
}

TEST(VectorType, FootprintModes) {
  const auto half = *parse_vector_type("vint8mf2_t");
  EXPECT_EQ(register_footprint(half, FootprintMode::kPaperLiteral), Rational(1, 2));
  EXPECT_EQ(register_footprint(half, FootprintMode::kPhysical), Rational(1));
  const auto seg = *parse_vector_type("vint8mf2x3_t");
  EXPECT_EQ(register_footprint(seg, FootprintMode::kPaperLiteral), Rational(3, 2));
  EXPECT_EQ(register_footprint(seg, FootprintMode::kPhysical), Rational(3));
  const auto m4 = *parse_vector_type("vint32m4x2_t");
  EXPECT_EQ(register_footprint(m4, FootprintMode::kPhysical), Rational(8));
}

TEST(VectorType, ModeNames) {
  EXPECT_EQ(parse_footprint_mode("physical"), FootprintMode::kPhysical);
  EXPECT_EQ(parse_footprint_mode(to_string(FootprintMode::kPaperLiteral)), FootprintMode::kPaperLiteral);
  EXPECT_FALSE(parse_footprint_mode("logical"));
}
