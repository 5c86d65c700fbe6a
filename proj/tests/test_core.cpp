#include <gtest/gtest.h>

#include "evchain/core.hpp"
#include "evchain/segment.hpp"
#include "support/util.hpp"

using namespace evchain;

namespace {

Document two_sentences() { return segment_text("The fox ran. It hid."); }

bool has_violation(const ValidationReport& r, const std::string& type, std::size_t index,
                   const std::string& rule) {
  for (const auto& v : r) {
    if (v.type == type && v.index == index && v.rule == rule) return true;
  }
  return false;
}

}  // namespace

TEST(ResolveSpan, SlicesCharacters) {
  const auto doc = segment_text("a cat sat");
  EXPECT_EQ(resolve_span(doc, {2, 5}), "cat");
  EXPECT_EQ(resolve_span(doc, {0, 1}), "a");
}

TEST(ResolveSpan, OutOfRangeNamesOffsets) {
  const auto doc = segment_text("a cat");
  try {
    resolve_span(doc, {4, 9});
    FAIL() << "expected BoundsError";
  } catch (const BoundsError& e) {
    EXPECT_NE(std::string(e.what()).find("(4,9)"), std::string::npos);
  }
  EXPECT_THROW(resolve_span(doc, {3, 3}), BoundsError);
}

TEST(ResolveSpan, OffsetsCountCodePoints) {
  const auto doc = segment_text("Zoë ran to the café.");
  EXPECT_EQ(resolve_span(doc, {0, 3}), "Zoë");
  EXPECT_EQ(resolve_span(doc, {15, 19}), "café");
  EXPECT_EQ(doc.length(), 20u);
}

TEST(ValidateDocument, WellFormedIsEmpty) {
  EXPECT_TRUE(validate_document(two_sentences()).empty());
}

TEST(ValidateDocument, ReportsOverlap) {
  const Document doc("d", "abcdef", {{{0, 3}, "abc", 0}, {{2, 5}, "cde", 0}}, {{0, 5}});
  const auto r = validate_document(doc);
  EXPECT_TRUE(has_violation(r, "Token", 1, "overlap"));
}

TEST(ValidateDocument, ReportsOrphanToken) {
  const Document doc("d", "ab cd", {{{0, 2}, "ab", 0}, {{3, 5}, "cd", 0}}, {{0, 2}});
  const auto r = validate_document(doc);
  EXPECT_TRUE(has_violation(r, "Token", 1, "orphan token"));
}

TEST(ValidateDocument, ReportsSurfaceMismatchAndEmptySentence) {
  const Document doc("d", "ab cd", {{{0, 2}, "xx", 0}}, {{0, 2}, {3, 5}});
  const auto r = validate_document(doc);
  EXPECT_TRUE(has_violation(r, "Token", 0, "surface mismatch"));
  EXPECT_TRUE(has_violation(r, "Sentence", 1, "no tokens"));
}

TEST(ValidateDocument, ReportsOutOfRange) {
  const Document doc("d", "ab", {{{0, 4}, "ab", 0}}, {{0, 4}});
  const auto r = validate_document(doc);
  EXPECT_TRUE(has_violation(r, "Token", 0, "span out of range"));
  EXPECT_TRUE(has_violation(r, "Sentence", 0, "span out of range"));
}

TEST(ValidateDocument, Idempotent) {
  const Document doc("d", "abcdef", {{{0, 3}, "abc", 0}, {{2, 5}, "cde", 0}}, {{0, 5}});
  EXPECT_EQ(validate_document(doc), validate_document(doc));
}

TEST(ValidateEvents, ChecksOrderAndRanges) {
  const auto doc = two_sentences();
  EventRecord a{0, {4, 7}, "fox", std::nullopt, std::nullopt, 0, 1.0};
  EventRecord b{1, {8, 11}, "run", std::nullopt, std::nullopt, 0, std::nullopt};
  EXPECT_TRUE(validate_events(doc, {a, b}).empty());
  EXPECT_FALSE(validate_events(doc, {b, a}).empty());
  b.sentence_index = 1;
  EXPECT_FALSE(validate_events(doc, {a, b}).empty());
  b.sentence_index = 0;
  b.salience = -1.0;
  EXPECT_FALSE(validate_events(doc, {a, b}).empty());
}

TEST(Relation, ExactlyFourValuesRoundTrip) {
  ASSERT_EQ(std::size(kAllRelations), 4u);
  for (auto r : kAllRelations) EXPECT_EQ(parse_relation(to_string(r)), r);
  EXPECT_FALSE(parse_relation("before"));
}

TEST(Gender, ExactlyFourValuesRoundTrip) {
  ASSERT_EQ(std::size(kAllGenders), 4u);
  for (auto g : kAllGenders) EXPECT_EQ(parse_gender(to_string(g)), g);
}

TEST(ChainFilterText, DescribeParseRoundTrip) {
  for (const auto& f : {ChainFilter::all(), ChainFilter::salient(), ChainFilter::for_gender(GenderLabel::kFemale),
                        ChainFilter::for_character(12)}) {
    EXPECT_EQ(ChainFilter::parse(f.describe()), f);
  }
  EXPECT_EQ(ChainFilter::parse("gender:male").gender, GenderLabel::kMale);
  EXPECT_THROW(ChainFilter::parse("gender:other"), ArgumentError);
  EXPECT_THROW(ChainFilter::parse("character:x"), ArgumentError);
  EXPECT_THROW(ChainFilter::parse("everything"), ArgumentError);
}

TEST(SpanOps, OverlapAndContainment) {
  const Span a{2, 6}, b{4, 9}, c{6, 8};
  EXPECT_EQ(a.overlap(b), 2u);
  EXPECT_EQ(a.overlap(c), 0u);
  EXPECT_TRUE(Span(0, 10).contains(a));
  EXPECT_FALSE(a.overlaps(c));
}

// Property: segmenting any text gives a valid document whose token spans
// resolve to their surfaces.
TEST(CoreProperties, SegmentedDocumentsAreValidAndLossless) {
  Xoshiro256 rng(2024);
  for (int round = 0; round < 300; ++round) {
    const auto text = testsupport::random_text(rng, 1 + rng() % 40);
    const auto doc = segment_text(text);
    ASSERT_TRUE(validate_document(doc).empty()) << text;
    for (const auto& tok : doc.tokens()) ASSERT_EQ(resolve_span(doc, tok.span), tok.surface) << text;
  }
}
