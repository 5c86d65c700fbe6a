#include <gtest/gtest.h>

#include <cmath>

#include "evchain/stats.hpp"
#include "support/util.hpp"

using namespace evchain;

namespace {

// Characters 0 (MALE), 1 (FEMALE), 2 (GROUP).
std::vector<CharacterEntity> cast() {
  std::vector<CharacterEntity> out(3);
  const GenderLabel g[] = {GenderLabel::kMale, GenderLabel::kFemale, GenderLabel::kGroup};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i].character_id = i;
    out[i].name = "c" + std::to_string(i);
    out[i].gender = g[i];
  }
  return out;
}

struct EventBuilder {
  std::vector<EventRecord> events;

  void add(const std::string& lemma, std::optional<CharacterId> subject, int times = 1,
           std::optional<CharacterId> object = std::nullopt) {
    for (int i = 0; i < times; ++i) {
      EventRecord ev;
      ev.event_id = events.size();
      ev.lemma = lemma;
      if (subject) ev.subject = Argument{{0, 1}, subject};
      if (object) ev.object = Argument{{2, 3}, object};
      events.push_back(ev);
    }
  }
};

bool male(const EventRecord& e) { return e.subject && e.subject->character == 0u; }
bool female(const EventRecord& e) { return e.subject && e.subject->character == 1u; }

}  // namespace

TEST(BuildContingency, DirectCounting) {
  EventBuilder b;
  b.add("kill", 0, 3);
  b.add("walk", 0, 7);
  b.add("kill", 1, 1);
  b.add("walk", 1, 9);
  b.add("kill", std::nullopt, 4);
  const auto t = build_contingency(b.events, male, female, "kill");
  EXPECT_EQ(t.a, 3);
  EXPECT_EQ(t.b, 7);
  EXPECT_EQ(t.c, 1);
  EXPECT_EQ(t.d, 9);
  const auto absent = build_contingency(b.events, male, female, "fly");
  EXPECT_EQ(absent.a, 0);
  EXPECT_EQ(absent.c, 0);
  const auto empty = build_contingency({}, male, female, "kill");
  EXPECT_EQ(empty.a + empty.b + empty.c + empty.d, 0);
}

TEST(OddsRatio, CleanTable) {
  const auto r = odds_ratio({"kill", 8, 92, 2, 98, false});
  EXPECT_NEAR(r.value, 784.0 / 184.0, 1e-12);
  EXPECT_NEAR(r.value, 4.261, 5e-4);
  EXPECT_FALSE(r.table.corrected);
  EXPECT_NEAR(std::exp(r.log_value), r.value, 1e-12);
}

TEST(OddsRatio, SymmetricTableIsOne) {
  EXPECT_DOUBLE_EQ(odds_ratio({"x", 4, 6, 4, 6, false}).value, 1.0);
}

TEST(OddsRatio, HaldaneAnscombeWhenACellIsZero) {
  const auto r = odds_ratio({"x", 3, 97, 0, 100, false});
  EXPECT_TRUE(r.table.corrected);
  EXPECT_NEAR(r.value, (3.5 / 97.5) / (0.5 / 100.5), 1e-12);
  EXPECT_NEAR(r.value, 7.216, 1e-3);
  EXPECT_EQ(r.table.a, 3.5);
  EXPECT_EQ(r.table.d, 100.5);
}

TEST(OddsRatio, EmptyGroupIsUndefined) {
  EXPECT_THROW(odds_ratio({"x", 0, 0, 1, 2, false}), UndefinedGroupError);
  EXPECT_THROW(odds_ratio({"x", 1, 2, 0, 0, false}), UndefinedGroupError);
}

TEST(PolarizedEvents, OneSidedLemmaLeansThatWay) {
  EventBuilder b;
  b.add("fight", 0, 6);
  b.add("walk", 0, 4);
  b.add("walk", 1, 4);
  b.add("sew", 1, 2);
  const auto report = polarized_events(b.events, cast());
  ASSERT_TRUE(report.defined);
  // sew occurs twice, below the default threshold of 5.
  ASSERT_EQ(report.ranked.size(), 2u);
  EXPECT_EQ(report.ranked[0].lemma, "fight");
  EXPECT_TRUE(report.ranked[0].corrected);
  EXPECT_GT(report.ranked[0].odds_ratio, 1.0);
  ASSERT_EQ(report.toward_a.size(), 1u);
  EXPECT_EQ(report.toward_a[0].lemma, "fight");
  EXPECT_EQ(report.ranked[0].counts.a, 6);
}

TEST(PolarizedEvents, BalancedLemmaRanksLast) {
  EventBuilder b;
  b.add("walk", 0, 5);
  b.add("walk", 1, 5);
  b.add("run", 0, 5);
  b.add("run", 1, 1);
  b.add("sit", 0, 2);
  b.add("sit", 1, 6);
  const auto report = polarized_events(b.events, cast());
  ASSERT_EQ(report.ranked.size(), 3u);
  EXPECT_EQ(report.ranked.back().lemma, "walk");
  EXPECT_NEAR(report.ranked.back().magnitude(), 0.0, 1e-12);
}

TEST(PolarizedEvents, MinTotalAndGroupExclusion) {
  EventBuilder b;
  b.add("walk", 0, 3);
  b.add("walk", 1, 1);
  b.add("walk", 2, 10);  // GROUP subjects are outside both groups
  PolarizationOptions opts;
  opts.min_total = 5;
  EXPECT_TRUE(polarized_events(b.events, cast(), opts).ranked.empty());
  opts.min_total = 4;
  EXPECT_EQ(polarized_events(b.events, cast(), opts).ranked.size(), 1u);
}

TEST(PolarizedEvents, UndefinedWhenAGroupIsEmpty) {
  EventBuilder b;
  b.add("walk", 0, 9);
  const auto report = polarized_events(b.events, cast());
  EXPECT_FALSE(report.defined);
  EXPECT_TRUE(report.ranked.empty());
}

TEST(PolarizedEvents, ObjectRolesOptional) {
  EventBuilder b;
  b.add("chase", std::nullopt, 5, 1);
  b.add("walk", 0, 5);
  PolarizationOptions opts;
  EXPECT_FALSE(polarized_events(b.events, cast(), opts).defined);
  opts.include_objects = true;
  const auto report = polarized_events(b.events, cast(), opts);
  ASSERT_TRUE(report.defined);
  ASSERT_FALSE(report.toward_b.empty());
  EXPECT_EQ(report.toward_b[0].lemma, "chase");
}

TEST(ImportanceTable, SharesAndOrder) {
  auto chars = cast();
  chars[0].name_mentions = 10;
  chars[1].name_mentions = 20;
  chars[1].pronoun_mentions = 10;
  chars.pop_back();
  const auto rows = importance_table(chars);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].character_id, 1u);
  EXPECT_DOUBLE_EQ(rows[0].share, 0.75);
  EXPECT_DOUBLE_EQ(rows[1].share, 0.25);
  EXPECT_EQ(rows[0].total, 30u);

  chars.pop_back();
  EXPECT_DOUBLE_EQ(importance_table(chars)[0].share, 1.0);
  EXPECT_TRUE(importance_table(std::vector<CharacterEntity>{}).empty());
}

TEST(BuildStats, SubjectGenderCounts) {
  EventBuilder b;
  b.add("walk", 0, 2);
  b.add("walk", 1, 1);
  b.add("walk", 2, 1);
  b.add("walk", std::nullopt, 3);
  const auto s = build_stats(b.events, cast(), {});
  EXPECT_EQ(s.subject_gender_counts.at("MALE"), 2u);
  EXPECT_EQ(s.subject_gender_counts.at("FEMALE"), 1u);
  EXPECT_EQ(s.subject_gender_counts.at("GROUP"), 1u);
  EXPECT_EQ(s.subject_gender_counts.at("UNKNOWN"), 0u);
  EXPECT_EQ(s.subject_gender_counts.at("unresolved"), 3u);
  EXPECT_EQ(s.tier_counts.at("TERTIARY"), 3u);
}

// Property: swapping groups gives the reciprocal, including under correction,
// and the result is always finite and positive.
TEST(StatsProperties, ReciprocalUnderGroupSwap) {
  Xoshiro256 rng(101);
  for (int round = 0; round < 1000; ++round) {
    ContingencyTable t{"x", static_cast<double>(rng() % 6), static_cast<double>(rng() % 50),
                       static_cast<double>(rng() % 6), static_cast<double>(rng() % 50), false};
    if (t.group_a_total() == 0 || t.group_b_total() == 0) continue;
    const auto fwd = odds_ratio(t);
    const auto back = odds_ratio(t.swapped());
    ASSERT_TRUE(std::isfinite(fwd.value));
    ASSERT_GT(fwd.value, 0.0);
    EXPECT_NEAR(fwd.value * back.value, 1.0, 1e-12);
    EXPECT_EQ(fwd.log_value, -back.log_value);
  }
}

// Property: contingency totals equal an independent recount of group sizes,
// and the polarized ranking is the same whichever gender is group A.
TEST(StatsProperties, TotalsAndGroupSymmetry) {
  Xoshiro256 rng(202);
  const std::vector<std::string> lemmas = {"go", "see", "take", "give", "kill"};
  for (int round = 0; round < 200; ++round) {
    EventBuilder b;
    std::size_t males = 0, females = 0;
    for (int i = 0; i < 60; ++i) {
      const auto who = rng() % 4;
      std::optional<CharacterId> subject;
      if (who < 3) subject = who;
      males += who == 0;
      females += who == 1;
      b.add(lemmas[rng() % lemmas.size()], subject);
    }
    for (const auto& lemma : lemmas) {
      const auto t = build_contingency(b.events, male, female, lemma);
      EXPECT_EQ(t.group_a_total(), static_cast<double>(males));
      EXPECT_EQ(t.group_b_total(), static_cast<double>(females));
    }
    PolarizationOptions ab;
    PolarizationOptions ba;
    ba.group_a = GenderLabel::kFemale;
    ba.group_b = GenderLabel::kMale;
    const auto r1 = polarized_events(b.events, cast(), ab);
    const auto r2 = polarized_events(b.events, cast(), ba);
    ASSERT_EQ(r1.ranked.size(), r2.ranked.size());
    for (std::size_t i = 0; i < r1.ranked.size(); ++i) {
      EXPECT_EQ(r1.ranked[i].lemma, r2.ranked[i].lemma);
      EXPECT_EQ(r1.ranked[i].magnitude(), r2.ranked[i].magnitude());
    }
    EXPECT_EQ(r1.toward_a.size(), r2.toward_b.size());
    EXPECT_EQ(r1.toward_b.size(), r2.toward_a.size());
  }
}
