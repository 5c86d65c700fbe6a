#include <gtest/gtest.h>

#include "evchain/characters.hpp"
#include "evchain/heuristics.hpp"
#include "evchain/segment.hpp"
#include "support/util.hpp"

using namespace evchain;

namespace {

std::size_t next_offset = 0;

Mention mention(const std::string& surface, MentionKind kind) {
  const Span span{next_offset, next_offset + surface.size()};
  next_offset += surface.size() + 1;
  return {span, kind, surface};
}

MentionCluster cluster(std::size_t id, std::initializer_list<std::pair<std::string, int>> items) {
  MentionCluster cl{id, {}};
  for (const auto& [surface, count] : items) {
    const bool pronoun = PronounLexicon::builtin().contains(surface) || surface == "it";
    for (int i = 0; i < count; ++i) {
      cl.mentions.push_back(mention(surface, pronoun ? MentionKind::kPronoun : MentionKind::kName));
    }
  }
  return cl;
}

CharacterEntity entity(CharacterId id, std::size_t mentions, std::size_t first = 0) {
  CharacterEntity e;
  e.character_id = id;
  e.name = "c" + std::to_string(id);
  e.name_mentions = mentions;
  e.first_offset = first;
  return e;
}

}  // namespace

TEST(BuildCharacters, CountsNamesAndPronouns) {
  const std::vector<MentionCluster> clusters{cluster(0, {{"Anna", 3}, {"she", 5}})};
  const auto entities = build_characters(clusters);
  ASSERT_EQ(entities.size(), 1u);
  EXPECT_EQ(entities[0].name, "Anna");
  EXPECT_EQ(entities[0].name_mentions, 3u);
  EXPECT_EQ(entities[0].pronoun_mentions, 5u);
  EXPECT_EQ(entities[0].total_mentions(), 8u);
  EXPECT_EQ(entities[0].gender, GenderLabel::kFemale);
}

TEST(BuildCharacters, DropsNamelessClusters) {
  const std::vector<MentionCluster> clusters{cluster(0, {{"it", 2}})};
  EXPECT_TRUE(build_characters(clusters).empty());
}

TEST(BuildCharacters, IndependentCounts) {
  const std::vector<MentionCluster> clusters{cluster(0, {{"Tom", 2}, {"he", 1}}),
                                             cluster(1, {{"Anna", 1}, {"her", 4}})};
  const auto entities = build_characters(clusters);
  ASSERT_EQ(entities.size(), 2u);
  EXPECT_EQ(entities[0].total_mentions(), 3u);
  EXPECT_EQ(entities[1].total_mentions(), 5u);
  EXPECT_EQ(entities[1].character_id, 1u);
}

TEST(BuildCharacters, CanonicalNameIsMostFrequentThenLongest) {
  const std::vector<MentionCluster> clusters{cluster(0, {{"Fox", 2}, {"Mr. Fox", 2}, {"Reynard", 1}})};
  EXPECT_EQ(build_characters(clusters)[0].name, "Mr. Fox");
}

TEST(BuildCharacters, NominalsTalliedSeparately) {
  auto cl = cluster(0, {{"Anna", 1}});
  cl.mentions.push_back(mention("the girl", MentionKind::kNominal));
  const std::vector<MentionCluster> clusters{cl};
  const auto e = build_characters(clusters)[0];
  EXPECT_EQ(e.nominal_mentions, 1u);
  EXPECT_EQ(e.total_mentions(), 1u);
}

TEST(InferGender, MajorityRules) {
  EXPECT_EQ(infer_gender({5, 1, 0, 0}), GenderLabel::kMale);
  EXPECT_EQ(infer_gender({0, 0, 4, 0}), GenderLabel::kGroup);
  EXPECT_EQ(infer_gender({2, 2, 0, 0}), GenderLabel::kUnknown);
  EXPECT_EQ(infer_gender({0, 0, 0, 0}), GenderLabel::kUnknown);
  EXPECT_EQ(infer_gender({0, 3, 9, 0}), GenderLabel::kFemale);
}

TEST(AssignImportance, ThresholdArithmetic) {
  auto tiers = assign_importance({entity(0, 50), entity(1, 30), entity(2, 20)});
  for (const auto& e : tiers) EXPECT_EQ(e.importance, ImportanceTier::kPrimary);

  tiers = assign_importance({entity(0, 95), entity(1, 5)});
  EXPECT_EQ(tiers[1].importance, ImportanceTier::kSecondary);

  tiers = assign_importance({entity(0, 990), entity(1, 10)});
  EXPECT_EQ(tiers[1].importance, ImportanceTier::kTertiary);

  tiers = assign_importance({entity(0, 1)});
  EXPECT_EQ(tiers[0].importance, ImportanceTier::kPrimary);

  EXPECT_TRUE(assign_importance({}).empty());
  EXPECT_THROW(assign_importance({entity(0, 1)}, {0.01, 0.5}), ArgumentError);
}

TEST(TopCharacters, MostMentionedThenEarliest) {
  std::vector<CharacterEntity> seven;
  for (std::size_t i = 0; i < 7; ++i) seven.push_back(entity(i, (i * 3) % 7 + 1, i));
  const auto top = top_characters(seven, 5);
  ASSERT_EQ(top.size(), 5u);
  for (std::size_t i = 1; i < top.size(); ++i) {
    EXPECT_GE(top[i - 1].total_mentions(), top[i].total_mentions());
  }
  EXPECT_EQ(top.back().total_mentions(), 3u);

  std::vector<CharacterEntity> three{entity(0, 1, 0), entity(1, 1, 5), entity(2, 1, 2)};
  const auto all = top_characters(three, 5);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].character_id, 0u);
  EXPECT_EQ(all[1].character_id, 2u);
  EXPECT_THROW(top_characters(three, 0), ArgumentError);
}

TEST(AttachCharacters, MaximalOverlapWins) {
  const auto doc = segment_text("Tom met Anna. He waved.");
  const Lexicons lex;
  const auto names = locate_name_mentions(doc, lex);
  const auto clusters = resolve_pronouns_heuristic(doc, names, lex);
  const auto entities = build_characters(clusters);
  auto events = extract_events_heuristic(doc, lex, names);
  attach_characters(events, clusters, entities);
  ASSERT_EQ(events.size(), 2u);
  ASSERT_TRUE(events[0].subject->character);
  EXPECT_EQ(entities[*events[0].subject->character].name, "Tom");
  EXPECT_EQ(entities[*events[0].object->character].name, "Anna");
  EXPECT_EQ(entities[*events[1].subject->character].name, "Tom");
}

// Property: totals add up and every tier matches the share brute-forced from
// the counts.
TEST(CharacterProperties, TotalsAndTiers) {
  Xoshiro256 rng(13);
  for (int round = 0; round < 200; ++round) {
    std::vector<MentionCluster> clusters;
    const std::size_t n = 1 + rng() % 8;
    for (std::size_t c = 0; c < n; ++c) {
      clusters.push_back(cluster(c, {{"Name" + std::to_string(c), static_cast<int>(rng() % 4)},
                                     {"he", static_cast<int>(rng() % 5)},
                                     {"she", static_cast<int>(rng() % 5)},
                                     {"they", static_cast<int>(rng() % 3)}}));
    }
    const auto entities = assign_importance(build_characters(clusters));
    std::size_t total = 0;
    for (const auto& e : entities) {
      EXPECT_EQ(e.total_mentions(), e.name_mentions + e.pronoun_mentions);
      EXPECT_EQ(e.pronoun_mentions, e.pronouns.total());
      EXPECT_GE(e.name_mentions, 1u);
      total += e.total_mentions();
    }
    for (const auto& e : entities) {
      const double share = static_cast<double>(e.total_mentions()) / static_cast<double>(total);
      const auto expected = share >= 0.10   ? ImportanceTier::kPrimary
                            : share >= 0.02 ? ImportanceTier::kSecondary
                                            : ImportanceTier::kTertiary;
      EXPECT_EQ(e.importance, expected);
    }
  }
}
