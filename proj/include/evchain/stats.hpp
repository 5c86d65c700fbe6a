#pragma once

// Story-level bias statistics over events grouped by the gender of the
// characters involved.
//
// For a lemma and two groups A, B of events:
//   a = A events with the lemma     b = A events without it
//   c = B events with the lemma     d = B events without it
//   OR = (a / b) / (c / d)
// When any cell is zero, 0.5 is added to all four (Haldane-Anscombe).

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evchain/characters.hpp"
#include "evchain/core.hpp"
#include "evchain/error.hpp"

namespace evchain {

struct ContingencyTable {
  std::string lemma;
  double a = 0;
  double b = 0;
  double c = 0;
  double d = 0;
  bool corrected = false;

  double group_a_total() const { return a + b; }
  double group_b_total() const { return c + d; }
  ContingencyTable swapped() const { return {lemma, c, d, a, b, corrected}; }

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

using EventPredicate = std::function<bool(const EventRecord&)>;

// Events matching neither predicate are ignored; an event matching both is
// counted in both groups.
inline ContingencyTable build_contingency(std::span<const EventRecord> events,
                                          const EventPredicate& in_group_a,
                                          const EventPredicate& in_group_b,
                                          std::string_view lemma) {
  ContingencyTable t;
  t.lemma = std::string(lemma);
  for (const auto& ev : events) {
    const bool hit = ev.lemma == lemma;
    if (in_group_a(ev)) (hit ? t.a : t.b) += 1;
    if (in_group_b(ev)) (hit ? t.c : t.d) += 1;
  }
  return t;
}

struct OddsRatio {
  double value = 1.0;
  double log_value = 0.0;  // (ln a + ln d) - (ln b + ln c): exactly negated under group swap
  ContingencyTable table;  // as used, i.e. after correction when one applied
};

inline OddsRatio odds_ratio(const ContingencyTable& table) {
  if (table.group_a_total() <= 0 || table.group_b_total() <= 0) {
    throw UndefinedGroupError("odds ratio for '" + table.lemma + "': a group has no events");
  }
  ContingencyTable t = table;
  if (!t.corrected && (t.a == 0 || t.b == 0 || t.c == 0 || t.d == 0)) {
    t.a += 0.5;
    t.b += 0.5;
    t.c += 0.5;
    t.d += 0.5;
    t.corrected = true;
  }
  const double log_value = (std::log(t.a) + std::log(t.d)) - (std::log(t.b) + std::log(t.c));
  return {(t.a / t.b) / (t.c / t.d), log_value, t};
}

// Event membership in a gender group via the characters in its arguments.
inline EventPredicate involves_gender(std::span<const CharacterEntity> characters, GenderLabel gender,
                                      bool include_objects) {
  std::map<CharacterId, GenderLabel> genders;
  for (const auto& c : characters) genders.emplace(c.character_id, c.gender);
  return [genders = std::move(genders), gender, include_objects](const EventRecord& ev) {
    auto matches = [&](const std::optional<Argument>& arg) {
      if (!arg || !arg->character) return false;
      auto it = genders.find(*arg->character);
      return it != genders.end() && it->second == gender;
    };
    return matches(ev.subject) || (include_objects && matches(ev.object));
  };
}

struct PolarizedLemma {
  std::string lemma;
  ContingencyTable counts;  // raw counts, before correction
  double odds_ratio = 1.0;
  double log_odds_ratio = 0.0;
  bool corrected = false;

  double magnitude() const { return std::abs(log_odds_ratio); }
  friend bool operator==(const PolarizedLemma&, const PolarizedLemma&) = default;
};

struct PolarizedReport {
  GenderLabel group_a = GenderLabel::kMale;
  GenderLabel group_b = GenderLabel::kFemale;
  bool defined = false;  // false when either group has no events
  std::vector<PolarizedLemma> ranked;    // by |ln OR| descending, then lemma
  std::vector<PolarizedLemma> toward_a;  // OR > 1, in ranked order
  std::vector<PolarizedLemma> toward_b;  // OR < 1, in ranked order

  friend bool operator==(const PolarizedReport&, const PolarizedReport&) = default;
};

struct PolarizationOptions {
  std::size_t min_total = 5;
  bool include_objects = false;
  GenderLabel group_a = GenderLabel::kMale;
  GenderLabel group_b = GenderLabel::kFemale;
};

// Lemmas occurring at least min_total times among group A and B events,
// ranked by how far their odds ratio is from 1.
inline PolarizedReport polarized_events(std::span<const EventRecord> events,
                                        std::span<const CharacterEntity> characters,
                                        const PolarizationOptions& opts = {}) {
  PolarizedReport report;
  report.group_a = opts.group_a;
  report.group_b = opts.group_b;
  const auto in_a = involves_gender(characters, opts.group_a, opts.include_objects);
  const auto in_b = involves_gender(characters, opts.group_b, opts.include_objects);

  std::map<std::string, std::size_t> occurrences;
  std::size_t a_total = 0;
  std::size_t b_total = 0;
  for (const auto& ev : events) {
    const bool a = in_a(ev);
    const bool b = in_b(ev);
    a_total += a;
    b_total += b;
    if (a || b) ++occurrences[ev.lemma];
  }
  report.defined = a_total > 0 && b_total > 0;
  if (!report.defined) return report;

  for (const auto& [lemma, count] : occurrences) {
    if (count < opts.min_total) continue;
    const auto table = build_contingency(events, in_a, in_b, lemma);
    const auto ratio = odds_ratio(table);
    report.ranked.push_back({lemma, table, ratio.value, ratio.log_value, ratio.table.corrected});
  }
  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const PolarizedLemma& x, const PolarizedLemma& y) {
                     if (x.magnitude() != y.magnitude()) return x.magnitude() > y.magnitude();
                     return x.lemma < y.lemma;
                   });
  for (const auto& p : report.ranked) {
    if (p.log_odds_ratio > 0.0) report.toward_a.push_back(p);
    if (p.log_odds_ratio < 0.0) report.toward_b.push_back(p);
  }
  return report;
}

struct ImportanceRow {
  CharacterId character_id = 0;
  std::string name;
  std::size_t name_mentions = 0;
  std::size_t pronoun_mentions = 0;
  std::size_t total = 0;
  ImportanceTier tier = ImportanceTier::kTertiary;
  double share = 0.0;

  friend bool operator==(const ImportanceRow&, const ImportanceRow&) = default;
};

inline std::vector<ImportanceRow> importance_table(std::span<const CharacterEntity> entities) {
  std::size_t total = 0;
  for (const auto& e : entities) total += e.total_mentions();
  std::vector<const CharacterEntity*> sorted;
  for (const auto& e : entities) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(), [](const CharacterEntity* x, const CharacterEntity* y) {
    if (x->total_mentions() != y->total_mentions()) return x->total_mentions() > y->total_mentions();
    return x->first_offset < y->first_offset;
  });
  std::vector<ImportanceRow> rows;
  for (const auto* e : sorted) {
    rows.push_back({e->character_id, e->name, e->name_mentions, e->pronoun_mentions,
                    e->total_mentions(), e->importance,
                    total == 0 ? 0.0 : static_cast<double>(e->total_mentions()) / static_cast<double>(total)});
  }
  return rows;
}

// Everything the statistics panels show for one story.
struct StatsReport {
  std::vector<ImportanceRow> importance;
  PolarizedReport polarized;
  // Events per subject gender; events with no resolved subject are "unresolved".
  std::map<std::string, std::size_t> subject_gender_counts;
  std::map<std::string, std::size_t> tier_counts;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

inline StatsReport build_stats(std::span<const EventRecord> events,
                               std::span<const CharacterEntity> characters,
                               const PolarizationOptions& opts) {
  StatsReport report;
  report.importance = importance_table(characters);
  report.polarized = polarized_events(events, characters, opts);
  std::map<CharacterId, GenderLabel> genders;
  for (const auto& c : characters) genders.emplace(c.character_id, c.gender);
  for (auto g : kAllGenders) report.subject_gender_counts[std::string(to_string(g))] = 0;
  report.subject_gender_counts["unresolved"] = 0;
  for (const auto& ev : events) {
    if (ev.subject && ev.subject->character && genders.count(*ev.subject->character)) {
      ++report.subject_gender_counts[std::string(to_string(genders[*ev.subject->character]))];
    } else {
      ++report.subject_gender_counts["unresolved"];
    }
  }
  for (auto t : {ImportanceTier::kPrimary, ImportanceTier::kSecondary, ImportanceTier::kTertiary}) {
    report.tier_counts[std::string(to_string(t))] = 0;
  }
  for (const auto& c : characters) ++report.tier_counts[std::string(to_string(c.importance))];
  return report;
}

}  // namespace evchain
