#pragma once

// Character entities from mention clusters: mention tallies, pronoun-based
// gender, and mention-share importance tiers.

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/lexicon.hpp"

namespace evchain {

enum class ImportanceTier { kPrimary, kSecondary, kTertiary };

inline std::string_view to_string(ImportanceTier t) {
  switch (t) {
    case ImportanceTier::kPrimary: return "PRIMARY";
    case ImportanceTier::kSecondary: return "SECONDARY";
    case ImportanceTier::kTertiary: return "TERTIARY";
  }
  return "TERTIARY";
}

inline std::optional<ImportanceTier> parse_tier(std::string_view s) {
  if (s == "PRIMARY") return ImportanceTier::kPrimary;
  if (s == "SECONDARY") return ImportanceTier::kSecondary;
  if (s == "TERTIARY") return ImportanceTier::kTertiary;
  return std::nullopt;
}

// Pronoun mentions by family; `other` holds pronouns outside the lexicon ("it").
struct PronounTally {
  std::size_t male = 0;
  std::size_t female = 0;
  std::size_t group = 0;
  std::size_t other = 0;

  std::size_t total() const { return male + female + group + other; }
  friend bool operator==(const PronounTally&, const PronounTally&) = default;
};

struct CharacterEntity {
  CharacterId character_id = 0;
  std::string name;
  std::size_t name_mentions = 0;
  std::size_t pronoun_mentions = 0;
  std::size_t nominal_mentions = 0;
  PronounTally pronouns;
  GenderLabel gender = GenderLabel::kUnknown;
  ImportanceTier importance = ImportanceTier::kTertiary;
  std::size_t cluster_id = 0;
  std::size_t first_offset = 0;  // start of the earliest mention

  std::size_t total_mentions() const { return name_mentions + pronoun_mentions; }
  friend bool operator==(const CharacterEntity&, const CharacterEntity&) = default;
};

struct ImportanceThresholds {
  double primary = 0.10;
  double secondary = 0.02;

  friend bool operator==(const ImportanceThresholds&, const ImportanceThresholds&) = default;
};

// Male vs female strict majority; only group pronouns -> GROUP; else UNKNOWN.
inline GenderLabel infer_gender(const PronounTally& tally) {
  if (tally.male > tally.female) return GenderLabel::kMale;
  if (tally.female > tally.male) return GenderLabel::kFemale;
  if (tally.male == 0 && tally.group > 0) return GenderLabel::kGroup;
  return GenderLabel::kUnknown;
}

namespace detail {

// Most frequent NAME surface; ties go to the longest, then the smallest.
inline std::string canonical_name(const MentionCluster& cluster) {
  std::map<std::string, std::size_t> counts;
  for (const auto& m : cluster.mentions) {
    if (m.kind == MentionKind::kName) ++counts[m.surface];
  }
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [surface, count] : counts) {
    if (!best || count > best_count ||
        (count == best_count && utf8::decode(surface).size() > utf8::decode(*best).size())) {
      best = &surface;
      best_count = count;
    }
  }
  return best ? *best : std::string{};
}

}  // namespace detail

// One entity per cluster holding at least one NAME mention, ids assigned in
// order of first appearance. Gender is inferred; tiers are left TERTIARY
// until assign_importance runs.
inline std::vector<CharacterEntity> build_characters(std::span<const MentionCluster> clusters,
                                                     const PronounLexicon& pronouns) {
  std::vector<CharacterEntity> out;
  for (const auto& cl : clusters) {
    CharacterEntity e;
    e.cluster_id = cl.cluster_id;
    bool first = true;
    for (const auto& m : cl.mentions) {
      if (first || m.span.start < e.first_offset) e.first_offset = m.span.start;
      first = false;
      switch (m.kind) {
        case MentionKind::kName: ++e.name_mentions; break;
        case MentionKind::kNominal: ++e.nominal_mentions; break;
        case MentionKind::kPronoun: {
          ++e.pronoun_mentions;
          const auto family = pronouns.family(m.surface);
          if (!family) {
            ++e.pronouns.other;
          } else if (*family == GenderLabel::kMale) {
            ++e.pronouns.male;
          } else if (*family == GenderLabel::kFemale) {
            ++e.pronouns.female;
          } else {
            ++e.pronouns.group;
          }
          break;
        }
      }
    }
    if (e.name_mentions == 0) continue;
    e.name = detail::canonical_name(cl);
    e.gender = infer_gender(e.pronouns);
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const CharacterEntity& a, const CharacterEntity& b) {
    return a.first_offset < b.first_offset;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].character_id = i;
  return out;
}

inline std::vector<CharacterEntity> build_characters(std::span<const MentionCluster> clusters) {
  return build_characters(clusters, PronounLexicon::builtin());
}

inline ImportanceTier tier_for_share(double share, const ImportanceThresholds& th) {
  if (share >= th.primary) return ImportanceTier::kPrimary;
  if (share >= th.secondary) return ImportanceTier::kSecondary;
  return ImportanceTier::kTertiary;
}

// Mention share of each entity over all entities, bucketed by thresholds.
inline std::vector<CharacterEntity> assign_importance(std::vector<CharacterEntity> entities,
                                                      const ImportanceThresholds& th = {}) {
  if (!(th.primary >= th.secondary && th.secondary >= 0.0)) {
    throw ArgumentError("importance thresholds must satisfy primary >= secondary >= 0");
  }
  std::size_t total = 0;
  for (const auto& e : entities) total += e.total_mentions();
  for (auto& e : entities) {
    const double share =
        total == 0 ? 0.0 : static_cast<double>(e.total_mentions()) / static_cast<double>(total);
    e.importance = tier_for_share(share, th);
  }
  return entities;
}

// Most-mentioned first; ties go to the earlier-appearing character.
inline std::vector<CharacterEntity> top_characters(std::span<const CharacterEntity> entities,
                                                   std::size_t k) {
  if (k < 1) throw ArgumentError("top_characters: k must be >= 1");
  std::vector<CharacterEntity> sorted(entities.begin(), entities.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const CharacterEntity& a, const CharacterEntity& b) {
    if (a.total_mentions() != b.total_mentions()) return a.total_mentions() > b.total_mentions();
    return a.first_offset < b.first_offset;
  });
  if (sorted.size() > k) sorted.resize(k);
  return sorted;
}

// Resolves every event argument to the character whose mention overlaps it
// most (earliest mention on ties). Arguments overlapping no retained mention
// stay unresolved.
inline void attach_characters(std::vector<EventRecord>& events,
                              std::span<const MentionCluster> clusters,
                              std::span<const CharacterEntity> entities) {
  std::map<std::size_t, CharacterId> by_cluster;
  for (const auto& e : entities) by_cluster.emplace(e.cluster_id, e.character_id);
  struct Indexed {
    Span span;
    CharacterId character;
  };
  std::vector<Indexed> mentions;
  for (const auto& cl : clusters) {
    auto it = by_cluster.find(cl.cluster_id);
    if (it == by_cluster.end()) continue;
    for (const auto& m : cl.mentions) mentions.push_back({m.span, it->second});
  }
  std::sort(mentions.begin(), mentions.end(), [](const Indexed& a, const Indexed& b) {
    return a.span < b.span || (a.span == b.span && a.character < b.character);
  });

  auto resolve = [&](std::optional<Argument>& arg) {
    if (!arg) return;
    arg->character.reset();
    std::size_t best = 0;
    // Mentions starting at or after arg end cannot overlap.
    auto end = std::lower_bound(mentions.begin(), mentions.end(), arg->span.end,
                                [](const Indexed& m, std::size_t pos) { return m.span.start < pos; });
    for (auto it = mentions.begin(); it != end; ++it) {
      const auto ov = it->span.overlap(arg->span);
      if (ov > best) {
        best = ov;
        arg->character = it->character;
      }
    }
  };
  for (auto& ev : events) {
    resolve(ev.subject);
    resolve(ev.object);
  }
}

}  // namespace evchain
