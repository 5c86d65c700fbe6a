#pragma once

// Model-free annotators: lexicon-driven event extraction, capitalized-name
// detection, nearest-antecedent pronoun resolution, and the two pairwise
// temporal baselines (textual order and seeded coin flips).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "evchain/core.hpp"
#include "evchain/lexicon.hpp"
#include "evchain/random.hpp"
#include "evchain/segment.hpp"
#include "evchain/utf8.hpp"

namespace evchain {

namespace detail {

inline bool is_capitalized_word(std::string_view surface) {
  const auto cps = utf8::decode(surface);
  if (cps.empty() || !utf8::is_upper(cps.front())) return false;
  return std::all_of(cps.begin(), cps.end(), [](char32_t c) {
    return utf8::is_alpha(c) || c == U'-' || c == U'\'' || c == 0x2019;
  });
}

inline bool punct_only(std::string_view surface) { return !is_word(surface); }

// Token sits where any word would be capitalized: sentence start, or right
// after an opening quote, colon, dash or terminator.
inline bool at_initial_position(const Document& doc, std::size_t t) {
  const auto& toks = doc.tokens();
  if (t == 0 || toks[t - 1].sentence_index != toks[t].sentence_index) return true;
  const auto& prev = toks[t - 1].surface;
  if (!punct_only(prev)) return false;
  const auto cps = utf8::decode(prev);
  const char32_t c = cps.front();
  return utf8::is_quote(c) || c == U':' || c == U'(' || c == U'[' || c == U'-' || c == 0x2013 ||
         c == 0x2014 || c == U'.' || c == U'!' || c == U'?' || c == 0x2026;
}

inline bool name_candidate(const Token& tok, const Lexicons& lex) {
  if (!is_capitalized_word(tok.surface)) return false;
  if (lex.pronouns.contains(tok.surface) || lex.stopwords.contains(tok.surface)) return false;
  if (lex.verbs.lookup(tok.surface) && !lex.names.gender(tok.surface)) return false;
  return true;
}

// Lowercased last word of a name mention; mentions sharing it corefer.
inline std::string name_key(const Document& doc, const Mention& m) {
  std::string key;
  const auto [first, last] = tokens_within(doc, m.span);
  for (std::size_t t = first; t < last; ++t) {
    if (is_word(doc.tokens()[t].surface)) key = utf8::ascii_lower(doc.tokens()[t].surface);
  }
  return key.empty() ? utf8::ascii_lower(m.surface) : key;
}

}  // namespace detail

// Capitalized-word runs that look like character names ("Anna",
// "Mr. Fox", "King Arthur"). A word in sentence-initial position only counts
// when the name lexicon knows it, it also appears capitalized mid-sentence, or
// another capitalized word follows it ("Little Red Cap").
inline std::vector<Mention> locate_name_mentions(const Document& doc, const Lexicons& lex) {
  const auto& toks = doc.tokens();
  std::vector<bool> candidate(toks.size());
  std::unordered_set<std::string> seen_mid_sentence;
  for (std::size_t t = 0; t < toks.size(); ++t) {
    candidate[t] = detail::name_candidate(toks[t], lex);
    if (candidate[t] && !detail::at_initial_position(doc, t)) {
      seen_mid_sentence.insert(toks[t].surface);
    }
  }

  std::vector<Mention> mentions;
  std::size_t t = 0;
  while (t < toks.size()) {
    const bool run_follows = t + 1 < toks.size() && candidate[t + 1] &&
                             toks[t + 1].sentence_index == toks[t].sentence_index;
    const bool accepted =
        candidate[t] && (!detail::at_initial_position(doc, t) || lex.names.gender(toks[t].surface) ||
                         seen_mid_sentence.count(toks[t].surface) > 0 || run_follows);
    if (!accepted) {
      ++t;
      continue;
    }
    std::size_t last = t;
    while (true) {
      const std::size_t next = last + 1;
      if (next < toks.size() && candidate[next] &&
          toks[next].sentence_index == toks[last].sentence_index) {
        last = next;
        continue;
      }
      // "Mr. Fox": abbreviation, glued period, capitalized word.
      if (next + 1 < toks.size() && toks[next].surface == "." &&
          toks[next].span.start == toks[last].span.end &&
          lex.abbreviations.contains(toks[last].surface) && candidate[next + 1] &&
          toks[next + 1].sentence_index == toks[last].sentence_index) {
        last = next + 1;
        continue;
      }
      break;
    }
    const Span span{toks[t].span.start, toks[last].span.end};
    mentions.push_back({span, MentionKind::kName, std::string(doc.slice(span))});
    t = last + 1;
  }
  return mentions;
}

// Groups name mentions by their last word, then attaches every singular
// pronoun to the nearest preceding name whose cluster gender does not
// conflict with it. Cluster gender comes from the name lexicon, else from
// pronouns attached so far. Plural pronouns and pronouns without a
// compatible antecedent become singleton clusters.
inline std::vector<MentionCluster> resolve_pronouns_heuristic(const Document& doc,
                                                              std::span<const Mention> name_mentions,
                                                              const Lexicons& lex) {
  struct Building {
    std::vector<Mention> mentions;
    std::optional<GenderLabel> lexicon_gender;
    std::size_t male = 0;
    std::size_t female = 0;

    std::optional<GenderLabel> gender() const {
      if (lexicon_gender) return lexicon_gender;
      if (male > female) return GenderLabel::kMale;
      if (female > male) return GenderLabel::kFemale;
      return std::nullopt;
    }
  };

  std::vector<Mention> names(name_mentions.begin(), name_mentions.end());
  std::sort(names.begin(), names.end(),
            [](const Mention& a, const Mention& b) { return a.span < b.span; });

  std::vector<Building> clusters;
  std::unordered_map<std::string, std::size_t> by_key;
  std::vector<std::size_t> name_cluster(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto key = detail::name_key(doc, names[i]);
    auto [it, inserted] = by_key.emplace(key, clusters.size());
    if (inserted) clusters.emplace_back();
    auto& cl = clusters[it->second];
    cl.mentions.push_back(names[i]);
    name_cluster[i] = it->second;
    if (!cl.lexicon_gender) {
      const auto [first, last] = tokens_within(doc, names[i].span);
      for (std::size_t t = first; t < last; ++t) {
        if (auto g = lex.names.gender(doc.tokens()[t].surface)) {
          cl.lexicon_gender = g;
          break;
        }
      }
    }
  }

  for (const auto& tok : doc.tokens()) {
    const auto family = lex.pronouns.family(tok.surface);
    if (!family) continue;
    const Mention pronoun{tok.span, MentionKind::kPronoun, tok.surface};
    // Names are sorted; scan back from the last one ending before the pronoun.
    auto it = std::upper_bound(names.begin(), names.end(), tok.span.start,
                               [](std::size_t pos, const Mention& m) { return pos < m.span.end; });
    std::optional<std::size_t> target;
    const auto preceding = static_cast<std::size_t>(it - names.begin());
    for (std::size_t k = *family == GenderLabel::kGroup ? 0 : preceding; k-- > 0;) {
      const auto g = clusters[name_cluster[k]].gender();
      const bool conflict = g && *g != *family;
      if (!conflict) {
        target = name_cluster[k];
        break;
      }
    }
    if (!target) {
      target = clusters.size();
      clusters.emplace_back();
    }
    auto& cl = clusters[*target];
    cl.mentions.push_back(pronoun);
    if (*family == GenderLabel::kMale) ++cl.male;
    if (*family == GenderLabel::kFemale) ++cl.female;
  }

  for (auto& cl : clusters) {
    std::sort(cl.mentions.begin(), cl.mentions.end(),
              [](const Mention& a, const Mention& b) { return a.span < b.span; });
  }
  std::sort(clusters.begin(), clusters.end(), [](const Building& a, const Building& b) {
    return a.mentions.front().span < b.mentions.front().span;
  });
  std::vector<MentionCluster> out;
  out.reserve(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    out.push_back({i, std::move(clusters[i].mentions)});
  }
  return out;
}

inline std::vector<MentionCluster> resolve_pronouns_heuristic(const Document& doc,
                                                              std::span<const Mention> name_mentions) {
  return resolve_pronouns_heuristic(doc, name_mentions, Lexicons{});
}

// One event per lexicon verb token. Subject: nearest preceding name or
// pronoun in the same sentence; object: nearest following one. When
// `names` is empty, any capitalized non-stopword token counts as a name.
inline std::vector<EventRecord> extract_events_heuristic(const Document& doc, const Lexicons& lex,
                                                         std::span<const Mention> names) {
  const auto& toks = doc.tokens();
  // Span of the name/pronoun argument each token belongs to, if any.
  std::vector<std::optional<Span>> argument(toks.size());
  std::size_t m = 0;
  for (std::size_t t = 0; t < toks.size(); ++t) {
    if (lex.pronouns.contains(toks[t].surface)) {
      argument[t] = toks[t].span;
      continue;
    }
    if (names.empty()) {
      if (detail::name_candidate(toks[t], lex)) argument[t] = toks[t].span;
      continue;
    }
    while (m < names.size() && names[m].span.end <= toks[t].span.start) ++m;
    if (m < names.size() && names[m].span.contains(toks[t].span)) argument[t] = names[m].span;
  }

  std::vector<EventRecord> events;
  for (std::size_t t = 0; t < toks.size(); ++t) {
    if (argument[t]) continue;
    const std::string* lemma = lex.verbs.lookup(toks[t].surface);
    if (!lemma) continue;
    EventRecord ev;
    ev.event_id = events.size();
    ev.trigger = toks[t].span;
    ev.lemma = *lemma;
    ev.sentence_index = toks[t].sentence_index;
    for (std::size_t k = t; k-- > 0 && toks[k].sentence_index == toks[t].sentence_index;) {
      if (argument[k]) {
        ev.subject = Argument{*argument[k], std::nullopt};
        break;
      }
    }
    for (std::size_t k = t + 1; k < toks.size() && toks[k].sentence_index == toks[t].sentence_index;
         ++k) {
      if (argument[k]) {
        ev.object = Argument{*argument[k], std::nullopt};
        break;
      }
    }
    events.push_back(std::move(ev));
  }
  return events;
}

inline std::vector<EventRecord> extract_events_heuristic(const Document& doc,
                                                         const VerbLexicon& verbs) {
  Lexicons lex;
  lex.verbs = verbs;
  return extract_events_heuristic(doc, lex, {});
}

// (e_i, e_{i+1}, BEFORE) for each adjacent pair in the given order.
inline std::vector<TemporalLabel> label_pairs_sequential(std::span<const EventRecord> events) {
  std::vector<TemporalLabel> labels;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    labels.push_back({events[i].event_id, events[i + 1].event_id, RelationValue::kBefore, {}});
  }
  return labels;
}

// Adjacent pairs labeled BEFORE or AFTER by a fair xoshiro256** coin.
inline std::vector<TemporalLabel> label_pairs_random(std::span<const EventRecord> events,
                                                     std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<TemporalLabel> labels;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const auto rel = rng.coin() ? RelationValue::kAfter : RelationValue::kBefore;
    labels.push_back({events[i].event_id, events[i + 1].event_id, rel, {}});
  }
  return labels;
}

}  // namespace evchain
