#pragma once

// JSON encoding of the shared types. Encoders and decoders are the ADL hooks
// nlohmann::json looks for, so `json j = doc;` and `j.get<Document>()` work.
// Spans encode as [start, end]; absent optionals as null.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evchain/characters.hpp"
#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/stats.hpp"
#include "evchain/temporal.hpp"

namespace evchain {

using nlohmann::json;

namespace serialize_detail {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_get(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

template <typename Enum, typename Parse>
Enum parse_enum(const json& j, Parse parse, const char* what) {
  const auto s = j.get<std::string>();
  const auto v = parse(s);
  if (!v) throw ParseError(what, "unknown value '" + s + "'");
  return *v;
}

}  // namespace serialize_detail

inline void to_json(json& j, const Span& s) { j = json::array({s.start, s.end}); }
inline void from_json(const json& j, Span& s) {
  if (!j.is_array() || j.size() != 2) throw ParseError("span", "expected [start, end]");
  s = {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

inline void to_json(json& j, const Token& t) {
  j = {{"span", t.span}, {"surface", t.surface}, {"sentence_index", t.sentence_index}};
}
inline void from_json(const json& j, Token& t) {
  t = {j.at("span").get<Span>(), j.at("surface").get<std::string>(),
       j.at("sentence_index").get<std::size_t>()};
}

inline void to_json(json& j, const Document& d) {
  j = {{"id", d.id()}, {"text", d.text()}, {"tokens", d.tokens()}, {"sentences", d.sentences()}};
}
inline void from_json(const json& j, Document& d) {
  d = Document(j.at("id").get<std::string>(), j.at("text").get<std::string>(),
               j.at("tokens").get<std::vector<Token>>(), j.at("sentences").get<std::vector<Span>>());
}

inline void to_json(json& j, const Argument& a) {
  j = {{"span", a.span}, {"character", serialize_detail::optional_json(a.character)}};
}
inline void from_json(const json& j, Argument& a) {
  a = {j.at("span").get<Span>(), serialize_detail::optional_get<CharacterId>(j, "character")};
}

inline void to_json(json& j, const EventRecord& e) {
  using serialize_detail::optional_json;
  j = {{"event_id", e.event_id},
       {"trigger", e.trigger},
       {"lemma", e.lemma},
       {"subject", optional_json(e.subject)},
       {"object", optional_json(e.object)},
       {"sentence_index", e.sentence_index},
       {"salience", optional_json(e.salience)}};
}
inline void from_json(const json& j, EventRecord& e) {
  using serialize_detail::optional_get;
  e.event_id = j.at("event_id").get<EventId>();
  e.trigger = j.at("trigger").get<Span>();
  e.lemma = j.at("lemma").get<std::string>();
  e.subject = optional_get<Argument>(j, "subject");
  e.object = optional_get<Argument>(j, "object");
  e.sentence_index = j.at("sentence_index").get<std::size_t>();
  e.salience = optional_get<double>(j, "salience");
}

inline void to_json(json& j, const TemporalLabel& l) {
  j = {{"left", l.left},
       {"right", l.right},
       {"relation", std::string(to_string(l.relation))},
       {"confidence", serialize_detail::optional_json(l.confidence)}};
}
inline void from_json(const json& j, TemporalLabel& l) {
  l.left = j.at("left").get<EventId>();
  l.right = j.at("right").get<EventId>();
  l.relation = serialize_detail::parse_enum<RelationValue>(j.at("relation"), parse_relation, "relation");
  l.confidence = serialize_detail::optional_get<double>(j, "confidence");
}

inline void to_json(json& j, const EventChain& c) {
  j = {{"filter", c.filter.describe()}, {"event_ids", c.event_ids}};
}
inline void from_json(const json& j, EventChain& c) {
  c.filter = ChainFilter::parse(j.at("filter").get<std::string>());
  c.event_ids = j.at("event_ids").get<std::vector<EventId>>();
}

inline void to_json(json& j, const Mention& m) {
  j = {{"span", m.span}, {"kind", std::string(to_string(m.kind))}, {"surface", m.surface}};
}
inline void from_json(const json& j, Mention& m) {
  m.span = j.at("span").get<Span>();
  m.kind = serialize_detail::parse_enum<MentionKind>(j.at("kind"), parse_mention_kind, "kind");
  m.surface = j.at("surface").get<std::string>();
}

inline void to_json(json& j, const MentionCluster& c) {
  j = {{"cluster_id", c.cluster_id}, {"mentions", c.mentions}};
}
inline void from_json(const json& j, MentionCluster& c) {
  c.cluster_id = j.at("cluster_id").get<std::size_t>();
  c.mentions = j.at("mentions").get<std::vector<Mention>>();
}

inline void to_json(json& j, const PronounTally& p) {
  j = {{"male", p.male}, {"female", p.female}, {"group", p.group}, {"other", p.other}};
}
inline void from_json(const json& j, PronounTally& p) {
  p = {j.at("male").get<std::size_t>(), j.at("female").get<std::size_t>(),
       j.at("group").get<std::size_t>(), j.at("other").get<std::size_t>()};
}

inline void to_json(json& j, const CharacterEntity& c) {
  j = {{"character_id", c.character_id},
       {"name", c.name},
       {"name_mentions", c.name_mentions},
       {"pronoun_mentions", c.pronoun_mentions},
       {"nominal_mentions", c.nominal_mentions},
       {"total_mentions", c.total_mentions()},
       {"pronouns", c.pronouns},
       {"gender", std::string(to_string(c.gender))},
       {"importance", std::string(to_string(c.importance))},
       {"cluster_id", c.cluster_id},
       {"first_offset", c.first_offset}};
}
inline void from_json(const json& j, CharacterEntity& c) {
  c.character_id = j.at("character_id").get<CharacterId>();
  c.name = j.at("name").get<std::string>();
  c.name_mentions = j.at("name_mentions").get<std::size_t>();
  c.pronoun_mentions = j.at("pronoun_mentions").get<std::size_t>();
  c.nominal_mentions = j.at("nominal_mentions").get<std::size_t>();
  c.pronouns = j.at("pronouns").get<PronounTally>();
  c.gender = serialize_detail::parse_enum<GenderLabel>(j.at("gender"), parse_gender, "gender");
  c.importance = serialize_detail::parse_enum<ImportanceTier>(j.at("importance"), parse_tier, "importance");
  c.cluster_id = j.at("cluster_id").get<std::size_t>();
  c.first_offset = j.at("first_offset").get<std::size_t>();
}

inline void to_json(json& j, const PrecedenceEdge& e) {
  j = {{"from", e.from},
       {"to", e.to},
       {"confidence", serialize_detail::optional_json(e.confidence)},
       {"source_label", e.source_label}};
}
inline void from_json(const json& j, PrecedenceEdge& e) {
  e.from = j.at("from").get<EventId>();
  e.to = j.at("to").get<EventId>();
  e.confidence = serialize_detail::optional_get<double>(j, "confidence");
  e.source_label = j.at("source_label").get<std::size_t>();
}

inline void to_json(json& j, const ContingencyTable& t) {
  j = {{"lemma", t.lemma}, {"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}, {"corrected", t.corrected}};
}
inline void from_json(const json& j, ContingencyTable& t) {
  t = {j.at("lemma").get<std::string>(), j.at("a").get<double>(), j.at("b").get<double>(),
       j.at("c").get<double>(),          j.at("d").get<double>(), j.at("corrected").get<bool>()};
}

inline void to_json(json& j, const PolarizedLemma& p) {
  j = {{"lemma", p.lemma},
       {"counts", p.counts},
       {"odds_ratio", p.odds_ratio},
       {"log_odds_ratio", p.log_odds_ratio},
       {"corrected", p.corrected}};
}
inline void from_json(const json& j, PolarizedLemma& p) {
  p.lemma = j.at("lemma").get<std::string>();
  p.counts = j.at("counts").get<ContingencyTable>();
  p.odds_ratio = j.at("odds_ratio").get<double>();
  p.log_odds_ratio = j.at("log_odds_ratio").get<double>();
  p.corrected = j.at("corrected").get<bool>();
}

inline void to_json(json& j, const PolarizedReport& r) {
  j = {{"group_a", std::string(to_string(r.group_a))},
       {"group_b", std::string(to_string(r.group_b))},
       {"defined", r.defined},
       {"ranked", r.ranked},
       {"toward_a", r.toward_a},
       {"toward_b", r.toward_b}};
}
inline void from_json(const json& j, PolarizedReport& r) {
  r.group_a = serialize_detail::parse_enum<GenderLabel>(j.at("group_a"), parse_gender, "group_a");
  r.group_b = serialize_detail::parse_enum<GenderLabel>(j.at("group_b"), parse_gender, "group_b");
  r.defined = j.at("defined").get<bool>();
  r.ranked = j.at("ranked").get<std::vector<PolarizedLemma>>();
  r.toward_a = j.at("toward_a").get<std::vector<PolarizedLemma>>();
  r.toward_b = j.at("toward_b").get<std::vector<PolarizedLemma>>();
}

inline void to_json(json& j, const ImportanceRow& r) {
  j = {{"character_id", r.character_id},
       {"name", r.name},
       {"name_mentions", r.name_mentions},
       {"pronoun_mentions", r.pronoun_mentions},
       {"total", r.total},
       {"tier", std::string(to_string(r.tier))},
       {"share", r.share}};
}
inline void from_json(const json& j, ImportanceRow& r) {
  r.character_id = j.at("character_id").get<CharacterId>();
  r.name = j.at("name").get<std::string>();
  r.name_mentions = j.at("name_mentions").get<std::size_t>();
  r.pronoun_mentions = j.at("pronoun_mentions").get<std::size_t>();
  r.total = j.at("total").get<std::size_t>();
  r.tier = serialize_detail::parse_enum<ImportanceTier>(j.at("tier"), parse_tier, "tier");
  r.share = j.at("share").get<double>();
}

inline void to_json(json& j, const StatsReport& s) {
  j = {{"importance", s.importance},
       {"polarized", s.polarized},
       {"subject_gender_counts", s.subject_gender_counts},
       {"tier_counts", s.tier_counts}};
}
inline void from_json(const json& j, StatsReport& s) {
  s.importance = j.at("importance").get<std::vector<ImportanceRow>>();
  s.polarized = j.at("polarized").get<PolarizedReport>();
  s.subject_gender_counts = j.at("subject_gender_counts").get<std::map<std::string, std::size_t>>();
  s.tier_counts = j.at("tier_counts").get<std::map<std::string, std::size_t>>();
}

// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

// Parses a payload, turning syntax errors into ParseError.
inline json parse_json(std::string_view payload, const std::string& what = "") {
  try {
    return json::parse(payload);
  } catch (const json::parse_error& e) {
    throw ParseError(what, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace evchain
