#pragma once

// Story pipeline: segment -> annotate -> characters -> salience -> temporal
// -> stats. Each stage reads and extends a PipelineState that serializes to
// JSON, so stages can run one at a time over persisted intermediates and
// still produce exactly the one-shot result.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evchain/bundle.hpp"
#include "evchain/characters.hpp"
#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/heuristics.hpp"
#include "evchain/json_util.hpp"
#include "evchain/lexicon.hpp"
#include "evchain/resources.hpp"
#include "evchain/salience.hpp"
#include "evchain/segment.hpp"
#include "evchain/serialize.hpp"
#include "evchain/stats.hpp"
#include "evchain/temporal.hpp"

namespace evchain {

inline constexpr int kStorySchemaVersion = 1;

struct TemporalConfig {
  enum class Source { kBundle, kSequential, kRandom };
  enum class Scope { kAll, kSalient };

  Source source = Source::kSequential;
  std::uint64_t seed = 0;
  // kSalient labels only pairs of salient events; the rest keep textual order.
  Scope scope = Scope::kAll;

  friend bool operator==(const TemporalConfig&, const TemporalConfig&) = default;
};

struct PipelineConfig {
  enum class Annotator { kHeuristic, kBundle };

  Annotator annotator = Annotator::kHeuristic;
  SalienceConfig salience;
  ImportanceThresholds importance;
  TemporalConfig temporal;
  std::size_t min_total = 5;
  bool include_object_roles = false;
  std::size_t top_characters = 5;
  std::optional<std::string> idf_path;  // builtin dictionary when absent

  void validate() const {
    salience.validate();
    if (!(importance.primary >= importance.secondary && importance.secondary >= 0.0)) {
      throw ArgumentError("importance thresholds must satisfy primary >= secondary >= 0");
    }
    if (temporal.source == TemporalConfig::Source::kBundle && annotator != Annotator::kBundle) {
      throw ArgumentError("temporal source 'bundle' requires annotator 'bundle'");
    }
    if (top_characters < 1) throw ArgumentError("top_characters must be >= 1");
  }

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

namespace pipeline_detail {

template <typename Enum, std::size_t N>
std::string enum_name(Enum v, const std::array<std::pair<Enum, const char*>, N>& names) {
  for (const auto& [e, n] : names) {
    if (e == v) return n;
  }
  return names[0].second;
}

template <typename Enum, std::size_t N>
Enum enum_value(const json& j, const std::array<std::pair<Enum, const char*>, N>& names,
                const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected string");
  for (const auto& [e, n] : names) {
    if (j.get<std::string>() == n) return e;
  }
  std::string allowed;
  for (const auto& [e, n] : names) allowed += std::string(allowed.empty() ? "" : ", ") + n;
  throw ParseError(path, "expected one of " + allowed);
}

inline constexpr std::array<std::pair<PipelineConfig::Annotator, const char*>, 2> kAnnotators{
    {{PipelineConfig::Annotator::kHeuristic, "heuristic"}, {PipelineConfig::Annotator::kBundle, "bundle"}}};
inline constexpr std::array<std::pair<SalienceConfig::Mode, const char*>, 2> kModes{
    {{SalienceConfig::Mode::kTopFraction, "top_fraction"}, {SalienceConfig::Mode::kThreshold, "threshold"}}};
inline constexpr std::array<std::pair<TemporalConfig::Source, const char*>, 3> kSources{
    {{TemporalConfig::Source::kBundle, "bundle"},
     {TemporalConfig::Source::kSequential, "sequential"},
     {TemporalConfig::Source::kRandom, "random"}}};
inline constexpr std::array<std::pair<TemporalConfig::Scope, const char*>, 2> kScopes{
    {{TemporalConfig::Scope::kAll, "all"}, {TemporalConfig::Scope::kSalient, "salient"}}};

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                           const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(path.empty() ? key : path + "." + key, "unknown config field");
    }
  }
}

template <typename T>
void read_number(const json& obj, const char* key, T& out, const std::string& path) {
  if (!obj.contains(key)) return;
  const auto& v = obj[key];
  const std::string where = path.empty() ? key : path + "." + key;
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ParseError(where, "expected number");
  } else {
    if (!is_count(v)) throw ParseError(where, "expected non-negative integer");
  }
  out = v.get<T>();
}

}  // namespace pipeline_detail

inline json config_to_json(const PipelineConfig& c) {
  using namespace pipeline_detail;
  return {{"annotator", enum_name(c.annotator, kAnnotators)},
          {"salience",
           {{"trigger_weight", c.salience.trigger_weight},
            {"argument_weight", c.salience.argument_weight},
            {"mode", enum_name(c.salience.mode, kModes)},
            {"fraction", c.salience.fraction},
            {"threshold", c.salience.threshold}}},
          {"importance", {{"primary", c.importance.primary}, {"secondary", c.importance.secondary}}},
          {"temporal",
           {{"source", enum_name(c.temporal.source, kSources)},
            {"seed", c.temporal.seed},
            {"scope", enum_name(c.temporal.scope, kScopes)}}},
          {"min_total", c.min_total},
          {"include_object_roles", c.include_object_roles},
          {"top_characters", c.top_characters},
          {"idf_path", c.idf_path ? json(*c.idf_path) : json(nullptr)}};
}

// Missing fields keep their defaults; unknown fields are errors.
inline PipelineConfig config_from_json(const json& j) {
  using namespace pipeline_detail;
  PipelineConfig c;
  reject_unknown(j, {"annotator", "salience", "importance", "temporal", "min_total",
                     "include_object_roles", "top_characters", "idf_path"},
                 "");
  if (j.contains("annotator")) c.annotator = enum_value(j["annotator"], kAnnotators, "annotator");
  if (j.contains("salience")) {
    const auto& s = j["salience"];
    reject_unknown(s, {"trigger_weight", "argument_weight", "mode", "fraction", "threshold"}, "salience");
    read_number(s, "trigger_weight", c.salience.trigger_weight, "salience");
    read_number(s, "argument_weight", c.salience.argument_weight, "salience");
    if (s.contains("mode")) c.salience.mode = enum_value(s["mode"], kModes, "salience.mode");
    read_number(s, "fraction", c.salience.fraction, "salience");
    read_number(s, "threshold", c.salience.threshold, "salience");
  }
  if (j.contains("importance")) {
    const auto& s = j["importance"];
    reject_unknown(s, {"primary", "secondary"}, "importance");
    read_number(s, "primary", c.importance.primary, "importance");
    read_number(s, "secondary", c.importance.secondary, "importance");
  }
  if (j.contains("temporal")) {
    const auto& s = j["temporal"];
    reject_unknown(s, {"source", "seed", "scope"}, "temporal");
    if (s.contains("source")) c.temporal.source = enum_value(s["source"], kSources, "temporal.source");
    read_number(s, "seed", c.temporal.seed, "temporal");
    if (s.contains("scope")) c.temporal.scope = enum_value(s["scope"], kScopes, "temporal.scope");
  }
  read_number(j, "min_total", c.min_total, "");
  read_number(j, "top_characters", c.top_characters, "");
  if (j.contains("include_object_roles")) {
    if (!j["include_object_roles"].is_boolean()) throw ParseError("include_object_roles", "expected boolean");
    c.include_object_roles = j["include_object_roles"].get<bool>();
  }
  if (j.contains("idf_path") && !j["idf_path"].is_null()) {
    if (!j["idf_path"].is_string()) throw ParseError("idf_path", "expected string or null");
    c.idf_path = j["idf_path"].get<std::string>();
  }
  c.validate();
  return c;
}

inline const IdfDictionary& builtin_idf() {
  static const IdfDictionary dict = IdfDictionary::from_json(json::parse(resources::kIdfDictionary));
  return dict;
}

inline constexpr std::array<std::string_view, 6> kStages{"segment",  "annotate", "characters",
                                                          "salience", "temporal", "stats"};

struct PipelineState {
  std::string story_id;
  std::string text;
  std::optional<std::string> bundle;  // raw bundle payload
  PipelineConfig config;
  std::string completed;  // last finished stage; empty before the first

  std::optional<Document> document;
  std::vector<EventRecord> events;
  std::vector<MentionCluster> clusters;
  std::vector<TemporalLabel> bundle_labels;  // over event ids
  std::string annotator_provenance;
  std::vector<CharacterEntity> characters;
  std::vector<EventId> salient_ids;
  std::vector<TemporalLabel> labels_used;  // collapsed labels the ranking consumed
  std::vector<PrecedenceEdge> deleted_edges;
  std::optional<EventChain> global_chain;
  std::optional<StatsReport> stats;
  std::vector<std::string> warnings;

  friend bool operator==(const PipelineState&, const PipelineState&) = default;
};

inline void to_json(json& j, const PipelineState& s) {
  j = {{"story_id", s.story_id},
       {"text", s.text},
       {"bundle", s.bundle ? json(*s.bundle) : json(nullptr)},
       {"config", config_to_json(s.config)},
       {"completed", s.completed},
       {"document", s.document ? json(*s.document) : json(nullptr)},
       {"events", s.events},
       {"clusters", s.clusters},
       {"bundle_labels", s.bundle_labels},
       {"annotator_provenance", s.annotator_provenance},
       {"characters", s.characters},
       {"salient_ids", s.salient_ids},
       {"labels_used", s.labels_used},
       {"deleted_edges", s.deleted_edges},
       {"global_chain", s.global_chain ? json(*s.global_chain) : json(nullptr)},
       {"stats", s.stats ? json(*s.stats) : json(nullptr)},
       {"warnings", s.warnings}};
}

inline void from_json(const json& j, PipelineState& s) {
  using serialize_detail::optional_get;
  s.story_id = j.at("story_id").get<std::string>();
  s.text = j.at("text").get<std::string>();
  s.bundle = optional_get<std::string>(j, "bundle");
  s.config = config_from_json(j.at("config"));
  s.completed = j.at("completed").get<std::string>();
  s.document = optional_get<Document>(j, "document");
  s.events = j.at("events").get<std::vector<EventRecord>>();
  s.clusters = j.at("clusters").get<std::vector<MentionCluster>>();
  s.bundle_labels = j.at("bundle_labels").get<std::vector<TemporalLabel>>();
  s.annotator_provenance = j.at("annotator_provenance").get<std::string>();
  s.characters = j.at("characters").get<std::vector<CharacterEntity>>();
  s.salient_ids = j.at("salient_ids").get<std::vector<EventId>>();
  s.labels_used = j.at("labels_used").get<std::vector<TemporalLabel>>();
  s.deleted_edges = j.at("deleted_edges").get<std::vector<PrecedenceEdge>>();
  s.global_chain = optional_get<EventChain>(j, "global_chain");
  s.stats = optional_get<StatsReport>(j, "stats");
  s.warnings = j.at("warnings").get<std::vector<std::string>>();
}

// Decodes persisted state, reporting schema problems as ParseError.
inline PipelineState load_state(std::string_view payload) {
  const auto j = parse_json(payload, "state");
  try {
    return j.get<PipelineState>();
  } catch (const json::exception& e) {
    throw ParseError("state", e.what());
  }
}

inline PipelineState begin_pipeline(std::string story_id, std::string text,
                                    std::optional<std::string> bundle, PipelineConfig config) {
  config.validate();
  if (config.annotator == PipelineConfig::Annotator::kBundle && !bundle) {
    throw ArgumentError("annotator 'bundle' requires a bundle payload");
  }
  PipelineState s;
  s.story_id = std::move(story_id);
  s.text = std::move(text);
  s.bundle = std::move(bundle);
  s.config = std::move(config);
  return s;
}

namespace pipeline_detail {

inline void segment(PipelineState& s) {
  s.document = segment_text(s.text, builtin_abbreviations(), s.story_id);
}

inline void annotate(PipelineState& s) {
  const Document& doc = *s.document;
  if (s.config.annotator == PipelineConfig::Annotator::kHeuristic) {
    const Lexicons lex;
    const auto names = locate_name_mentions(doc, lex);
    s.clusters = resolve_pronouns_heuristic(doc, names, lex);
    s.events = extract_events_heuristic(doc, lex, names);
    s.annotator_provenance = "heuristic";
    return;
  }
  auto parsed = parse_annotation_bundle(*s.bundle, doc);
  auto merged = merge_annotations(doc, parsed.bundle);
  s.events = std::move(merged.events);
  s.clusters = std::move(merged.clusters);
  s.bundle_labels = std::move(merged.labels);
  s.annotator_provenance = parsed.bundle.provenance;
  for (auto& w : parsed.warnings) s.warnings.push_back(std::move(w));
  for (auto& w : merged.warnings) s.warnings.push_back(std::move(w));
}

inline void characters(PipelineState& s) {
  s.characters = assign_importance(build_characters(s.clusters), s.config.importance);
  attach_characters(s.events, s.clusters, s.characters);
}

inline void salience(PipelineState& s) {
  std::optional<IdfDictionary> loaded;
  if (s.config.idf_path) {
    loaded = IdfDictionary::from_json(parse_json(detail::read_file(*s.config.idf_path), *s.config.idf_path));
  }
  const IdfDictionary& idf = loaded ? *loaded : builtin_idf();
  score_events(s.events, *s.document, idf, s.config.salience);
  s.salient_ids = filter_salient(s.events, s.config.salience);
}

inline void temporal(PipelineState& s) {
  const auto& cfg = s.config.temporal;
  std::vector<EventRecord> scoped;
  std::set<EventId> in_scope;
  for (const auto& ev : s.events) {
    if (cfg.scope == TemporalConfig::Scope::kAll ||
        std::binary_search(s.salient_ids.begin(), s.salient_ids.end(), ev.event_id)) {
      scoped.push_back(ev);
      in_scope.insert(ev.event_id);
    }
  }
  std::vector<TemporalLabel> labels;
  switch (cfg.source) {
    case TemporalConfig::Source::kSequential: labels = label_pairs_sequential(scoped); break;
    case TemporalConfig::Source::kRandom: labels = label_pairs_random(scoped, cfg.seed); break;
    case TemporalConfig::Source::kBundle:
      for (const auto& l : s.bundle_labels) {
        if (in_scope.count(l.left) && in_scope.count(l.right)) labels.push_back(l);
      }
      break;
  }
  s.labels_used = collapse_labels(labels);
  auto ranked = rank_events(build_precedence_graph(s.events, s.labels_used));
  s.global_chain = std::move(ranked.chain);
  s.deleted_edges = std::move(ranked.deleted_edges);
}

inline void stats(PipelineState& s) {
  PolarizationOptions opts;
  opts.min_total = s.config.min_total;
  opts.include_objects = s.config.include_object_roles;
  s.stats = build_stats(s.events, s.characters, opts);
}

}  // namespace pipeline_detail

inline std::string_view next_stage(const PipelineState& s) {
  if (s.completed.empty()) return kStages.front();
  auto it = std::find(kStages.begin(), kStages.end(), s.completed);
  if (it == kStages.end()) throw ArgumentError("unknown completed stage '" + s.completed + "'");
  return ++it == kStages.end() ? std::string_view{} : *it;
}

// Runs `stage`, which must be the next one due. Failures inside the stage
// come back as StageError carrying the stage name.
inline void run_stage(PipelineState& s, std::string_view stage) {
  if (std::find(kStages.begin(), kStages.end(), stage) == kStages.end()) {
    throw ArgumentError("unknown stage '" + std::string(stage) + "'");
  }
  const auto due = next_stage(s);
  if (stage != due) {
    throw ArgumentError("stage '" + std::string(stage) + "' is not next; expected '" +
                        std::string(due.empty() ? "(none, pipeline finished)" : due) + "'");
  }
  try {
    if (stage == "segment") pipeline_detail::segment(s);
    else if (stage == "annotate") pipeline_detail::annotate(s);
    else if (stage == "characters") pipeline_detail::characters(s);
    else if (stage == "salience") pipeline_detail::salience(s);
    else if (stage == "temporal") pipeline_detail::temporal(s);
    else pipeline_detail::stats(s);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(std::string(stage), e.what());
  }
  s.completed = std::string(stage);
}

struct Provenance {
  PipelineConfig config;
  std::string annotator;
  std::vector<TemporalLabel> labels_used;
  std::vector<PrecedenceEdge> deleted_edges;
  std::vector<std::string> warnings;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ProcessedStory {
  std::string story_id;
  Document document;
  std::vector<EventRecord> events;
  std::vector<MentionCluster> clusters;
  std::vector<CharacterEntity> characters;
  EventChain global_chain;
  EventChain salient_chain;
  std::vector<EventChain> gender_chains;     // one per gender label
  std::vector<EventChain> character_chains;  // top characters, most mentioned first
  StatsReport stats;
  Provenance provenance;

  friend bool operator==(const ProcessedStory&, const ProcessedStory&) = default;
};

inline ProcessedStory finish_pipeline(const PipelineState& s) {
  if (s.completed != kStages.back()) {
    throw ArgumentError("pipeline unfinished; next stage is '" + std::string(next_stage(s)) + "'");
  }
  ProcessedStory out;
  out.story_id = s.story_id;
  out.document = *s.document;
  out.events = s.events;
  out.clusters = s.clusters;
  out.characters = s.characters;
  out.global_chain = *s.global_chain;
  out.salient_chain = chain_for_filter(out.global_chain, s.events, s.characters, s.salient_ids,
                                       ChainFilter::salient());
  for (auto g : kAllGenders) {
    out.gender_chains.push_back(chain_for_filter(out.global_chain, s.events, s.characters,
                                                 s.salient_ids, ChainFilter::for_gender(g)));
  }
  for (const auto& c : top_characters(s.characters, s.config.top_characters)) {
    out.character_chains.push_back(chain_for_filter(out.global_chain, s.events, s.characters,
                                                    s.salient_ids, ChainFilter::for_character(c.character_id)));
  }
  out.stats = *s.stats;
  out.provenance = {s.config, s.annotator_provenance, s.labels_used, s.deleted_edges, s.warnings};
  return out;
}

inline ProcessedStory process_story(std::string story_id, std::string text,
                                    std::optional<std::string> bundle, const PipelineConfig& config) {
  auto state = begin_pipeline(std::move(story_id), std::move(text), std::move(bundle), config);
  for (auto stage : kStages) run_stage(state, stage);
  return finish_pipeline(state);
}

// Salient event ids recovered from a story (the salient chain in id order).
inline std::vector<EventId> salient_ids(const ProcessedStory& story) {
  auto ids = story.salient_chain.event_ids;
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline void to_json(json& j, const Provenance& p) {
  j = {{"config", config_to_json(p.config)},
       {"annotator", p.annotator},
       {"labels_used", p.labels_used},
       {"deleted_edges", p.deleted_edges},
       {"warnings", p.warnings}};
}
inline void from_json(const json& j, Provenance& p) {
  p.config = config_from_json(j.at("config"));
  p.annotator = j.at("annotator").get<std::string>();
  p.labels_used = j.at("labels_used").get<std::vector<TemporalLabel>>();
  p.deleted_edges = j.at("deleted_edges").get<std::vector<PrecedenceEdge>>();
  p.warnings = j.at("warnings").get<std::vector<std::string>>();
}

inline void to_json(json& j, const ProcessedStory& s) {
  j = {{"schema_version", kStorySchemaVersion},
       {"story_id", s.story_id},
       {"document", s.document},
       {"events", s.events},
       {"mention_clusters", s.clusters},
       {"characters", s.characters},
       {"chains",
        {{"global", s.global_chain},
         {"salient", s.salient_chain},
         {"gender", s.gender_chains},
         {"characters", s.character_chains}}},
       {"stats", s.stats},
       {"provenance", s.provenance}};
}
inline void from_json(const json& j, ProcessedStory& s) {
  if (j.at("schema_version").get<int>() != kStorySchemaVersion) {
    throw ParseError("schema_version", "unsupported story version");
  }
  s.story_id = j.at("story_id").get<std::string>();
  s.document = j.at("document").get<Document>();
  s.events = j.at("events").get<std::vector<EventRecord>>();
  s.clusters = j.at("mention_clusters").get<std::vector<MentionCluster>>();
  s.characters = j.at("characters").get<std::vector<CharacterEntity>>();
  const auto& chains = j.at("chains");
  s.global_chain = chains.at("global").get<EventChain>();
  s.salient_chain = chains.at("salient").get<EventChain>();
  s.gender_chains = chains.at("gender").get<std::vector<EventChain>>();
  s.character_chains = chains.at("characters").get<std::vector<EventChain>>();
  s.stats = j.at("stats").get<StatsReport>();
  s.provenance = j.at("provenance").get<Provenance>();
}

inline std::string dump_story(const ProcessedStory& s) { return canonical_dump(json(s)); }

inline ProcessedStory load_story(std::string_view payload) {
  const auto j = parse_json(payload, "story");
  try {
    return j.get<ProcessedStory>();
  } catch (const json::exception& e) {
    throw ParseError("story", e.what());
  }
}

}  // namespace evchain
