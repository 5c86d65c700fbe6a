#pragma once

// Annotation bundles: the JSON interchange through which external SRL,
// coreference and temporal annotators feed the pipeline. Spans are character
// offsets into the paired document, so external tokenizers never matter.
//
//   {
//     "schema_version": 1,
//     "frames": [{"trigger": [s, e], "subject": [s, e] | null, "object": [s, e] | null}],
//     "mentions": [{"span": [s, e], "kind": "NAME" | "PRONOUN" | "NOMINAL", "cluster": 0}],
//     "temporal_labels": [{"left": 0, "right": 1, "relation": "BEFORE", "confidence": 0.9 | null}],
//     "provenance": "annotator name"
//   }

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/json_util.hpp"
#include "evchain/lexicon.hpp"
#include "evchain/porter.hpp"

namespace evchain {

inline constexpr int kBundleSchemaVersion = 1;

struct Frame {
  Span trigger;
  std::optional<Span> subject;
  std::optional<Span> object;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct BundleMention {
  Span span;
  MentionKind kind = MentionKind::kName;
  std::size_t cluster = 0;

  friend bool operator==(const BundleMention&, const BundleMention&) = default;
};

struct AnnotationBundle {
  int schema_version = kBundleSchemaVersion;
  std::vector<Frame> frames;
  std::vector<BundleMention> mentions;
  std::vector<TemporalLabel> temporal_labels;  // left/right are frame ordinals
  std::string provenance;

  friend bool operator==(const AnnotationBundle&, const AnnotationBundle&) = default;
};

struct ParsedBundle {
  AnnotationBundle bundle;
  std::vector<std::string> warnings;
};

namespace bundle_detail {

using nlohmann::json;

inline void warn_unknown(const json& obj, std::initializer_list<std::string_view> known,
                         const std::string& path, std::vector<std::string>& warnings) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      warnings.push_back("ignored unknown field '" + (path.empty() ? key : path + "." + key) + "'");
    }
  }
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return obj[key];
}

inline Span parse_span(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !is_count(j[0]) || !is_count(j[1])) {
    throw ParseError(path, "expected [start, end] with non-negative integers");
  }
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

inline std::optional<Span> parse_optional_span(const json& obj, const char* key,
                                               const std::string& path) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  return parse_span(obj[key], path + "." + key);
}

inline json span_json(const Span& s) { return json::array({s.start, s.end}); }

inline json optional_span_json(const std::optional<Span>& s) {
  return s ? span_json(*s) : json(nullptr);
}

}  // namespace bundle_detail

inline TemporalLabel parse_temporal_label(const nlohmann::json& j, const std::string& path,
                                          std::vector<std::string>* warnings = nullptr) {
  using namespace bundle_detail;
  if (!j.is_object()) throw ParseError(path, "expected object");
  if (warnings) warn_unknown(j, {"left", "right", "relation", "confidence"}, path, *warnings);
  TemporalLabel l;
  const auto& left = require(j, "left", path);
  const auto& right = require(j, "right", path);
  if (!is_count(left)) throw ParseError(path + ".left", "expected non-negative integer");
  if (!is_count(right)) throw ParseError(path + ".right", "expected non-negative integer");
  l.left = left.get<std::size_t>();
  l.right = right.get<std::size_t>();
  const auto& rel = require(j, "relation", path);
  if (!rel.is_string()) throw ParseError(path + ".relation", "expected string");
  const auto parsed = parse_relation(rel.get<std::string>());
  if (!parsed) throw ParseError(path + ".relation", "unknown relation '" + rel.get<std::string>() + "'");
  l.relation = *parsed;
  if (j.contains("confidence") && !j["confidence"].is_null()) {
    if (!j["confidence"].is_number()) throw ParseError(path + ".confidence", "expected number or null");
    const double c = j["confidence"].get<double>();
    if (!(c >= 0.0 && c <= 1.0)) throw ParseError(path + ".confidence", "must lie in [0, 1]");
    l.confidence = c;
  }
  return l;
}

inline nlohmann::json temporal_label_json(const TemporalLabel& l) {
  return {{"left", l.left},
          {"right", l.right},
          {"relation", std::string(to_string(l.relation))},
          {"confidence", l.confidence ? nlohmann::json(*l.confidence) : nlohmann::json(nullptr)}};
}

inline std::vector<TemporalLabel> parse_temporal_labels(const nlohmann::json& arr,
                                                        const std::string& path,
                                                        std::vector<std::string>* warnings = nullptr) {
  if (!arr.is_array()) throw ParseError(path, "expected array");
  std::vector<TemporalLabel> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_temporal_label(arr[i], path + "[" + std::to_string(i) + "]", warnings));
  }
  return out;
}

// Schema-level decode only; see validate_bundle for checks against a document.
inline ParsedBundle decode_bundle(const nlohmann::json& j) {
  using namespace bundle_detail;
  ParsedBundle out;
  auto& b = out.bundle;
  if (!j.is_object()) throw ParseError("", "bundle must be a JSON object");
  warn_unknown(j, {"schema_version", "frames", "mentions", "temporal_labels", "provenance"}, "",
               out.warnings);

  const auto& version = require(j, "schema_version", "");
  if (!version.is_number_integer()) throw ParseError("schema_version", "expected integer");
  b.schema_version = version.get<int>();
  if (b.schema_version != kBundleSchemaVersion) {
    throw ParseError("schema_version", "unsupported version " + std::to_string(b.schema_version));
  }

  const auto& frames = require(j, "frames", "");
  if (!frames.is_array()) throw ParseError("frames", "expected array");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string path = "frames[" + std::to_string(i) + "]";
    const auto& f = frames[i];
    if (!f.is_object()) throw ParseError(path, "expected object");
    warn_unknown(f, {"trigger", "subject", "object"}, path, out.warnings);
    Frame frame;
    frame.trigger = parse_span(require(f, "trigger", path), path + ".trigger");
    frame.subject = parse_optional_span(f, "subject", path);
    frame.object = parse_optional_span(f, "object", path);
    b.frames.push_back(frame);
  }

  if (j.contains("mentions")) {
    const auto& mentions = j["mentions"];
    if (!mentions.is_array()) throw ParseError("mentions", "expected array");
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      const std::string path = "mentions[" + std::to_string(i) + "]";
      const auto& m = mentions[i];
      if (!m.is_object()) throw ParseError(path, "expected object");
      warn_unknown(m, {"span", "kind", "cluster"}, path, out.warnings);
      BundleMention bm;
      bm.span = parse_span(require(m, "span", path), path + ".span");
      const auto& kind = require(m, "kind", path);
      if (!kind.is_string() || !parse_mention_kind(kind.get<std::string>())) {
        throw ParseError(path + ".kind", "expected NAME, PRONOUN or NOMINAL");
      }
      bm.kind = *parse_mention_kind(kind.get<std::string>());
      const auto& cluster = require(m, "cluster", path);
      if (!is_count(cluster)) throw ParseError(path + ".cluster", "expected non-negative integer");
      bm.cluster = cluster.get<std::size_t>();
      b.mentions.push_back(bm);
    }
  }

  if (j.contains("temporal_labels")) {
    b.temporal_labels = parse_temporal_labels(j["temporal_labels"], "temporal_labels", &out.warnings);
  }
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw ParseError("provenance", "expected string");
    b.provenance = j["provenance"].get<std::string>();
  }
  return out;
}

// Throws ValidationError listing every offending record.
inline void validate_bundle(const AnnotationBundle& b, const Document& doc) {
  std::vector<std::string> problems;
  const auto len = doc.length();
  auto check = [&](const Span& s, const std::string& where) {
    if (s.start >= s.end || s.end > len) {
      problems.push_back(where + " span (" + std::to_string(s.start) + "," + std::to_string(s.end) +
                         ") out of range for document of length " + std::to_string(len));
      return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < b.frames.size(); ++i) {
    const std::string path = "frames[" + std::to_string(i) + "]";
    if (check(b.frames[i].trigger, path + ".trigger") && !doc.sentence_of(b.frames[i].trigger)) {
      problems.push_back(path + ".trigger is not inside a single sentence");
    }
    if (b.frames[i].subject) check(*b.frames[i].subject, path + ".subject");
    if (b.frames[i].object) check(*b.frames[i].object, path + ".object");
  }
  std::set<std::size_t> clusters;
  for (std::size_t i = 0; i < b.mentions.size(); ++i) {
    check(b.mentions[i].span, "mentions[" + std::to_string(i) + "]");
    clusters.insert(b.mentions[i].cluster);
  }
  if (!clusters.empty() && (*clusters.rbegin() + 1 != clusters.size())) {
    problems.push_back("mention cluster ids are not dense 0.." + std::to_string(clusters.size() - 1));
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < b.temporal_labels.size(); ++i) {
    const auto& l = b.temporal_labels[i];
    const std::string path = "temporal_labels[" + std::to_string(i) + "]";
    if (l.left >= b.frames.size() || l.right >= b.frames.size()) {
      problems.push_back(path + " references frame " + std::to_string(std::max(l.left, l.right)) +
                         " of " + std::to_string(b.frames.size()));
    } else if (l.left == l.right) {
      problems.push_back(path + " relates a frame to itself");
    } else if (!pairs.insert(std::minmax(l.left, l.right)).second) {
      problems.push_back(path + " repeats the pair (" + std::to_string(l.left) + "," +
                         std::to_string(l.right) + ")");
    }
  }
  if (!problems.empty()) {
    std::string msg = "annotation bundle does not fit the document:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
}

inline ParsedBundle parse_annotation_bundle(std::string_view payload, const Document& doc) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  auto parsed = decode_bundle(j);
  validate_bundle(parsed.bundle, doc);
  return parsed;
}

inline nlohmann::json serialize_bundle(const AnnotationBundle& b) {
  using namespace bundle_detail;
  json frames = json::array();
  for (const auto& f : b.frames) {
    frames.push_back({{"trigger", span_json(f.trigger)},
                      {"subject", optional_span_json(f.subject)},
                      {"object", optional_span_json(f.object)}});
  }
  json mentions = json::array();
  for (const auto& m : b.mentions) {
    mentions.push_back(
        {{"span", span_json(m.span)}, {"kind", std::string(to_string(m.kind))}, {"cluster", m.cluster}});
  }
  json labels = json::array();
  for (const auto& l : b.temporal_labels) labels.push_back(temporal_label_json(l));
  return {{"schema_version", b.schema_version},
          {"frames", std::move(frames)},
          {"mentions", std::move(mentions)},
          {"temporal_labels", std::move(labels)},
          {"provenance", b.provenance}};
}

// Gold file: {"gold": true, "temporal_labels": [...]}.
inline std::vector<TemporalLabel> parse_gold_labels(std::string_view payload) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("", "gold file must be a JSON object");
  if (!j.contains("gold") || j["gold"] != true) throw ParseError("gold", "gold files must set \"gold\": true");
  if (!j.contains("temporal_labels")) throw ParseError("temporal_labels", "missing field");
  return parse_temporal_labels(j["temporal_labels"], "temporal_labels");
}

// Prediction file: a bundle or any object with a temporal_labels array.
inline std::vector<TemporalLabel> parse_predicted_labels(std::string_view payload) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("temporal_labels")) {
    throw ParseError("temporal_labels", "missing field");
  }
  return parse_temporal_labels(j["temporal_labels"], "temporal_labels");
}

struct MergedAnnotations {
  std::vector<EventRecord> events;
  std::vector<MentionCluster> clusters;
  std::vector<TemporalLabel> labels;  // over event ids
  std::vector<std::string> warnings;
};

// Frames become events in textual order with dense ids; duplicate triggers
// keep the first frame. Labels are remapped from frame ordinals to event ids.
// Lemma: verb lexicon entry for the trigger, else its Porter stem.
inline MergedAnnotations merge_annotations(const Document& doc, const AnnotationBundle& bundle,
                                           const VerbLexicon& verbs = VerbLexicon::builtin()) {
  MergedAnnotations out;
  std::vector<std::size_t> order(bundle.frames.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bundle.frames[a].trigger < bundle.frames[b].trigger;
  });

  // Frame ordinal -> event id (duplicates map to the surviving event).
  std::vector<EventId> frame_event(bundle.frames.size());
  std::map<Span, EventId> by_trigger;
  // "First occurrence" is bundle order, so resolve duplicates before sorting.
  std::map<Span, std::size_t> first_frame;
  for (std::size_t i = 0; i < bundle.frames.size(); ++i) {
    auto [it, inserted] = first_frame.emplace(bundle.frames[i].trigger, i);
    if (!inserted) {
      out.warnings.push_back("frames[" + std::to_string(i) + "] duplicates the trigger of frames[" +
                             std::to_string(it->second) + "]; keeping the first");
    }
  }
  for (std::size_t ordinal : order) {
    const auto& f = bundle.frames[ordinal];
    if (first_frame[f.trigger] != ordinal) continue;
    EventRecord ev;
    ev.event_id = out.events.size();
    ev.trigger = f.trigger;
    const std::string text(resolve_span(doc, f.trigger));
    if (const auto* lemma = verbs.lookup(text)) {
      ev.lemma = *lemma;
    } else {
      ev.lemma = stem(text);
      if (ev.lemma.empty()) ev.lemma = utf8::ascii_lower(text);
    }
    if (f.subject) ev.subject = Argument{*f.subject, std::nullopt};
    if (f.object) ev.object = Argument{*f.object, std::nullopt};
    const auto sentence = doc.sentence_of(f.trigger);
    if (!sentence) throw ValidationError("frame trigger is not inside a single sentence");
    ev.sentence_index = *sentence;
    by_trigger.emplace(f.trigger, ev.event_id);
    out.events.push_back(std::move(ev));
  }
  for (std::size_t i = 0; i < bundle.frames.size(); ++i) {
    frame_event[i] = by_trigger.at(bundle.frames[i].trigger);
  }

  std::map<std::size_t, std::vector<Mention>> clusters;
  for (const auto& m : bundle.mentions) {
    clusters[m.cluster].push_back({m.span, m.kind, std::string(resolve_span(doc, m.span))});
  }
  for (auto& [id, mentions] : clusters) {
    std::sort(mentions.begin(), mentions.end(),
              [](const Mention& a, const Mention& b) { return a.span < b.span; });
    out.clusters.push_back({id, std::move(mentions)});
  }

  std::set<std::pair<EventId, EventId>> seen;
  for (std::size_t i = 0; i < bundle.temporal_labels.size(); ++i) {
    TemporalLabel l = bundle.temporal_labels[i];
    if (l.left >= frame_event.size() || l.right >= frame_event.size()) {
      throw ValidationError("temporal_labels[" + std::to_string(i) + "] references a missing frame");
    }
    l.left = frame_event[l.left];
    l.right = frame_event[l.right];
    if (l.left == l.right) {
      out.warnings.push_back("temporal_labels[" + std::to_string(i) +
                             "] collapses onto one event after deduplication; dropped");
      continue;
    }
    if (!seen.insert(std::minmax(l.left, l.right)).second) {
      out.warnings.push_back("temporal_labels[" + std::to_string(i) +
                             "] repeats an event pair after deduplication; dropped");
      continue;
    }
    out.labels.push_back(l);
  }
  return out;
}

}  // namespace evchain
