#pragma once

// Event salience: a corpus-trained inverse document frequency dictionary and
// a weighted tf-idf score over the stemmed trigger and argument head words.
//
//   idf(s)   = ln((N + 1) / (df(s) + 1)) + 1      (unseen stems: df = 0)
//   score(e) = w_t * tf(trigger) * idf(trigger)
//            + w_a * sum over argument heads h of tf(h) * idf(h)
//
// tf is the raw count of a stem among the document's stemmed word tokens.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/json_util.hpp"
#include "evchain/porter.hpp"
#include "evchain/segment.hpp"

namespace evchain {

class IdfDictionary {
 public:
  struct Entry {
    std::size_t df = 0;
    double idf = 0.0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  IdfDictionary() = default;
  IdfDictionary(std::size_t doc_count, std::map<std::string, Entry> entries)
      : doc_count_(doc_count), entries_(std::move(entries)) {}

  static double smoothed_idf(std::size_t doc_count, std::size_t df) {
    return std::log(static_cast<double>(doc_count + 1) / static_cast<double>(df + 1)) + 1.0;
  }

  std::size_t doc_count() const { return doc_count_; }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  double idf(std::string_view stem) const {
    auto it = entries_.find(std::string(stem));
    return it == entries_.end() ? fallback_idf() : it->second.idf;
  }
  double fallback_idf() const { return smoothed_idf(doc_count_, 0); }

  nlohmann::json to_json() const {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [stem, e] : entries_) entries[stem] = {{"df", e.df}, {"idf", e.idf}};
    return {{"doc_count", doc_count_}, {"entries", std::move(entries)}};
  }

  // Rejects entries that break 1 <= df <= N or disagree with the formula.
  static IdfDictionary from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("", "idf dictionary must be an object");
    if (!j.contains("doc_count") || !is_count(j["doc_count"])) {
      throw ParseError("doc_count", "expected non-negative integer");
    }
    const auto n = j["doc_count"].get<std::size_t>();
    if (n == 0) throw ParseError("doc_count", "must be >= 1");
    if (!j.contains("entries") || !j["entries"].is_object()) {
      throw ParseError("entries", "expected object");
    }
    std::map<std::string, Entry> entries;
    for (const auto& [stem, e] : j["entries"].items()) {
      const std::string path = "entries." + stem;
      if (!e.is_object() || !e.contains("df") || !is_count(e["df"]) ||
          !e.contains("idf") || !e["idf"].is_number()) {
        throw ParseError(path, "expected {df:int, idf:number}");
      }
      const auto df = e["df"].get<std::size_t>();
      if (df < 1 || df > n) throw ParseError(path + ".df", "must satisfy 1 <= df <= doc_count");
      const double idf = e["idf"].get<double>();
      if (std::abs(idf - smoothed_idf(n, df)) > 1e-9) {
        throw ParseError(path + ".idf", "does not match ln((N+1)/(df+1))+1");
      }
      entries.emplace(stem, Entry{df, idf});
    }
    return IdfDictionary(n, std::move(entries));
  }

  friend bool operator==(const IdfDictionary&, const IdfDictionary&) = default;

 private:
  std::size_t doc_count_ = 0;
  std::map<std::string, Entry> entries_;
};

// Stem -> occurrence count over the document's word tokens.
using StemCounts = std::unordered_map<std::string, std::size_t>;

inline StemCounts count_stems(const Document& doc) {
  StemCounts counts;
  for (const auto& tok : doc.tokens()) {
    if (is_word(tok.surface)) ++counts[stem(tok.surface)];
  }
  return counts;
}

// Document frequencies merge associatively, so per-document sets may be
// built concurrently; this implementation runs them in order.
inline IdfDictionary train_idf(std::span<const Document> corpus) {
  if (corpus.empty()) throw ArgumentError("train_idf: corpus is empty");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::set<std::string> seen;
    for (const auto& tok : doc.tokens()) {
      if (is_word(tok.surface)) seen.insert(stem(tok.surface));
    }
    for (const auto& s : seen) ++df[s];
  }
  std::map<std::string, IdfDictionary::Entry> entries;
  for (const auto& [s, count] : df) {
    entries.emplace(s, IdfDictionary::Entry{count, IdfDictionary::smoothed_idf(corpus.size(), count)});
  }
  return IdfDictionary(corpus.size(), std::move(entries));
}

struct SalienceConfig {
  enum class Mode { kTopFraction, kThreshold };

  double trigger_weight = 1.0;
  double argument_weight = 0.5;
  Mode mode = Mode::kTopFraction;
  double fraction = 0.25;
  double threshold = 0.0;

  void validate() const {
    if (!(trigger_weight >= 0.0) || !(argument_weight >= 0.0)) {
      throw ArgumentError("salience weights must be >= 0");
    }
    if (mode == Mode::kTopFraction && !(fraction > 0.0 && fraction <= 1.0)) {
      throw ArgumentError("salience fraction must lie in (0, 1]");
    }
  }

  friend bool operator==(const SalienceConfig&, const SalienceConfig&) = default;
};

// Last word token inside `span`, if any.
inline const Token* head_word(const Document& doc, const Span& span) {
  const Token* head = nullptr;
  const auto [first, last] = tokens_within(doc, span);
  for (std::size_t t = first; t < last; ++t) {
    if (is_word(doc.tokens()[t].surface)) head = &doc.tokens()[t];
  }
  return head;
}

// Word the trigger is scored by: its first word token, or the raw span text
// when the span does not align with tokens.
inline std::string_view trigger_word(const Document& doc, const Span& trigger) {
  const auto [first, last] = tokens_within(doc, trigger);
  for (std::size_t t = first; t < last; ++t) {
    if (is_word(doc.tokens()[t].surface)) return doc.tokens()[t].surface;
  }
  return resolve_span(doc, trigger);
}

inline double salience_score(const EventRecord& event, const Document& doc,
                             const IdfDictionary& idf, const SalienceConfig& cfg,
                             const StemCounts& counts) {
  auto tfidf = [&](std::string_view surface) {
    const auto s = stem(surface);
    auto it = counts.find(s);
    const double tf = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    return tf * idf.idf(s);
  };
  double score = cfg.trigger_weight * tfidf(trigger_word(doc, event.trigger));
  double args = 0.0;
  for (const auto* arg : {&event.subject, &event.object}) {
    if (!*arg) continue;
    if (const Token* head = head_word(doc, (*arg)->span)) args += tfidf(head->surface);
  }
  score += cfg.argument_weight * args;
  return score;
}

inline double salience_score(const EventRecord& event, const Document& doc,
                             const IdfDictionary& idf, const SalienceConfig& cfg) {
  return salience_score(event, doc, idf, cfg, count_stems(doc));
}

// Scores every event in place.
inline void score_events(std::vector<EventRecord>& events, const Document& doc,
                         const IdfDictionary& idf, const SalienceConfig& cfg) {
  const auto counts = count_stems(doc);
  for (auto& ev : events) ev.salience = salience_score(ev, doc, idf, cfg, counts);
}

// Number of events kept in top-fraction mode: ceil(fraction * n).
inline std::size_t salient_count(std::size_t n, double fraction) {
  const double raw = fraction * static_cast<double>(n);
  return std::min(n, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

// Salient event ids in textual order. Top-fraction ties favour earlier ids.
inline std::vector<EventId> filter_salient(std::span<const EventRecord> events,
                                           const SalienceConfig& cfg) {
  cfg.validate();
  for (const auto& ev : events) {
    if (!ev.salience) {
      throw ArgumentError("filter_salient: event " + std::to_string(ev.event_id) + " is unscored");
    }
  }
  std::vector<EventId> kept;
  if (cfg.mode == SalienceConfig::Mode::kThreshold) {
    for (const auto& ev : events) {
      if (*ev.salience >= cfg.threshold) kept.push_back(ev.event_id);
    }
  } else {
    std::vector<const EventRecord*> ranked;
    for (const auto& ev : events) ranked.push_back(&ev);
    std::stable_sort(ranked.begin(), ranked.end(), [](const EventRecord* a, const EventRecord* b) {
      if (*a->salience != *b->salience) return *a->salience > *b->salience;
      return a->event_id < b->event_id;
    });
    ranked.resize(salient_count(events.size(), cfg.fraction));
    for (const auto* ev : ranked) kept.push_back(ev->event_id);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace evchain
