#pragma once

// Document substrate and the domain types shared by every pipeline stage.
//
// All offsets are code-point offsets into the decoded document text, never
// byte offsets. Document keeps a code-point -> byte index so slicing is O(1).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evchain/error.hpp"
#include "evchain/utf8.hpp"

namespace evchain {

using EventId = std::size_t;
using CharacterId = std::size_t;

// Half-open character range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool contains(const Span& other) const { return start <= other.start && other.end <= end; }
  bool overlaps(const Span& other) const { return start < other.end && other.start < end; }
  std::size_t overlap(const Span& other) const {
    const auto lo = std::max(start, other.start);
    const auto hi = std::min(end, other.end);
    return hi > lo ? hi - lo : 0;
  }

  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Token {
  Span span;
  std::string surface;
  std::size_t sentence_index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

class Document {
 public:
  Document() : cp_bytes_{0} {}

  Document(std::string id, std::string text, std::vector<Token> tokens, std::vector<Span> sentences)
      : id_(std::move(id)),
        text_(std::move(text)),
        tokens_(std::move(tokens)),
        sentences_(std::move(sentences)),
        cp_bytes_(utf8::code_point_offsets(text_)) {}

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<Span>& sentences() const { return sentences_; }

  // Length in code points.
  std::size_t length() const { return cp_bytes_.size() - 1; }

  // Unchecked slice; callers validate first.
  std::string_view slice(const Span& span) const {
    return std::string_view(text_).substr(cp_bytes_[span.start],
                                          cp_bytes_[span.end] - cp_bytes_[span.start]);
  }

  // Index of the sentence fully containing `span`, if any.
  std::optional<std::size_t> sentence_of(const Span& span) const {
    auto it = std::upper_bound(sentences_.begin(), sentences_.end(), span.start,
                               [](std::size_t pos, const Span& s) { return pos < s.start; });
    if (it == sentences_.begin()) return std::nullopt;
    --it;
    if (!it->contains(span)) return std::nullopt;
    return static_cast<std::size_t>(it - sentences_.begin());
  }

  friend bool operator==(const Document& a, const Document& b) {
    return a.id_ == b.id_ && a.text_ == b.text_ && a.tokens_ == b.tokens_ &&
           a.sentences_ == b.sentences_;
  }

 private:
  std::string id_;
  std::string text_;
  std::vector<Token> tokens_;
  std::vector<Span> sentences_;
  std::vector<std::size_t> cp_bytes_;
};

// Subject or direct-object argument of an event.
struct Argument {
  Span span;
  std::optional<CharacterId> character;

  friend bool operator==(const Argument&, const Argument&) = default;
};

struct EventRecord {
  EventId event_id = 0;
  Span trigger;
  std::string lemma;
  std::optional<Argument> subject;
  std::optional<Argument> object;
  std::size_t sentence_index = 0;
  std::optional<double> salience;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

enum class RelationValue { kBefore, kAfter, kSimultaneous, kVague };

inline constexpr RelationValue kAllRelations[] = {RelationValue::kBefore, RelationValue::kAfter,
                                                  RelationValue::kSimultaneous,
                                                  RelationValue::kVague};

inline std::string_view to_string(RelationValue r) {
  switch (r) {
    case RelationValue::kBefore: return "BEFORE";
    case RelationValue::kAfter: return "AFTER";
    case RelationValue::kSimultaneous: return "SIMULTANEOUS";
    case RelationValue::kVague: return "VAGUE";
  }
  return "VAGUE";
}

inline std::optional<RelationValue> parse_relation(std::string_view s) {
  for (auto r : kAllRelations) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

struct TemporalLabel {
  EventId left = 0;
  EventId right = 0;
  RelationValue relation = RelationValue::kVague;
  std::optional<double> confidence;

  friend bool operator==(const TemporalLabel&, const TemporalLabel&) = default;
};

enum class GenderLabel { kFemale, kMale, kGroup, kUnknown };

inline constexpr GenderLabel kAllGenders[] = {GenderLabel::kFemale, GenderLabel::kMale,
                                              GenderLabel::kGroup, GenderLabel::kUnknown};

inline std::string_view to_string(GenderLabel g) {
  switch (g) {
    case GenderLabel::kFemale: return "FEMALE";
    case GenderLabel::kMale: return "MALE";
    case GenderLabel::kGroup: return "GROUP";
    case GenderLabel::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

inline std::optional<GenderLabel> parse_gender(std::string_view s) {
  for (auto g : kAllGenders) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

// Which events a chain was sliced down to.
struct ChainFilter {
  enum class Kind { kAll, kSalient, kGender, kCharacter };

  Kind kind = Kind::kAll;
  GenderLabel gender = GenderLabel::kUnknown;
  CharacterId character = 0;

  static ChainFilter all() { return {}; }
  static ChainFilter salient() { return {Kind::kSalient}; }
  static ChainFilter for_gender(GenderLabel g) { return {Kind::kGender, g}; }
  static ChainFilter for_character(CharacterId c) {
    return {Kind::kCharacter, GenderLabel::kUnknown, c};
  }

  // "all", "salient", "gender:FEMALE", "character:3"
  std::string describe() const {
    switch (kind) {
      case Kind::kAll: return "all";
      case Kind::kSalient: return "salient";
      case Kind::kGender: return "gender:" + std::string(to_string(gender));
      case Kind::kCharacter: return "character:" + std::to_string(character);
    }
    return "all";
  }

  // Accepts describe() output; gender names are case-insensitive.
  static ChainFilter parse(std::string_view s) {
    if (s == "all") return all();
    if (s == "salient") return salient();
    if (s.starts_with("gender:")) {
      std::string g(s.substr(7));
      for (char& ch : g) {
        if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
      }
      if (auto parsed = parse_gender(g)) return for_gender(*parsed);
      throw ArgumentError("unknown gender in filter: " + std::string(s));
    }
    if (s.starts_with("character:")) {
      const auto digits = s.substr(10);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                         [](char c) { return c >= '0' && c <= '9'; })) {
        throw ArgumentError("bad character id in filter: " + std::string(s));
      }
      return for_character(std::stoull(std::string(digits)));
    }
    throw ArgumentError("unknown chain filter: " + std::string(s));
  }

  friend bool operator==(const ChainFilter& a, const ChainFilter& b) {
    return a.describe() == b.describe();
  }
};

struct EventChain {
  std::vector<EventId> event_ids;
  ChainFilter filter;

  friend bool operator==(const EventChain&, const EventChain&) = default;
};

enum class MentionKind { kName, kPronoun, kNominal };

inline std::string_view to_string(MentionKind k) {
  switch (k) {
    case MentionKind::kName: return "NAME";
    case MentionKind::kPronoun: return "PRONOUN";
    case MentionKind::kNominal: return "NOMINAL";
  }
  return "NOMINAL";
}

inline std::optional<MentionKind> parse_mention_kind(std::string_view s) {
  if (s == "NAME") return MentionKind::kName;
  if (s == "PRONOUN") return MentionKind::kPronoun;
  if (s == "NOMINAL") return MentionKind::kNominal;
  return std::nullopt;
}

struct Mention {
  Span span;
  MentionKind kind = MentionKind::kName;
  std::string surface;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// Mentions referring to one entity, sorted by span.
struct MentionCluster {
  std::size_t cluster_id = 0;
  std::vector<Mention> mentions;

  friend bool operator==(const MentionCluster&, const MentionCluster&) = default;
};

// Index range [first, last) of the tokens lying inside `span`.
inline std::pair<std::size_t, std::size_t> tokens_within(const Document& doc, const Span& span) {
  const auto& toks = doc.tokens();
  auto first = std::lower_bound(toks.begin(), toks.end(), span.start,
                                [](const Token& t, std::size_t pos) { return t.span.start < pos; });
  auto last = first;
  while (last != toks.end() && last->span.end <= span.end) ++last;
  return {static_cast<std::size_t>(first - toks.begin()), static_cast<std::size_t>(last - toks.begin())};
}

// Returns exactly the characters [start, end) of the document text.
inline std::string_view resolve_span(const Document& doc, const Span& span) {
  if (span.start >= span.end || span.end > doc.length()) {
    throw BoundsError("span (" + std::to_string(span.start) + "," + std::to_string(span.end) +
                      ") out of range for document of length " + std::to_string(doc.length()));
  }
  return doc.slice(span);
}

struct Violation {
  std::string type;  // "Token", "Sentence", "EventRecord"
  std::size_t index = 0;
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

// Checks every Document invariant. Empty report iff the document is well formed.
inline ValidationReport validate_document(const Document& doc) {
  ValidationReport report;
  const auto len = doc.length();
  const auto& tokens = doc.tokens();
  const auto& sentences = doc.sentences();
  auto valid = [len](const Span& s) { return s.start < s.end && s.end <= len; };

  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!valid(sentences[i])) {
      report.push_back({"Sentence", i, "span out of range"});
    } else if (i > 0 && sentences[i].start < sentences[i - 1].end) {
      report.push_back({"Sentence", i, "overlap"});
    }
  }

  std::vector<bool> sentence_has_token(sentences.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (!valid(tok.span)) {
      report.push_back({"Token", i, "span out of range"});
      continue;
    }
    if (i > 0 && tok.span.start < tokens[i - 1].span.end) {
      report.push_back({"Token", i, "overlap"});
    }
    if (doc.slice(tok.span) != tok.surface) {
      report.push_back({"Token", i, "surface mismatch"});
    }
    // Sentences are sorted by start; only the last two starting at or before
    // the token can contain it (two only when sentences overlap).
    std::size_t containing = 0;
    std::size_t which = 0;
    const auto upper = static_cast<std::size_t>(
        std::upper_bound(sentences.begin(), sentences.end(), tok.span.start,
                         [](std::size_t pos, const Span& s) { return pos < s.start; }) -
        sentences.begin());
    for (std::size_t back = 1; back <= 2 && back <= upper; ++back) {
      if (sentences[upper - back].contains(tok.span)) {
        ++containing;
        which = upper - back;
      }
    }
    if (containing == 0) {
      report.push_back({"Token", i, "orphan token"});
    } else if (containing > 1) {
      report.push_back({"Token", i, "in multiple sentences"});
    } else {
      sentence_has_token[which] = true;
      if (tok.sentence_index != which) report.push_back({"Token", i, "wrong sentence index"});
    }
  }
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (!sentence_has_token[s] && valid(sentences[s])) {
      report.push_back({"Sentence", s, "no tokens"});
    }
  }
  return report;
}

// EventRecord invariants against a document: dense ids, textual order,
// triggers inside their sentence, arguments in range.
inline ValidationReport validate_events(const Document& doc, const std::vector<EventRecord>& events) {
  ValidationReport report;
  const auto len = doc.length();
  auto valid = [len](const Span& s) { return s.start < s.end && s.end <= len; };
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    if (ev.event_id != i) report.push_back({"EventRecord", i, "non-dense id"});
    if (!valid(ev.trigger)) {
      report.push_back({"EventRecord", i, "trigger out of range"});
      continue;
    }
    if (i > 0 && !(events[i - 1].trigger.start < ev.trigger.start)) {
      report.push_back({"EventRecord", i, "not in textual order"});
    }
    if (ev.sentence_index >= doc.sentences().size() ||
        !doc.sentences()[ev.sentence_index].contains(ev.trigger)) {
      report.push_back({"EventRecord", i, "trigger outside sentence"});
    }
    if (ev.lemma.empty()) report.push_back({"EventRecord", i, "empty lemma"});
    if (ev.subject && !valid(ev.subject->span)) {
      report.push_back({"EventRecord", i, "subject out of range"});
    }
    if (ev.object && !valid(ev.object->span)) {
      report.push_back({"EventRecord", i, "object out of range"});
    }
    if (ev.salience && !(*ev.salience >= 0.0)) {
      report.push_back({"EventRecord", i, "negative salience"});
    }
  }
  return report;
}

}  // namespace evchain
