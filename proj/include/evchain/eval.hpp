#pragma once

// Evaluation metrics: per-label precision/recall/F1 and micro/macro F1 over
// pairwise temporal labels, and precision of human judgment sheets.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/lexicon.hpp"

namespace evchain {

struct LabeledPair {
  std::string id;
  RelationValue gold = RelationValue::kVague;
  RelationValue predicted = RelationValue::kVague;

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

class LabeledPairSet {
 public:
  LabeledPairSet() = default;
  explicit LabeledPairSet(std::vector<LabeledPair> pairs) : pairs_(std::move(pairs)) {
    std::set<std::string> seen;
    for (const auto& p : pairs_) {
      if (!seen.insert(p.id).second) throw ValidationError("duplicate pair id '" + p.id + "'");
    }
  }

  const std::vector<LabeledPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

 private:
  std::vector<LabeledPair> pairs_;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t predicted = 0;  // times the label was predicted
  std::size_t gold = 0;       // times the label is gold

  friend bool operator==(const Prf&, const Prf&) = default;
};

namespace detail {

inline Prf prf_over(std::span<const LabeledPair> pairs, RelationValue label) {
  Prf r;
  for (const auto& p : pairs) {
    const bool g = p.gold == label;
    const bool pr = p.predicted == label;
    r.gold += g;
    r.predicted += pr;
    r.true_positives += g && pr;
  }
  r.precision = r.predicted == 0 ? 0.0 : static_cast<double>(r.true_positives) / static_cast<double>(r.predicted);
  r.recall = r.gold == 0 ? 0.0 : static_cast<double>(r.true_positives) / static_cast<double>(r.gold);
  const double denom = r.precision + r.recall;
  r.f1 = denom == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / denom;
  return r;
}

}  // namespace detail

// Precision 0 when the label is never predicted, recall 0 when never gold.
inline Prf per_label_prf(const LabeledPairSet& pairs, RelationValue label) {
  if (pairs.empty()) throw EmptySetError("per_label_prf: no pairs");
  return detail::prf_over(pairs.pairs(), label);
}

inline constexpr std::array<RelationValue, 2> kBinaryLabels{RelationValue::kBefore,
                                                            RelationValue::kAfter};

struct MicroMacro {
  double micro = 0.0;  // accuracy over scored pairs
  double macro = 0.0;  // unweighted mean of per-label F1
  std::size_t scored = 0;
  std::size_t dropped = 0;  // pairs whose gold label is outside the evaluated set
  std::map<RelationValue, Prf> per_label;
};

// Pairs whose gold label is not an evaluated label are dropped first.
inline MicroMacro micro_macro_f1(const LabeledPairSet& pairs,
                                 std::span<const RelationValue> eval_labels = kBinaryLabels) {
  if (eval_labels.empty()) throw ArgumentError("micro_macro_f1: no evaluation labels");
  const std::set<RelationValue> labels(eval_labels.begin(), eval_labels.end());
  std::vector<LabeledPair> scored;
  for (const auto& p : pairs.pairs()) {
    if (labels.count(p.gold)) scored.push_back(p);
  }
  if (scored.empty()) throw EmptySetError("micro_macro_f1: no pairs with an evaluated gold label");

  MicroMacro r;
  r.scored = scored.size();
  r.dropped = pairs.size() - scored.size();
  std::size_t correct = 0;
  for (const auto& p : scored) correct += p.gold == p.predicted;
  r.micro = static_cast<double>(correct) / static_cast<double>(scored.size());
  double f1_sum = 0.0;
  for (auto label : labels) {
    r.per_label[label] = detail::prf_over(scored, label);
    f1_sum += r.per_label[label].f1;
  }
  r.macro = f1_sum / static_cast<double>(labels.size());
  return r;
}

// Pairs predictions to gold labels by unordered event pair. A prediction
// stated in the reverse direction has BEFORE/AFTER swapped; gold pairs with
// no prediction count as predicted VAGUE.
inline LabeledPairSet align_labels(std::span<const TemporalLabel> gold,
                                   std::span<const TemporalLabel> predicted) {
  auto flip = [](RelationValue r) {
    if (r == RelationValue::kBefore) return RelationValue::kAfter;
    if (r == RelationValue::kAfter) return RelationValue::kBefore;
    return r;
  };
  std::map<std::pair<EventId, EventId>, RelationValue> pred;
  for (const auto& l : predicted) {
    const bool forward = l.left < l.right;
    const auto key = forward ? std::make_pair(l.left, l.right) : std::make_pair(l.right, l.left);
    pred.emplace(key, forward ? l.relation : flip(l.relation));
  }
  std::vector<LabeledPair> pairs;
  for (const auto& g : gold) {
    const bool forward = g.left < g.right;
    const auto key = forward ? std::make_pair(g.left, g.right) : std::make_pair(g.right, g.left);
    const auto gold_rel = forward ? g.relation : flip(g.relation);
    auto it = pred.find(key);
    pairs.push_back({std::to_string(key.first) + "-" + std::to_string(key.second), gold_rel,
                     it == pred.end() ? RelationValue::kVague : it->second});
  }
  return LabeledPairSet(std::move(pairs));
}

enum class JudgmentDimension { kSalient, kSubjectCharacter, kSubjectGender, kTemporalOrder };

inline constexpr JudgmentDimension kAllDimensions[] = {
    JudgmentDimension::kSalient, JudgmentDimension::kSubjectCharacter,
    JudgmentDimension::kSubjectGender, JudgmentDimension::kTemporalOrder};

inline std::string_view to_string(JudgmentDimension d) {
  switch (d) {
    case JudgmentDimension::kSalient: return "salient";
    case JudgmentDimension::kSubjectCharacter: return "subject-character";
    case JudgmentDimension::kSubjectGender: return "subject-gender";
    case JudgmentDimension::kTemporalOrder: return "temporal-order";
  }
  return "salient";
}

inline std::optional<JudgmentDimension> parse_dimension(std::string_view s) {
  for (auto d : kAllDimensions) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

struct Judgment {
  std::string item_id;
  bool correct = false;
};

class JudgmentSheet {
 public:
  explicit JudgmentSheet(JudgmentDimension dimension) : dimension_(dimension) {}

  void add(std::string item_id, bool correct) {
    if (!ids_.insert(item_id).second) {
      throw ValidationError("duplicate item '" + item_id + "' in " +
                            std::string(to_string(dimension_)) + " judgments");
    }
    items_.push_back({std::move(item_id), correct});
  }

  JudgmentDimension dimension() const { return dimension_; }
  const std::vector<Judgment>& items() const { return items_; }

 private:
  JudgmentDimension dimension_;
  std::vector<Judgment> items_;
  std::set<std::string> ids_;
};

struct JudgmentPrecision {
  double precision = 0.0;
  std::size_t samples = 0;
  std::size_t correct = 0;
};

inline JudgmentPrecision judgment_precision(const JudgmentSheet& sheet) {
  if (sheet.items().empty()) {
    throw EmptySetError("no judgments for " + std::string(to_string(sheet.dimension())));
  }
  JudgmentPrecision r;
  r.samples = sheet.items().size();
  for (const auto& j : sheet.items()) r.correct += j.correct;
  r.precision = static_cast<double>(r.correct) / static_cast<double>(r.samples);
  return r;
}

namespace detail {

// Splits one CSV record; supports double-quoted fields with "" escapes.
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  for (auto& f : fields) f = std::string(trim(f));
  return fields;
}

}  // namespace detail

// `dimension,item_id,correct` with a header row; one sheet per dimension
// present, in canonical dimension order.
inline std::vector<JudgmentSheet> parse_judgment_csv(std::string_view csv) {
  std::map<JudgmentDimension, JudgmentSheet> sheets;
  bool header = true;
  detail::for_each_line(csv, [&](std::size_t line_no, std::string_view line) {
    const auto fields = detail::split_csv(line);
    const std::string where = "line " + std::to_string(line_no);
    if (header) {
      header = false;
      if (fields.size() != 3 || fields[0] != "dimension" || fields[1] != "item_id" ||
          fields[2] != "correct") {
        throw ParseError(where, "expected header 'dimension,item_id,correct'");
      }
      return;
    }
    if (fields.size() != 3) throw ParseError(where, "expected 3 fields");
    const auto dim = parse_dimension(fields[0]);
    if (!dim) throw ParseError(where, "unknown dimension '" + fields[0] + "'");
    const auto flag = utf8::ascii_lower(fields[2]);
    bool correct = false;
    if (flag == "true" || flag == "1" || flag == "yes") {
      correct = true;
    } else if (flag != "false" && flag != "0" && flag != "no") {
      throw ParseError(where, "bad correct flag '" + fields[2] + "'");
    }
    if (fields[1].empty()) throw ParseError(where, "empty item_id");
    sheets.try_emplace(*dim, *dim).first->second.add(fields[1], correct);
  });
  if (header) throw ParseError("", "judgment sheet is empty");
  std::vector<JudgmentSheet> out;
  for (auto& [dim, sheet] : sheets) out.push_back(std::move(sheet));
  return out;
}

}  // namespace evchain
