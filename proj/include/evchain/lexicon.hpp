#pragma once

// Word lists used by the baseline annotators. Each has a packaged default
// (embedded at build time from data/) and can be reloaded from a user file.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/resources.hpp"
#include "evchain/utf8.hpp"

namespace evchain {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Calls fn(line_number, line) for every non-blank, non-comment line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    fn(line_no, line);
  }
}

// Parses `key<TAB>value` lines; keys are lowercased.
inline std::vector<std::pair<std::string, std::string>> parse_tsv_pairs(std::string_view text,
                                                                        std::string_view what) {
  std::vector<std::pair<std::string, std::string>> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(std::string(what) + ":" + std::to_string(line_no), "expected surface<TAB>value");
    }
    const auto key = trim(line.substr(0, tab));
    const auto value = trim(line.substr(tab + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(std::string(what) + ":" + std::to_string(line_no), "empty column");
    }
    out.emplace_back(utf8::ascii_lower(key), std::string(value));
  });
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// Case-insensitive surface form -> base verb lemma.
class VerbLexicon {
 public:
  static VerbLexicon parse(std::string_view tsv) {
    VerbLexicon lex;
    for (auto& [surface, lemma] : detail::parse_tsv_pairs(tsv, "verb lexicon")) {
      lex.forms_.emplace(std::move(surface), std::move(lemma));
    }
    return lex;
  }
  static VerbLexicon load(const std::string& path) { return parse(detail::read_file(path)); }
  static const VerbLexicon& builtin() {
    static const VerbLexicon lex = parse(resources::kVerbs);
    return lex;
  }

  void add(std::string_view surface, std::string lemma) {
    forms_.insert_or_assign(utf8::ascii_lower(surface), std::move(lemma));
  }

  const std::string* lookup(std::string_view surface) const {
    auto it = forms_.find(utf8::ascii_lower(surface));
    return it == forms_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return forms_.size(); }

 private:
  std::unordered_map<std::string, std::string> forms_;
};

// Gender family a pronoun signals. kGroup pronouns (they/them) fit any antecedent.
class PronounLexicon {
 public:
  static PronounLexicon parse(std::string_view tsv) {
    PronounLexicon lex;
    for (auto& [surface, family] : detail::parse_tsv_pairs(tsv, "pronoun lexicon")) {
      auto g = parse_gender(family);
      if (!g || *g == GenderLabel::kUnknown) {
        throw ParseError("pronoun lexicon", "bad pronoun family '" + family + "'");
      }
      lex.families_.emplace(std::move(surface), *g);
    }
    return lex;
  }
  static PronounLexicon load(const std::string& path) { return parse(detail::read_file(path)); }
  static const PronounLexicon& builtin() {
    static const PronounLexicon lex = parse(resources::kPronouns);
    return lex;
  }

  std::optional<GenderLabel> family(std::string_view surface) const {
    auto it = families_.find(utf8::ascii_lower(surface));
    if (it == families_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view surface) const { return family(surface).has_value(); }

 private:
  std::unordered_map<std::string, GenderLabel> families_;
};

// First names and titles with a conventional gender.
class NameLexicon {
 public:
  static NameLexicon parse(std::string_view tsv) {
    NameLexicon lex;
    for (auto& [name, gender] : detail::parse_tsv_pairs(tsv, "name lexicon")) {
      auto g = parse_gender(gender);
      if (!g || (*g != GenderLabel::kMale && *g != GenderLabel::kFemale)) {
        throw ParseError("name lexicon", "bad gender '" + gender + "'");
      }
      lex.genders_.emplace(std::move(name), *g);
    }
    return lex;
  }
  static NameLexicon load(const std::string& path) { return parse(detail::read_file(path)); }
  static const NameLexicon& builtin() {
    static const NameLexicon lex = parse(resources::kNames);
    return lex;
  }

  std::optional<GenderLabel> gender(std::string_view name) const {
    auto it = genders_.find(utf8::ascii_lower(name));
    if (it == genders_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<std::string, GenderLabel> genders_;
};

// Plain one-entry-per-line list, lowercased.
class WordSet {
 public:
  static WordSet parse(std::string_view text) {
    WordSet set;
    detail::for_each_line(text, [&](std::size_t, std::string_view line) {
      set.words_.insert(utf8::ascii_lower(line));
    });
    return set;
  }
  static WordSet load(const std::string& path) { return parse(detail::read_file(path)); }

  void add(std::string_view word) { words_.insert(utf8::ascii_lower(word)); }
  bool contains(std::string_view word) const { return words_.count(utf8::ascii_lower(word)) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

inline const WordSet& builtin_abbreviations() {
  static const WordSet set = WordSet::parse(resources::kAbbreviations);
  return set;
}

inline const WordSet& builtin_stopwords() {
  static const WordSet set = WordSet::parse(resources::kStopwords);
  return set;
}

// All lexical resources the heuristic annotators read.
struct Lexicons {
  VerbLexicon verbs = VerbLexicon::builtin();
  PronounLexicon pronouns = PronounLexicon::builtin();
  NameLexicon names = NameLexicon::builtin();
  WordSet stopwords = builtin_stopwords();
  WordSet abbreviations = builtin_abbreviations();
};

}  // namespace evchain
