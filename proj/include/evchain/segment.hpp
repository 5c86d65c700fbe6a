#pragma once

// Deterministic tokenizer and sentence splitter.
//
// Tokens: whitespace-separated chunks with leading and trailing punctuation
// detached one character at a time ("\"Stop!\"" -> ", Stop, !, ").
// Sentences end after a . ! ? or ellipsis (plus any closing punctuation glued
// to it) when whitespace follows and the next token starts with a capital
// letter or a quote, unless the period follows a stop-listed abbreviation.

#include <string>
#include <string_view>
#include <vector>

#include "evchain/core.hpp"
#include "evchain/error.hpp"
#include "evchain/lexicon.hpp"
#include "evchain/utf8.hpp"

namespace evchain {

namespace detail {

inline bool is_terminator(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?' || c == 0x2026;
}

}  // namespace detail

inline Document segment_text(std::string_view raw, const WordSet& abbreviations,
                             std::string id = "doc") {
  const auto bytes = utf8::code_point_offsets(raw);
  const auto cps = utf8::decode(raw);
  const std::size_t n = cps.size();

  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < n) {
    if (utf8::is_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t chunk_end = i;
    while (chunk_end < n && !utf8::is_space(cps[chunk_end])) ++chunk_end;
    std::size_t a = i;
    while (a < chunk_end && utf8::is_punct(cps[a])) {
      spans.push_back({a, a + 1});
      ++a;
    }
    std::size_t e = chunk_end;
    while (e > a && utf8::is_punct(cps[e - 1])) --e;
    if (a < e) spans.push_back({a, e});
    for (std::size_t k = e; k < chunk_end; ++k) spans.push_back({k, k + 1});
    i = chunk_end;
  }
  if (spans.empty()) throw EmptyDocumentError("input text is empty");

  auto surface = [&](const Span& s) {
    return std::string(raw.substr(bytes[s.start], bytes[s.end] - bytes[s.start]));
  };
  auto punct_only = [&](const Span& s) {
    for (std::size_t k = s.start; k < s.end; ++k) {
      if (!utf8::is_punct(cps[k])) return false;
    }
    return true;
  };

  // ends[t]: token t closes a sentence.
  std::vector<bool> ends(spans.size(), false);
  for (std::size_t t = 0; t < spans.size(); ++t) {
    const Span& s = spans[t];
    if (s.length() != 1 || !detail::is_terminator(cps[s.start])) continue;
    std::size_t j = t + 1;
    while (j < spans.size() && spans[j].start == spans[j - 1].end && punct_only(spans[j])) ++j;
    const std::size_t last = j - 1;
    if (j < spans.size() && spans[j].start > spans[last].end) {
      const char32_t next = cps[spans[j].start];
      bool boundary = utf8::is_upper(next) || utf8::is_quote(next);
      if (boundary && cps[s.start] == U'.' && t > 0 && spans[t - 1].end == s.start &&
          abbreviations.contains(surface(spans[t - 1]))) {
        boundary = false;
      }
      if (boundary) ends[last] = true;
    }
    t = last;
  }
  // A blank line closes a sentence too (titles, unpunctuated headings).
  for (std::size_t t = 0; t + 1 < spans.size(); ++t) {
    std::size_t breaks = 0;
    for (std::size_t k = spans[t].end; k < spans[t + 1].start; ++k) breaks += cps[k] == U'\n';
    if (breaks >= 2) ends[t] = true;
  }
  ends.back() = true;
  std::vector<std::size_t> sentence_ends;
  for (std::size_t t = 0; t < spans.size(); ++t) {
    if (ends[t]) sentence_ends.push_back(t);
  }

  std::vector<Token> tokens;
  std::vector<Span> sentences;
  tokens.reserve(spans.size());
  std::size_t first = 0;
  for (std::size_t end_tok : sentence_ends) {
    const std::size_t index = sentences.size();
    for (std::size_t t = first; t <= end_tok; ++t) {
      tokens.push_back({spans[t], surface(spans[t]), index});
    }
    sentences.push_back({spans[first].start, spans[end_tok].end});
    first = end_tok + 1;
  }
  return Document(std::move(id), std::string(raw), std::move(tokens), std::move(sentences));
}

inline Document segment_text(std::string_view raw, std::string id = "doc") {
  return segment_text(raw, builtin_abbreviations(), std::move(id));
}

// True when the token carries at least one letter or digit.
inline bool is_word(std::string_view surface) {
  for (char32_t c : utf8::decode(surface)) {
    if (utf8::is_alnum(c)) return true;
  }
  return false;
}

}  // namespace evchain
