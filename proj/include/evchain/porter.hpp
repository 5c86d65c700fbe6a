#pragma once

// Porter's suffix-stripping stemmer, original rule set.

#include <string>
#include <string_view>

#include "evchain/utf8.hpp"

namespace evchain {

namespace porter_detail {

class Stemmer {
 public:
  explicit Stemmer(std::string word) : w_(std::move(word)) {}

  std::string run() && {
    if (w_.size() <= 2) return std::move(w_);
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return std::move(w_);
  }

 private:
  static bool vowel_letter(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

  // Consonant test over the prefix w_[0, len).
  bool cons(std::size_t i) const {
    const char c = w_[i];
    if (vowel_letter(c)) return false;
    if (c == 'y') return i == 0 ? true : !cons(i - 1);
    return true;
  }

  // Number of VC sequences in w_[0, len).
  std::size_t measure(std::size_t len) const {
    std::size_t m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < len; ++i) {
      const bool c = cons(i);
      if (c && prev_vowel) ++m;
      prev_vowel = !c;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_cons(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && cons(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, final consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!cons(len - 3) || cons(len - 2) || !cons(len - 1)) return false;
    const char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) const { return std::string_view(w_).ends_with(s); }

  void set_suffix(std::size_t stem_len, std::string_view repl) {
    w_.resize(stem_len);
    w_.append(repl);
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // First rule whose suffix matches decides; its condition gates the rewrite.
  template <std::size_t N, typename Cond>
  void apply(const Rule (&rules)[N], Cond cond) {
    for (const auto& r : rules) {
      if (ends(r.suffix)) {
        const std::size_t stem = w_.size() - r.suffix.size();
        if (cond(stem)) set_suffix(stem, r.replacement);
        return;
      }
    }
  }

  void step1a() {
    if (ends("sses")) {
      set_suffix(w_.size() - 4, "ss");
    } else if (ends("ies")) {
      set_suffix(w_.size() - 3, "i");
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      w_.pop_back();
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(w_.size() - 3) > 0) w_.pop_back();
      return;
    }
    std::size_t stem = 0;
    if (ends("ed") && has_vowel(w_.size() - 2)) {
      stem = w_.size() - 2;
    } else if (ends("ing") && has_vowel(w_.size() - 3)) {
      stem = w_.size() - 3;
    } else {
      return;
    }
    w_.resize(stem);
    if (ends("at") || ends("bl") || ends("iz")) {
      w_.push_back('e');
    } else if (double_cons(w_.size())) {
      const char c = w_.back();
      if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_.push_back('e');
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(w_.size() - 1)) w_.back() = 'i';
  }

  void step2() {
    static constexpr Rule rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    apply(rules, [this](std::size_t stem) { return measure(stem) > 0; });
  }

  void step3() {
    static constexpr Rule rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    apply(rules, [this](std::size_t stem) { return measure(stem) > 0; });
  }

  void step4() {
    static constexpr Rule rules[] = {
        {"al", ""},   {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},  {"able", ""},
        {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""}, {"ent", ""}, {"ion", ""},
        {"ou", ""},   {"ism", ""},  {"ate", ""},  {"iti", ""}, {"ous", ""}, {"ive", ""},
        {"ize", ""},
    };
    for (const auto& r : rules) {
      if (!ends(r.suffix)) continue;
      const std::size_t stem = w_.size() - r.suffix.size();
      bool ok = measure(stem) > 1;
      if (ok && r.suffix == "ion") ok = stem > 0 && (w_[stem - 1] == 's' || w_[stem - 1] == 't');
      if (ok) w_.resize(stem);
      return;
    }
  }

  void step5a() {
    if (!ends("e")) return;
    const std::size_t stem = w_.size() - 1;
    const std::size_t m = measure(stem);
    if (m > 1 || (m == 1 && !cvc(stem))) w_.resize(stem);
  }

  void step5b() {
    if (ends("ll") && measure(w_.size() - 1) > 1) w_.pop_back();
  }

  std::string w_;
};

}  // namespace porter_detail

// Lowercases (ASCII) and stems one word.
inline std::string stem(std::string_view word) {
  return porter_detail::Stemmer(utf8::ascii_lower(word)).run();
}

}  // namespace evchain
