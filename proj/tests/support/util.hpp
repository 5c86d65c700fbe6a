#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "evchain/lexicon.hpp"
#include "evchain/random.hpp"

namespace testsupport {

inline std::string data_path(const std::string& rel) { return std::string(EVCHAIN_DATA_DIR) + "/" + rel; }
inline std::string read_data(const std::string& rel) { return evchain::detail::read_file(data_path(rel)); }

// Random prose over a small vocabulary: words, names, pronouns, punctuation,
// multi-byte characters, line breaks.
inline std::string random_text(evchain::Xoshiro256& rng, std::size_t words) {
  static const std::vector<std::string> vocab = {
      "the", "fox", "ran", "Anna", "Tom", "she", "he", "they", "met", "saw", "a", "well",
      "Mr.", "Fox", "café", "naïve", "Ζεύς", "—", "\"Hello", "world\"", "it", "gave", "him", "her"};
  static const std::vector<std::string> seps = {" ", " ", " ", ", ", ". ", "! ", "? ", "\n", "\n\n", "… "};
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    out += vocab[rng() % vocab.size()];
    out += seps[rng() % seps.size()];
  }
  return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("evchain-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport
