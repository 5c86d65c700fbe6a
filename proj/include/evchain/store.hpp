#pragma once

// On-disk story store. Serialized stories live in objects/<sha256>.json;
// refs/<id> holds the digest an id points at. Ids are fresh per store call,
// so identical stories get distinct ids sharing one object.
//
// An empty ref marks an id reserved for a story still being processed.

#include <openssl/evp.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evchain/error.hpp"
#include "evchain/pipeline.hpp"

namespace evchain {

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

class StoryStore {
 public:
  explicit StoryStore(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_ / "objects");
    std::filesystem::create_directories(root_ / "refs");
  }

  const std::filesystem::path& root() const { return root_; }

  // Claims a fresh id with an empty ref.
  std::string reserve() {
    std::lock_guard lock(mu_);
    for (std::size_t n = count_refs() + 1;; ++n) {
      const std::string id = "story-" + std::to_string(n);
      std::FILE* f = std::fopen((root_ / "refs" / id).c_str(), "wx");
      if (f) {
        std::fclose(f);
        return id;
      }
      if (errno != EEXIST) throw Error("cannot create ref for " + id);
    }
  }

  // Writes `story` under a reserved id.
  void put(const std::string& id, const ProcessedStory& story) {
    check_id(id);
    if (!std::filesystem::exists(ref_path(id))) throw NotFoundError("unknown story id '" + id + "'");
    const std::string payload = dump_story(story);
    const std::string digest = sha256_hex(payload);
    std::lock_guard lock(mu_);
    const auto object = root_ / "objects" / (digest + ".json");
    if (!std::filesystem::exists(object)) write_atomic(object, payload);
    write_atomic(ref_path(id), digest);
  }

  std::string store(const ProcessedStory& story) {
    const auto id = reserve();
    put(id, story);
    return id;
  }

  // Serialized story, exactly as stored.
  std::string load_raw(const std::string& id) const {
    check_id(id);
    const auto digest = read_ref(id);
    if (!digest) throw NotFoundError("unknown story id '" + id + "'");
    if (digest->empty()) throw NotFoundError("story '" + id + "' has not been stored yet");
    return detail::read_file((root_ / "objects" / (*digest + ".json")).string());
  }

  ProcessedStory load(const std::string& id) const { return load_story(load_raw(id)); }

  bool exists(const std::string& id) const { return valid_id(id) && read_ref(id).has_value(); }
  bool ready(const std::string& id) const {
    if (!valid_id(id)) return false;
    const auto digest = read_ref(id);
    return digest && !digest->empty();
  }

  // All ids, in allocation order.
  std::vector<std::string> list() const {
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(root_ / "refs")) {
      const auto name = entry.path().filename().string();
      if (valid_id(name)) ids.push_back(name);
    }
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
      return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
    });
    return ids;
  }

 private:
  static bool valid_id(std::string_view id) {
    if (!id.starts_with("story-") || id.size() == 6) return false;
    return std::all_of(id.begin() + 6, id.end(), [](char c) { return c >= '0' && c <= '9'; });
  }

  static void check_id(const std::string& id) {
    if (!valid_id(id)) throw NotFoundError("unknown story id '" + id + "'");
  }

  std::filesystem::path ref_path(const std::string& id) const { return root_ / "refs" / id; }

  std::optional<std::string> read_ref(const std::string& id) const {
    std::ifstream in(ref_path(id), std::ios::binary);
    if (!in) return std::nullopt;
    std::string digest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return digest;
  }

  std::size_t count_refs() const {
    std::size_t n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(root_ / "refs")) {
      n += valid_id(entry.path().filename().string());
    }
    return n;
  }

  static void write_atomic(const std::filesystem::path& path, std::string_view payload) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
      if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  std::filesystem::path root_;
  mutable std::mutex mu_;
};

}  // namespace evchain
