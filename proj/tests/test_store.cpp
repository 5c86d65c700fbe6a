#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "evchain/store.hpp"
#include "support/util.hpp"

using namespace evchain;

namespace {

const ProcessedStory& mini() {
  static const ProcessedStory s =
      process_story("mini", testsupport::read_data("fixtures/mini_story.txt"), std::nullopt, {});
  return s;
}

}  // namespace

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(StoryStore, RoundTrip) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  const auto id = store.store(mini());
  EXPECT_EQ(id, "story-1");
  EXPECT_TRUE(store.ready(id));
  EXPECT_EQ(store.load(id), mini());
  EXPECT_EQ(store.load_raw(id), dump_story(mini()));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "objects" / (sha256_hex(dump_story(mini())) + ".json")));
}

TEST(StoryStore, MissingAndMalformedIds) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  EXPECT_THROW(store.load("story-9"), NotFoundError);
  EXPECT_THROW(store.load("../etc/passwd"), NotFoundError);
  EXPECT_THROW(store.load("story-"), NotFoundError);
  EXPECT_FALSE(store.exists("story-9"));
}

TEST(StoryStore, IdenticalContentGetsDistinctIdsSharedBlob) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  const auto a = store.store(mini());
  const auto b = store.store(mini());
  EXPECT_NE(a, b);
  EXPECT_EQ(store.load_raw(a), store.load_raw(b));
  std::size_t blobs = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path() / "objects")) blobs += e.path().extension() == ".json";
  EXPECT_EQ(blobs, 1u);
}

TEST(StoryStore, ReservedIsNotReady) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  const auto id = store.reserve();
  EXPECT_TRUE(store.exists(id));
  EXPECT_FALSE(store.ready(id));
  EXPECT_THROW(store.load(id), NotFoundError);
  store.put(id, mini());
  EXPECT_TRUE(store.ready(id));
}

TEST(StoryStore, ListSortsNumerically) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  for (int i = 0; i < 11; ++i) store.reserve();
  const auto ids = store.list();
  ASSERT_EQ(ids.size(), 11u);
  EXPECT_EQ(ids[1], "story-2");
  EXPECT_EQ(ids.back(), "story-11");
}

TEST(StoryStore, PersistsAcrossInstances) {
  testsupport::TempDir dir;
  std::string id;
  {
    StoryStore store(dir.path());
    id = store.store(mini());
  }
  StoryStore reopened(dir.path());
  EXPECT_EQ(reopened.load(id), mini());
  EXPECT_EQ(reopened.reserve(), "story-2");
}

TEST(StoryStore, ConcurrentReservationsAreUnique) {
  testsupport::TempDir dir;
  StoryStore a(dir.path());
  StoryStore b(dir.path());
  std::vector<std::string> ids_a, ids_b;
  std::thread ta([&] {
    for (int i = 0; i < 40; ++i) ids_a.push_back(a.reserve());
  });
  std::thread tb([&] {
    for (int i = 0; i < 40; ++i) ids_b.push_back(b.reserve());
  });
  ta.join();
  tb.join();
  std::set<std::string> all(ids_a.begin(), ids_a.end());
  all.insert(ids_b.begin(), ids_b.end());
  EXPECT_EQ(all.size(), 80u);
}
