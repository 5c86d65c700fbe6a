#include <gtest/gtest.h>

#include <httplib.h>

#include "evchain/http.hpp"
#include "evchain/service.hpp"
#include "support/schema.hpp"
#include "support/util.hpp"

using namespace evchain;
using nlohmann::json;

namespace {

testsupport::SchemaValidator& schemas() {
  static testsupport::SchemaValidator v(EVCHAIN_SCHEMA_DIR);
  return v;
}

std::string join(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) out += e + "\n";
  return out;
}

#define EXPECT_SCHEMA(body, def)                                                      \
  do {                                                                                \
    const auto errs_ = schemas().validate(body, "api.schema.json#/definitions/" def); \
    EXPECT_TRUE(errs_.empty()) << join(errs_) << (body).dump();                       \
  } while (0)

class ServiceTest : public ::testing::Test {
 protected:
  testsupport::TempDir dir;
  StoryStore store{dir.path()};
  StoryService service{store};

  ApiResponse get(const std::string& path, std::map<std::string, std::string> query = {}) {
    return service.handle("GET", path, query, "");
  }
  ApiResponse post(const std::string& body) { return service.handle("POST", "/stories", {}, body); }

  std::string submit_mini() {
    const json req = {{"text", testsupport::read_data("fixtures/mini_story.txt")}};
    EXPECT_SCHEMA(req, "submit_request");
    const auto r = post(req.dump());
    EXPECT_EQ(r.status, 202);
    EXPECT_SCHEMA(r.body, "submit_response");
    return r.body["id"];
  }
};

}  // namespace

TEST_F(ServiceTest, SubmitThenFetchEverything) {
  const auto id = submit_mini();
  service.wait_idle();

  const auto st = get("/stories/" + id + "/status");
  EXPECT_EQ(st.status, 200);
  EXPECT_SCHEMA(st.body, "status_response");
  EXPECT_EQ(st.body["status"], "done");

  const auto story = get("/stories/" + id);
  EXPECT_EQ(story.status, 200);
  const auto errors = schemas().validate(story.body, "processed_story.schema.json");
  EXPECT_TRUE(errors.empty()) << join(errors);
  EXPECT_EQ(story.body["story_id"], id);
  EXPECT_EQ(story.body, json(store.load(id)));

  const auto stats = get("/stories/" + id + "/stats");
  EXPECT_EQ(stats.status, 200);
  EXPECT_SCHEMA(stats.body, "stats_response");

  const auto list = get("/stories");
  EXPECT_EQ(list.status, 200);
  EXPECT_SCHEMA(list.body, "story_list");
  ASSERT_EQ(list.body["stories"].size(), 1u);
  EXPECT_EQ(list.body["stories"][0]["status"], "done");
}

TEST_F(ServiceTest, ChainsHonourFilters) {
  const auto id = submit_mini();
  service.wait_idle();
  const auto story = store.load(id);

  const auto all = get("/stories/" + id + "/chains");
  EXPECT_EQ(all.status, 200);
  EXPECT_SCHEMA(all.body, "chain_response");
  EXPECT_EQ(all.body["filter"], "all");
  EXPECT_EQ(all.body["event_ids"].get<std::vector<EventId>>(), story.global_chain.event_ids);
  EXPECT_EQ(all.body["events"][0]["text"], "met");
  EXPECT_EQ(all.body["events"][0]["subject"]["character_name"], "Anna");

  for (std::string filter : {"salient", "gender:FEMALE", "gender:male", "character:0"}) {
    const auto r = get("/stories/" + id + "/chains", {{"filter", filter}});
    EXPECT_EQ(r.status, 200) << filter;
    EXPECT_SCHEMA(r.body, "chain_response");
    const auto expected = chain_for_filter(story.global_chain, story.events, story.characters, salient_ids(story),
                                           ChainFilter::parse(filter));
    EXPECT_EQ(r.body["event_ids"].get<std::vector<EventId>>(), expected.event_ids) << filter;
  }
  const auto female = get("/stories/" + id + "/chains", {{"filter", "gender:FEMALE"}});
  EXPECT_EQ(female.body["event_ids"], json({0, 1}));

  const auto bad = get("/stories/" + id + "/chains", {{"filter", "plot:7"}});
  EXPECT_EQ(bad.status, 400);
  EXPECT_SCHEMA(bad.body, "error_response");
}

TEST_F(ServiceTest, RoutingErrors) {
  const auto missing = get("/stories/story-42");
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(missing.body["error"], "not_found");
  EXPECT_SCHEMA(missing.body, "error_response");

  EXPECT_EQ(get("/nothing").status, 404);
  EXPECT_EQ(get("/stories/story-1/extra").status, 404);
  EXPECT_EQ(get("/stories/a/b/c").status, 404);

  const auto del = service.handle("DELETE", "/stories/story-1", {}, "");
  EXPECT_EQ(del.status, 405);
  EXPECT_EQ(del.body["error"], "method_not_allowed");
  EXPECT_SCHEMA(del.body, "error_response");
  EXPECT_EQ(service.handle("PUT", "/stories", {}, "").status, 405);
}

TEST_F(ServiceTest, BadSubmissions) {
  for (std::string body : {"{not json", "[]", R"({"txt": "x"})", R"({"text": 3})",
                           R"({"text": "x", "config": {"temporal": {"source": "oracle"}}})"}) {
    const auto r = post(body);
    EXPECT_EQ(r.status, 400) << body;
    EXPECT_EQ(r.body["error"], "parse_error") << body;
    EXPECT_SCHEMA(r.body, "error_response");
  }
  const auto idf = post(R"({"text": "x", "config": {"idf_path": "/etc/passwd"}})");
  EXPECT_EQ(idf.status, 400);
  EXPECT_EQ(idf.body["error"], "argument_error");
  const auto nobundle = post(R"({"text": "x", "config": {"annotator": "bundle"}})");
  EXPECT_EQ(nobundle.status, 400);
  // Rejected requests do not consume ids.
  EXPECT_TRUE(store.list().empty());
}

TEST_F(ServiceTest, FailedJobReportsStage) {
  const auto r = post(R"({"text": "   "})");
  ASSERT_EQ(r.status, 202);
  const std::string id = r.body["id"];
  service.wait_idle();
  const auto st = get("/stories/" + id + "/status");
  EXPECT_SCHEMA(st.body, "status_response");
  EXPECT_EQ(st.body["status"], "failed");
  EXPECT_EQ(st.body["error"]["error"], "stage_error");
  EXPECT_EQ(st.body["error"]["stage"], "segment");
  const auto story = get("/stories/" + id);
  EXPECT_EQ(story.status, 409);
  EXPECT_EQ(story.body["stage"], "segment");
  EXPECT_SCHEMA(story.body, "error_response");
}

TEST_F(ServiceTest, BundleSubmission) {
  const json req = {{"text", testsupport::read_data("fixtures/mini_story.txt")},
                    {"bundle", json::parse(testsupport::read_data("fixtures/mini_bundle.json"))},
                    {"config", {{"annotator", "bundle"}, {"temporal", {{"source", "bundle"}}}}}};
  EXPECT_SCHEMA(req, "submit_request");
  const auto r = post(req.dump());
  ASSERT_EQ(r.status, 202);
  service.wait_idle();
  const auto story = get("/stories/" + r.body["id"].get<std::string>());
  ASSERT_EQ(story.status, 200);
  EXPECT_EQ(story.body["provenance"]["annotator"], "hand-annotated fixture");
}

TEST(ServiceRecovery, InterruptedJobIsFailed) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  const auto id = store.reserve();
  StoryService service(store);
  const auto st = service.handle("GET", "/stories/" + id + "/status", {}, "");
  EXPECT_EQ(st.body["status"], "failed");
  EXPECT_EQ(st.body["error"]["error"], "interrupted");
  EXPECT_EQ(service.handle("GET", "/stories/" + id, {}, "").status, 409);
}

TEST(ServiceQueue, NotReadyWhileQueued) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  StoryService service(store);
  const auto text = testsupport::read_data("sample_story.txt");
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) {
    ids.push_back(service.handle("POST", "/stories", {}, json{{"text", text}}.dump()).body["id"]);
  }
  // The last of four long jobs cannot have finished yet.
  const auto early = service.handle("GET", "/stories/" + ids.back() + "/chains", {}, "");
  if (early.status != 200) {
    EXPECT_EQ(early.status, 409);
    EXPECT_EQ(early.body["error"], "not_ready");
  }
  service.wait_idle();
  for (const auto& id : ids) EXPECT_EQ(service.handle("GET", "/stories/" + id, {}, "").status, 200);
  EXPECT_EQ(store.load_raw(ids[0]).size(), store.load_raw(ids[3]).size());
}

TEST(HttpServer, RoundTripOverLoopback) {
  testsupport::TempDir dir;
  StoryStore store(dir.path());
  StoryService service(store);
  httplib::Server server;
  mount_api(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto posted = client.Post("/stories", json{{"text", "Anna met Tom. She left."}}.dump(), "application/json");
  ASSERT_TRUE(posted);
  EXPECT_EQ(posted->status, 202);
  const std::string id = json::parse(posted->body)["id"];
  service.wait_idle();

  const auto chains = client.Get("/stories/" + id + "/chains?filter=gender%3AFEMALE");
  ASSERT_TRUE(chains);
  EXPECT_EQ(chains->status, 200);
  const auto body = json::parse(chains->body);
  EXPECT_EQ(body["filter"], "gender:FEMALE");
  EXPECT_SCHEMA(body, "chain_response");

  const auto del = client.Delete("/stories/" + id);
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 405);

  server.stop();
  t.join();
}
