#pragma once

// Request handling behind the HTTP API. Routing and payloads live here, free
// of any server library, so they can be exercised directly; http.hpp binds
// them to cpp-httplib.
//
//   POST /stories                 {text, bundle?, config?} -> 202 {id, status}
//   GET  /stories                 -> {stories: [{id, status}]}
//   GET  /stories/{id}/status     -> {id, status, error?}
//   GET  /stories/{id}            -> ProcessedStory
//   GET  /stories/{id}/chains?filter=all|salient|gender:<g>|character:<c>
//   GET  /stories/{id}/stats
//
// Errors answer {error, stage?, detail}.

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evchain/error.hpp"
#include "evchain/pipeline.hpp"
#include "evchain/serialize.hpp"
#include "evchain/store.hpp"

namespace evchain {

struct ApiResponse {
  int status = 200;
  json body;
};

inline ApiResponse error_response(int status, std::string_view kind, const std::string& detail,
                                  std::optional<std::string> stage = std::nullopt) {
  json body = {{"error", kind}, {"detail", detail}};
  if (stage) body["stage"] = *stage;
  return {status, std::move(body)};
}

// Maps a library exception onto an HTTP status and error body.
inline ApiResponse error_response(const std::exception& e) {
  if (const auto* s = dynamic_cast<const StageError*>(&e)) {
    return error_response(422, "stage_error", s->detail(), s->stage());
  }
  if (dynamic_cast<const NotFoundError*>(&e)) return error_response(404, "not_found", e.what());
  if (dynamic_cast<const ParseError*>(&e)) return error_response(400, "parse_error", e.what());
  if (dynamic_cast<const ArgumentError*>(&e)) return error_response(400, "argument_error", e.what());
  if (dynamic_cast<const ValidationError*>(&e)) return error_response(422, "validation_error", e.what());
  return error_response(500, "internal_error", e.what());
}

// Event as the reader shows it: spans plus resolved text and character data.
inline json event_view(const ProcessedStory& story, const EventRecord& ev, bool salient) {
  std::map<CharacterId, const CharacterEntity*> chars;
  for (const auto& c : story.characters) chars.emplace(c.character_id, &c);
  auto argument = [&](const std::optional<Argument>& arg) -> json {
    if (!arg) return nullptr;
    json j = {{"span", arg->span},
              {"text", std::string(resolve_span(story.document, arg->span))},
              {"character", nullptr},
              {"character_name", nullptr},
              {"gender", nullptr}};
    if (arg->character) {
      j["character"] = *arg->character;
      if (auto it = chars.find(*arg->character); it != chars.end()) {
        j["character_name"] = it->second->name;
        j["gender"] = std::string(to_string(it->second->gender));
      }
    }
    return j;
  };
  return {{"event_id", ev.event_id},
          {"trigger", ev.trigger},
          {"text", std::string(resolve_span(story.document, ev.trigger))},
          {"lemma", ev.lemma},
          {"sentence_index", ev.sentence_index},
          {"salience", ev.salience ? json(*ev.salience) : json(nullptr)},
          {"salient", salient},
          {"subject", argument(ev.subject)},
          {"object", argument(ev.object)}};
}

inline json chain_view(const ProcessedStory& story, const ChainFilter& filter) {
  const auto salient = salient_ids(story);
  const auto chain = chain_for_filter(story.global_chain, story.events, story.characters, salient, filter);
  json events = json::array();
  for (EventId id : chain.event_ids) {
    events.push_back(event_view(story, story.events.at(id),
                                std::binary_search(salient.begin(), salient.end(), id)));
  }
  return {{"story_id", story.story_id},
          {"filter", chain.filter.describe()},
          {"event_ids", chain.event_ids},
          {"events", std::move(events)}};
}

class StoryService {
 public:
  explicit StoryService(StoryStore& store) : store_(store), worker_([this] { run(); }) {}

  ~StoryService() {
    {
      std::lock_guard lock(mu_);
      stopping_ = true;
    }
    wake_.notify_all();
    worker_.join();
  }

  StoryService(const StoryService&) = delete;
  StoryService& operator=(const StoryService&) = delete;

  ApiResponse handle(std::string_view method, std::string_view path,
                     const std::map<std::string, std::string>& query, std::string_view body) {
    try {
      return route(method, path, query, body);
    } catch (const std::exception& e) {
      return error_response(e);
    }
  }

  ApiResponse submit(std::string_view body) {
    const auto j = parse_json(body, "body");
    if (!j.is_object()) throw ParseError("body", "expected object");
    for (const auto& [key, value] : j.items()) {
      if (key != "text" && key != "bundle" && key != "config") {
        throw ParseError(key, "unknown request field");
      }
    }
    if (!j.contains("text") || !j["text"].is_string()) throw ParseError("text", "expected string");
    PipelineConfig config;
    if (j.contains("config") && !j["config"].is_null()) config = config_from_json(j["config"]);
    if (config.idf_path) throw ArgumentError("idf_path cannot be set through the API");
    std::optional<std::string> bundle;
    if (j.contains("bundle") && !j["bundle"].is_null()) {
      bundle = j["bundle"].is_string() ? j["bundle"].get<std::string>() : j["bundle"].dump();
    }
    // Validate the request before an id is spent on it.
    auto state = begin_pipeline("", j["text"].get<std::string>(), std::move(bundle), config);
    const auto id = store_.reserve();
    state.story_id = id;
    {
      std::lock_guard lock(mu_);
      jobs_[id] = {"queued", nullptr};
      queue_.push_back({id, std::move(state)});
    }
    wake_.notify_all();
    return {202, {{"id", id}, {"status", "queued"}}};
  }

  ApiResponse status(const std::string& id) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = jobs_.find(id); it != jobs_.end()) {
        json body = {{"id", id}, {"status", it->second.status}};
        if (!it->second.error.is_null()) body["error"] = it->second.error;
        return {200, std::move(body)};
      }
    }
    if (store_.ready(id)) return {200, {{"id", id}, {"status", "done"}}};
    if (store_.exists(id)) {
      return {200, {{"id", id},
                    {"status", "failed"},
                    {"error", {{"error", "interrupted"}, {"detail", "processing did not finish"}}}}};
    }
    throw NotFoundError("unknown story id '" + id + "'");
  }

  ApiResponse list() const {
    json stories = json::array();
    for (const auto& id : store_.list()) stories.push_back(status(id).body);
    return {200, {{"stories", std::move(stories)}}};
  }

  ApiResponse story(const std::string& id) const { return {200, json(load_ready(id))}; }

  ApiResponse chains(const std::string& id, std::string_view filter) const {
    const auto parsed = ChainFilter::parse(filter);
    return {200, chain_view(load_ready(id), parsed)};
  }

  ApiResponse stats(const std::string& id) const {
    const auto s = load_ready(id);
    return {200, {{"story_id", s.story_id}, {"stats", s.stats}}};
  }

  // Blocks until every queued job has finished.
  void wait_idle() {
    std::unique_lock lock(mu_);
    idle_.wait(lock, [this] { return queue_.empty() && !busy_; });
  }

 private:
  struct Job {
    std::string status;
    json error;
  };
  struct Pending {
    std::string id;
    PipelineState state;
  };

  ProcessedStory load_ready(const std::string& id) const {
    const auto st = status(id);
    const auto& s = st.body["status"];
    if (s != "done") {
      if (s == "failed") {
        auto r = ApiResponse{409, st.body["error"]};
        throw NotReady(std::move(r));
      }
      throw NotReady({409, {{"error", "not_ready"}, {"detail", "story '" + id + "' is " + s.get<std::string>()}}});
    }
    return store_.load(id);
  }

  struct NotReady : std::exception {
    explicit NotReady(ApiResponse r) : response(std::move(r)) {}
    const char* what() const noexcept override { return "not ready"; }
    ApiResponse response;
  };

  ApiResponse route(std::string_view method, std::string_view path,
                    const std::map<std::string, std::string>& query, std::string_view body) {
    std::vector<std::string> parts;
    for (std::size_t pos = 0; pos < path.size();) {
      auto next = path.find('/', pos);
      if (next == std::string_view::npos) next = path.size();
      if (next > pos) parts.emplace_back(path.substr(pos, next - pos));
      pos = next + 1;
    }
    if (parts.empty() || parts[0] != "stories" || parts.size() > 3) {
      return error_response(404, "not_found", "no route for " + std::string(path));
    }
    auto only = [&](std::string_view allowed) -> std::optional<ApiResponse> {
      if (method == allowed) return std::nullopt;
      return error_response(405, "method_not_allowed",
                            std::string(method) + " not allowed on " + std::string(path));
    };
    try {
      if (parts.size() == 1) {
        if (method == "POST") return submit(body);
        if (auto r = only("GET")) return *r;
        return list();
      }
      if (auto r = only("GET")) return *r;
      const auto& id = parts[1];
      if (parts.size() == 2) return story(id);
      if (parts[2] == "status") return status(id);
      if (parts[2] == "stats") return stats(id);
      if (parts[2] == "chains") {
        auto it = query.find("filter");
        return chains(id, it == query.end() ? "all" : std::string_view(it->second));
      }
    } catch (const NotReady& e) {
      return e.response;
    }
    return error_response(404, "not_found", "no route for " + std::string(path));
  }

  void run() {
    while (true) {
      Pending job;
      {
        std::unique_lock lock(mu_);
        wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
        if (queue_.empty()) return;
        job = std::move(queue_.front());
        queue_.pop_front();
        busy_ = true;
        jobs_[job.id].status = "running";
      }
      Job result{"done", nullptr};
      try {
        for (auto stage : kStages) run_stage(job.state, stage);
        store_.put(job.id, finish_pipeline(job.state));
      } catch (const std::exception& e) {
        result = {"failed", error_response(e).body};
      }
      {
        std::lock_guard lock(mu_);
        jobs_[job.id] = std::move(result);
        busy_ = false;
      }
      idle_.notify_all();
    }
  }

  StoryStore& store_;
  mutable std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable idle_;
  std::map<std::string, Job> jobs_;
  std::deque<Pending> queue_;
  bool busy_ = false;
  bool stopping_ = false;
  std::thread worker_;  // last: starts after the members it reads
};

}  // namespace evchain
