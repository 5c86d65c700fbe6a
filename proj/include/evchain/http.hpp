#pragma once

// Binds StoryService to a cpp-httplib server, optionally serving the built
// web client from a static directory.

#include <map>
#include <optional>
#include <string>

#include <httplib.h>

#include "evchain/service.hpp"

namespace evchain {

inline void mount_api(httplib::Server& server, StoryService& service,
                      const std::optional<std::string>& ui_dir = std::nullopt) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [key, value] : req.params) query.emplace(key, value);
    const auto reply = service.handle(req.method, req.path, query, req.body);
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json; charset=utf-8");
  };
  server.Get(R"(/stories(/.*)?)", forward);
  server.Post(R"(/stories(/.*)?)", forward);
  server.Put(R"(/stories(/.*)?)", forward);
  server.Patch(R"(/stories(/.*)?)", forward);
  server.Delete(R"(/stories(/.*)?)", forward);
  if (ui_dir && !server.set_mount_point("/", *ui_dir)) {
    throw ArgumentError("cannot serve UI from '" + *ui_dir + "'");
  }
}

}  // namespace evchain
