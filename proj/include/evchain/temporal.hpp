#pragma once

// Global temporal ordering of events from pairwise labels.
//
// Four-way labels collapse to BEFORE/AFTER, become precedence edges, and are
// ranked by a topological sort that always emits the smallest available
// event id (textual order) first. Cycles are broken greedily: among edges
// lying on some cycle, delete the least confident one (absent confidence
// counts as 0), preferring the edge that most contradicts textual order
// (largest source - target), then the smallest (source, target).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "evchain/characters.hpp"
#include "evchain/core.hpp"
#include "evchain/error.hpp"

namespace evchain {

// SIMULTANEOUS and VAGUE become BEFORE; confidence is kept.
inline std::vector<TemporalLabel> collapse_labels(std::span<const TemporalLabel> labels) {
  std::vector<TemporalLabel> out(labels.begin(), labels.end());
  for (auto& l : out) {
    if (l.relation == RelationValue::kSimultaneous || l.relation == RelationValue::kVague) {
      l.relation = RelationValue::kBefore;
    }
  }
  return out;
}

struct PrecedenceEdge {
  EventId from = 0;
  EventId to = 0;
  std::optional<double> confidence;
  std::size_t source_label = 0;  // index into the label list the edge came from

  double weight() const { return confidence.value_or(0.0); }
  friend bool operator==(const PrecedenceEdge&, const PrecedenceEdge&) = default;
};

class PrecedenceGraph {
 public:
  PrecedenceGraph() = default;
  PrecedenceGraph(std::size_t node_count, std::vector<PrecedenceEdge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(), [](const PrecedenceEdge& a, const PrecedenceEdge& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
  }

  std::size_t node_count() const { return node_count_; }
  // Sorted by (from, to); at most one edge per ordered pair.
  const std::vector<PrecedenceEdge>& edges() const { return edges_; }

 private:
  std::size_t node_count_ = 0;
  std::vector<PrecedenceEdge> edges_;
};

// BEFORE(u,v) adds u->v, AFTER(u,v) adds v->u. Duplicate ordered pairs keep
// the more confident edge (the first one on ties).
inline PrecedenceGraph build_precedence_graph(std::size_t event_count,
                                              std::span<const TemporalLabel> labels) {
  std::map<std::pair<EventId, EventId>, PrecedenceEdge> edges;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels[i];
    if (l.left >= event_count || l.right >= event_count) {
      throw ValidationError("temporal label " + std::to_string(i) + " references unknown event (" +
                            std::to_string(l.left) + "," + std::to_string(l.right) + ") of " +
                            std::to_string(event_count));
    }
    if (l.left == l.right) {
      throw ValidationError("temporal label " + std::to_string(i) + " relates event " +
                            std::to_string(l.left) + " to itself");
    }
    PrecedenceEdge e;
    switch (l.relation) {
      case RelationValue::kBefore: e.from = l.left; e.to = l.right; break;
      case RelationValue::kAfter: e.from = l.right; e.to = l.left; break;
      default:
        throw ValidationError("temporal label " + std::to_string(i) + " is " +
                              std::string(to_string(l.relation)) + "; collapse labels first");
    }
    e.confidence = l.confidence;
    e.source_label = i;
    auto [it, inserted] = edges.emplace(std::make_pair(e.from, e.to), e);
    if (!inserted && e.weight() > it->second.weight()) it->second = e;
  }
  std::vector<PrecedenceEdge> out;
  out.reserve(edges.size());
  for (auto& [key, e] : edges) out.push_back(e);
  return PrecedenceGraph(event_count, std::move(out));
}

inline PrecedenceGraph build_precedence_graph(std::span<const EventRecord> events,
                                              std::span<const TemporalLabel> labels) {
  return build_precedence_graph(events.size(), labels);
}

struct RankResult {
  EventChain chain;
  std::vector<PrecedenceEdge> deleted_edges;  // in deletion order
};

namespace detail {

// Strongly connected component id per node (iterative Tarjan).
inline std::vector<std::size_t> scc_ids(std::size_t n, const std::vector<std::vector<EventId>>& adj) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<EventId> stack;
  std::size_t next_index = 0;
  std::size_t next_comp = 0;

  struct Frame {
    EventId node;
    std::size_t child;
  };
  for (EventId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.child < adj[f.node].size()) {
        const EventId w = adj[f.node][f.child++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const EventId v = f.node;
      if (low[v] == index[v]) {
        EventId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
    }
  }
  return comp;
}

}  // namespace detail

inline RankResult rank_events(const PrecedenceGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<PrecedenceEdge> live = graph.edges();
  RankResult result;

  while (true) {
    std::vector<std::vector<EventId>> adj(n);
    for (const auto& e : live) adj[e.from].push_back(e.to);
    const auto comp = detail::scc_ids(n, adj);
    // Any edge inside one component lies on a cycle.
    auto worst = live.end();
    for (auto it = live.begin(); it != live.end(); ++it) {
      if (comp[it->from] != comp[it->to]) continue;
      if (worst == live.end()) {
        worst = it;
        continue;
      }
      const auto backward = [](const PrecedenceEdge& e) {
        return static_cast<long long>(e.from) - static_cast<long long>(e.to);
      };
      const auto key = [&](const PrecedenceEdge& e) {
        return std::make_tuple(e.weight(), -backward(e), e.from, e.to);
      };
      if (key(*it) < key(*worst)) worst = it;
    }
    if (worst == live.end()) break;
    result.deleted_edges.push_back(*worst);
    live.erase(worst);
  }

  std::vector<std::vector<EventId>> adj(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& e : live) {
    adj[e.from].push_back(e.to);
    ++indegree[e.to];
  }
  std::priority_queue<EventId, std::vector<EventId>, std::greater<>> ready;
  for (EventId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  result.chain.filter = ChainFilter::all();
  result.chain.event_ids.reserve(n);
  while (!ready.empty()) {
    const EventId v = ready.top();
    ready.pop();
    result.chain.event_ids.push_back(v);
    for (EventId w : adj[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  return result;
}

// Subsequence of the global order matching `filter`. Gender and character
// filters look at the subject's resolved character.
inline EventChain chain_for_filter(const EventChain& global, std::span<const EventRecord> events,
                                   std::span<const CharacterEntity> characters,
                                   std::span<const EventId> salient_ids, const ChainFilter& filter) {
  std::map<CharacterId, const CharacterEntity*> by_id;
  for (const auto& c : characters) by_id.emplace(c.character_id, &c);
  if (filter.kind == ChainFilter::Kind::kCharacter && !by_id.count(filter.character)) {
    throw ArgumentError("unknown character id " + std::to_string(filter.character));
  }
  std::map<EventId, const EventRecord*> event_by_id;
  for (const auto& e : events) event_by_id.emplace(e.event_id, &e);
  const std::set<EventId> salient(salient_ids.begin(), salient_ids.end());

  auto keep = [&](EventId id) {
    switch (filter.kind) {
      case ChainFilter::Kind::kAll: return true;
      case ChainFilter::Kind::kSalient: return salient.count(id) > 0;
      case ChainFilter::Kind::kGender:
      case ChainFilter::Kind::kCharacter: {
        auto it = event_by_id.find(id);
        if (it == event_by_id.end() || !it->second->subject || !it->second->subject->character) {
          return false;
        }
        const CharacterId c = *it->second->subject->character;
        if (filter.kind == ChainFilter::Kind::kCharacter) return c == filter.character;
        auto ch = by_id.find(c);
        return ch != by_id.end() && ch->second->gender == filter.gender;
      }
    }
    return false;
  };

  EventChain out;
  out.filter = filter;
  for (EventId id : global.event_ids) {
    if (keep(id)) out.event_ids.push_back(id);
  }
  return out;
}

}  // namespace evchain
