#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "evchain/temporal.hpp"

namespace testsupport {

// Graph on up to 8 nodes as successor bitmasks.
struct SmallGraph {
  std::size_t n = 0;
  std::vector<std::uint8_t> succ;
};

inline bool acyclic(const SmallGraph& g) {
  std::uint32_t remaining = (1u << g.n) - 1;
  while (remaining) {
    bool peeled = false;
    for (std::size_t v = 0; v < g.n; ++v) {
      if (!(remaining >> v & 1)) continue;
      if ((g.succ[v] & remaining) == 0) {
        remaining &= ~(1u << v);
        peeled = true;
      }
    }
    if (!peeled) return false;
  }
  return true;
}

// Calls `fn` on every labeled DAG with n nodes: each unordered pair is
// absent, forward or backward, and cyclic assignments are skipped.
inline void for_each_dag(std::size_t n, const std::function<void(const SmallGraph&)>& fn) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<int> state(pairs.size(), 0);
  SmallGraph g{n, std::vector<std::uint8_t>(n, 0)};
  while (true) {
    std::fill(g.succ.begin(), g.succ.end(), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      if (state[k] == 1) g.succ[i] |= static_cast<std::uint8_t>(1u << j);
      if (state[k] == 2) g.succ[j] |= static_cast<std::uint8_t>(1u << i);
    }
    if (acyclic(g)) fn(g);
    std::size_t k = 0;
    while (k < state.size() && state[k] == 2) state[k++] = 0;
    if (k == state.size()) break;
    ++state[k];
  }
}

inline std::vector<evchain::TemporalLabel> labels_of(const SmallGraph& g) {
  std::vector<evchain::TemporalLabel> labels;
  for (std::size_t u = 0; u < g.n; ++u) {
    for (std::size_t v = 0; v < g.n; ++v) {
      if (g.succ[u] >> v & 1) labels.push_back({u, v, evchain::RelationValue::kBefore, {}});
    }
  }
  return labels;
}

// Lexicographically smallest topological order, by repeated minimum source.
inline std::vector<evchain::EventId> smallest_topological_order(const SmallGraph& g) {
  std::vector<evchain::EventId> order;
  std::uint32_t placed = 0;
  for (std::size_t step = 0; step < g.n; ++step) {
    for (std::size_t v = 0; v < g.n; ++v) {
      if (placed >> v & 1) continue;
      bool source = true;
      for (std::size_t u = 0; u < g.n; ++u) {
        if (!(placed >> u & 1) && (g.succ[u] >> v & 1)) source = false;
      }
      if (source) {
        order.push_back(v);
        placed |= 1u << v;
        break;
      }
    }
  }
  return order;
}

// True when `order` is a permutation of 0..n-1 placing every edge forward.
inline bool valid_topological_order(const SmallGraph& g, const std::vector<evchain::EventId>& order) {
  if (order.size() != g.n) return false;
  std::vector<std::size_t> pos(g.n, g.n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= g.n || pos[order[i]] != g.n) return false;
    pos[order[i]] = i;
  }
  for (std::size_t u = 0; u < g.n; ++u) {
    for (std::size_t v = 0; v < g.n; ++v) {
      if ((g.succ[u] >> v & 1) && pos[u] >= pos[v]) return false;
    }
  }
  return true;
}

// Runs rank_events on every DAG with n nodes; returns the number checked and
// counts failures (invalid order, deletions, or not the smallest order).
struct DagSweep {
  std::size_t graphs = 0;
  std::size_t failures = 0;
};

inline DagSweep sweep_dags(std::size_t n) {
  DagSweep out;
  for_each_dag(n, [&](const SmallGraph& g) {
    ++out.graphs;
    const auto result = evchain::rank_events(evchain::build_precedence_graph(n, labels_of(g)));
    if (!result.deleted_edges.empty() || !valid_topological_order(g, result.chain.event_ids) ||
        result.chain.event_ids != smallest_topological_order(g)) {
      ++out.failures;
    }
  });
  return out;
}

}  // namespace testsupport
