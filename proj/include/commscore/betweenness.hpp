#pragma once

// Shortest-path dependency accumulation on unweighted directed graphs.
//
// The single-source pass is templated on the dependency scalar so tests can
// run it with exact rationals. Path counts are always integers.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "commscore/tempograph.hpp"

namespace commscore {

template <class Scalar>
struct SingleSourcePass {
  std::vector<std::uint32_t> distance;  // kUnreached when not reachable
  std::vector<std::uint64_t> sigma;     // number of shortest paths from the source
  std::vector<Scalar> delta;            // dependency of the source on each vertex

  static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
};

/// Reusable scratch buffers for one thread.
template <class Scalar>
struct BrandesWorkspace {
  std::vector<std::uint32_t> order;  // vertices in non-decreasing distance
  std::vector<std::uint32_t> queue;
  SingleSourcePass<Scalar> pass;

  explicit BrandesWorkspace(std::size_t n) {
    order.reserve(n);
    queue.reserve(n);
    pass.distance.resize(n);
    pass.sigma.resize(n);
    pass.delta.resize(n);
  }
};

/// BFS from `source` counting shortest paths, then back-propagates
/// dependencies delta_s(v) = sum_{w: v pred of w} sigma_v/sigma_w (1 + delta_s(w)).
template <class Scalar>
void brandes_single_source(const Digraph& g, std::uint32_t source, BrandesWorkspace<Scalar>& ws) {
  auto& p = ws.pass;
  std::fill(p.distance.begin(), p.distance.end(), SingleSourcePass<Scalar>::kUnreached);
  std::fill(p.sigma.begin(), p.sigma.end(), 0);
  std::fill(p.delta.begin(), p.delta.end(), Scalar(0));
  ws.order.clear();
  ws.queue.clear();

  p.distance[source] = 0;
  p.sigma[source] = 1;
  ws.queue.push_back(source);
  for (std::size_t head = 0; head < ws.queue.size(); ++head) {
    const std::uint32_t v = ws.queue[head];
    ws.order.push_back(v);
    for (const std::uint32_t w : g.out(v)) {
      if (p.distance[w] == SingleSourcePass<Scalar>::kUnreached) {
        p.distance[w] = p.distance[v] + 1;
        ws.queue.push_back(w);
      }
      if (p.distance[w] == p.distance[v] + 1) p.sigma[w] += p.sigma[v];
    }
  }

  // Predecessors are recovered from distances instead of stored lists.
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const std::uint32_t v = *it;
    for (const std::uint32_t w : g.out(v)) {
      if (p.distance[w] == p.distance[v] + 1) {
        p.delta[v] += (Scalar(p.sigma[v]) / Scalar(p.sigma[w])) * (Scalar(1) + p.delta[w]);
      }
    }
  }
}

/// Serial reference: raw betweenness sum over ordered (s, t) pairs of
/// sigma_st(v) / sigma_st, accumulated in source order.
template <class Scalar>
std::vector<Scalar> betweenness_sums_serial(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<Scalar> bc(n, Scalar(0));
  BrandesWorkspace<Scalar> ws(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    brandes_single_source(g, s, ws);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v != s) bc[v] += ws.pass.delta[v];
    }
  }
  return bc;
}

/// OpenMP kernel. Sources are processed in parallel blocks and their
/// dependencies summed in source order, so the result is bitwise identical
/// to betweenness_sums_serial<double> for any thread count.
std::vector<double> betweenness_sums_parallel(const Digraph& g);

}  // namespace commscore
