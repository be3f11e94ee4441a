#include "commscore/centrality.hpp"

#include <algorithm>
#include <cstdint>

#include "commscore/betweenness.hpp"

namespace commscore {

namespace {

constexpr std::size_t kSourceBlock = 64;

CentralityMap normalize_betweenness(const WindowGraph& g, std::vector<double> sums) {
  const std::size_t n = g.node_count();
  CentralityMap c{CentralityKind::betweenness, {g.nodes().begin(), g.nodes().end()},
                  std::vector<double>(n, 0.0)};
  if (n < 3) return c;
  const double scale = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (std::size_t v = 0; v < n; ++v) c.values[v] = std::clamp(sums[v] / scale, 0.0, 1.0);
  return c;
}

}  // namespace

std::vector<double> betweenness_sums_parallel(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<double> bc(n, 0.0);
  std::vector<double> block(std::min(n, kSourceBlock) * n);

  for (std::size_t first = 0; first < n; first += kSourceBlock) {
    const std::size_t count = std::min(kSourceBlock, n - first);
#pragma omp parallel
    {
      BrandesWorkspace<double> ws(n);
#pragma omp for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        const auto s = static_cast<std::uint32_t>(first + i);
        brandes_single_source(g, s, ws);
        std::copy(ws.pass.delta.begin(), ws.pass.delta.end(), block.begin() + i * n);
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t s = first + i;
      const double* row = block.data() + i * n;
      for (std::size_t v = 0; v < n; ++v) {
        if (v != s) bc[v] += row[v];
      }
    }
  }
  return bc;
}

std::optional<double> CentralityMap::value_of(const ActorId& actor) const {
  const auto it = std::lower_bound(actors.begin(), actors.end(), actor);
  if (it == actors.end() || *it != actor) return std::nullopt;
  return values[static_cast<std::size_t>(it - actors.begin())];
}

CentralityMap betweenness_centrality(const WindowGraph& g) {
  return normalize_betweenness(g, betweenness_sums_parallel(g.structure()));
}

CentralityMap betweenness_centrality_serial(const WindowGraph& g) {
  return normalize_betweenness(g, betweenness_sums_serial<double>(g.structure()));
}

CentralityMap degree_centrality(const WindowGraph& g) {
  const std::size_t n = g.node_count();
  CentralityMap c{CentralityKind::degree, {g.nodes().begin(), g.nodes().end()},
                  std::vector<double>(n, 0.0)};
  if (n < 2) return c;

  std::vector<std::vector<std::uint32_t>> neighbors(n);
  for (const auto& e : g.edges()) {
    neighbors[e.from].push_back(e.to);
    neighbors[e.to].push_back(e.from);
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto& nb = neighbors[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    c.values[v] = static_cast<double>(nb.size()) / static_cast<double>(n - 1);
  }
  return c;
}

double group_centralization(const CentralityMap& c) {
  const std::size_t n = c.values.size();
  if (n <= 2) return 0.0;
  const double cmax = *std::max_element(c.values.begin(), c.values.end());
  double sum = 0.0;
  for (const double v : c.values) sum += cmax - v;
  const double max_sum = c.kind == CentralityKind::betweenness ? static_cast<double>(n - 1)
                                                               : static_cast<double>(n - 2);
  return std::clamp(sum / max_sum, 0.0, 1.0);
}

double density(const WindowGraph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return 0.0;
  return static_cast<double>(g.edges().size()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace commscore
