#include "oracles.hpp"

#include <functional>
#include <stdexcept>

namespace commscore::testing {

SmallDigraph SmallDigraph::from_pairs(std::size_t n,
                                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  SmallDigraph g;
  g.n = n;
  g.adj.assign(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : pairs) {
    if (u != v) g.adj[u][v] = true;
  }
  return g;
}

std::vector<Rational> brute_force_betweenness_sums(const SmallDigraph& g) {
  std::vector<Rational> sums(g.n, Rational(0));
  std::vector<std::uint32_t> path;
  std::vector<bool> on_path(g.n, false);

  for (std::uint32_t s = 0; s < g.n; ++s) {
    for (std::uint32_t t = 0; t < g.n; ++t) {
      if (s == t) continue;
      // Every simple path from s to t, grouped by length.
      std::vector<std::vector<std::uint32_t>> shortest;
      std::size_t best = g.n + 1;
      path.assign(1, s);
      on_path.assign(g.n, false);
      on_path[s] = true;
      std::function<void()> extend = [&] {
        const std::uint32_t u = path.back();
        if (u == t) {
          if (path.size() < best) {
            best = path.size();
            shortest.clear();
          }
          if (path.size() == best) shortest.push_back(path);
          return;
        }
        for (std::uint32_t w = 0; w < g.n; ++w) {
          if (!g.adj[u][w] || on_path[w]) continue;
          on_path[w] = true;
          path.push_back(w);
          extend();
          path.pop_back();
          on_path[w] = false;
        }
      };
      extend();
      if (shortest.empty()) continue;
      const Rational share(1, static_cast<long long>(shortest.size()));
      for (const auto& p : shortest) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) sums[p[i]] += share;
      }
    }
  }
  return sums;
}

std::vector<Rational> brute_force_betweenness(const SmallDigraph& g) {
  auto sums = brute_force_betweenness_sums(g);
  if (g.n < 3) return std::vector<Rational>(g.n, Rational(0));
  const Rational scale(static_cast<long long>((g.n - 1) * (g.n - 2)));
  for (auto& x : sums) x /= scale;
  return sums;
}

Rational exact_contribution_index(std::uint64_t sent, std::uint64_t received) {
  if (sent + received == 0) throw std::invalid_argument("no activity");
  return Rational(static_cast<long long>(sent) - static_cast<long long>(received),
                  static_cast<long long>(sent + received));
}

Rational exact_nps(const std::vector<int>& answers) {
  long long promoters = 0, detractors = 0;
  for (const int a : answers) {
    if (a >= 9 && a <= 10) ++promoters;
    if (a >= 0 && a <= 6) ++detractors;
  }
  return Rational(100 * (promoters - detractors), static_cast<long long>(answers.size()));
}

}  // namespace commscore::testing
