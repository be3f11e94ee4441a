#pragma once

#include <optional>
#include <vector>

#include "commscore/tempograph.hpp"

namespace commscore {

enum class CentralityKind { betweenness, degree };

/// Normalized per-actor centrality; values in [0, 1], one per graph node in
/// the graph's node order.
struct CentralityMap {
  CentralityKind kind = CentralityKind::degree;
  std::vector<ActorId> actors;
  std::vector<double> values;

  std::optional<double> value_of(const ActorId& actor) const;
};

/// Fraction of ordered-pair shortest paths through each node on the
/// unweighted directed structure, normalized by (N-1)(N-2). N < 3 gives zeros.
CentralityMap betweenness_centrality(const WindowGraph& g);

/// Same, using the serial reference kernel.
CentralityMap betweenness_centrality_serial(const WindowGraph& g);

/// Distinct neighbors (in or out) over N-1. N = 1 gives 0.
CentralityMap degree_centrality(const WindowGraph& g);

/// Freeman group centralization: sum(c_max - c_v) divided by the star-graph
/// maximum of that sum (N-1 for betweenness, N-2 for degree). N <= 2 gives 0.
double group_centralization(const CentralityMap& c);

/// Distinct directed edges over N(N-1). N <= 1 gives 0.
double density(const WindowGraph& g);

}  // namespace commscore
