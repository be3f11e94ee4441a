#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "commscore/ingest.hpp"

namespace commscore {

/// Compressed adjacency of an unweighted directed graph on vertices 0..n-1.
/// Out-neighbor lists are sorted and free of duplicates and self-loops.
class Digraph {
 public:
  Digraph() = default;

  /// Builds from arbitrary (from, to) pairs; duplicates and self-loops are
  /// dropped.
  static Digraph from_edges(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const std::uint32_t> out(std::size_t v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
};

struct Edge {
  std::uint32_t from = 0;  // index into WindowGraph::nodes()
  std::uint32_t to = 0;
  std::uint64_t count = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed weighted communication graph over one window. Nodes are exactly
/// the actors incident to at least one edge, sorted; edges are sorted by
/// (from, to) and carry message counts >= 1.
class WindowGraph {
 public:
  WindowGraph() = default;

  /// Aggregates (sender, recipient, count) triples; self-loops are dropped.
  static WindowGraph from_triples(Interval window,
                                  std::span<const std::tuple<ActorId, ActorId, std::uint64_t>> triples);

  const Interval& window() const noexcept { return window_; }
  std::span<const ActorId> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  std::optional<std::size_t> index_of(const ActorId& actor) const;
  /// Message count on (from, to); 0 when absent.
  std::uint64_t count(const ActorId& from, const ActorId& to) const;

  /// Unweighted structure for path computations.
  Digraph structure() const;

  friend bool operator==(const WindowGraph&, const WindowGraph&) = default;

 private:
  Interval window_{};
  std::vector<ActorId> nodes_;
  std::vector<Edge> edges_;
};

/// One increment per (sender, recipient) per message, recipients drawn from
/// to and cc; messages an actor sends to itself add nothing.
WindowGraph build_window_graph(const TeamCorpus& corpus, const Interval& window);

/// Window layout used for oscillation series and similar time slicing.
struct WindowSpec {
  enum class Kind { calendar_month, fixed };
  Kind kind = Kind::fixed;
  Seconds length{7 * 24 * 3600};

  static WindowSpec month() { return {Kind::calendar_month, Seconds{0}}; }
  static WindowSpec fixed(Seconds length) { return {Kind::fixed, length}; }

  /// "month", or a count with unit suffix: "7d", "1w", "12h".
  static WindowSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

/// Calendar months intersecting `period`, clipped to it, in order.
std::vector<Interval> month_intervals(const Interval& period);

/// Consecutive windows of `spec` starting at period.start; the last window
/// is truncated at period.end.
std::vector<Interval> window_intervals(const Interval& period, const WindowSpec& spec);

/// One graph per calendar month intersecting the corpus period, empty months
/// included.
std::vector<WindowGraph> monthly_windows(const TeamCorpus& corpus);

std::vector<WindowGraph> windowed_graphs(const TeamCorpus& corpus, const WindowSpec& spec);

struct ActorActivity {
  ActorId actor;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;

  friend bool operator==(const ActorActivity&, const ActorActivity&) = default;
};

/// Per-recipient counting: a message to k distinct other actors adds k to the
/// sender's `sent`, 1 to each recipient's `received`, and k to total_edges.
struct DailyActivity {
  std::chrono::sys_days day;
  std::vector<ActorActivity> actors;  // sorted by actor, only active ones
  std::uint64_t total_edges = 0;

  friend bool operator==(const DailyActivity&, const DailyActivity&) = default;
};

/// Days with at least one edge, ascending.
std::vector<DailyActivity> daily_activity(const TeamCorpus& corpus);

/// Edge-list dump `window_start,from,to,count`.
void write_edge_list(std::ostream& out, std::span<const WindowGraph> graphs);

}  // namespace commscore
