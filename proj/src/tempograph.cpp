#include "commscore/tempograph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include <fmt/format.h>

#include "commscore/error.hpp"

namespace commscore {

Digraph Digraph::from_edges(std::size_t n,
                            std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sorted;
  sorted.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.first >= n || e.second >= n)
      throw Error(fmt::format("edge ({}, {}) outside graph of {} vertices", e.first, e.second, n));
    if (e.first != e.second) sorted.push_back(e);
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  Digraph g;
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(sorted.size());
  for (const auto& [from, to] : sorted) {
    ++g.offsets_[from + 1];
    g.targets_.push_back(to);
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  return g;
}

WindowGraph WindowGraph::from_triples(
    Interval window, std::span<const std::tuple<ActorId, ActorId, std::uint64_t>> triples) {
  std::map<std::pair<ActorId, ActorId>, std::uint64_t> counts;
  for (const auto& [from, to, n] : triples) {
    if (from == to || n == 0) continue;
    counts[{from, to}] += n;
  }

  WindowGraph g;
  g.window_ = window;
  for (const auto& [pair, n] : counts) {
    g.nodes_.push_back(pair.first);
    g.nodes_.push_back(pair.second);
  }
  std::sort(g.nodes_.begin(), g.nodes_.end());
  g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()), g.nodes_.end());

  g.edges_.reserve(counts.size());
  for (const auto& [pair, n] : counts) {
    g.edges_.push_back({static_cast<std::uint32_t>(*g.index_of(pair.first)),
                        static_cast<std::uint32_t>(*g.index_of(pair.second)), n});
  }
  // map order over (from, to) actors equals index order since nodes are sorted
  return g;
}

std::optional<std::size_t> WindowGraph::index_of(const ActorId& actor) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), actor);
  if (it == nodes_.end() || *it != actor) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::uint64_t WindowGraph::count(const ActorId& from, const ActorId& to) const {
  const auto f = index_of(from);
  const auto t = index_of(to);
  if (!f || !t) return 0;
  const Edge key{static_cast<std::uint32_t>(*f), static_cast<std::uint32_t>(*t), 0};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  if (it == edges_.end() || it->from != key.from || it->to != key.to) return 0;
  return it->count;
}

Digraph WindowGraph::structure() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges_.size());
  for (const auto& e : edges_) pairs.emplace_back(e.from, e.to);
  return Digraph::from_edges(nodes_.size(), pairs);
}

WindowGraph build_window_graph(const TeamCorpus& corpus, const Interval& window) {
  std::vector<std::tuple<ActorId, ActorId, std::uint64_t>> triples;
  for (const auto& e : corpus.events_in(window)) {
    for (const auto& r : e.to) triples.emplace_back(e.sender, r, 1);
    for (const auto& r : e.cc) triples.emplace_back(e.sender, r, 1);
  }
  return WindowGraph::from_triples(window, triples);
}

WindowSpec WindowSpec::parse(std::string_view text) {
  std::string t;
  for (const char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "month" || t == "monthly") return month();
  if (t == "week" || t == "weekly") return fixed(Seconds{7 * 86400});
  if (t == "day" || t == "daily") return fixed(Seconds{86400});

  long long n = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
  const std::string_view unit(ptr, t.data() + t.size() - ptr);
  long long scale = 0;
  if (unit == "h") scale = 3600;
  if (unit == "d") scale = 86400;
  if (unit == "w") scale = 7 * 86400;
  if (ec != std::errc{} || n <= 0 || scale == 0)
    throw Error(fmt::format("window '{}' is not 'month' or <n>h/<n>d/<n>w", text));
  return fixed(Seconds{n * scale});
}

std::string WindowSpec::to_string() const {
  if (kind == Kind::calendar_month) return "month";
  const auto s = length.count();
  if (s % (7 * 86400) == 0) return fmt::format("{}w", s / (7 * 86400));
  if (s % 86400 == 0) return fmt::format("{}d", s / 86400);
  if (s % 3600 == 0) return fmt::format("{}h", s / 3600);
  return fmt::format("{}s", s);
}

std::vector<Interval> month_intervals(const Interval& period) {
  std::vector<Interval> out;
  for (Timestamp m = month_floor(period.start); m < period.end; m = next_month(m)) {
    out.push_back({std::max(m, period.start), std::min(next_month(m), period.end)});
  }
  return out;
}

std::vector<Interval> window_intervals(const Interval& period, const WindowSpec& spec) {
  if (spec.kind == WindowSpec::Kind::calendar_month) return month_intervals(period);
  if (spec.length <= Seconds{0}) throw Error("window length must be positive");
  std::vector<Interval> out;
  for (Timestamp t = period.start; t < period.end; t += spec.length) {
    out.push_back({t, std::min(t + spec.length, period.end)});
  }
  return out;
}

std::vector<WindowGraph> monthly_windows(const TeamCorpus& corpus) {
  return windowed_graphs(corpus, WindowSpec::month());
}

std::vector<WindowGraph> windowed_graphs(const TeamCorpus& corpus, const WindowSpec& spec) {
  const auto intervals = window_intervals(corpus.period(), spec);
  std::vector<WindowGraph> out(intervals.size());
  // Disjoint windows; each slot is written by exactly one iteration.
#pragma omp parallel for schedule(dynamic) if (intervals.size() > 8)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(intervals.size()); ++i) {
    out[i] = build_window_graph(corpus, intervals[i]);
  }
  return out;
}

std::vector<DailyActivity> daily_activity(const TeamCorpus& corpus) {
  std::map<std::chrono::sys_days, std::map<ActorId, std::pair<std::uint64_t, std::uint64_t>>> days;
  std::map<std::chrono::sys_days, std::uint64_t> edges;
  for (const auto& e : corpus.events()) {
    const auto day = day_floor(e.timestamp);
    std::uint64_t k = 0;
    auto count_recipient = [&](const ActorId& r) {
      if (r == e.sender) return;
      ++days[day][r].second;
      ++k;
    };
    for (const auto& r : e.to) count_recipient(r);
    for (const auto& r : e.cc) count_recipient(r);
    if (k == 0) continue;
    days[day][e.sender].first += k;
    edges[day] += k;
  }

  std::vector<DailyActivity> out;
  out.reserve(days.size());
  for (auto& [day, actors] : days) {
    DailyActivity d{day, {}, edges[day]};
    for (auto& [actor, counts] : actors) d.actors.push_back({actor, counts.first, counts.second});
    out.push_back(std::move(d));
  }
  return out;
}

void write_edge_list(std::ostream& out, std::span<const WindowGraph> graphs) {
  out << "window_start,from,to,count\n";
  for (const auto& g : graphs) {
    const auto start = format_iso8601(g.window().start);
    for (const auto& e : g.edges()) {
      out << start << ',' << g.nodes()[e.from].str() << ',' << g.nodes()[e.to].str() << ','
          << e.count << '\n';
    }
  }
}

}  // namespace commscore
