#include "commscore/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "commscore/centrality.hpp"
#include "commscore/csv.hpp"
#include "commscore/error.hpp"

namespace commscore {

namespace {

struct MetricName {
  MetricId id;
  std::string_view label;
  std::string_view key;
};

constexpr std::array<MetricName, 8> kNames = {{
    {MetricId::avg_gbc, "Avg GBC", "avg_gbc"},
    {MetricId::avg_gdc, "Avg GDC", "avg_gdc"},
    {MetricId::avg_density, "Avg Density", "avg_density"},
    {MetricId::avg_new_actors, "Avg. New Actors", "avg_new_actors"},
    {MetricId::oscillation_sum, "Sum of Oscillation", "oscillation_sum"},
    {MetricId::art_median, "ART Median", "art_median"},
    {MetricId::awvci, "AWVCI (weighted by #actors)", "awvci"},
    {MetricId::emotionality, "Emotionality (cumulated pos. sentiment)", "emotionality"},
}};

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::string_view metric_label(MetricId id) { return kNames[metric_index(id)].label; }
std::string_view metric_key(MetricId id) { return kNames[metric_index(id)].key; }

std::optional<MetricId> metric_from_key(std::string_view key) {
  for (const auto& n : kNames) {
    if (n.key == key) return n.id;
  }
  return std::nullopt;
}

double avg_new_actors(std::span<const WindowGraph> windows) {
  if (windows.size() < 2)
    throw InsufficientWindows(
        fmt::format("new-actor rate needs at least 2 windows, got {}", windows.size()));
  std::set<ActorId> seen(windows[0].nodes().begin(), windows[0].nodes().end());
  double total = 0.0;
  for (std::size_t i = 1; i < windows.size(); ++i) {
    for (const auto& a : windows[i].nodes()) {
      if (seen.insert(a).second) total += 1.0;
    }
  }
  return total / static_cast<double>(windows.size() - 1);
}

std::size_t count_direction_changes(std::span<const double> series) {
  std::size_t changes = 0;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double before = series[i] - series[i - 1];
    const double after = series[i + 1] - series[i];
    if ((before > 0 && after < 0) || (before < 0 && after > 0)) ++changes;
  }
  return changes;
}

OscillationResult leadership_oscillation(const TeamCorpus& corpus, const WindowSpec& granularity) {
  const auto graphs = windowed_graphs(corpus, granularity);
  if (graphs.size() < 3)
    throw InsufficientWindows(
        fmt::format("oscillation needs at least 3 windows, got {}", graphs.size()));

  std::vector<CentralityMap> maps(graphs.size());
#pragma omp parallel for schedule(dynamic) if (graphs.size() > 8)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(graphs.size()); ++i) {
    maps[i] = betweenness_centrality_serial(graphs[i]);
  }

  std::map<ActorId, std::vector<double>> series;
  for (std::size_t w = 0; w < maps.size(); ++w) {
    for (std::size_t k = 0; k < maps[w].actors.size(); ++k) {
      auto& s = series.try_emplace(maps[w].actors[k], graphs.size(), 0.0).first->second;
      s[w] = maps[w].values[k];
    }
  }

  OscillationResult result;
  result.windows = graphs.size();
  for (const auto& [actor, s] : series) {
    const std::size_t n = count_direction_changes(s);
    result.per_actor.emplace_back(actor, n);
    result.sum += n;
  }
  return result;
}

MetricVector compute_metric_vector(const TeamCorpus& corpus, const MetricConfig& config) {
  MetricVector mv;
  const auto months = monthly_windows(corpus);

  std::vector<double> gbc, gdc, dens;
  for (const auto& g : months) {
    if (g.empty()) continue;
    gbc.push_back(group_centralization(betweenness_centrality_serial(g)));
    gdc.push_back(group_centralization(degree_centrality(g)));
    dens.push_back(density(g));
  }
  mv[MetricId::avg_gbc] = mean_of(gbc);
  mv[MetricId::avg_gdc] = mean_of(gdc);
  mv[MetricId::avg_density] = mean_of(dens);

  if (months.size() >= 2) mv[MetricId::avg_new_actors] = avg_new_actors(months);

  try {
    mv[MetricId::oscillation_sum] =
        static_cast<double>(leadership_oscillation(corpus, config.oscillation_window).sum);
  } catch (const InsufficientWindows&) {
  }

  mv[MetricId::art_median] = response_times(match_replies(corpus, config.reply_cap)).median;

  try {
    mv[MetricId::awvci] = awvci(daily_activity(corpus), config.awvci_weighting);
  } catch (const NoActivity&) {
  }

  mv[MetricId::emotionality] = emotionality(corpus, config.lexicon, config.emotionality_mode);
  return mv;
}

std::vector<TeamMetrics> compute_cohort_metrics(std::span<const TeamCorpus> corpora,
                                                const MetricConfig& config) {
  std::vector<TeamMetrics> out(corpora.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpora.size()); ++i) {
    out[i] = {corpora[i].team_id(), compute_metric_vector(corpora[i], config)};
  }
  return out;
}

std::vector<TeamMetrics> compute_cohort_metrics_serial(std::span<const TeamCorpus> corpora,
                                                       const MetricConfig& config) {
  std::vector<TeamMetrics> out;
  out.reserve(corpora.size());
  for (const auto& c : corpora) out.push_back({c.team_id(), compute_metric_vector(c, config)});
  return out;
}

void write_metrics_csv(std::ostream& out, std::span<const TeamMetrics> rows) {
  std::vector<std::string> header{"team_id"};
  for (const auto id : kMetricIds) header.emplace_back(metric_label(id));
  out << csv_join(header) << '\n';
  for (const auto& row : rows) {
    std::vector<std::string> fields{row.team_id};
    for (const auto id : kMetricIds) {
      const auto& v = row.metrics[id];
      fields.push_back(v ? fmt::format("{:.6f}", *v == 0.0 ? 0.0 : *v) : std::string(kUndefinedMarker));
    }
    out << csv_join(fields) << '\n';
  }
}

std::vector<TeamMetrics> read_metrics_csv(std::istream& in, const std::string& source) {
  CsvReader reader{in, source};
  const auto header = reader.next();
  if (!header) throw FormatError(fmt::format("{}: missing metrics header", source));
  std::optional<std::size_t> team_col;
  std::array<std::optional<std::size_t>, 8> cols{};
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    const auto& name = header->fields[i];
    if (name == "team_id") team_col = i;
    for (const auto id : kMetricIds) {
      if (name == metric_label(id) || name == metric_key(id)) cols[metric_index(id)] = i;
    }
  }
  if (!team_col) throw FormatError(fmt::format("{}: metrics header lacks team_id", source));
  for (const auto id : kMetricIds) {
    if (!cols[metric_index(id)])
      throw FormatError(fmt::format("{}: metrics header lacks '{}'", source, metric_label(id)));
  }

  std::vector<TeamMetrics> rows;
  while (auto rec = reader.next()) {
    if (rec->fields.size() != header->fields.size())
      throw MalformedRecord(source, rec->line, "wrong number of fields");
    TeamMetrics row{rec->fields[*team_col], {}};
    for (const auto id : kMetricIds) {
      const std::string& text = rec->fields[*cols[metric_index(id)]];
      if (text == kUndefinedMarker || text.empty()) continue;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw MalformedRecord(source, rec->line, fmt::format("bad number '{}'", text));
      row.metrics[id] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace commscore
