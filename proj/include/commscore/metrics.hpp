#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commscore/contribution.hpp"
#include "commscore/replies.hpp"
#include "commscore/sentiment.hpp"
#include "commscore/tempograph.hpp"

namespace commscore {

/// The eight score-card metrics, in score-card order.
enum class MetricId {
  avg_gbc,
  avg_gdc,
  avg_density,
  avg_new_actors,
  oscillation_sum,
  art_median,
  awvci,
  emotionality,
};

inline constexpr std::array<MetricId, 8> kMetricIds = {
    MetricId::avg_gbc,         MetricId::avg_gdc,    MetricId::avg_density,
    MetricId::avg_new_actors,  MetricId::oscillation_sum, MetricId::art_median,
    MetricId::awvci,           MetricId::emotionality,
};

/// Column header used in metric and correlation tables.
std::string_view metric_label(MetricId id);
/// snake_case key used in JSON.
std::string_view metric_key(MetricId id);
std::optional<MetricId> metric_from_key(std::string_view key);
inline std::size_t metric_index(MetricId id) { return static_cast<std::size_t>(id); }

/// Values over the analysis period; nullopt marks a metric the corpus cannot
/// support (no reply pairs, too few windows, no activity...).
struct MetricVector {
  std::array<std::optional<double>, 8> values{};

  std::optional<double>& operator[](MetricId id) { return values[metric_index(id)]; }
  const std::optional<double>& operator[](MetricId id) const { return values[metric_index(id)]; }

  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

struct MetricConfig {
  WindowSpec oscillation_window = WindowSpec::fixed(Seconds{7 * 86400});
  Seconds reply_cap = kDefaultReplyCap;
  AwvciWeighting awvci_weighting = AwvciWeighting::edges;
  EmotionalityMode emotionality_mode = EmotionalityMode::cumulative;
  SentimentLexicon lexicon = SentimentLexicon::bundled();
};

/// Mean over windows 2..M of the number of nodes not present in any earlier
/// window. Throws InsufficientWindows for fewer than two windows.
double avg_new_actors(std::span<const WindowGraph> windows);

/// Interior points that are strict local extrema. Plateaus do not count.
std::size_t count_direction_changes(std::span<const double> series);

struct OscillationResult {
  std::vector<std::pair<ActorId, std::size_t>> per_actor;  // sorted by actor
  std::size_t sum = 0;
  std::size_t windows = 0;
};

/// Betweenness series per actor over consecutive windows (0 where absent),
/// scored with count_direction_changes. Throws InsufficientWindows for fewer
/// than three windows.
OscillationResult leadership_oscillation(const TeamCorpus& corpus, const WindowSpec& granularity);

/// All eight metrics. Never throws for a single unsupported metric.
MetricVector compute_metric_vector(const TeamCorpus& corpus, const MetricConfig& config = {});

struct TeamMetrics {
  std::string team_id;
  MetricVector metrics;

  friend bool operator==(const TeamMetrics&, const TeamMetrics&) = default;
};

/// Teams evaluated concurrently; output order follows `corpora`.
std::vector<TeamMetrics> compute_cohort_metrics(std::span<const TeamCorpus> corpora,
                                                const MetricConfig& config = {});

/// Serial reference of compute_cohort_metrics.
std::vector<TeamMetrics> compute_cohort_metrics_serial(std::span<const TeamCorpus> corpora,
                                                       const MetricConfig& config = {});

inline constexpr std::string_view kUndefinedMarker = "NA";

/// `team_id` followed by the eight metric labels; values at six decimals,
/// undefined values as NA.
void write_metrics_csv(std::ostream& out, std::span<const TeamMetrics> rows);
std::vector<TeamMetrics> read_metrics_csv(std::istream& in, const std::string& source = "<metrics>");

}  // namespace commscore
