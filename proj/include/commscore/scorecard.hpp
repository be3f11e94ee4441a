#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "commscore/metrics.hpp"

namespace commscore {

enum class Direction { positive, negative };

struct DirectionRow {
  MetricId metric;
  std::string_view label;  // score-card row name
  Direction sign;
};

/// Expected direction of correlation with client satisfaction, in
/// score-card row order.
inline constexpr std::array<DirectionRow, 8> kScoreCardDirections = {{
    {MetricId::avg_gbc, "Group Betweenness Centrality", Direction::positive},
    {MetricId::avg_gdc, "Group Degree Centrality", Direction::positive},
    {MetricId::avg_density, "Group Density", Direction::positive},
    {MetricId::avg_new_actors, "Average new team members", Direction::negative},
    {MetricId::oscillation_sum, "Leadership Oscillation", Direction::negative},
    {MetricId::art_median, "ART (Median)", Direction::negative},
    {MetricId::awvci, "AWVCI (weighted by #actors)", Direction::positive},
    {MetricId::emotionality, "Emotionality", Direction::negative},
}};

Direction expected_direction(MetricId id);
inline char sign_char(Direction d) { return d == Direction::positive ? '+' : '-'; }

inline constexpr double kDefaultAlertSigma = 1.0;

/// One scored metric. Unscored metrics (undefined value or fewer than two
/// defined cohort values) have every optional empty except possibly `value`.
struct MetricScore {
  std::optional<double> value;
  std::optional<double> z;
  std::optional<bool> favorable;  // sign(z) agrees with the expected direction; z = 0 is favorable
  std::optional<bool> alert;      // unfavorable by more than the alert threshold

  bool scored() const noexcept { return z.has_value(); }
  friend bool operator==(const MetricScore&, const MetricScore&) = default;
};

struct ScoreCard {
  std::string team_id;
  std::array<MetricScore, 8> metrics{};  // indexed by metric_index
  std::vector<std::string> caveats;

  const MetricScore& operator[](MetricId id) const { return metrics[metric_index(id)]; }
  friend bool operator==(const ScoreCard&, const ScoreCard&) = default;
};

/// Mean and population standard deviation of each metric over the cohort.
struct CohortStats {
  struct Entry {
    std::size_t n = 0;
    double mean = 0.0;
    double sigma = 0.0;
  };
  std::array<Entry, 8> metrics{};

  static CohortStats of(std::span<const MetricVector> cohort);
};

/// z against the cohort; throws CohortTooSmall when the cohort has fewer
/// than two teams.
ScoreCard build_scorecard(std::string team_id, const MetricVector& team,
                          std::span<const MetricVector> cohort,
                          double alert_sigma = kDefaultAlertSigma);

ScoreCard build_scorecard(std::string team_id, const MetricVector& team, const CohortStats& stats,
                          double alert_sigma = kDefaultAlertSigma);

/// Score cards for every team against the whole set.
std::vector<ScoreCard> build_scorecards(std::span<const TeamMetrics> teams,
                                        double alert_sigma = kDefaultAlertSigma);

enum class ReportFormat { json, csv, html };

ReportFormat parse_report_format(std::string_view name);  // throws UnsupportedFormat
std::string_view extension(ReportFormat f);

struct ReportHeader {
  std::string generated_at;       // ISO-8601 UTC
  nlohmann::ordered_json config;  // effective configuration and fingerprint

  friend bool operator==(const ReportHeader&, const ReportHeader&) = default;
};

/// Deterministic rendering; numbers at three decimals.
std::string render(std::span<const ScoreCard> cards, ReportFormat format, const ReportHeader& header);

struct ParsedReport {
  ReportHeader header;
  std::vector<ScoreCard> cards;
};

/// Reads the JSON rendering back; throws Error on schema violations.
ParsedReport parse_scorecard_json(std::string_view text);

/// Rounds to three decimals through its decimal text so JSON, CSV and HTML
/// agree digit for digit.
double quantize3(double v);

}  // namespace commscore
