#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commscore/ingest.hpp"
#include "commscore/metrics.hpp"
#include "commscore/satisfaction.hpp"
#include "commscore/scorecard.hpp"
#include "commscore/synth.hpp"

namespace commscore {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIngest = 2,
  kExitAnalysis = 3,
  kExitCorrelation = 4,
};

/// Effective settings of one run. Defaults match the library defaults.
struct RunConfig {
  std::optional<Interval> period;        // derived from the data when unset
  std::optional<MailFormat> format;      // inferred from the file extension when unset
  std::optional<std::string> team;       // team for records without team_id (default: file stem)
  bool strict = false;
  MetricConfig metrics;
  std::optional<std::filesystem::path> lexicon_path;
  std::size_t eligibility_min = kDefaultEligibilityMin;
  double alert_sigma = kDefaultAlertSigma;
  ReportFormat report_format = ReportFormat::json;
  std::optional<std::string> generated_at;
  std::filesystem::path out = ".";
};

/// Analysis settings as written next to metrics.csv.
nlohmann::ordered_json analysis_config_json(const RunConfig& config, const Interval& period);

/// Adds the correlation settings and a `fingerprint` digest of everything else.
nlohmann::ordered_json fingerprinted(nlohmann::ordered_json config, const RunConfig& run);

/// Parses mail files and writes `teams/<team>.jsonl` plus `manifest.json`
/// (event counts, gap months, skipped records) under config.out.
int cmd_ingest(const std::vector<std::filesystem::path>& inputs, const RunConfig& config,
               std::ostream& log);

/// Reads an ingest archive and writes `metrics.csv` and `metrics.config.json`.
int cmd_analyze(const std::filesystem::path& archive, const RunConfig& config, std::ostream& log);

/// Writes `correlations.csv` (table layout), `correlations_long.csv`,
/// `scorecard.json` and `scorecard.html`; prints significant cells.
int cmd_correlate(const std::filesystem::path& metrics_csv, const std::filesystem::path& survey_csv,
                  const RunConfig& config, std::ostream& console);

/// Renders score cards alone in config.report_format.
int cmd_scorecard(const std::filesystem::path& metrics_csv,
                  const std::optional<std::filesystem::path>& survey_csv, const RunConfig& config,
                  std::ostream& console);

/// Writes `mail.csv`, `survey.csv` and `truth.json` under `out`.
int cmd_synth(const SynthSpec& spec, const std::filesystem::path& out, std::ostream& log);

}  // namespace commscore
