// commscore: e-mail communication metrics, satisfaction correlation and score cards.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commscore/error.hpp"
#include "commscore/pipeline.hpp"

namespace fs = std::filesystem;
using namespace commscore;

namespace {

struct Flags {
  std::string period;
  std::string format;
  std::string team;
  std::string reply_cap;
  std::string oscillation_window;
  std::string awvci_weighting;
  std::string emotionality_mode;
  std::string lexicon;
  std::size_t eligibility_min = kDefaultEligibilityMin;
  double alert_sigma = kDefaultAlertSigma;
  std::string generated_at;
  std::string out = ".";
  bool strict = false;
};

void add_analysis_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--reply-cap", f.reply_cap, "Longest reply latency matched, e.g. 7d, 48h");
  cmd->add_option("--oscillation-window", f.oscillation_window,
                  "Oscillation granularity: month or a length such as 1w, 3d");
  cmd->add_option("--awvci-weighting", f.awvci_weighting, "edges or actors");
  cmd->add_option("--emotionality-mode", f.emotionality_mode, "cumulative or normalized");
  cmd->add_option("--lexicon", f.lexicon, "Sentiment word list replacing the bundled one")
      ->check(CLI::ExistingFile);
}

void add_report_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--eligibility-min", f.eligibility_min,
                  "A team is eligible with more respondents than this");
  cmd->add_option("--alert-sigma", f.alert_sigma, "Deviation against the expected direction that raises an alert")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--generated-at", f.generated_at, "Timestamp recorded in reports");
}

/// Turns raw flag text into a RunConfig; throws commscore::Error on bad values.
RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (!f.period.empty()) {
    c.period = parse_period(f.period);
    if (c.period->empty()) throw Error("--period must be nonempty");
  }
  if (!f.team.empty()) c.team = f.team;
  c.strict = f.strict;
  if (!f.reply_cap.empty()) {
    const auto spec = WindowSpec::parse(f.reply_cap);
    if (spec.kind != WindowSpec::Kind::fixed) throw Error("--reply-cap needs a fixed length");
    c.metrics.reply_cap = spec.length;
  }
  if (!f.oscillation_window.empty()) c.metrics.oscillation_window = WindowSpec::parse(f.oscillation_window);
  if (!f.awvci_weighting.empty()) c.metrics.awvci_weighting = parse_awvci_weighting(f.awvci_weighting);
  if (!f.emotionality_mode.empty())
    c.metrics.emotionality_mode = parse_emotionality_mode(f.emotionality_mode);
  if (!f.lexicon.empty()) c.lexicon_path = fs::path(f.lexicon);
  if (f.eligibility_min == 0) throw Error("--eligibility-min must be positive");
  c.eligibility_min = f.eligibility_min;
  c.alert_sigma = f.alert_sigma;
  if (!f.generated_at.empty()) {
    const auto t = parse_iso8601(f.generated_at);
    if (!t) throw Error("--generated-at must be an ISO-8601 timestamp with offset");
    c.generated_at = format_iso8601(*t);
  }
  c.out = f.out;
  return c;
}

/// Parses "metric:target=value", e.g. "oscillation_sum:nps=-0.9".
void apply_effect(SynthSpec& spec, const std::string& text) {
  const auto colon = text.find(':');
  const auto eq = text.find('=', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || eq == std::string::npos)
    throw Error("--effect expects metric:target=value, got '" + text + "'");
  const auto metric = metric_from_key(text.substr(0, colon));
  if (!metric) throw Error("unknown metric '" + text.substr(0, colon) + "'");
  const std::string target = text.substr(colon + 1, eq - colon - 1);
  double value = 0.0;
  try {
    value = std::stod(text.substr(eq + 1));
  } catch (const std::exception&) {
    throw Error("bad effect value in '" + text + "'");
  }
  auto& e = spec.effects[metric_index(*metric)];
  if (target == "nps") {
    e.nps = value;
  } else if (target == "kpd") {
    e.kpd = value;
  } else {
    throw Error("effect target must be nps or kpd, got '" + target + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"E-mail communication score cards"};
  app.require_subcommand(1);
  Flags f;

  std::vector<std::string> inputs;
  auto* ingest = app.add_subcommand("ingest", "Normalize mail logs into per-team corpora");
  ingest->add_option("inputs", inputs, "CSV, JSONL or mbox files")->required()->check(CLI::ExistingFile);
  ingest->add_option("--period", f.period, "UTC interval START/END; defaults to the covering months");
  ingest->add_option("--format", f.format, "csv, jsonl or mbox; inferred from the extension by default");
  ingest->add_option("--team", f.team, "Team of records without team_id; defaults to the file stem");
  ingest->add_flag("--strict", f.strict, "Fail on the first malformed record");
  ingest->add_option("--out", f.out, "Archive directory");

  std::string archive;
  auto* analyze = app.add_subcommand("analyze", "Compute the eight metrics per team");
  analyze->add_option("archive", archive, "Directory written by ingest")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--period", f.period, "Override the archive period");
  add_analysis_flags(analyze, f);
  analyze->add_option("--out", f.out, "Output directory");

  std::string metrics_csv, survey_csv;
  auto* correlate = app.add_subcommand("correlate", "Correlate metrics with NPS and KPD");
  correlate->add_option("metrics", metrics_csv, "metrics.csv from analyze")->required()->check(CLI::ExistingFile);
  correlate->add_option("survey", survey_csv, "Survey responses CSV")->required()->check(CLI::ExistingFile);
  add_report_flags(correlate, f);
  correlate->add_option("--out", f.out, "Output directory");

  auto* scorecard = app.add_subcommand("scorecard", "Render score cards");
  scorecard->add_option("metrics", metrics_csv, "metrics.csv from analyze")->required()->check(CLI::ExistingFile);
  scorecard->add_option("--survey", survey_csv, "Survey CSV, for eligibility caveats")->check(CLI::ExistingFile);
  scorecard->add_option("--format", f.format, "json, csv or html")->default_str("json");
  add_report_flags(scorecard, f);
  scorecard->add_option("--out", f.out, "Output directory");

  SynthSpec spec;
  std::string start;
  double effect_size = -1.0;
  std::vector<std::string> effects;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic cohort with planted effects");
  synth->add_option("--teams", spec.teams, "Number of teams")->capture_default_str();
  synth->add_option("--months", spec.months, "Months of mail")->capture_default_str();
  synth->add_option("--start", start, "First day, YYYY-MM-DD")->default_str("2012-06-01");
  synth->add_option("--actors", spec.actors, "Baseline roster size")->capture_default_str();
  synth->add_option("--effect-size", effect_size,
                    "Plant every metric with this magnitude in its score-card direction");
  synth->add_option("--effect", effects, "Override one cell: metric:target=value");
  synth->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  synth->add_option("--out", f.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunConfig config;
  try {
    config = resolve(f);
    if (*ingest && !f.format.empty()) config.format = parse_mail_format(f.format);
    if (*scorecard) config.report_format = parse_report_format(f.format.empty() ? "json" : f.format);
    if (*synth) {
      if (!start.empty()) {
        const auto t = parse_iso8601(start + "T00:00:00Z");
        if (!t) throw Error("--start must be YYYY-MM-DD");
        spec.start = *t;
      }
      if (effect_size >= 0.0) spec.effects = SynthSpec::default_effects(effect_size);
      for (const auto& e : effects) apply_effect(spec, e);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*ingest) {
    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    return cmd_ingest(paths, config, std::cerr);
  }
  if (*analyze) return cmd_analyze(archive, config, std::cerr);
  if (*correlate) return cmd_correlate(metrics_csv, survey_csv, config, std::cout);
  if (*scorecard) {
    std::optional<fs::path> survey;
    if (!survey_csv.empty()) survey = survey_csv;
    return cmd_scorecard(metrics_csv, survey, config, std::cout);
  }
  return cmd_synth(spec, config.out, std::cerr);
}
