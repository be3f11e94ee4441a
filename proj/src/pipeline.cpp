#include "commscore/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "commscore/csv.hpp"
#include "commscore/error.hpp"
#include "commscore/stats.hpp"

namespace commscore {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kMetricsSidecar = "metrics.config.json";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw Error(fmt::format("write to '{}' failed", path.string()));
}

std::string file_stem_for(const std::string& team_id) {
  std::string out;
  for (const char c : team_id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

MailFormat infer_format(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return MailFormat::csv;
  if (ext == ".jsonl" || ext == ".ndjson") return MailFormat::jsonl;
  if (ext == ".mbox" || ext == ".mbx") return MailFormat::mbox;
  throw UnsupportedFormat(
      fmt::format("cannot infer the format of '{}'; pass --format", path.string()));
}

RunConfig with_lexicon(RunConfig config) {
  if (config.lexicon_path) config.metrics.lexicon = SentimentLexicon::load(*config.lexicon_path);
  return config;
}

std::string lexicon_tag(const RunConfig& config) {
  const std::string source = config.lexicon_path ? "file" : "bundled-v1";
  return source + ":" + config.metrics.lexicon.digest();
}

struct SurveyJoin {
  std::vector<TeamRecord> records;  // teams with both metrics and survey
  std::map<std::string, std::vector<std::string>> caveats;
};

SurveyJoin join_survey(const std::vector<TeamMetrics>& metrics,
                       const std::vector<TeamSatisfaction>& sats, std::size_t eligibility_min) {
  SurveyJoin join;
  std::map<std::string, const TeamSatisfaction*> by_team;
  for (const auto& s : sats) by_team[s.team_id] = &s;
  for (const auto& m : metrics) {
    const auto it = by_team.find(m.team_id);
    if (it == by_team.end()) {
      join.caveats[m.team_id].push_back("no survey responses; excluded from correlation");
      continue;
    }
    if (!it->second->eligible) {
      join.caveats[m.team_id].push_back(fmt::format(
          "{} survey respondents (eligibility requires more than {}); excluded from correlation",
          it->second->n_respondents, eligibility_min));
    }
    join.records.push_back({m.team_id, m.metrics, *it->second});
  }
  return join;
}

std::vector<ScoreCard> cards_with_caveats(const std::vector<TeamMetrics>& metrics,
                                          const SurveyJoin& join, double alert_sigma) {
  auto cards = build_scorecards(metrics, alert_sigma);
  for (auto& card : cards) {
    if (const auto it = join.caveats.find(card.team_id); it != join.caveats.end())
      card.caveats = it->second;
  }
  return cards;
}

/// Analysis config stored beside the metrics file, if any.
ojson load_sidecar(const fs::path& metrics_csv) {
  const fs::path sidecar = metrics_csv.parent_path() / kMetricsSidecar;
  if (!fs::exists(sidecar)) return ojson::object();
  return ojson::parse(read_file(sidecar));
}

std::string generated_at(const RunConfig& config, const ojson& sidecar) {
  if (config.generated_at) return *config.generated_at;
  if (sidecar.contains("period")) {
    return format_iso8601(parse_period(sidecar["period"].get<std::string>()).end);
  }
  return "1970-01-01T00:00:00Z";
}

}  // namespace

ojson analysis_config_json(const RunConfig& config, const Interval& period) {
  ojson j;
  j["period"] = format_period(period);
  j["reply_cap_seconds"] = config.metrics.reply_cap.count();
  j["oscillation_window"] = config.metrics.oscillation_window.to_string();
  j["awvci_weighting"] = std::string(to_string(config.metrics.awvci_weighting));
  j["emotionality_mode"] = std::string(to_string(config.metrics.emotionality_mode));
  j["lexicon"] = lexicon_tag(config);
  j["group_centrality"] = "freeman_centralization";
  j["distribution_lists"] = "single_actor";
  return j;
}

ojson fingerprinted(ojson config, const RunConfig& run) {
  config.erase("fingerprint");
  config["eligibility_min"] = run.eligibility_min;
  config["alert_sigma"] = run.alert_sigma;
  config["fingerprint"] = fmt::format("{:016x}", fnv1a64(config.dump()));
  return config;
}

int cmd_ingest(const std::vector<fs::path>& inputs, const RunConfig& config, std::ostream& log) {
  std::vector<EmailEvent> events;
  ojson sources = ojson::array();
  ojson issues = ojson::array();
  std::size_t skipped_total = 0;

  for (const auto& path : inputs) {
    MailFormat format;
    try {
      format = config.format ? *config.format : infer_format(path);
    } catch (const UnsupportedFormat& e) {
      log << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      log << "error: cannot open '" << path.string() << "'\n";
      return kExitIngest;
    }
    ParseOptions options{config.strict, config.team.value_or(path.stem().string()), path.string()};
    ParseResult parsed;
    try {
      parsed = parse_events(in, format, options);
    } catch (const Error& e) {
      log << "error: " << e.what() << '\n';
      return kExitIngest;
    }
    for (const auto& issue : parsed.skipped) {
      log << "warning: skipped " << issue.source << ':' << issue.line << ": " << issue.message << '\n';
      issues.push_back({{"source", issue.source}, {"line", issue.line}, {"message", issue.message}});
    }
    skipped_total += parsed.skipped.size();
    sources.push_back({{"path", path.string()},
                       {"format", std::string(to_string(format))},
                       {"records", parsed.events.size()},
                       {"skipped", parsed.skipped.size()}});
    events.insert(events.end(), std::make_move_iterator(parsed.events.begin()),
                  std::make_move_iterator(parsed.events.end()));
  }

  Interval period{};
  if (config.period) {
    period = *config.period;
  } else if (!events.empty()) {
    auto [lo, hi] = std::minmax_element(events.begin(), events.end(),
                                        [](const EmailEvent& a, const EmailEvent& b) {
                                          return a.timestamp < b.timestamp;
                                        });
    period = {month_floor(lo->timestamp), next_month(hi->timestamp)};
  } else {
    log << "error: no events and no --period given\n";
    return kExitIngest;
  }

  std::set<std::string> team_ids;
  for (const auto& e : events) team_ids.insert(e.team_id);
  if (config.team) team_ids.insert(*config.team);

  ojson teams = ojson::array();
  std::size_t kept = 0;
  try {
    for (const auto& team : team_ids) {
      auto built = build_corpus(events, team, period);
      const auto& corpus = built.corpus;
      kept += corpus.events().size();
      const std::string file = "teams/" + file_stem_for(team) + ".jsonl";
      std::ostringstream body;
      write_events_jsonl(body, corpus.events());
      write_file(config.out / file, body.str());

      ojson months = ojson::array();
      ojson gaps = ojson::array();
      for (const auto& m : month_intervals(period)) {
        const auto n = corpus.events_in(m).size();
        months.push_back({{"month", format_month(m.start)}, {"events", n}});
        if (n == 0) gaps.push_back(format_month(m.start));
      }
      if (built.empty_corpus) log << "warning: team '" << team << "' has no events in the period\n";
      if (!gaps.empty() && !built.empty_corpus)
        log << "warning: team '" << team << "' has months without e-mail: " << gaps.dump() << '\n';
      teams.push_back({{"team_id", team},
                       {"file", file},
                       {"events", corpus.events().size()},
                       {"empty_corpus", built.empty_corpus},
                       {"months", months},
                       {"gap_months", gaps}});
    }

    ojson manifest;
    manifest["period"] = format_period(period);
    manifest["strict"] = config.strict;
    manifest["distribution_lists"] = "single_actor";
    manifest["sources"] = sources;
    manifest["skipped_records"] = skipped_total;
    manifest["issues"] = issues;
    manifest["teams"] = teams;
    write_file(config.out / kManifest, manifest.dump(2) + "\n");
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitIngest;
  }
  log << fmt::format("ingested {} events for {} teams ({} records parsed, {} skipped)\n", kept,
                     team_ids.size(), events.size(), skipped_total);
  return kExitOk;
}

int cmd_analyze(const fs::path& archive, const RunConfig& run, std::ostream& log) {
  try {
    const RunConfig config = with_lexicon(run);
    const ojson manifest = ojson::parse(read_file(archive / kManifest));
    const Interval period =
        config.period ? *config.period : parse_period(manifest.at("period").get<std::string>());

    std::vector<TeamCorpus> corpora;
    for (const auto& t : manifest.at("teams")) {
      const std::string team = t.at("team_id").get<std::string>();
      std::ifstream in(archive / t.at("file").get<std::string>(), std::ios::binary);
      if (!in) throw Error(fmt::format("cannot open corpus of team '{}'", team));
      ParseOptions options{true, team, (archive / t.at("file").get<std::string>()).string()};
      const auto parsed = parse_events(in, MailFormat::jsonl, options);
      auto built = build_corpus(parsed.events, team, period);
      if (built.empty_corpus) {
        log << "warning: team '" << team << "' has no events; not analyzable\n";
        continue;
      }
      corpora.push_back(std::move(built.corpus));
    }
    if (corpora.empty()) {
      log << "error: no analyzable teams in '" << archive.string() << "'\n";
      return kExitAnalysis;
    }

    const auto rows = compute_cohort_metrics(corpora, config.metrics);
    std::ostringstream csv;
    write_metrics_csv(csv, rows);
    write_file(config.out / "metrics.csv", csv.str());
    write_file(config.out / kMetricsSidecar, analysis_config_json(config, period).dump(2) + "\n");
    log << fmt::format("analyzed {} teams\n", rows.size());
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitAnalysis;
  }
}

int cmd_correlate(const fs::path& metrics_csv, const fs::path& survey_csv, const RunConfig& config,
                  std::ostream& console) {
  try {
    std::ifstream min(metrics_csv, std::ios::binary);
    if (!min) throw Error(fmt::format("cannot open '{}'", metrics_csv.string()));
    const auto metrics = read_metrics_csv(min, metrics_csv.string());
    std::ifstream sin(survey_csv, std::ios::binary);
    if (!sin) throw Error(fmt::format("cannot open '{}'", survey_csv.string()));
    const auto survey = read_survey_csv(sin, survey_csv.string());
    const auto sats = satisfaction_by_team(survey, config.eligibility_min);

    const auto join = join_survey(metrics, sats, config.eligibility_min);
    const auto eligible = std::count_if(join.records.begin(), join.records.end(),
                                        [](const TeamRecord& r) { return r.satisfaction.eligible; });
    if (eligible < 3) {
      console << fmt::format("error: {} eligible teams; correlation needs at least 3\n", eligible);
      return kExitCorrelation;
    }

    const auto table = correlate_all(join.records);
    std::ostringstream wide, longform;
    write_correlation_table_csv(wide, table);
    write_correlation_long_csv(longform, table);
    write_file(config.out / "correlations.csv", wide.str());
    write_file(config.out / "correlations_long.csv", longform.str());

    const ojson sidecar = load_sidecar(metrics_csv);
    const ReportHeader header{generated_at(config, sidecar), fingerprinted(sidecar, config)};
    const auto cards = cards_with_caveats(metrics, join, config.alert_sigma);
    write_file(config.out / "scorecard.json", render(cards, ReportFormat::json, header));
    write_file(config.out / "scorecard.html", render(cards, ReportFormat::html, header));

    console << fmt::format("correlated {} eligible teams of {}\n", eligible, metrics.size());
    for (const auto& c : table.cells()) {
      if (!c.significant) continue;
      console << fmt::format("significant: {} x {}  r={:.3f} p={:.3f} n={}\n", metric_label(c.metric),
                             target_label(c.target), *c.r, *c.p, c.n);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    console << "error: " << e.what() << '\n';
    return kExitCorrelation;
  }
}

int cmd_scorecard(const fs::path& metrics_csv, const std::optional<fs::path>& survey_csv,
                  const RunConfig& config, std::ostream& console) {
  try {
    std::ifstream min(metrics_csv, std::ios::binary);
    if (!min) throw Error(fmt::format("cannot open '{}'", metrics_csv.string()));
    const auto metrics = read_metrics_csv(min, metrics_csv.string());
    SurveyJoin join;
    if (survey_csv) {
      std::ifstream sin(*survey_csv, std::ios::binary);
      if (!sin) throw Error(fmt::format("cannot open '{}'", survey_csv->string()));
      const auto survey = read_survey_csv(sin, survey_csv->string());
      join = join_survey(metrics, satisfaction_by_team(survey, config.eligibility_min),
                         config.eligibility_min);
    }
    const ojson sidecar = load_sidecar(metrics_csv);
    const ReportHeader header{generated_at(config, sidecar), fingerprinted(sidecar, config)};
    const auto cards = cards_with_caveats(metrics, join, config.alert_sigma);
    const fs::path out = config.out / fmt::format("scorecard.{}", extension(config.report_format));
    write_file(out, render(cards, config.report_format, header));
    std::size_t alerts = 0;
    for (const auto& card : cards) {
      for (const auto& s : card.metrics) alerts += s.alert.value_or(false) ? 1 : 0;
    }
    console << fmt::format("wrote {} score cards with {} alerts to {}\n", cards.size(), alerts,
                           out.string());
    return kExitOk;
  } catch (const std::exception& e) {
    console << "error: " << e.what() << '\n';
    return kExitCorrelation;
  }
}

int cmd_synth(const SynthSpec& spec, const fs::path& out, std::ostream& log) {
  SynthData data;
  try {
    data = synthesize(spec);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ostringstream mail, survey;
  mail << "timestamp,from,to,cc,subject,team_id\n";
  for (const auto& e : data.mail) {
    auto join_list = [](const std::vector<ActorId>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i].str();
      return s;
    };
    mail << csv_join({format_iso8601(e.timestamp), e.sender.str(), join_list(e.to), join_list(e.cc),
                      e.subject, e.team_id})
         << '\n';
  }
  write_survey_csv(survey, data.survey);

  ojson truth;
  truth["seed"] = spec.seed;
  truth["period"] = format_period(data.period);
  truth["target_coupling"] = spec.target_coupling;
  ojson effects = ojson::object();
  for (const auto id : kMetricIds) {
    effects[std::string(metric_key(id))] = {{"nps", spec.effects[metric_index(id)].nps},
                                            {"kpd", spec.effects[metric_index(id)].kpd}};
  }
  truth["effects"] = effects;
  truth["teams"] = ojson::array();
  for (const auto& t : data.teams) {
    ojson drivers = ojson::object();
    for (const auto id : kMetricIds) drivers[std::string(metric_key(id))] = t.drivers[metric_index(id)];
    truth["teams"].push_back({{"team_id", t.team_id},
                              {"nps_latent", t.nps_latent},
                              {"kpd_latent", t.kpd_latent},
                              {"drivers", drivers}});
  }

  try {
    write_file(out / "mail.csv", mail.str());
    write_file(out / "survey.csv", survey.str());
    write_file(out / "truth.json", truth.dump(2) + "\n");
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  log << fmt::format("synthesized {} teams, {} messages, {} survey responses\n", data.teams.size(),
                     data.mail.size(), data.survey.size());
  return kExitOk;
}

}  // namespace commscore
