#include "commscore/scorecard.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <fmt/format.h>

#include "commscore/csv.hpp"
#include "commscore/error.hpp"

namespace commscore {

namespace {

using ojson = nlohmann::ordered_json;

std::string fixed3(double v) {
  const double q = quantize3(v);
  return fmt::format("{:.3f}", q == 0.0 ? 0.0 : q);
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

ojson optional_number(const std::optional<double>& v) {
  return v ? ojson(quantize3(*v)) : ojson(nullptr);
}

ojson optional_bool(const std::optional<bool>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::string render_json(std::span<const ScoreCard> cards, const ReportHeader& header) {
  ojson doc;
  doc["generated_at"] = header.generated_at;
  doc["config"] = header.config.is_null() ? ojson::object() : header.config;
  doc["teams"] = ojson::array();
  for (const auto& card : cards) {
    ojson team;
    team["team_id"] = card.team_id;
    ojson metrics = ojson::object();
    for (const auto& row : kScoreCardDirections) {
      const auto& s = card[row.metric];
      ojson m;
      m["value"] = optional_number(s.value);
      m["z"] = optional_number(s.z);
      m["favorable"] = optional_bool(s.favorable);
      m["alert"] = optional_bool(s.alert);
      metrics[std::string(metric_key(row.metric))] = std::move(m);
    }
    team["metrics"] = std::move(metrics);
    team["caveats"] = card.caveats;
    doc["teams"].push_back(std::move(team));
  }
  return doc.dump(2) + "\n";
}

std::string render_csv(std::span<const ScoreCard> cards) {
  std::ostringstream out;
  out << "team_id,metric,label,direction,value,z,favorable,alert\n";
  auto flag = [](const std::optional<bool>& b) -> std::string {
    return b ? (*b ? "true" : "false") : "NA";
  };
  for (const auto& card : cards) {
    for (const auto& row : kScoreCardDirections) {
      const auto& s = card[row.metric];
      out << csv_join({card.team_id, std::string(metric_key(row.metric)), std::string(row.label),
                       std::string(1, sign_char(row.sign)), s.value ? fixed3(*s.value) : "NA",
                       s.z ? fixed3(*s.z) : "NA", flag(s.favorable), flag(s.alert)})
          << '\n';
    }
  }
  return out.str();
}

std::string render_html(std::span<const ScoreCard> cards, const ReportHeader& header) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>Network Communication Score Card</title>\n"
      << "<style>\n"
      << "body{font-family:sans-serif;margin:2em;color:#222}\n"
      << "table{border-collapse:collapse;margin-bottom:1.5em}\n"
      << "th,td{border:1px solid #bbb;padding:4px 10px;text-align:left}\n"
      << "td.num{text-align:right;font-variant-numeric:tabular-nums}\n"
      << "tr.alert td{background:#f8d7da}\n"
      << "tr.unfavorable td{background:#fff3cd}\n"
      << "</style>\n</head>\n<body>\n"
      << "<h1>Network Communication Score Card</h1>\n"
      << "<p>Generated at " << html_escape(header.generated_at);
  if (header.config.contains("fingerprint"))
    out << " &middot; config " << html_escape(header.config["fingerprint"].get<std::string>());
  out << "</p>\n";

  out << "<h2>Direction of correlation</h2>\n<table class=\"legend\">\n"
      << "<tr><th>Social Network Metric</th><th>Direction of Correlation</th></tr>\n";
  for (const auto& row : kScoreCardDirections) {
    out << "<tr><td>" << html_escape(row.label) << "</td><td>" << sign_char(row.sign)
        << "</td></tr>\n";
  }
  out << "</table>\n";

  for (const auto& card : cards) {
    out << "<h2>Team " << html_escape(card.team_id) << "</h2>\n";
    for (const auto& c : card.caveats) out << "<p class=\"caveat\">" << html_escape(c) << "</p>\n";
    out << "<table class=\"team\">\n"
        << "<tr><th>Metric</th><th>Direction</th><th>Value</th><th>z</th><th>Status</th></tr>\n";
    for (const auto& row : kScoreCardDirections) {
      const auto& s = card[row.metric];
      std::string status = "unscored";
      std::string cls;
      if (s.scored()) {
        if (*s.alert) {
          status = "alert";
          cls = " class=\"alert\"";
        } else if (!*s.favorable) {
          status = "unfavorable";
          cls = " class=\"unfavorable\"";
        } else {
          status = "favorable";
        }
      }
      out << "<tr" << cls << "><td>" << html_escape(row.label) << "</td><td>"
          << sign_char(row.sign) << "</td><td class=\"num\">"
          << (s.value ? fixed3(*s.value) : "NA") << "</td><td class=\"num\">"
          << (s.z ? fixed3(*s.z) : "NA") << "</td><td>" << status << "</td></tr>\n";
    }
    out << "</table>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

std::optional<double> read_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(fmt::format("score card metric lacks '{}'", key));
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) throw Error(fmt::format("'{}' must be a number or null", key));
  return v.get<double>();
}

std::optional<bool> read_bool(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(fmt::format("score card metric lacks '{}'", key));
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_boolean()) throw Error(fmt::format("'{}' must be a boolean or null", key));
  return v.get<bool>();
}

}  // namespace

double quantize3(double v) {
  const std::string text = fmt::format("{:.3f}", v);
  const double q = std::strtod(text.c_str(), nullptr);
  return q == 0.0 ? 0.0 : q;
}

Direction expected_direction(MetricId id) {
  for (const auto& row : kScoreCardDirections) {
    if (row.metric == id) return row.sign;
  }
  return Direction::positive;
}

CohortStats CohortStats::of(std::span<const MetricVector> cohort) {
  CohortStats stats;
  for (const auto id : kMetricIds) {
    std::vector<double> values;
    for (const auto& mv : cohort) {
      if (mv[id] && std::isfinite(*mv[id])) values.push_back(*mv[id]);
    }
    auto& e = stats.metrics[metric_index(id)];
    e.n = values.size();
    if (values.empty()) continue;
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    e.mean = mean;
    e.sigma = std::sqrt(var / static_cast<double>(values.size()));
  }
  return stats;
}

ScoreCard build_scorecard(std::string team_id, const MetricVector& team, const CohortStats& stats,
                          double alert_sigma) {
  if (!(alert_sigma > 0.0)) throw Error("alert threshold must be positive");
  ScoreCard card{std::move(team_id), {}, {}};
  for (const auto& row : kScoreCardDirections) {
    auto& s = card.metrics[metric_index(row.metric)];
    s.value = team[row.metric];
    const auto& e = stats.metrics[metric_index(row.metric)];
    if (!s.value || e.n < 2) continue;
    const double z = e.sigma > 0.0 ? (*s.value - e.mean) / e.sigma : 0.0;
    s.z = z;
    if (row.sign == Direction::positive) {
      s.favorable = z >= 0.0;
      s.alert = z < -alert_sigma;
    } else {
      s.favorable = z <= 0.0;
      s.alert = z > alert_sigma;
    }
  }
  return card;
}

ScoreCard build_scorecard(std::string team_id, const MetricVector& team,
                          std::span<const MetricVector> cohort, double alert_sigma) {
  if (cohort.size() < 2)
    throw CohortTooSmall(fmt::format("score cards need a cohort of at least 2, got {}", cohort.size()));
  return build_scorecard(std::move(team_id), team, CohortStats::of(cohort), alert_sigma);
}

std::vector<ScoreCard> build_scorecards(std::span<const TeamMetrics> teams, double alert_sigma) {
  if (teams.size() < 2)
    throw CohortTooSmall(fmt::format("score cards need a cohort of at least 2, got {}", teams.size()));
  std::vector<MetricVector> cohort;
  for (const auto& t : teams) cohort.push_back(t.metrics);
  const auto stats = CohortStats::of(cohort);
  std::vector<ScoreCard> cards;
  for (const auto& t : teams) cards.push_back(build_scorecard(t.team_id, t.metrics, stats, alert_sigma));
  return cards;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "html") return ReportFormat::html;
  throw UnsupportedFormat(fmt::format("unsupported report format '{}'", name));
}

std::string_view extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::json: return "json";
    case ReportFormat::csv: return "csv";
    case ReportFormat::html: return "html";
  }
  return "txt";
}

std::string render(std::span<const ScoreCard> cards, ReportFormat format, const ReportHeader& header) {
  if (cards.empty()) throw Error("nothing to render: no score cards");
  switch (format) {
    case ReportFormat::json: return render_json(cards, header);
    case ReportFormat::csv: return render_csv(cards);
    case ReportFormat::html: return render_html(cards, header);
  }
  throw UnsupportedFormat("unknown report format");
}

ParsedReport parse_scorecard_json(std::string_view text) {
  ParsedReport report;
  const ojson doc = ojson::parse(text);
  if (!doc.is_object()) throw Error("score card document must be an object");
  for (const char* key : {"generated_at", "config", "teams"}) {
    if (!doc.contains(key)) throw Error(fmt::format("score card document lacks '{}'", key));
  }
  report.header.generated_at = doc.at("generated_at").get<std::string>();
  report.header.config = doc.at("config");
  for (const auto& t : doc.at("teams")) {
    ScoreCard card;
    card.team_id = t.at("team_id").get<std::string>();
    const auto& metrics = t.at("metrics");
    for (const auto& row : kScoreCardDirections) {
      const auto key = std::string(metric_key(row.metric));
      if (!metrics.contains(key)) throw Error(fmt::format("team '{}' lacks metric '{}'", card.team_id, key));
      const nlohmann::json m = metrics.at(key);
      auto& s = card.metrics[metric_index(row.metric)];
      s.value = read_number(m, "value");
      s.z = read_number(m, "z");
      s.favorable = read_bool(m, "favorable");
      s.alert = read_bool(m, "alert");
    }
    if (t.contains("caveats")) card.caveats = t.at("caveats").get<std::vector<std::string>>();
    report.cards.push_back(std::move(card));
  }
  return report;
}

}  // namespace commscore
