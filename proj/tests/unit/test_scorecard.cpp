#include <doctest.h>

#include <nlohmann/json.hpp>

#include "commscore/error.hpp"
#include "commscore/scorecard.hpp"

using namespace commscore;

namespace {

std::vector<MetricVector> cohort_with(MetricId id, std::initializer_list<double> values) {
  std::vector<MetricVector> cohort;
  for (const double v : values) {
    MetricVector m;
    m[id] = v;
    cohort.push_back(m);
  }
  return cohort;
}

}  // namespace

TEST_CASE("direction table") {
  const char* labels[] = {"Group Betweenness Centrality", "Group Degree Centrality", "Group Density",
                          "Average new team members", "Leadership Oscillation", "ART (Median)",
                          "AWVCI (weighted by #actors)", "Emotionality"};
  const char signs[] = {'+', '+', '+', '-', '-', '-', '+', '-'};
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(kScoreCardDirections[i].label == labels[i]);
    CHECK(sign_char(kScoreCardDirections[i].sign) == signs[i]);
    CHECK(kScoreCardDirections[i].metric == kMetricIds[i]);
    CHECK(sign_char(expected_direction(kMetricIds[i])) == signs[i]);
  }
}

TEST_CASE("a team at the cohort mean is favorable without alert") {
  const auto cohort = cohort_with(MetricId::oscillation_sum, {1.0, 2.0, 3.0});
  const auto card = build_scorecard("b", cohort[1], cohort);
  const auto& s = card[MetricId::oscillation_sum];
  CHECK(*s.z == 0.0);
  CHECK(*s.favorable);
  CHECK_FALSE(*s.alert);
}

TEST_CASE("oscillation two sigma above the mean raises an alert") {
  const auto cohort = cohort_with(MetricId::oscillation_sum, {0, 0, 0, 0, 5});
  const auto s = build_scorecard("e", cohort[4], cohort)[MetricId::oscillation_sum];
  CHECK(*s.z == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(*s.favorable);
  CHECK(*s.alert);
  const auto low = build_scorecard("a", cohort[0], cohort)[MetricId::oscillation_sum];
  CHECK(*low.z == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(*low.favorable);
}

TEST_CASE("betweenness one sigma above the mean is favorable; one below is not yet an alert") {
  const auto cohort = cohort_with(MetricId::avg_gbc, {0, 0, 2, 2});
  const auto high = build_scorecard("c", cohort[2], cohort)[MetricId::avg_gbc];
  CHECK(*high.z == 1.0);
  CHECK(*high.favorable);
  CHECK_FALSE(*high.alert);
  const auto lowcard = build_scorecard("a", cohort[0], cohort)[MetricId::avg_gbc];
  CHECK(*lowcard.z == -1.0);
  CHECK_FALSE(*lowcard.favorable);
  CHECK_FALSE(*lowcard.alert);
  CHECK(*build_scorecard("a", cohort[0], cohort, 0.5)[MetricId::avg_gbc].alert);
}

TEST_CASE("undefined values and thin cohorts stay unscored") {
  auto cohort = cohort_with(MetricId::art_median, {100.0, 200.0, 300.0});
  cohort[1][MetricId::art_median].reset();
  const auto card = build_scorecard("b", cohort[1], cohort);
  CHECK_FALSE(card[MetricId::art_median].scored());
  CHECK_FALSE(card[MetricId::art_median].value);
  CHECK_FALSE(card[MetricId::avg_gbc].scored());
  const auto scored = build_scorecard("a", cohort[0], cohort)[MetricId::art_median];
  CHECK(*scored.z == -1.0);
  CHECK(*scored.favorable);
  CHECK_THROWS_AS(build_scorecard("x", cohort[0], std::span<const MetricVector>(cohort.data(), 1)), CohortTooSmall);
}

TEST_CASE("a constant metric gives z zero") {
  const auto cohort = cohort_with(MetricId::emotionality, {4, 4, 4});
  const auto s = build_scorecard("a", cohort[0], cohort)[MetricId::emotionality];
  CHECK(*s.z == 0.0);
  CHECK(*s.favorable);
  CHECK_FALSE(*s.alert);
}

TEST_CASE("cohort statistics use the population sigma") {
  const auto cohort = cohort_with(MetricId::avg_density, {2, 4, 4, 4, 5, 5, 7, 9});
  const auto stats = CohortStats::of(cohort);
  const auto& e = stats.metrics[metric_index(MetricId::avg_density)];
  CHECK(e.n == 8);
  CHECK(e.mean == 5.0);
  CHECK(e.sigma == 2.0);
  CHECK(stats.metrics[metric_index(MetricId::avg_gbc)].n == 0);
}

namespace {

std::vector<ScoreCard> sample_cards() {
  std::vector<TeamMetrics> teams(3);
  const double base[] = {0.2, 0.5, 0.8};
  for (std::size_t t = 0; t < 3; ++t) {
    teams[t].team_id = std::string("team-") + static_cast<char>('a' + t);
    for (std::size_t i = 0; i < 8; ++i) teams[t].metrics.values[i] = base[t] * static_cast<double>(i + 1);
  }
  teams[1].metrics[MetricId::art_median].reset();
  auto cards = build_scorecards(teams);
  cards[2].caveats.push_back("20 survey respondents (eligibility requires more than 20); excluded from correlation");
  return cards;
}

const ReportHeader kHeader{"2013-01-01T00:00:00Z", nlohmann::ordered_json{{"alert_sigma", 1.0}, {"fingerprint", "00"}}};

}  // namespace

TEST_CASE("json rendering follows the report schema") {
  const auto cards = sample_cards();
  const auto text = render(cards, ReportFormat::json, kHeader);
  CHECK(text == render(cards, ReportFormat::json, kHeader));
  const auto doc = nlohmann::ordered_json::parse(text);
  std::vector<std::string> top;
  for (const auto& [k, v] : doc.items()) top.push_back(k);
  CHECK(top == std::vector<std::string>{"generated_at", "config", "teams"});
  REQUIRE(doc["teams"].size() == 3);
  const auto& team = doc["teams"][0];
  CHECK(team["team_id"] == "team-a");
  std::vector<std::string> keys;
  for (const auto& [k, v] : team["metrics"].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"avg_gbc", "avg_gdc", "avg_density", "avg_new_actors", "oscillation_sum",
                                         "art_median", "awvci", "emotionality"});
  const auto& m = team["metrics"]["avg_gbc"];
  CHECK(m["value"] == 0.2);
  CHECK(m["z"] == -1.225);
  CHECK(m["favorable"] == false);
  CHECK(m["alert"] == true);
  CHECK(doc["teams"][1]["metrics"]["art_median"]["value"].is_null());
  CHECK(doc["teams"][1]["metrics"]["art_median"]["z"].is_null());
  CHECK(doc["teams"][2]["caveats"].size() == 1);

  const auto parsed = parse_scorecard_json(text);
  CHECK(parsed.header == kHeader);
  CHECK(parsed.cards.size() == 3);
  CHECK_THROWS_AS(parse_scorecard_json("{\"teams\": 3}"), Error);
}

TEST_CASE("html lists the eight rows in score-card order with the legend") {
  const auto html = render(sample_cards(), ReportFormat::html, kHeader);
  CHECK(html.rfind("<!DOCTYPE html>", 0) == 0);
  CHECK(html.find("<script") == std::string::npos);
  CHECK(html.find("<link") == std::string::npos);
  std::size_t last = 0;
  for (const auto& row : kScoreCardDirections) {
    const auto at = html.find(std::string(row.label), last);
    REQUIRE(at != std::string::npos);
    last = at;
  }
  CHECK(html.find("team-c") != std::string::npos);
  CHECK(html.find("excluded from correlation") != std::string::npos);
  CHECK(html.find("Direction of Correlation") != std::string::npos);
}

TEST_CASE("csv rendering and formats") {
  const auto csv = render(sample_cards(), ReportFormat::csv, kHeader);
  CHECK(csv.rfind("team_id,metric,label,direction,value,z,favorable,alert\n", 0) == 0);
  CHECK(csv.find("team-a,avg_gbc,Group Betweenness Centrality,+,0.200,-1.225,false,true\n") != std::string::npos);
  CHECK(csv.find("team-b,art_median,ART (Median),-,NA,NA,NA,NA\n") != std::string::npos);
  CHECK(parse_report_format("html") == ReportFormat::html);
  CHECK(extension(ReportFormat::csv) == "csv");
  CHECK_THROWS_AS(parse_report_format("pdf"), UnsupportedFormat);
}

TEST_CASE("three-decimal quantization") {
  CHECK(quantize3(0.12345) == 0.123);
  CHECK(quantize3(-0.0004) == 0.0);
  CHECK_FALSE(std::signbit(quantize3(-0.0004)));
  CHECK(quantize3(2.0) == 2.0);
}
