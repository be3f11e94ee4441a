#include "commscore/satisfaction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "commscore/csv.hpp"
#include "commscore/error.hpp"

namespace commscore {

std::string_view to_string(NpsClass c) {
  switch (c) {
    case NpsClass::promoter: return "promoter";
    case NpsClass::passive: return "passive";
    case NpsClass::detractor: return "detractor";
  }
  return "?";
}

NpsClass classify_respondent(int nps_answer) {
  if (nps_answer < 0 || nps_answer > 10)
    throw OutOfRange(fmt::format("NPS answer {} outside 0..10", nps_answer));
  if (nps_answer >= 9) return NpsClass::promoter;
  if (nps_answer >= 7) return NpsClass::passive;
  return NpsClass::detractor;
}

double nps(std::span<const SurveyResponse> responses) {
  if (responses.empty()) throw NoResponses("NPS of an empty response set");
  long promoters = 0, detractors = 0;
  for (const auto& r : responses) {
    switch (classify_respondent(r.nps_answer)) {
      case NpsClass::promoter: ++promoters; break;
      case NpsClass::detractor: ++detractors; break;
      case NpsClass::passive: break;
    }
  }
  return 100.0 * static_cast<double>(promoters - detractors) /
         static_cast<double>(responses.size());
}

double kpd(std::span<const SurveyResponse> responses) {
  if (responses.empty()) throw NoResponses("KPD of an empty response set");
  double total = 0.0;
  for (const auto& r : responses) {
    double s = 0.0;
    for (const double a : r.kpd) s += a;
    total += s / static_cast<double>(r.kpd.size());
  }
  return total / static_cast<double>(responses.size());
}

TeamSatisfaction team_satisfaction(std::span<const SurveyResponse> responses,
                                   std::string_view team_id, std::size_t eligibility_min) {
  for (const auto& r : responses) {
    if (r.team_id != team_id)
      throw Error(fmt::format("response for team '{}' passed as team '{}'", r.team_id, team_id));
  }
  return {std::string(team_id), nps(responses), kpd(responses), responses.size(),
          responses.size() > eligibility_min};
}

std::vector<TeamSatisfaction> satisfaction_by_team(std::span<const SurveyResponse> responses,
                                                   std::size_t eligibility_min) {
  std::map<std::string, std::vector<SurveyResponse>> teams;
  for (const auto& r : responses) teams[r.team_id].push_back(r);
  std::vector<TeamSatisfaction> out;
  for (const auto& [team, list] : teams) out.push_back(team_satisfaction(list, team, eligibility_min));
  return out;
}

std::vector<SurveyResponse> read_survey_csv(std::istream& in, const std::string& source) {
  CsvReader reader{in, source};
  const auto header = reader.next();
  if (!header) throw FormatError(fmt::format("{}: missing survey header", source));
  const std::vector<std::string> expected{"team_id", "respondent_id", "nps",   "kpd_1",
                                          "kpd_2",   "kpd_3",         "kpd_4", "kpd_5",
                                          "kpd_6",   "kpd_7",         "kpd_8"};
  if (header->fields != expected)
    throw FormatError(fmt::format("{}: survey header must be '{}'", source, csv_join(expected)));

  std::vector<SurveyResponse> out;
  while (auto rec = reader.next()) {
    const auto& f = rec->fields;
    if (f.size() != expected.size())
      throw MalformedRecord(source, rec->line,
                            fmt::format("expected {} fields, found {}", expected.size(), f.size()));
    SurveyResponse r{f[0], f[1], 0, {}};
    if (r.team_id.empty()) throw MalformedRecord(source, rec->line, "empty team_id");

    const auto [p, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.nps_answer);
    if (ec != std::errc{} || p != f[2].data() + f[2].size() || r.nps_answer < 0 || r.nps_answer > 10)
      throw MalformedRecord(source, rec->line, fmt::format("NPS answer '{}' not an integer 0..10", f[2]));
    for (std::size_t k = 0; k < 8; ++k) {
      const std::string& t = f[3 + k];
      double v = 0.0;
      const auto [q, ec2] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (t.empty() || ec2 != std::errc{} || q != t.data() + t.size() || !std::isfinite(v))
        throw MalformedRecord(source, rec->line, fmt::format("kpd_{} '{}' is not a number", k + 1, t));
      r.kpd[k] = v;
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_survey_csv(std::ostream& out, std::span<const SurveyResponse> responses) {
  out << "team_id,respondent_id,nps,kpd_1,kpd_2,kpd_3,kpd_4,kpd_5,kpd_6,kpd_7,kpd_8\n";
  for (const auto& r : responses) {
    std::vector<std::string> fields{r.team_id, r.respondent_id, std::to_string(r.nps_answer)};
    for (const double a : r.kpd) fields.push_back(fmt::format("{}", a));
    out << csv_join(fields) << '\n';
  }
}

}  // namespace commscore
