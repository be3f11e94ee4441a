#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace commscore {

struct SurveyResponse {
  std::string team_id;
  std::string respondent_id;
  int nps_answer = 0;             // 0..10
  std::array<double, 8> kpd{};    // any numeric scale, carried unchanged

  friend bool operator==(const SurveyResponse&, const SurveyResponse&) = default;
};

enum class NpsClass { promoter, passive, detractor };

std::string_view to_string(NpsClass c);

/// 9-10 promoter, 7-8 passive, 0-6 detractor. Throws OutOfRange otherwise.
NpsClass classify_respondent(int nps_answer);

/// 100 * (promoters - detractors) / responses. Throws NoResponses when empty.
double nps(std::span<const SurveyResponse> responses);

/// Mean over respondents of each respondent's mean KPD answer.
double kpd(std::span<const SurveyResponse> responses);

inline constexpr std::size_t kDefaultEligibilityMin = 20;

struct TeamSatisfaction {
  std::string team_id;
  double nps = 0.0;
  double kpd = 0.0;
  std::size_t n_respondents = 0;
  bool eligible = false;  // n_respondents > eligibility minimum

  friend bool operator==(const TeamSatisfaction&, const TeamSatisfaction&) = default;
};

/// Throws NoResponses when empty and Error when a response belongs to another team.
TeamSatisfaction team_satisfaction(std::span<const SurveyResponse> responses,
                                   std::string_view team_id,
                                   std::size_t eligibility_min = kDefaultEligibilityMin);

/// One TeamSatisfaction per team present in `responses`, sorted by team_id.
std::vector<TeamSatisfaction> satisfaction_by_team(std::span<const SurveyResponse> responses,
                                                   std::size_t eligibility_min = kDefaultEligibilityMin);

/// `team_id,respondent_id,nps,kpd_1,...,kpd_8`. Rows with missing or
/// out-of-range answers throw MalformedRecord.
std::vector<SurveyResponse> read_survey_csv(std::istream& in, const std::string& source = "<survey>");
void write_survey_csv(std::ostream& out, std::span<const SurveyResponse> responses);

}  // namespace commscore
