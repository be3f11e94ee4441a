#include <doctest.h>

#include <sstream>

#include "commscore/error.hpp"
#include "commscore/satisfaction.hpp"

using namespace commscore;

namespace {

SurveyResponse response(int answer, std::array<double, 8> kpd = {}, const std::string& team = "t") {
  static int counter = 0;
  return {team, "r" + std::to_string(counter++), answer, kpd};
}

std::vector<SurveyResponse> answers(std::initializer_list<int> values) {
  std::vector<SurveyResponse> out;
  for (const int v : values) out.push_back(response(v));
  return out;
}

}  // namespace

TEST_CASE("respondent classes") {
  CHECK(classify_respondent(9) == NpsClass::promoter);
  CHECK(classify_respondent(10) == NpsClass::promoter);
  CHECK(classify_respondent(7) == NpsClass::passive);
  CHECK(classify_respondent(8) == NpsClass::passive);
  CHECK(classify_respondent(6) == NpsClass::detractor);
  CHECK(classify_respondent(0) == NpsClass::detractor);
  CHECK_THROWS_AS(classify_respondent(11), OutOfRange);
  CHECK_THROWS_AS(classify_respondent(-1), OutOfRange);
}

TEST_CASE("net promoter score") {
  CHECK(nps(answers({9, 10, 10, 9})) == 100.0);
  CHECK(nps(answers({0, 6, 3})) == -100.0);
  CHECK(nps(answers({9, 10, 7, 3})) == 25.0);
  CHECK(nps(answers({7, 8})) == 0.0);
  CHECK_THROWS_AS(nps({}), NoResponses);
}

TEST_CASE("key performance drivers") {
  const std::vector<SurveyResponse> fives{response(9, {5, 5, 5, 5, 5, 5, 5, 5})};
  CHECK(kpd(fives) == 5.0);
  const std::vector<SurveyResponse> ramp{response(9, {1, 2, 3, 4, 5, 6, 7, 8})};
  CHECK(kpd(ramp) == 4.5);
  const std::vector<SurveyResponse> two{response(9, {4, 4, 4, 4, 4, 4, 4, 4}), response(3, {2, 6, 2, 6, 2, 6, 8, 12})};
  CHECK(kpd(two) == 4.75);
  CHECK_THROWS_AS(kpd({}), NoResponses);
}

TEST_CASE("eligibility requires more than twenty respondents") {
  std::vector<SurveyResponse> rs;
  for (int i = 0; i < 21; ++i) rs.push_back(response(9));
  CHECK(team_satisfaction(rs, "t").eligible);
  rs.pop_back();
  const auto twenty = team_satisfaction(rs, "t");
  CHECK_FALSE(twenty.eligible);
  CHECK(twenty.n_respondents == 20);
  CHECK_FALSE(team_satisfaction(answers({10}), "t").eligible);
  CHECK(team_satisfaction(answers({10, 10}), "t", 1).eligible);
  CHECK_THROWS_AS(team_satisfaction({}, "t"), NoResponses);
  CHECK_THROWS_AS(team_satisfaction(answers({10}), "other"), Error);
}

TEST_CASE("satisfaction by team sorts and splits") {
  std::vector<SurveyResponse> rs{response(10, {}, "b"), response(0, {}, "a"), response(9, {}, "b")};
  const auto sats = satisfaction_by_team(rs);
  REQUIRE(sats.size() == 2);
  CHECK(sats[0].team_id == "a");
  CHECK(sats[0].nps == -100.0);
  CHECK(sats[1].team_id == "b");
  CHECK(sats[1].n_respondents == 2);
}

TEST_CASE("survey csv") {
  const std::string text =
      "team_id,respondent_id,nps,kpd_1,kpd_2,kpd_3,kpd_4,kpd_5,kpd_6,kpd_7,kpd_8\n"
      "alpha,r1,9,1,2,3,4,5,6,7,8\n"
      "alpha,r2,6,4.5,4.5,4.5,4.5,4.5,4.5,4.5,4.5\n";
  std::istringstream in(text);
  const auto rs = read_survey_csv(in);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].nps_answer == 9);
  CHECK(rs[0].kpd[7] == 8.0);
  CHECK(rs[1].kpd[0] == 4.5);
  std::ostringstream out;
  write_survey_csv(out, rs);
  std::istringstream again(out.str());
  CHECK(read_survey_csv(again) == rs);

  const std::string header = "team_id,respondent_id,nps,kpd_1,kpd_2,kpd_3,kpd_4,kpd_5,kpd_6,kpd_7,kpd_8\n";
  for (const char* bad : {"alpha,r1,11,1,2,3,4,5,6,7,8\n", "alpha,r1,9,1,2,3,4,5,6,7,\n", "alpha,r1,nine,1,2,3,4,5,6,7,8\n",
                          "alpha,r1,9,1,2,3,4,5,6,7\n", "alpha,r1,9.5,1,2,3,4,5,6,7,8\n", "alpha,r1,9,1,2,3,4,5,6,7,nan\n"}) {
    std::istringstream b(header + bad);
    CHECK_THROWS_AS(read_survey_csv(b), MalformedRecord);
  }
  std::istringstream no_header("alpha,r1,9\n");
  CHECK_THROWS_AS(read_survey_csv(no_header), Error);
}
