#include <doctest.h>

#include <cmath>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "commscore/error.hpp"
#include "commscore/stats.hpp"
#include "reference_table.hpp"

using namespace commscore;

namespace {

double boost_p(double r, std::size_t n) {
  const double dof = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(dof / (1.0 - r * r));
  const boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

TeamRecord team(const std::string& id, std::array<std::optional<double>, 8> metrics, double nps, double kpd,
                bool eligible = true) {
  TeamRecord t;
  t.team_id = id;
  t.metrics.values = metrics;
  t.satisfaction = {id, nps, kpd, eligible ? 30u : 5u, eligible};
  return t;
}

}  // namespace

TEST_CASE("pearson") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(pearson(x, x) == 1.0);
  const std::vector<double> neg{5, 3, 1, -1};
  CHECK(pearson(x, neg) == -1.0);
  const std::vector<double> y{1, 3, 2, 4};
  CHECK(pearson(x, y) == doctest::Approx(0.8).epsilon(1e-14));
  const std::vector<double> constant{2, 2, 2, 2};
  CHECK_THROWS_AS(pearson(x, constant), DegenerateSeries);
  const std::vector<double> shorter{1, 2, 3};
  CHECK_THROWS_AS(pearson(x, shorter), LengthMismatch);
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(pearson(two, two), InsufficientSamples);
}

TEST_CASE("p-values of a 13-team reference correlation table") {
  for (const auto& cell : testing::kReferenceTable) {
    CAPTURE(cell.r);
    CHECK(std::abs(p_value_two_tailed(cell.r, cell.n).p - cell.sig) <= 0.002);
  }
  CHECK(p_value_two_tailed(-0.604, 13).p == doctest::Approx(0.029).epsilon(0.002 / 0.029));
  CHECK(p_value_two_tailed(0.645, 13).p == doctest::Approx(0.017).epsilon(0.002 / 0.017));
  CHECK(p_value_two_tailed(0.0, 13).p == 1.0);
}

TEST_CASE("p-values agree with an independent t distribution") {
  for (const std::size_t n : {3u, 4u, 5u, 8u, 13u, 30u, 100u, 1000u}) {
    for (double r = -0.995; r < 1.0; r += 0.035) {
      CAPTURE(n);
      CAPTURE(r);
      const double expected = boost_p(r, n);
      const double got = p_value_two_tailed(r, n).p;
      CHECK(std::abs(got - expected) <= 1e-9 * std::max(expected, 1e-300) + 1e-300);
    }
  }
}

TEST_CASE("incomplete beta and t survival against the reference") {
  for (const double a : {0.5, 1.0, 2.5, 6.0, 50.0}) {
    for (const double b : {0.5, 1.0, 3.0, 20.0}) {
      for (const double x : {0.0, 0.001, 0.1, 0.35, 0.5, 0.8, 0.999, 1.0}) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(x);
        CHECK(regularized_incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-10));
      }
    }
  }
  const boost::math::students_t t5(5.0);
  CHECK(student_t_sf(2.0, 5.0) == doctest::Approx(boost::math::cdf(boost::math::complement(t5, 2.0))).epsilon(1e-10));
  CHECK(student_t_sf(-2.0, 5.0) == doctest::Approx(boost::math::cdf(t5, 2.0)).epsilon(1e-10));
  CHECK(student_t_sf(0.0, 5.0) == 0.5);
}

TEST_CASE("perfect correlation is exact with p zero") {
  const auto p = p_value_two_tailed(1.0, 13);
  CHECK(p.exact);
  CHECK(p.p == 0.0);
  CHECK(p_value_two_tailed(-1.0, 5).exact);
  CHECK_THROWS_AS(p_value_two_tailed(0.5, 2), InsufficientSamples);
  CHECK_THROWS_AS(p_value_two_tailed(1.5, 10), OutOfRange);
}

TEST_CASE("metric equal to the target gives exact cells") {
  std::vector<TeamRecord> teams;
  for (int i = 0; i < 13; ++i) {
    const double v = i * 1.5 + 2.0;
    std::array<std::optional<double>, 8> m;
    m.fill(v);
    teams.push_back(team("t" + std::to_string(i), m, v, v));
  }
  const auto table = correlate_all(teams);
  for (const auto& c : table.cells()) {
    CHECK(*c.r == 1.0);
    CHECK(*c.p == 0.0);
    CHECK(c.exact);
    CHECK(c.significant);
    CHECK(c.n == 13);
  }
}

TEST_CASE("pairwise deletion and ineligible teams") {
  std::vector<TeamRecord> teams;
  const double gbc[] = {0.1, 0.4, 0.2, 0.5, 0.3};
  const double nps[] = {10, 40, 30, 45, 20};
  for (int i = 0; i < 5; ++i) {
    std::array<std::optional<double>, 8> m;
    m[0] = gbc[i];
    if (i != 2) m[5] = 1000.0 * (i + 1);  // ART missing for one team
    m[6] = 0.5;                            // constant AWVCI
    teams.push_back(team("t" + std::to_string(i), m, nps[i], 5.0 - i));
  }
  std::array<std::optional<double>, 8> outlier;
  outlier.fill(99.0);
  teams.push_back(team("ineligible", outlier, -100, -100, false));

  const auto table = correlate_all(teams);
  const auto& full = table.at(MetricId::avg_gbc, Target::nps);
  CHECK(full.n == 5);
  const std::vector<double> x(gbc, gbc + 5), y(nps, nps + 5);
  CHECK(*full.r == doctest::Approx(pearson(x, y)).epsilon(1e-14));

  const auto& art = table.at(MetricId::art_median, Target::nps);
  CHECK(art.n == 4);
  const std::vector<double> ax{1000, 2000, 4000, 5000}, ay{10, 40, 45, 20};
  CHECK(*art.r == doctest::Approx(pearson(ax, ay)).epsilon(1e-14));

  const auto& flat = table.at(MetricId::awvci, Target::kpd);
  CHECK(flat.n == 5);
  CHECK_FALSE(flat.r);
  CHECK_FALSE(flat.p);
  CHECK_FALSE(flat.significant);

  const auto& missing = table.at(MetricId::avg_gdc, Target::nps);
  CHECK(missing.n == 0);
  CHECK_FALSE(missing.r);
}

TEST_CASE("correlation table layout and headers") {
  std::vector<TeamRecord> teams;
  for (int i = 0; i < 4; ++i) {
    std::array<std::optional<double>, 8> m;
    m.fill(static_cast<double>(i * i));
    m[4] = static_cast<double>(-i);
    teams.push_back(team("t" + std::to_string(i), m, 10.0 * i, 4.0 + (i % 2)));
  }
  std::ostringstream out;
  write_correlation_table_csv(out, correlate_all(teams));
  const std::string text = out.str();
  CHECK(text.rfind(",Avg GBC,Avg GDC,Avg Density,Avg. New Actors,Sum of Oscillation,ART Median,"
                   "AWVCI (weighted by #actors),Emotionality (cumulated pos. sentiment)\nNPS,,,,,,,,\nPearson,",
                   0) == 0);
  CHECK(text.find("\nKPD,,,,,,,,\n") != std::string::npos);
  CHECK(text.find("-1.000*") != std::string::npos);
  CHECK(text.find("\nSig. (2-tailed),") != std::string::npos);
  CHECK(text.find("\nN,4,4,4,4,4,4,4,4\n") != std::string::npos);

  std::ostringstream long_form;
  write_correlation_long_csv(long_form, correlate_all(teams));
  CHECK(long_form.str().rfind("metric,target,r,p,n,significant,exact\navg_gbc,nps,", 0) == 0);
  CHECK(long_form.str().find("oscillation_sum,nps,-1.000000,0.000000,4,true,true") != std::string::npos);
  CHECK(target_label(Target::nps) == "NPS");
  CHECK(target_key(Target::kpd) == "kpd");
}
