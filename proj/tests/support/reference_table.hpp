#pragma once

// Pearson r and two-tailed significance, rounded to three places, of a 13-team
// correlation table, NPS row group first, then KPD.

#include <array>
#include <cstddef>

namespace commscore::testing {

struct ReferenceCell {
  const char* metric;
  const char* target;
  double r;
  std::size_t n;
  double sig;
};

inline constexpr std::array<ReferenceCell, 16> kReferenceTable = {{
    {"Avg GBC", "NPS", 0.503, 13, 0.08},
    {"Avg GDC", "NPS", 0.454, 13, 0.119},
    {"Avg Density", "NPS", 0.402, 13, 0.173},
    {"Avg. New Actors", "NPS", -0.454, 13, 0.119},
    {"Sum of Oscillation", "NPS", -0.604, 13, 0.029},
    {"ART Median", "NPS", -0.414, 13, 0.159},
    {"AWVCI (weighted by #actors)", "NPS", 0.418, 13, 0.156},
    {"Emotionality (cumulated pos. sentiment)", "NPS", -0.44, 13, 0.132},
    {"Avg GBC", "KPD", 0.645, 13, 0.017},
    {"Avg GDC", "KPD", 0.609, 13, 0.027},
    {"Avg Density", "KPD", 0.496, 13, 0.085},
    {"Avg. New Actors", "KPD", -0.579, 13, 0.038},
    {"Sum of Oscillation", "KPD", -0.644, 13, 0.018},
    {"ART Median", "KPD", -0.533, 13, 0.061},
    {"AWVCI (weighted by #actors)", "KPD", 0.495, 13, 0.085},
    {"Emotionality (cumulated pos. sentiment)", "KPD", -0.572, 13, 0.041},
}};

}  // namespace commscore::testing
