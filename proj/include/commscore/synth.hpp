#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "commscore/ingest.hpp"
#include "commscore/metrics.hpp"
#include "commscore/satisfaction.hpp"

namespace commscore {

/// Planted correlation between a metric's driver and a team's latent
/// satisfaction, per target. The sign is the direction the metric moves with
/// satisfaction.
struct PlantedEffect {
  double nps = 0.0;
  double kpd = 0.0;

  friend bool operator==(const PlantedEffect&, const PlantedEffect&) = default;
};

struct SynthSpec {
  std::size_t teams = 13;
  std::size_t months = 7;
  Timestamp start = std::chrono::sys_days{std::chrono::year{2012} / 6 / 1};
  std::size_t actors = 12;  // roster size, leaders included
  std::array<PlantedEffect, 8> effects = default_effects(0.92);
  double target_coupling = 0.8;  // correlation of the NPS and KPD latents
  std::size_t min_respondents = 24;
  std::size_t max_respondents = 40;
  double messages_per_actor_day = 1.0;
  std::uint64_t seed = 42;

  /// Every metric planted with `magnitude` in its score-card direction.
  static std::array<PlantedEffect, 8> default_effects(double magnitude);

  Interval period() const;
  /// Throws Error when the spec cannot be realized.
  void validate() const;
};

/// Per-team ground truth kept for calibration and tests.
struct SynthTeam {
  std::string team_id;
  double nps_latent = 0.0;
  double kpd_latent = 0.0;
  std::array<double, 8> drivers{};  // standard-normal traits, indexed by metric_index
};

struct SynthData {
  Interval period;
  std::vector<EmailEvent> mail;        // sorted by team, then time
  std::vector<SurveyResponse> survey;
  std::vector<SynthTeam> teams;
};

/// Deterministic in `spec` (including the seed), independent of platform.
SynthData synthesize(const SynthSpec& spec);

}  // namespace commscore
