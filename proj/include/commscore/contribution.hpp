#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "commscore/tempograph.hpp"

namespace commscore {

/// (sent - received) / (sent + received); +1 for pure senders, -1 for pure
/// receivers. Throws NoActivity when both are zero.
double contribution_index(std::uint64_t sent, std::uint64_t received);

enum class AwvciWeighting { edges, actors };

AwvciWeighting parse_awvci_weighting(std::string_view name);
std::string_view to_string(AwvciWeighting w);

/// Population variance of the contribution index over one day's active actors.
double daily_ci_variance(const DailyActivity& day);

/// Average of daily contribution-index variances weighted by the day's total
/// edges (default) or its active-actor count. Throws NoActivity when no day
/// has an active actor.
double awvci(std::span<const DailyActivity> days, AwvciWeighting weighting = AwvciWeighting::edges);

}  // namespace commscore
