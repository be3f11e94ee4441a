#include "commscore/contribution.hpp"

#include <vector>

#include <fmt/format.h>

#include "commscore/error.hpp"

namespace commscore {

double contribution_index(std::uint64_t sent, std::uint64_t received) {
  if (sent + received == 0) throw NoActivity("contribution index of an actor without messages");
  return (static_cast<double>(sent) - static_cast<double>(received)) /
         static_cast<double>(sent + received);
}

AwvciWeighting parse_awvci_weighting(std::string_view name) {
  if (name == "edges") return AwvciWeighting::edges;
  if (name == "actors") return AwvciWeighting::actors;
  throw Error(fmt::format("AWVCI weighting '{}' is not 'edges' or 'actors'", name));
}

std::string_view to_string(AwvciWeighting w) {
  return w == AwvciWeighting::edges ? "edges" : "actors";
}

double daily_ci_variance(const DailyActivity& day) {
  std::vector<double> ci;
  ci.reserve(day.actors.size());
  for (const auto& a : day.actors) {
    if (a.sent + a.received > 0) ci.push_back(contribution_index(a.sent, a.received));
  }
  if (ci.empty()) throw NoActivity("day without active actors");
  double mean = 0.0;
  for (const double v : ci) mean += v;
  mean /= static_cast<double>(ci.size());
  double acc = 0.0;
  for (const double v : ci) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(ci.size());
}

double awvci(std::span<const DailyActivity> days, AwvciWeighting weighting) {
  double weighted = 0.0, total_weight = 0.0;
  for (const auto& day : days) {
    std::size_t active = 0;
    for (const auto& a : day.actors) active += (a.sent + a.received) > 0 ? 1 : 0;
    if (active == 0) continue;
    const double w = weighting == AwvciWeighting::edges ? static_cast<double>(day.total_edges)
                                                        : static_cast<double>(active);
    weighted += daily_ci_variance(day) * w;
    total_weight += w;
  }
  if (total_weight <= 0.0) throw NoActivity("no day with active actors");
  return weighted / total_weight;
}

}  // namespace commscore
