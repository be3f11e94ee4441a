#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commscore/metrics.hpp"
#include "commscore/satisfaction.hpp"

namespace commscore {

/// Sample Pearson product-moment coefficient, clamped to [-1, 1].
/// Throws LengthMismatch, InsufficientSamples (fewer than 3 points) or
/// DegenerateSeries (a constant series).
double pearson(std::span<const double> x, std::span<const double> y);

/// I_x(a, b) via the continued-fraction expansion, for a, b > 0.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T_dof >= t) for Student's t.
double student_t_sf(double t, double dof);

struct PValue {
  double p = 1.0;
  bool exact = false;  // |r| == 1: the t statistic is infinite and p is 0
};

/// p = 2 P(T_{n-2} >= |t|), t = r sqrt((n-2)/(1-r^2)). Throws
/// InsufficientSamples when n < 3 and OutOfRange when |r| > 1.
PValue p_value_two_tailed(double r, std::size_t n);

inline constexpr double kSignificanceLevel = 0.05;

enum class Target { nps, kpd };
inline constexpr std::array<Target, 2> kTargets = {Target::nps, Target::kpd};
std::string_view target_label(Target t);
std::string_view target_key(Target t);

struct CorrelationResult {
  MetricId metric = MetricId::avg_gbc;
  Target target = Target::nps;
  std::optional<double> r;  // nullopt when n < 3 or a series is constant
  std::optional<double> p;
  std::size_t n = 0;        // pairs after pairwise deletion
  bool significant = false; // p < 0.05
  bool exact = false;
};

struct TeamRecord {
  std::string team_id;
  MetricVector metrics;
  TeamSatisfaction satisfaction;
};

/// 8 metrics x 2 targets, metric-major.
class CorrelationTable {
 public:
  explicit CorrelationTable(std::vector<CorrelationResult> cells) : cells_(std::move(cells)) {}

  const CorrelationResult& at(MetricId m, Target t) const {
    return cells_[metric_index(m) * 2 + static_cast<std::size_t>(t)];
  }
  std::span<const CorrelationResult> cells() const noexcept { return cells_; }

 private:
  std::vector<CorrelationResult> cells_;
};

/// Correlates every metric with NPS and KPD over eligible teams, dropping
/// teams pairwise where a metric is undefined.
CorrelationTable correlate_all(std::span<const TeamRecord> teams);

/// Metric columns with NPS / KPD row groups of Pearson, Sig. (2-tailed), N.
/// Significant coefficients carry a trailing '*'.
void write_correlation_table_csv(std::ostream& out, const CorrelationTable& table);

/// One row per cell: metric,target,r,p,n,significant,exact.
void write_correlation_long_csv(std::ostream& out, const CorrelationTable& table);

}  // namespace commscore
