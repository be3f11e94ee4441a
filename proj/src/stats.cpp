#include "commscore/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "commscore/csv.hpp"
#include "commscore/error.hpp"

namespace commscore {

namespace {

/// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error(fmt::format("incomplete beta did not converge for a={} b={} x={}", a, b, x));
}

std::string fixed3(double v) { return fmt::format("{:.3f}", v == 0.0 ? 0.0 : v); }
std::string fixed6(double v) { return fmt::format("{:.6f}", v == 0.0 ? 0.0 : v); }

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw LengthMismatch(fmt::format("series lengths differ: {} vs {}", x.size(), y.size()));
  const std::size_t n = x.size();
  if (n < 3) throw InsufficientSamples(fmt::format("pearson needs at least 3 pairs, got {}", n));

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateSeries("pearson of a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw OutOfRange("incomplete beta needs a, b > 0");
  if (std::isnan(x) || x < 0.0 || x > 1.0) throw OutOfRange("incomplete beta needs 0 <= x <= 1");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double dof) {
  if (!(dof > 0.0)) throw OutOfRange("degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
  return t >= 0 ? tail : 1.0 - tail;
}

PValue p_value_two_tailed(double r, std::size_t n) {
  if (n < 3) throw InsufficientSamples(fmt::format("p-value needs n >= 3, got {}", n));
  if (std::isnan(r) || std::fabs(r) > 1.0) throw OutOfRange(fmt::format("|r| = {} exceeds 1", r));
  if (std::fabs(r) == 1.0) return {0.0, true};
  const double dof = static_cast<double>(n - 2);
  // dof / (dof + t^2) simplifies to 1 - r^2.
  const double x = (1.0 - r) * (1.0 + r);
  return {std::clamp(regularized_incomplete_beta(dof / 2.0, 0.5, x), 0.0, 1.0), false};
}

std::string_view target_key(Target t) { return t == Target::nps ? "nps" : "kpd"; }

std::string_view target_label(Target t) { return t == Target::nps ? "NPS" : "KPD"; }

CorrelationTable correlate_all(std::span<const TeamRecord> teams) {
  constexpr double kExactTolerance = 1e-12;
  std::vector<CorrelationResult> cells;
  for (const auto metric : kMetricIds) {
    for (const auto target : kTargets) {
      CorrelationResult cell{metric, target, std::nullopt, std::nullopt, 0, false, false};
      std::vector<double> xs, ys;
      for (const auto& t : teams) {
        if (!t.satisfaction.eligible) continue;
        const auto& v = t.metrics[metric];
        if (!v || !std::isfinite(*v)) continue;
        xs.push_back(*v);
        ys.push_back(target == Target::nps ? t.satisfaction.nps : t.satisfaction.kpd);
      }
      cell.n = xs.size();
      if (cell.n >= 3) {
        try {
          double r = pearson(xs, ys);
          if (std::fabs(r) >= 1.0 - kExactTolerance) r = r > 0 ? 1.0 : -1.0;
          const auto pv = p_value_two_tailed(r, cell.n);
          cell.r = r;
          cell.p = pv.p;
          cell.exact = pv.exact;
          cell.significant = pv.p < kSignificanceLevel;
        } catch (const DegenerateSeries&) {
        }
      }
      cells.push_back(cell);
    }
  }
  return CorrelationTable{std::move(cells)};
}

void write_correlation_table_csv(std::ostream& out, const CorrelationTable& table) {
  std::vector<std::string> header{""};
  for (const auto m : kMetricIds) header.emplace_back(metric_label(m));
  out << csv_join(header) << '\n';
  for (const auto target : kTargets) {
    std::vector<std::string> group{std::string(target_label(target))};
    group.resize(header.size());
    std::vector<std::string> r_row{"Pearson"}, p_row{"Sig. (2-tailed)"}, n_row{"N"};
    for (const auto m : kMetricIds) {
      const auto& c = table.at(m, target);
      r_row.push_back(c.r ? fixed3(*c.r) + (c.significant ? "*" : "") : "NA");
      p_row.push_back(c.p ? fixed3(*c.p) : "NA");
      n_row.push_back(std::to_string(c.n));
    }
    out << csv_join(group) << '\n'
        << csv_join(r_row) << '\n'
        << csv_join(p_row) << '\n'
        << csv_join(n_row) << '\n';
  }
}

void write_correlation_long_csv(std::ostream& out, const CorrelationTable& table) {
  out << "metric,target,r,p,n,significant,exact\n";
  for (const auto& c : table.cells()) {
    out << csv_join({std::string(metric_key(c.metric)), std::string(target_key(c.target)),
                     c.r ? fixed6(*c.r) : "NA", c.p ? fixed6(*c.p) : "NA", std::to_string(c.n),
                     c.significant ? "true" : "false", c.exact ? "true" : "false"})
        << '\n';
  }
}

}  // namespace commscore
