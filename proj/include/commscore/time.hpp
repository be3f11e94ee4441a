#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace commscore {

/// A UTC instant at second resolution.
using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

/// Half-open UTC interval [start, end).
struct Interval {
  Timestamp start;
  Timestamp end;

  bool contains(Timestamp t) const noexcept { return start <= t && t < end; }
  bool empty() const noexcept { return end <= start; }
  Seconds length() const noexcept { return end - start; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// ISO-8601 date-time with an explicit offset ("Z", "+02:00", "-0500").
/// Fractional seconds are truncated. Returns nullopt for anything else,
/// including local times without offset.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// RFC 5322 Date header value, e.g. "Sun, 01 Jul 2012 09:00:00 +0000".
std::optional<Timestamp> parse_rfc5322_date(std::string_view text);

/// "2012-07-01T09:00:00Z"
std::string format_iso8601(Timestamp t);

/// "2012-07-01"
std::string format_date(std::chrono::sys_days d);

/// "2012-07"
std::string format_month(Timestamp t);

/// Accepts "START/END" where each side is a date (midnight UTC) or an
/// ISO-8601 instant. Throws Error when malformed or not start < end.
Interval parse_period(std::string_view text);

std::string format_period(const Interval& period);

/// First instant of the UTC calendar month containing t.
Timestamp month_floor(Timestamp t);

/// First instant of the following UTC calendar month.
Timestamp next_month(Timestamp t);

std::chrono::sys_days day_floor(Timestamp t);

}  // namespace commscore
