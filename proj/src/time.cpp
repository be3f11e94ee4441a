#include "commscore/time.hpp"

#include <array>
#include <cctype>

#include <fmt/format.h>

#include "commscore/error.hpp"

namespace commscore {

namespace {

using namespace std::chrono;

/// Minimal left-to-right scanner over a string_view.
class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  /// Exactly `width` decimal digits.
  std::optional<int> digits(std::size_t width) {
    if (pos_ + width > s_.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const char c = s_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    pos_ += width;
    return v;
  }

  /// One or more digits.
  std::optional<int> number() {
    std::size_t start = pos_;
    int v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())) && pos_ - start < 9) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return v;
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string_view word() {
    std::size_t start = pos_;
    while (!done() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::string_view rest() const { return s_.substr(pos_); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::optional<Timestamp> compose(int y, int mo, int d, int h, int mi, int s) {
  if (mo < 1 || mo > 12 || h > 23 || mi > 59 || s > 59) return std::nullopt;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  Cursor c{trim(text)};
  auto y = c.digits(4);
  if (!y || !c.accept('-')) return std::nullopt;
  auto mo = c.digits(2);
  if (!mo || !c.accept('-')) return std::nullopt;
  auto d = c.digits(2);
  if (!d) return std::nullopt;
  if (!c.accept('T') && !c.accept('t') && !c.accept(' ')) return std::nullopt;
  auto h = c.digits(2);
  if (!h || !c.accept(':')) return std::nullopt;
  auto mi = c.digits(2);
  if (!mi || !c.accept(':')) return std::nullopt;
  auto s = c.digits(2);
  if (!s) return std::nullopt;
  if (c.accept('.') || c.accept(',')) {
    if (!c.number()) return std::nullopt;
  }

  int offset_minutes = 0;
  if (c.accept('Z') || c.accept('z')) {
  } else if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.peek() == '-' ? -1 : 1;
    c.accept(c.peek());
    auto oh = c.digits(2);
    if (!oh) return std::nullopt;
    int om = 0;
    if (!c.done()) {
      c.accept(':');
      auto m = c.digits(2);
      if (!m) return std::nullopt;
      om = *m;
    }
    if (*oh > 23 || om > 59) return std::nullopt;
    offset_minutes = sign * (*oh * 60 + om);
  } else {
    return std::nullopt;  // local time without offset
  }
  if (!c.done()) return std::nullopt;

  auto local = compose(*y, *mo, *d, *h, *mi, *s);
  if (!local) return std::nullopt;
  return *local - minutes{offset_minutes};
}

std::optional<Timestamp> parse_rfc5322_date(std::string_view text) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};

  Cursor c{trim(text)};
  // Optional day-of-week.
  if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
    c.word();
    c.skip_space();
    if (!c.accept(',')) return std::nullopt;
    c.skip_space();
  }
  auto d = c.number();
  if (!d) return std::nullopt;
  c.skip_space();
  const auto mon = c.word();
  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (iequals(mon, kMonths[i])) mo = static_cast<int>(i) + 1;
  }
  if (mo == 0) return std::nullopt;
  c.skip_space();
  auto y = c.number();
  if (!y) return std::nullopt;
  c.skip_space();
  auto h = c.digits(2);
  if (!h || !c.accept(':')) return std::nullopt;
  auto mi = c.digits(2);
  if (!mi) return std::nullopt;
  int s = 0;
  if (c.accept(':')) {
    auto sec = c.digits(2);
    if (!sec) return std::nullopt;
    s = *sec;
  }
  c.skip_space();

  int offset_minutes = 0;
  if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.peek() == '-' ? -1 : 1;
    c.accept(c.peek());
    auto hh = c.digits(2);
    auto mm = c.digits(2);
    if (!hh || !mm || *mm > 59) return std::nullopt;
    offset_minutes = sign * (*hh * 60 + *mm);
  } else {
    const auto zone = c.word();
    if (!iequals(zone, "UT") && !iequals(zone, "GMT") && !iequals(zone, "Z") &&
        !iequals(zone, "UTC"))
      return std::nullopt;
  }
  c.skip_space();
  // A trailing comment such as "(UTC)" is allowed.
  if (!c.done() && c.peek() != '(') return std::nullopt;

  auto local = compose(*y, mo, *d, *h, *mi, s);
  if (!local) return std::nullopt;
  return *local - minutes{offset_minutes};
}

std::string format_iso8601(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss<seconds> tod{t - day};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     tod.hours().count(), tod.minutes().count(), tod.seconds().count());
}

std::string format_date(sys_days d) {
  const year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string format_month(Timestamp t) {
  const year_month_day ymd{floor<days>(t)};
  return fmt::format("{:04d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()));
}

Interval parse_period(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw Error(fmt::format("period '{}' is not of the form START/END", text));

  auto side = [&](std::string_view s) -> Timestamp {
    s = trim(s);
    if (auto t = parse_iso8601(s)) return *t;
    Cursor c{s};
    auto y = c.digits(4);
    std::optional<int> mo, d;
    if (y && c.accept('-')) mo = c.digits(2);
    if (mo && c.accept('-')) d = c.digits(2);
    if (d && c.done()) {
      if (auto t = compose(*y, *mo, *d, 0, 0, 0)) return *t;
    }
    throw Error(fmt::format("period bound '{}' is neither a date nor an ISO-8601 instant", s));
  };

  Interval period{side(text.substr(0, slash)), side(text.substr(slash + 1))};
  if (period.empty()) throw Error(fmt::format("period '{}' is empty", text));
  return period;
}

std::string format_period(const Interval& period) {
  return format_iso8601(period.start) + "/" + format_iso8601(period.end);
}

Timestamp month_floor(Timestamp t) {
  const year_month_day ymd{floor<days>(t)};
  return sys_days{ymd.year() / ymd.month() / 1};
}

Timestamp next_month(Timestamp t) {
  const year_month_day ymd{floor<days>(t)};
  return sys_days{(ymd.year() / ymd.month() / 1) + months{1}};
}

sys_days day_floor(Timestamp t) { return floor<days>(t); }

}  // namespace commscore
