#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commscore/address.hpp"
#include "commscore/time.hpp"

namespace commscore {

/// One logged message. Recipients in `to` and `cc` are unique across both
/// lists; `to` is never empty.
struct EmailEvent {
  std::string event_id;  // empty when the source carries none
  Timestamp timestamp;
  ActorId sender;
  std::vector<ActorId> to;
  std::vector<ActorId> cc;
  std::string subject;
  std::string team_id;

  friend bool operator==(const EmailEvent&, const EmailEvent&) = default;
};

/// Assembles an event from raw fields, normalizing and deduplicating the
/// recipients. Throws MalformedAddress on a bad address and Error when no
/// `to` recipient remains.
EmailEvent make_event(std::string event_id, Timestamp timestamp, std::string_view sender,
                      std::span<const std::string> to, std::span<const std::string> cc,
                      std::string subject, std::string team_id);

enum class MailFormat { csv, jsonl, mbox };

MailFormat parse_mail_format(std::string_view name);
std::string_view to_string(MailFormat format);

struct ParseOptions {
  bool strict = false;
  /// Team assigned to records that do not carry a team_id of their own.
  std::string default_team = "default";
  /// Name used in error locations.
  std::string source_name = "<input>";
};

struct RecordIssue {
  std::string source;
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<EmailEvent> events;
  std::vector<RecordIssue> skipped;
};

/// Strict mode throws MalformedRecord at the first bad record; lenient mode
/// skips it and reports it in `skipped`. FormatError is thrown in both modes
/// when the framing itself is unreadable.
ParseResult parse_events(std::istream& source, MailFormat format, const ParseOptions& options = {});

/// CSV with header `timestamp,from,to,cc,subject,team_id,event_id`.
void write_events_csv(std::ostream& out, std::span<const EmailEvent> events);
void write_events_jsonl(std::ostream& out, std::span<const EmailEvent> events);

/// Immutable, time-sorted events of one team inside a period.
class TeamCorpus {
 public:
  const std::string& team_id() const noexcept { return team_id_; }
  const Interval& period() const noexcept { return period_; }
  std::span<const EmailEvent> events() const noexcept { return events_; }
  bool empty() const noexcept { return events_.empty(); }

  /// Events with timestamp in [window.start, window.end).
  std::span<const EmailEvent> events_in(const Interval& window) const;

  friend bool operator==(const TeamCorpus&, const TeamCorpus&) = default;

 private:
  friend struct CorpusBuild build_corpus(std::span<const EmailEvent>, std::string_view,
                                         const Interval&);
  TeamCorpus(std::string team_id, Interval period, std::vector<EmailEvent> events)
      : team_id_(std::move(team_id)), period_(period), events_(std::move(events)) {}

  std::string team_id_;
  Interval period_;
  std::vector<EmailEvent> events_;
};

struct CorpusBuild {
  TeamCorpus corpus;
  /// Set when no event survived filtering; the corpus is still usable.
  bool empty_corpus = false;
};

/// Filters to `team_id` and `period`, deduplicates and sorts by
/// (timestamp, event_id). Events without an id are deduplicated on
/// (timestamp, sender, to-set, subject) and receive a content-derived id.
/// Throws Error when the period is empty.
CorpusBuild build_corpus(std::span<const EmailEvent> events, std::string_view team_id,
                         const Interval& period);

/// Stable 64-bit FNV-1a digest.
std::uint64_t fnv1a64(std::string_view data) noexcept;

}  // namespace commscore
