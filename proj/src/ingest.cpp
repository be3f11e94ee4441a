#include "commscore/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "commscore/csv.hpp"
#include "commscore/error.hpp"

namespace commscore {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "From <sender> <asctime date>": a body line that merely starts with
// "From " does not end in a year.
bool is_mbox_separator(std::string_view line) {
  if (!line.starts_with("From ")) return false;
  const auto rest = trim(line.substr(5));
  const auto space = rest.find(' ');
  if (rest.empty() || space == std::string_view::npos) return false;
  const auto last = rest.substr(rest.find_last_of(' ') + 1);
  return last.size() == 4 && std::all_of(last.begin(), last.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Collects per-record failures according to the strictness policy.
class IssueSink {
 public:
  IssueSink(const ParseOptions& options, ParseResult& result)
      : options_(options), result_(result) {}

  void report(std::size_t line, const std::string& message) {
    if (options_.strict) throw MalformedRecord(options_.source_name, line, message);
    result_.skipped.push_back({options_.source_name, line, message});
  }

  template <class Fn>
  void guarded(std::size_t line, Fn&& fn) {
    try {
      fn();
    } catch (const MalformedRecord&) {
      throw;
    } catch (const FormatError&) {
      throw;
    } catch (const json::exception& e) {
      report(line, e.what());
    } catch (const Error& e) {
      report(line, e.what());
    }
  }

 private:
  const ParseOptions& options_;
  ParseResult& result_;
};

Timestamp require_iso(std::string_view text) {
  if (trim(text).empty()) throw Error("empty timestamp");
  auto t = parse_iso8601(text);
  if (!t) throw Error(fmt::format("timestamp '{}' is not ISO-8601 with an explicit offset", text));
  return *t;
}

void parse_csv(std::istream& in, const ParseOptions& options, ParseResult& result) {
  CsvReader reader{in, options.source_name};
  IssueSink sink{options, result};

  auto header = reader.next();
  if (!header) throw FormatError(fmt::format("{}: missing CSV header", options.source_name));
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    std::string name = lower(trim(header->fields[i]));
    if (i == 0 && name.starts_with("\xEF\xBB\xBF")) name.erase(0, 3);
    column.emplace(name, i);
  }
  for (const char* required : {"timestamp", "from", "to", "cc", "subject"}) {
    if (!column.contains(required))
      throw FormatError(
          fmt::format("{}: CSV header lacks required column '{}'", options.source_name, required));
  }
  auto optional_column = [&](const char* name) -> std::optional<std::size_t> {
    if (auto it = column.find(name); it != column.end()) return it->second;
    return std::nullopt;
  };
  const auto team_col = optional_column("team_id");
  const auto id_col = optional_column("event_id");
  const std::size_t width = header->fields.size();

  while (auto rec = reader.next()) {
    sink.guarded(rec->line, [&] {
      if (rec->fields.size() != width)
        throw Error(fmt::format("expected {} fields, found {}", width, rec->fields.size()));
      const auto& f = rec->fields;
      std::string team = team_col ? std::string(trim(f[*team_col])) : std::string{};
      if (team.empty()) team = options.default_team;
      std::string id = id_col ? std::string(trim(f[*id_col])) : std::string{};
      const auto to = split_address_list(f[column["to"]], ";");
      const auto cc = split_address_list(f[column["cc"]], ";");
      result.events.push_back(make_event(std::move(id), require_iso(f[column["timestamp"]]),
                                         f[column["from"]], to, cc, f[column["subject"]],
                                         std::move(team)));
    });
  }
}

std::vector<std::string> json_address_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  if (!obj.contains(key) || obj.at(key).is_null()) return out;
  const json& v = obj.at(key);
  if (v.is_string()) return split_address_list(v.get<std::string>(), ",;");
  if (!v.is_array()) throw Error(fmt::format("'{}' must be an array of addresses", key));
  for (const auto& item : v) out.push_back(item.get<std::string>());
  return out;
}

void parse_jsonl(std::istream& in, const ParseOptions& options, ParseResult& result) {
  IssueSink sink{options, result};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    sink.guarded(lineno, [&] {
      const json obj = json::parse(line);
      if (!obj.is_object()) throw Error("record is not a JSON object");
      for (const char* required : {"timestamp", "from", "to"}) {
        if (!obj.contains(required)) throw Error(fmt::format("missing key '{}'", required));
      }
      std::string team = obj.value("team_id", std::string{});
      if (team.empty()) team = options.default_team;
      result.events.push_back(make_event(
          obj.value("event_id", std::string{}), require_iso(obj.at("timestamp").get<std::string>()),
          obj.at("from").get<std::string>(), json_address_list(obj, "to"),
          json_address_list(obj, "cc"), obj.value("subject", std::string{}), std::move(team)));
    });
  }
}

struct MboxMessage {
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> headers;  // lowercase name, value
};

void parse_mbox(std::istream& in, const ParseOptions& options, ParseResult& result) {
  IssueSink sink{options, result};
  std::string line;
  std::size_t lineno = 0;
  std::optional<MboxMessage> current;
  bool in_headers = false;

  auto finish = [&] {
    if (!current) return;
    sink.guarded(current->line, [&] {
      std::optional<std::string> from, date;
      std::vector<std::string> to, cc;
      std::string subject;
      for (const auto& [name, value] : current->headers) {
        if (name == "from") {
          from = value;
        } else if (name == "to") {
          auto v = split_address_list(value, ",");
          to.insert(to.end(), v.begin(), v.end());
        } else if (name == "cc") {
          auto v = split_address_list(value, ",");
          cc.insert(cc.end(), v.begin(), v.end());
        } else if (name == "subject") {
          subject = std::string(trim(value));
        } else if (name == "date") {
          date = value;
        }
      }
      if (!from) throw Error("missing From header");
      if (!date) throw Error("missing Date header");
      const auto ts = parse_rfc5322_date(*date);
      if (!ts) throw Error(fmt::format("unparseable Date header '{}'", *date));
      result.events.push_back(
          make_event({}, *ts, *from, to, cc, std::move(subject), options.default_team));
    });
    current.reset();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_mbox_separator(line)) {
      finish();
      current = MboxMessage{lineno, {}};
      in_headers = true;
      continue;
    }
    if (!current) {
      if (trim(line).empty()) continue;
      throw FormatError(fmt::format("{}:{}: mbox data before the first 'From ' separator",
                                    options.source_name, lineno));
    }
    if (!in_headers) continue;  // body is ignored
    if (line.empty()) {
      in_headers = false;
      continue;
    }
    if ((line.front() == ' ' || line.front() == '\t') && !current->headers.empty()) {
      current->headers.back().second += " ";
      current->headers.back().second += trim(line);
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    current->headers.emplace_back(lower(trim(std::string_view(line).substr(0, colon))),
                                  std::string(trim(std::string_view(line).substr(colon + 1))));
  }
  finish();
}

std::string canonical_key(const EmailEvent& e) {
  std::vector<std::string> to;
  for (const auto& a : e.to) to.push_back(a.str());
  std::sort(to.begin(), to.end());
  std::string key = format_iso8601(e.timestamp);
  key += '\x1f';
  key += e.sender.str();
  key += '\x1f';
  for (const auto& a : to) {
    key += a;
    key += ';';
  }
  key += '\x1f';
  key += e.subject;
  return key;
}

std::string full_form(const EmailEvent& e) {
  std::string s = canonical_key(e);
  s += '\x1e';
  for (const auto& a : e.to) s += a.str() + ";";
  s += '\x1e';
  for (const auto& a : e.cc) s += a.str() + ";";
  return s;
}

}  // namespace

EmailEvent make_event(std::string event_id, Timestamp timestamp, std::string_view sender,
                      std::span<const std::string> to, std::span<const std::string> cc,
                      std::string subject, std::string team_id) {
  EmailEvent e{std::move(event_id), timestamp, ActorId{sender}, {}, {}, std::move(subject),
               std::move(team_id)};
  std::set<ActorId> seen;
  for (const auto& raw : to) {
    ActorId a{raw};
    if (seen.insert(a).second) e.to.push_back(std::move(a));
  }
  for (const auto& raw : cc) {
    ActorId a{raw};
    if (seen.insert(a).second) e.cc.push_back(std::move(a));
  }
  if (e.to.empty()) throw Error("message has no 'to' recipient");
  if (e.team_id.empty()) throw Error("message has no team_id");
  return e;
}

MailFormat parse_mail_format(std::string_view name) {
  const std::string n = lower(name);
  if (n == "csv") return MailFormat::csv;
  if (n == "jsonl" || n == "ndjson") return MailFormat::jsonl;
  if (n == "mbox") return MailFormat::mbox;
  throw UnsupportedFormat(fmt::format("unsupported mail format '{}'", name));
}

std::string_view to_string(MailFormat format) {
  switch (format) {
    case MailFormat::csv: return "csv";
    case MailFormat::jsonl: return "jsonl";
    case MailFormat::mbox: return "mbox";
  }
  return "?";
}

ParseResult parse_events(std::istream& source, MailFormat format, const ParseOptions& options) {
  ParseResult result;
  switch (format) {
    case MailFormat::csv: parse_csv(source, options, result); break;
    case MailFormat::jsonl: parse_jsonl(source, options, result); break;
    case MailFormat::mbox: parse_mbox(source, options, result); break;
  }
  return result;
}

namespace {

std::string join_addresses(const std::vector<ActorId>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ';';
    out += list[i].str();
  }
  return out;
}

}  // namespace

void write_events_csv(std::ostream& out, std::span<const EmailEvent> events) {
  out << "timestamp,from,to,cc,subject,team_id,event_id\n";
  for (const auto& e : events) {
    out << csv_join({format_iso8601(e.timestamp), e.sender.str(), join_addresses(e.to),
                     join_addresses(e.cc), e.subject, e.team_id, e.event_id})
        << '\n';
  }
}

void write_events_jsonl(std::ostream& out, std::span<const EmailEvent> events) {
  for (const auto& e : events) {
    nlohmann::ordered_json obj;
    obj["timestamp"] = format_iso8601(e.timestamp);
    obj["from"] = e.sender.str();
    auto list = [](const std::vector<ActorId>& v) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& a : v) arr.push_back(a.str());
      return arr;
    };
    obj["to"] = list(e.to);
    obj["cc"] = list(e.cc);
    obj["subject"] = e.subject;
    obj["team_id"] = e.team_id;
    if (!e.event_id.empty()) obj["event_id"] = e.event_id;
    out << obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

std::span<const EmailEvent> TeamCorpus::events_in(const Interval& window) const {
  auto by_time = [](const EmailEvent& e, Timestamp t) { return e.timestamp < t; };
  const auto first = std::lower_bound(events_.begin(), events_.end(), window.start, by_time);
  const auto last = std::lower_bound(first, events_.end(), window.end, by_time);
  return {first, last};
}

std::uint64_t fnv1a64(std::string_view data) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CorpusBuild build_corpus(std::span<const EmailEvent> events, std::string_view team_id,
                         const Interval& period) {
  if (period.empty()) throw Error("corpus period must satisfy start < end");

  struct Keyed {
    EmailEvent event;
    std::string full;
  };
  std::vector<Keyed> kept;
  for (const auto& e : events) {
    if (e.team_id != team_id || !period.contains(e.timestamp)) continue;
    Keyed k{e, full_form(e)};
    if (k.event.event_id.empty())
      k.event.event_id = fmt::format("h{:016x}", fnv1a64(canonical_key(k.event)));
    kept.push_back(std::move(k));
  }

  // Keep the smallest full form per id so the result is order independent.
  std::sort(kept.begin(), kept.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.event.event_id, a.full) < std::tie(b.event.event_id, b.full);
  });
  kept.erase(std::unique(kept.begin(), kept.end(),
                         [](const Keyed& a, const Keyed& b) {
                           return a.event.event_id == b.event.event_id;
                         }),
             kept.end());

  std::vector<EmailEvent> sorted;
  sorted.reserve(kept.size());
  for (auto& k : kept) sorted.push_back(std::move(k.event));
  std::sort(sorted.begin(), sorted.end(), [](const EmailEvent& a, const EmailEvent& b) {
    return std::tie(a.timestamp, a.event_id) < std::tie(b.timestamp, b.event_id);
  });

  const bool empty = sorted.empty();
  return {TeamCorpus{std::string(team_id), period, std::move(sorted)}, empty};
}

}  // namespace commscore
