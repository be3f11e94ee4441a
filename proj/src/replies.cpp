#include "commscore/replies.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

namespace commscore {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Length of a reply/forward prefix ("Re:", "fwd :", ...) at the start of `s`, or 0.
std::size_t prefix_length(std::string_view s) {
  for (const std::string_view p : {"re", "fwd", "fw"}) {
    if (s.size() <= p.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(s[i])) != p[i]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    std::size_t i = p.size();
    while (i < s.size() && is_space(s[i])) ++i;
    if (i < s.size() && s[i] == ':') return i + 1;
  }
  return 0;
}

}  // namespace

std::string normalize_subject(std::string_view subject) {
  while (true) {
    while (!subject.empty() && is_space(subject.front())) subject.remove_prefix(1);
    const std::size_t n = prefix_length(subject);
    if (n == 0) break;
    subject.remove_prefix(n);
  }
  std::string out;
  bool pending_space = false;
  for (const char c : subject) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<ReplyPair> match_replies(const TeamCorpus& corpus, Seconds cap) {
  const auto events = corpus.events();
  std::unordered_map<std::string, std::vector<std::size_t>> by_subject;
  std::vector<const std::vector<std::size_t>*> bucket(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    auto& list = by_subject[normalize_subject(events[i].subject)];
    list.push_back(i);
  }
  for (auto& [subject, list] : by_subject) {
    for (const std::size_t i : list) bucket[i] = &list;
  }

  auto addressed = [](const EmailEvent& e, const ActorId& actor, bool include_cc) {
    if (std::find(e.to.begin(), e.to.end(), actor) != e.to.end()) return true;
    return include_cc && std::find(e.cc.begin(), e.cc.end(), actor) != e.cc.end();
  };

  std::vector<ReplyPair> pairs;
  for (std::size_t b = 0; b < events.size(); ++b) {
    const EmailEvent& reply = events[b];
    const auto& candidates = *bucket[b];
    // Candidates are in corpus order (timestamp, event_id); walk back from b.
    auto pos = std::lower_bound(candidates.begin(), candidates.end(), b);
    while (pos != candidates.begin()) {
      --pos;
      const EmailEvent& original = events[*pos];
      if (original.timestamp >= reply.timestamp) continue;
      if (reply.timestamp - original.timestamp > cap) break;
      if (addressed(original, reply.sender, true) && addressed(reply, original.sender, false)) {
        pairs.push_back({*pos, b,
                         static_cast<double>((reply.timestamp - original.timestamp).count())});
        break;
      }
    }
  }
  return pairs;
}

std::optional<double> median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

ResponseTimes response_times(std::span<const ReplyPair> pairs) {
  if (pairs.empty()) return {};
  std::vector<double> latencies;
  latencies.reserve(pairs.size());
  for (const auto& p : pairs) latencies.push_back(p.latency_seconds);
  const double sum = std::accumulate(latencies.begin(), latencies.end(), 0.0);
  return {sum / static_cast<double>(latencies.size()), median(std::move(latencies))};
}

}  // namespace commscore
