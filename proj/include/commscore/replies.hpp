#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commscore/ingest.hpp"

namespace commscore {

/// Strips any run of leading "re:", "fw:", "fwd:" prefixes (case-insensitive)
/// and collapses internal whitespace.
std::string normalize_subject(std::string_view subject);

struct ReplyPair {
  std::size_t original = 0;  // indices into corpus.events()
  std::size_t reply = 0;
  double latency_seconds = 0;

  friend bool operator==(const ReplyPair&, const ReplyPair&) = default;
};

inline constexpr Seconds kDefaultReplyCap{7 * 24 * 3600};

/// B replies to A when B's sender received A (to or cc), A's sender is in
/// B.to, B is strictly later, subjects match after normalization and the
/// latency is within `cap`. Each reply takes the latest eligible original.
/// Pairs are ordered by reply index.
std::vector<ReplyPair> match_replies(const TeamCorpus& corpus, Seconds cap = kDefaultReplyCap);

struct ResponseTimes {
  std::optional<double> mean;    // seconds; nullopt without pairs
  std::optional<double> median;
};

ResponseTimes response_times(std::span<const ReplyPair> pairs);

/// Median of `values` (mean of the two middle ones for even counts).
std::optional<double> median(std::vector<double> values);

}  // namespace commscore
