#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "commscore/ingest.hpp"
#include "commscore/tempograph.hpp"

namespace commscore::testing {

using Rng = std::mt19937_64;

ActorId actor(std::size_t i);

Timestamp at(int y, unsigned m, unsigned d, int hh = 0, int mm = 0, int ss = 0);

Interval quarter_q4_2012();

/// Directed pairs over 0..n-1 with edge probability p; self-loops and
/// repeated pairs are left in on purpose.
std::vector<std::pair<std::uint32_t, std::uint32_t>> random_pairs(Rng& rng, std::size_t n, double p);

/// Graph over actor(0..n-1) with random edge counts in 1..max_count.
WindowGraph random_window_graph(Rng& rng, std::size_t n, double p, std::uint64_t max_count = 5);

struct EventMix {
  std::size_t count = 200;
  std::size_t actors = 8;
  double reply_share = 0.4;
  double cc_share = 0.3;
  double outside_share = 0.05;  // events placed just outside the period
  double duplicate_share = 0.03;
};

/// Events of `team` over `period` with replies, cc lists, a few duplicates
/// and a few out-of-period stragglers. Subjects mix lexicon words.
std::vector<EmailEvent> random_events(Rng& rng, const std::string& team, const Interval& period,
                                      const EventMix& mix = {});

/// Directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& file);

}  // namespace commscore::testing
