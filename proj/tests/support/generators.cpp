#include "generators.hpp"

#include <array>
#include <atomic>
#include <fstream>
#include <sstream>
#include <tuple>

#include <unistd.h>

#include <fmt/format.h>

namespace commscore::testing {

ActorId actor(std::size_t i) { return ActorId(fmt::format("u{:02d}@team.example.com", i)); }

Timestamp at(int y, unsigned m, unsigned d, int hh, int mm, int ss) {
  using namespace std::chrono;
  return sys_days{year{y} / month{m} / day{d}} + hours{hh} + minutes{mm} + seconds{ss};
}

Interval quarter_q4_2012() { return {at(2012, 10, 1), at(2013, 1, 1)}; }

std::vector<std::pair<std::uint32_t, std::uint32_t>> random_pairs(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (edge(rng)) pairs.emplace_back(u, v);
    }
  }
  if (!pairs.empty() && edge(rng)) pairs.push_back(pairs.front());
  return pairs;
}

WindowGraph random_window_graph(Rng& rng, std::size_t n, double p, std::uint64_t max_count) {
  std::uniform_int_distribution<std::uint64_t> count(1, max_count);
  std::vector<std::tuple<ActorId, ActorId, std::uint64_t>> triples;
  for (const auto& [u, v] : random_pairs(rng, n, p)) triples.emplace_back(actor(u), actor(v), count(rng));
  return WindowGraph::from_triples(quarter_q4_2012(), triples);
}

std::vector<EmailEvent> random_events(Rng& rng, const std::string& team, const Interval& period,
                                      const EventMix& mix) {
  static constexpr std::array<const char*, 8> kTopics = {
      "invoice 17", "purchase order", "credit note", "great work thanks",
      "delay problem", "vendor master", "kudos team", "urgent issue"};
  std::uniform_int_distribution<std::size_t> pick_actor(0, mix.actors - 1);
  std::uniform_int_distribution<std::size_t> pick_topic(0, kTopics.size() - 1);
  std::uniform_int_distribution<std::int64_t> offset(0, period.length().count() - 1);
  std::uniform_int_distribution<std::int64_t> lag(60, 3 * 86400);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::vector<EmailEvent> out;
  while (out.size() < mix.count) {
    const auto sender = pick_actor(rng);
    std::vector<std::string> to{actor(pick_actor(rng)).str()};
    std::vector<std::string> cc;
    if (u(rng) < mix.cc_share) cc.push_back(actor(pick_actor(rng)).str());
    if (u(rng) < mix.cc_share) cc.push_back(actor(pick_actor(rng)).str());
    Timestamp t = period.start + Seconds{offset(rng)};
    if (u(rng) < mix.outside_share) t = (u(rng) < 0.5) ? period.start - Seconds{1} : period.end;
    const std::string subject = kTopics[pick_topic(rng)];
    auto e = make_event("", t, actor(sender).str(), to, cc, subject, team);
    out.push_back(e);
    if (u(rng) < mix.duplicate_share) out.push_back(e);
    if (u(rng) < mix.reply_share && !e.to.empty() && e.to.front() != e.sender) {
      const std::vector<std::string> back{e.sender.str()};
      out.push_back(make_event("", t + Seconds{lag(rng)}, e.to.front().str(), back, {},
                               (u(rng) < 0.5 ? "Re: " : "RE: fw: ") + subject, team));
    }
  }
  return out;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          fmt::format("commscore-{}-{}-{}", tag, ::getpid(), counter++);
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace commscore::testing
