#include "commscore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "commscore/error.hpp"
#include "commscore/scorecard.hpp"

namespace commscore {

namespace {

/// mt19937_64 with hand-written distributions; the standard distributions
/// are implementation-defined and would make corpora platform dependent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda > 30.0) return static_cast<std::size_t>(std::max(0.0, std::round(lambda + std::sqrt(lambda) * normal())));
    const double limit = std::exp(-lambda);
    std::size_t k = 0;
    double p = uniform();
    while (p > limit) {
      ++k;
      p *= uniform();
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

constexpr std::array<std::string_view, 16> kTopics = {
    "invoice",          "payment run",      "vendor query",    "reconciliation",
    "month end close",  "accruals",         "payroll",         "expense report",
    "credit note",      "purchase order",   "audit request",   "ledger mapping",
    "bank statement",   "cash application", "tax filing",      "weekly status"};

constexpr std::array<std::string_view, 6> kPositive = {
    "thanks", "great work", "excellent progress", "happy to help", "good news", "appreciate it"};

constexpr std::array<std::string_view, 4> kNegative = {
    "urgent", "problem", "delay", "issue"};

/// Generator settings derived from a team's drivers. Each metric rises with
/// its own driver.
struct Knobs {
  double externals = 2.0;        // density driver (one-off client contacts per month)
  double gatekeeping = 0.5;      // betweenness driver (client contacts handled by the hub leader)
  double cross_talk = 0.05;      // degree driver (member-to-member mail)
  double churn = 0.1;            // new-actor driver
  double leader_switch = 0.1;    // oscillation driver
  double relays = 0.5;           // oscillation driver (weekly forwards by members to outsiders)
  double latency_hours = 1.5;    // ART driver
  double reply_probability = 0.6;  // AWVCI driver (fewer replies, more one-sided days)
  double positive_share = 0.1;     // emotionality driver
};

Knobs knobs_for(const std::array<double, 8>& d) {
  auto at = [&](MetricId id) { return d[metric_index(id)]; };
  Knobs k;
  k.externals = 10.0 * logistic(-2.5 * at(MetricId::avg_density));
  k.gatekeeping = logistic(2.5 * at(MetricId::avg_gbc));
  k.cross_talk = 0.005 + 0.06 * logistic(-2.5 * at(MetricId::avg_gdc));
  k.churn = 0.45 * logistic(1.8 * at(MetricId::avg_new_actors) - 0.5);
  k.leader_switch = 0.9 * logistic(2.0 * at(MetricId::oscillation_sum) - 0.5);
  k.relays = 4.0 * logistic(2.0 * at(MetricId::oscillation_sum) - 0.5);
  k.latency_hours = 1.5 * std::exp(0.9 * at(MetricId::art_median));
  k.reply_probability = 0.95 - 0.85 * logistic(2.0 * at(MetricId::awvci));
  k.positive_share = 0.04 + 0.4 * logistic(1.8 * at(MetricId::emotionality));
  return k;
}

// Roster slots: leaders take turns as the hub, members churn.
constexpr std::size_t kLeaders = 3;
constexpr std::size_t kFirstMember = kLeaders;
constexpr std::size_t kClients = 3;  // client contacts present every month
constexpr std::size_t kViaHub = static_cast<std::size_t>(-1);

void generate_mail(const SynthSpec& spec, const Interval& period, std::size_t team,
                   const std::string& team_id, const Knobs& k, Rng& rng,
                   std::vector<EmailEvent>& out) {
  constexpr double kBroadcastShare = 0.3;
  constexpr double kExternalDailyRate = 0.4;
  constexpr double kClientReplyProbability = 0.9;
  constexpr double kClientLatencyHours = 1.0;
  using namespace std::chrono;

  std::size_t next_person = 0;
  std::size_t next_external = 0;
  auto member_address = [&] {
    return fmt::format("p{:03d}@team{:02d}.example.com", next_person++, team + 1);
  };
  // Slots below roster_size are team members; the rest are this month's client contacts.
  std::vector<std::string> people;
  for (std::size_t i = 0; i < spec.actors; ++i) people.push_back(member_address());
  const std::size_t roster_size = spec.actors;
  const std::size_t members = roster_size - kFirstMember;
  auto random_member = [&] { return kFirstMember + rng.index(members); };
  auto external_address = [&] {
    return fmt::format("c{:03d}@client{:02d}.example.org", next_external++, team + 1);
  };
  std::vector<std::string> clients;
  for (std::size_t i = 0; i < kClients; ++i) clients.push_back(external_address());
  std::vector<std::size_t> contact_of;  // per external slot: a member, or kViaHub

  auto start_month = [&] {
    people.resize(roster_size);
    people.insert(people.end(), clients.begin(), clients.end());
    const std::size_t n = rng.poisson(k.externals);
    for (std::size_t i = 0; i < n; ++i) people.push_back(external_address());
    contact_of.clear();
    for (std::size_t i = roster_size; i < people.size(); ++i) {
      contact_of.push_back(rng.bernoulli(k.gatekeeping) ? kViaHub : random_member());
    }
  };

  std::size_t leader = 0;
  std::size_t ticket = 1000;
  const auto first_day = floor<days>(period.start);
  const auto last_day = floor<days>(period.end - seconds{1});
  Timestamp current_month = month_floor(period.start);
  start_month();

  std::vector<EmailEvent> team_events;
  std::vector<std::size_t> reach;

  auto emit = [&](Timestamp ts, std::size_t from, const std::vector<std::size_t>& to_slots,
                  const std::vector<std::size_t>& cc_slots, std::string subj) {
    std::vector<std::string> to_addr, cc_addr;
    for (const auto s : to_slots) to_addr.push_back(people[s]);
    for (const auto s : cc_slots) cc_addr.push_back(people[s]);
    team_events.push_back(make_event({}, ts, people[from], to_addr, cc_addr, std::move(subj), team_id));
  };

  auto thread = [&](Timestamp when, std::size_t sender, const std::vector<std::size_t>& to,
                    const std::vector<std::size_t>& cc, double reply_probability, double latency_hours) {
    std::string subject = fmt::format("{} {}", kTopics[rng.index(kTopics.size())], ticket++);
    if (rng.bernoulli(k.positive_share)) {
      subject += fmt::format(" - {}", kPositive[rng.index(kPositive.size())]);
    } else if (rng.bernoulli(0.06)) {
      subject = fmt::format("{}: {}", kNegative[rng.index(kNegative.size())], subject);
    }
    emit(when, sender, to, cc, subject);
    if (!rng.bernoulli(reply_probability)) return;
    const std::size_t pick = rng.index(to.size() + cc.size());
    const std::size_t responder = pick < to.size() ? to[pick] : cc[pick - to.size()];
    const double latency = latency_hours * 3600.0 * std::exp(0.7 * rng.normal());
    const Timestamp reply_at = when + seconds{std::max<long long>(60, std::llround(latency))};
    if (reply_at < period.end) emit(reply_at, responder, {sender}, {}, "Re: " + subject);
  };

  bool round_due = true;
  for (auto day = first_day; day <= last_day; day += days{1}) {
    const Timestamp day_start{day};
    if (month_floor(day_start) != current_month) {
      current_month = month_floor(day_start);
      for (std::size_t i = kFirstMember; i < roster_size; ++i) {
        if (rng.bernoulli(k.churn)) people[i] = member_address();
      }
      start_month();
      round_due = true;
    }
    const weekday wd{day};
    if (wd == Monday && day != first_day && rng.bernoulli(k.leader_switch)) {
      leader = (leader + 1 + rng.index(kLeaders - 1)) % kLeaders;
    }
    // Members passing hub mail on to one-off outside addresses act as brokers
    // for that week only.
    if (wd == Monday) {
      const std::size_t n = rng.poisson(k.relays);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = random_member();
        const Timestamp when = day_start + days{rng.index(5)} + hours{8};
        people.push_back(external_address());
        thread(when, leader, {m}, {}, 0.0, k.latency_hours);
        emit(when + hours{1}, m, {people.size() - 1}, {}, "Fwd: " + team_events.back().subject);
      }
    }
    const bool weekend = wd == Saturday || wd == Sunday;
    auto time_of_day = [&] {
      return day_start + hours{7} + seconds{static_cast<long long>(rng.uniform() * 5 * 3600)};
    };

    // Monthly leadership round: every leader writes to the whole team and every
    // member reports to all leaders, whoever is currently the hub.
    if (round_due && !weekend) {
      round_due = false;
      std::vector<std::size_t> team_slots, leaders;
      for (std::size_t i = kFirstMember; i < roster_size; ++i) team_slots.push_back(i);
      for (std::size_t i = 0; i < kLeaders; ++i) leaders.push_back(i);
      for (std::size_t l = 0; l < kLeaders; ++l) {
        thread(time_of_day(), l, {team_slots.front()}, {team_slots.begin() + 1, team_slots.end()}, k.reply_probability, k.latency_hours);
      }
      for (const auto m : team_slots) {
        thread(time_of_day(), m, {leaders.front()}, {leaders.begin() + 1, leaders.end()}, k.reply_probability, k.latency_hours);
      }
    }

    const double rate = spec.messages_per_actor_day * static_cast<double>(roster_size) *
                        (weekend ? 0.2 : 1.0);
    const std::size_t threads = rng.poisson(rate);
    for (std::size_t t = 0; t < threads; ++t) {
      const Timestamp when = time_of_day();
      if (rng.bernoulli(k.cross_talk)) {
        const std::size_t a = random_member();
        std::size_t b = kFirstMember + rng.index(members - 1);
        if (b >= a) ++b;
        thread(when, a, {b}, {}, k.reply_probability, k.latency_hours);
        continue;
      }
      const std::size_t hub = leader;
      reach.clear();
      for (std::size_t i = 0; i < kLeaders; ++i) {
        if (i != hub) reach.push_back(i);
      }
      for (std::size_t i = kFirstMember; i < roster_size; ++i) reach.push_back(i);
      if (rng.bernoulli(0.5)) {
        if (rng.bernoulli(kBroadcastShare)) {
          thread(when, hub, {reach.front()}, {reach.begin() + 1, reach.end()}, k.reply_probability, k.latency_hours);
        } else {
          thread(when, hub, {reach[rng.index(reach.size())]}, {}, k.reply_probability, k.latency_hours);
        }
      } else {
        thread(when, reach[rng.index(reach.size())], {hub}, {}, k.reply_probability, k.latency_hours);
      }
    }

    if (weekend) continue;
    for (std::size_t e = 0; e < contact_of.size(); ++e) {
      if (!rng.bernoulli(kExternalDailyRate)) continue;
      const std::size_t external = roster_size + e;
      const std::size_t inside = contact_of[e] == kViaHub ? leader : contact_of[e];
      if (rng.bernoulli(0.5)) {
        thread(time_of_day(), external, {inside}, {}, kClientReplyProbability, kClientLatencyHours);
      } else {
        thread(time_of_day(), inside, {external}, {}, kClientReplyProbability, kClientLatencyHours);
      }
    }
  }
  std::stable_sort(team_events.begin(), team_events.end(),
                   [](const EmailEvent& a, const EmailEvent& b) { return a.timestamp < b.timestamp; });
  out.insert(out.end(), std::make_move_iterator(team_events.begin()),
             std::make_move_iterator(team_events.end()));
}

void generate_survey(const SynthSpec& spec, const SynthTeam& team, Rng& rng,
                     std::vector<SurveyResponse>& out) {
  const std::size_t span = spec.max_respondents - spec.min_respondents + 1;
  const std::size_t n = spec.min_respondents + rng.index(span);
  for (std::size_t i = 0; i < n; ++i) {
    SurveyResponse r{team.team_id, fmt::format("r{:03d}", i + 1), 0, {}};
    const double nps_raw = 7.2 + 1.8 * team.nps_latent + 1.3 * rng.normal();
    r.nps_answer = static_cast<int>(std::clamp(std::round(nps_raw), 0.0, 10.0));
    for (auto& a : r.kpd) a = std::clamp(std::round(3.4 + 0.7 * team.kpd_latent + 0.8 * rng.normal()), 1.0, 5.0);
    out.push_back(std::move(r));
  }
}

}  // namespace

std::array<PlantedEffect, 8> SynthSpec::default_effects(double magnitude) {
  std::array<PlantedEffect, 8> effects{};
  for (const auto& row : kScoreCardDirections) {
    const double signed_effect = row.sign == Direction::positive ? magnitude : -magnitude;
    effects[metric_index(row.metric)] = {signed_effect, signed_effect};
  }
  return effects;
}

Interval SynthSpec::period() const {
  const Timestamp begin = month_floor(start);
  Timestamp end = begin;
  for (std::size_t i = 0; i < months; ++i) end = next_month(end);
  return {begin, end};
}

void SynthSpec::validate() const {
  if (teams == 0) throw Error("synth: team count must be positive");
  if (months == 0) throw Error("synth: months must be positive");
  if (actors < 6) throw Error("synth: at least 6 actors per team are needed");
  if (min_respondents == 0 || max_respondents < min_respondents)
    throw Error("synth: respondent range is empty");
  if (!(std::fabs(target_coupling) < 1.0)) throw Error("synth: target coupling must be in (-1, 1)");
  if (!(messages_per_actor_day > 0.0)) throw Error("synth: message rate must be positive");
  const double rho = target_coupling;
  for (const auto id : kMetricIds) {
    const auto& e = effects[metric_index(id)];
    if (std::fabs(e.nps) > 1.0 || std::fabs(e.kpd) > 1.0)
      throw Error(fmt::format("synth: effect for {} outside [-1, 1]", metric_key(id)));
    const double bn = (e.nps - rho * e.kpd) / (1 - rho * rho);
    const double bk = (e.kpd - rho * e.nps) / (1 - rho * rho);
    if (bn * e.nps + bk * e.kpd > 1.0 + 1e-12)
      throw Error(fmt::format(
          "synth: effects for {} are incompatible with target coupling {}", metric_key(id), rho));
  }
}

SynthData synthesize(const SynthSpec& spec) {
  spec.validate();
  SynthData data;
  data.period = spec.period();
  const double rho = spec.target_coupling;

  for (std::size_t j = 0; j < spec.teams; ++j) {
    Rng rng{splitmix64(spec.seed ^ splitmix64(j + 1))};
    SynthTeam team;
    team.team_id = fmt::format("T{:02d}", j + 1);
    const double z1 = rng.normal(), z2 = rng.normal();
    team.nps_latent = z1;
    team.kpd_latent = rho * z1 + std::sqrt(1 - rho * rho) * z2;
    for (const auto id : kMetricIds) {
      const auto& e = spec.effects[metric_index(id)];
      const double bn = (e.nps - rho * e.kpd) / (1 - rho * rho);
      const double bk = (e.kpd - rho * e.nps) / (1 - rho * rho);
      const double residual = std::max(0.0, 1.0 - (bn * e.nps + bk * e.kpd));
      team.drivers[metric_index(id)] =
          bn * team.nps_latent + bk * team.kpd_latent + std::sqrt(residual) * rng.normal();
    }
    generate_mail(spec, data.period, j, team.team_id, knobs_for(team.drivers), rng, data.mail);
    generate_survey(spec, team, rng, data.survey);
    data.teams.push_back(std::move(team));
  }
  return data;
}

}  // namespace commscore
