#pragma once

// Brute-force ground truth for small instances. Nothing here depends on the
// schedulers or on the ILP solver; only the core types are shared.

#include "ndisco/core.hpp"

#include <functional>

namespace ndisco::oracle {

/// Raised when an instance is too large for exhaustive search.
class CeilingExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

inline bool is_complete(const Schedule& schedule, const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  return discovery_times(schedule, bps, channels).complete();
}

inline bool is_wdt_optimal(const Schedule& schedule, const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  const auto report = discovery_times(schedule, bps, channels);
  return report.complete() && *report.wdt == optimal_wdt(bps, channels);
}

/// Complete, and every period-b configuration is found before slot b*|C|.
inline bool is_recursive(const Schedule& schedule, const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  const auto report = discovery_times(schedule, bps, channels);
  if (!report.complete()) return false;
  for (const auto& entry : report.times)
    if (*entry.slot >= entry.configuration.period * channels.count()) return false;
  return true;
}

/// Pointwise comparison of the cumulative discovery probability over the
/// first `horizon` slots: true if `a` is never below `b`.
inline bool ndot_dominates(const DiscoveryReport& a, const DiscoveryReport& b, Slot horizon)
{
  for (Slot n = 1; n <= horizon; ++n)
    if (a.cdf_within(n) < b.cdf_within(n)) return false;
  return true;
}

/// Calls `visit` for every schedule on [0, horizon) (each slot idle or one
/// of the channels): (|C|+1)^horizon schedules.
inline void enumerate_schedules(const ChannelSet& channels, Slot horizon,
                                const std::function<void(const Schedule&)>& visit)
{
  std::vector<std::uint32_t> digits(horizon, 0);  // 0 = idle, k = channel k-1
  const std::uint32_t base = channels.count() + 1;
  while (true) {
    std::map<Slot, Channel> scans;
    for (Slot t = 0; t < horizon; ++t)
      if (digits[t] != 0) scans.emplace(t, digits[t] - 1);
    visit(Schedule(std::move(scans), horizon));
    Slot i = 0;
    while (i < horizon && ++digits[i] == base) digits[i++] = 0;
    if (i == horizon) break;
  }
}

struct BruteForceResult {
  Rational mdt;
  Schedule schedule;
  std::uint64_t nodes = 0;
};

namespace detail {

class ExhaustiveMdtSearch {
 public:
  ExhaustiveMdtSearch(const BeaconPeriodSet& bps, const ChannelSet& channels, Slot t_max, std::uint64_t ceiling)
      : t_max_(t_max), ceiling_(ceiling), channels_(channels.count())
  {
    for (Channel c = 0; c < channels_; ++c)
      for (const Period b : bps.periods())
        for (Slot d = 0; d < b; ++d) entries_.push_back({c, b, d, static_cast<std::int64_t>(bps.lcm() / b)});
    times_.assign(entries_.size(), -1);
    denominator_ = static_cast<std::int64_t>(bps.lcm() * bps.size() * channels_);
    plan_.assign(t_max_ + 1, -1);
  }

  bool run()
  {
    descend(0, 0, entries_.size());
    return best_.has_value();
  }

  std::uint64_t nodes() const { return nodes_; }
  Rational mdt() const { return Rational(*best_, denominator_); }

  Schedule schedule() const
  {
    std::map<Slot, Channel> scans;
    for (Slot t = 0; t < best_plan_.size(); ++t)
      if (best_plan_[t] >= 0) scans.emplace(t, static_cast<Channel>(best_plan_[t]));
    return Schedule(std::move(scans));
  }

 private:
  struct Entry {
    Channel channel;
    Period period;
    Slot offset;
    std::int64_t weight;
  };

  static Slot next_beacon(const Entry& e, Slot t)
  {
    if (t <= e.offset) return e.offset;
    return e.offset + (t - e.offset + e.period - 1) / e.period * e.period;
  }

  // Scaled objective so far plus, for each undiscovered entry, its earliest
  // remaining beacon; nullopt if some entry has no beacon left before t_max.
  std::optional<std::int64_t> bound(Slot t, std::int64_t partial) const
  {
    std::int64_t total = partial;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (times_[i] >= 0) continue;
      const Slot next = next_beacon(entries_[i], t);
      if (next > t_max_) return std::nullopt;
      total += entries_[i].weight * static_cast<std::int64_t>(next);
    }
    return total;
  }

  void descend(Slot t, std::int64_t partial, std::size_t undiscovered)
  {
    if (++nodes_ > ceiling_)
      throw CeilingExceeded("exhaustive search exceeded " + std::to_string(ceiling_) +
                            " nodes; reduce t_max, |C| or the periods");
    if (undiscovered == 0) {
      if (!best_ || partial < *best_) {
        best_ = partial;
        best_plan_.assign(plan_.begin(), plan_.begin() + static_cast<std::ptrdiff_t>(t));
      }
      return;
    }
    if (t > t_max_) return;
    const auto lb = bound(t, partial);
    if (!lb || (best_ && *lb >= *best_)) return;

    // Channels are interchangeable until first scanned, so only the lowest
    // untouched one is tried; every schedule has a relabeling of this form
    // with the same objective.
    std::vector<std::size_t> found;
    const Channel limit = std::min(channels_, touched_ + 1);
    for (Channel c = 0; c < limit; ++c) {
      found.clear();
      std::int64_t gained = 0;
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (times_[i] < 0 && e.channel == c && t % e.period == e.offset) {
          times_[i] = static_cast<std::int64_t>(t);
          gained += e.weight * static_cast<std::int64_t>(t);
          found.push_back(i);
        }
      }
      plan_[t] = static_cast<int>(c);
      const bool fresh = c == touched_;
      if (fresh) ++touched_;
      descend(t + 1, partial + gained, undiscovered - found.size());
      if (fresh) --touched_;
      for (const auto i : found) times_[i] = -1;
    }
    plan_[t] = -1;
    descend(t + 1, partial, undiscovered);
  }

  Slot t_max_;
  std::uint64_t ceiling_;
  std::uint32_t channels_;
  std::uint32_t touched_ = 0;  // channels 0 .. touched_-1 already scanned
  std::vector<Entry> entries_;
  std::vector<std::int64_t> times_;
  std::int64_t denominator_ = 1;
  std::vector<int> plan_;
  std::vector<int> best_plan_;
  std::optional<std::int64_t> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultSearchCeiling = 100'000'000;

/// Exhaustive minimum-MDT search over channel-or-idle per slot in
/// [0, t_max] (default LCM(B)*|C| - 1), pruned only by an admissible bound
/// and channel relabeling.
inline BruteForceResult brute_force_mdt_optimal(const BeaconPeriodSet& bps, const ChannelSet& channels,
                                                std::optional<Slot> t_max = std::nullopt,
                                                std::uint64_t ceiling = kDefaultSearchCeiling)
{
  const Slot horizon = t_max.value_or(bps.lcm() * channels.count() - 1);
  detail::ExhaustiveMdtSearch search(bps, channels, horizon, ceiling);
  if (!search.run()) throw DomainError("no complete schedule within t_max = " + std::to_string(horizon));
  return {search.mdt(), search.schedule(), search.nodes()};
}

struct RecursiveExistence {
  bool exists = false;
  std::optional<Schedule> witness;
};

inline constexpr Slot kRecursiveSlotCeiling = 256;

/// Decides whether a recursive schedule exists by backtracking over
/// [0, max(B)|C|) with per-period deadlines b|C|.
inline RecursiveExistence recursive_schedule_exists(const BeaconPeriodSet& bps, const ChannelSet& channels,
                                                    Slot slot_ceiling = kRecursiveSlotCeiling,
                                                    std::uint64_t node_ceiling = kDefaultSearchCeiling)
{
  const Slot horizon = optimal_wdt(bps, channels);
  if (horizon > slot_ceiling)
    throw CeilingExceeded("max(B)*|C| = " + std::to_string(horizon) + " exceeds the ceiling of " +
                          std::to_string(slot_ceiling) + " slots");
  const auto periods = bps.periods();
  const Channel nc = channels.count();

  // seen[bi][c * b + d]: configuration (c, b, d) discovered.
  std::vector<std::vector<char>> seen;
  std::vector<Slot> left;  // undiscovered count per period
  for (const Period b : periods) {
    seen.emplace_back(b * nc, 0);
    left.push_back(b * nc);
  }
  std::vector<int> plan(horizon, -1);
  std::uint64_t nodes = 0;

  std::function<bool(Slot)> descend = [&](Slot t) -> bool {
    if (++nodes > node_ceiling) throw CeilingExceeded("recursive-schedule search exceeded its node ceiling");
    for (std::size_t bi = 0; bi < periods.size(); ++bi) {
      const Slot deadline = periods[bi] * nc;
      const Slot capacity = t < deadline ? deadline - t : 0;
      if (left[bi] > capacity) return false;
    }
    if (t == horizon) return true;
    for (int option = 0; option <= static_cast<int>(nc); ++option) {
      // option nc = idle
      std::vector<std::size_t> touched;
      if (option < static_cast<int>(nc)) {
        const auto c = static_cast<Channel>(option);
        for (std::size_t bi = 0; bi < periods.size(); ++bi) {
          auto& flag = seen[bi][c * periods[bi] + t % periods[bi]];
          if (!flag) {
            flag = 1;
            --left[bi];
            touched.push_back(bi);
          }
        }
      }
      plan[t] = option < static_cast<int>(nc) ? option : -1;
      if (descend(t + 1)) return true;
      for (const auto bi : touched) {
        seen[bi][static_cast<Channel>(option) * periods[bi] + t % periods[bi]] = 0;
        ++left[bi];
      }
    }
    plan[t] = -1;
    return false;
  };

  RecursiveExistence result;
  if (descend(0)) {
    std::map<Slot, Channel> scans;
    for (Slot t = 0; t < horizon; ++t)
      if (plan[t] >= 0) scans.emplace(t, static_cast<Channel>(plan[t]));
    result.exists = true;
    result.witness = Schedule(std::move(scans), horizon);
  }
  return result;
}

}  // namespace ndisco::oracle
