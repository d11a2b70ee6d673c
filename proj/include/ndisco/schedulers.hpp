#pragma once

// Constructive listening-schedule generators: PSV, the GREEDY family,
// CHAN TRAIN, OPT_B2 and the inductive recursive constructor for
// divisibility-chain BP sets.

#include "ndisco/core.hpp"

#include <array>
#include <concepts>
#include <functional>
#include <string_view>

namespace ndisco {

/// Tracks which configurations are already discovered and evaluates the
/// expected number of new discoveries per (channel, slot). Values are kept
/// as integers scaled by LCM(B)*|B|*|C|, so period b contributes LCM(B)/b.
class DiscoveryState {
 public:
  DiscoveryState(const BeaconPeriodSet& bps, const ChannelSet& channels)
      : periods_(bps.periods().begin(), bps.periods().end()),
        channels_(channels.count()),
        index_(bps, channels),
        discovered_(index_.size(), 0),
        remaining_(index_.size()),
        scale_(bps.lcm() * bps.size() * channels.count())
  {
    weights_.reserve(periods_.size());
    for (const Period b : periods_) weights_.push_back(bps.lcm() / b);
  }

  std::uint32_t channel_count() const { return channels_; }
  bool complete() const { return remaining_ == 0; }
  std::size_t remaining() const { return remaining_; }
  std::optional<Channel> tuned() const { return tuned_; }

  /// Scaled expected number of discoveries when scanning c during slot t.
  std::uint64_t value(Channel c, Slot t) const
  {
    std::uint64_t v = 0;
    for (std::size_t bi = 0; bi < periods_.size(); ++bi)
      if (!discovered_[index_.at(c, bi, t % periods_[bi])]) v += weights_[bi];
    return v;
  }

  /// Marks everything c hears during t as discovered; returns the scaled value achieved.
  std::uint64_t scan(Channel c, Slot t)
  {
    std::uint64_t v = 0;
    for (std::size_t bi = 0; bi < periods_.size(); ++bi) {
      auto& flag = discovered_[index_.at(c, bi, t % periods_[bi])];
      if (!flag) {
        flag = 1;
        --remaining_;
        v += weights_[bi];
      }
    }
    tuned_ = c;
    return v;
  }

  /// Channels attaining the maximum value at t (ascending); empty if all are zero.
  std::vector<Channel> argmax(Slot t) const
  {
    std::vector<Channel> best;
    std::uint64_t top = 0;
    for (Channel c = 0; c < channels_; ++c) {
      const auto v = value(c, t);
      if (v == 0 || v < top) continue;
      if (v > top) {
        top = v;
        best.clear();
      }
      best.push_back(c);
    }
    return best;
  }

  Rational to_probability(std::uint64_t scaled) const
  {
    return Rational(static_cast<std::int64_t>(scaled), static_cast<std::int64_t>(scale_));
  }

 private:
  std::vector<Period> periods_;
  std::vector<Period> weights_;
  std::uint32_t channels_;
  ConfigurationIndex index_;
  std::vector<char> discovered_;
  std::size_t remaining_;
  Period scale_;
  std::optional<Channel> tuned_;
};

/// Replays a schedule and returns the scaled value achieved in each slot of
/// [0, horizon) (0 for idle slots).
inline std::vector<std::uint64_t> achieved_values(const Schedule& schedule, const BeaconPeriodSet& bps,
                                                  const ChannelSet& channels)
{
  DiscoveryState state(bps, channels);
  std::vector<std::uint64_t> out(schedule.horizon(), 0);
  for (const auto& [t, c] : schedule.scans()) out[t] = state.scan(c, t);
  return out;
}

// ---------------------------------------------------------------------------
// PSV

/// Channel j is scanned during [j*max(B), (j+1)*max(B)).
inline Schedule psv(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  std::map<Slot, Channel> scans;
  const Period top = bps.max();
  for (Channel c = 0; c < channels.count(); ++c)
    for (Slot d = 0; d < top; ++d) scans.emplace(c * top + d, c);
  return Schedule(std::move(scans), top * channels.count());
}

// ---------------------------------------------------------------------------
// GREEDY

enum class TieBreak { First, Stay, Lookahead };

inline const char* to_string(TieBreak tie)
{
  switch (tie) {
    case TieBreak::First: return "first";
    case TieBreak::Stay: return "stay";
    case TieBreak::Lookahead: return "lookahead";
  }
  return "?";
}

/// Picks one channel out of a non-empty ascending argmax set.
template <class F>
concept GreedyChooser = requires(F f, const DiscoveryState& state, Slot t, std::span<const Channel> ties) {
  { f(state, t, ties) } -> std::convertible_to<Channel>;
};

/// Upper bound on the slots any greedy-type schedule needs.
inline Slot greedy_horizon_cap(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  return bps.lcm() * channels.count();
}

/// Generic GREEDY: each slot scans an argmax channel picked by `choose`;
/// slots where every channel has value zero stay idle.
template <GreedyChooser Chooser>
Schedule greedy_with(const BeaconPeriodSet& bps, const ChannelSet& channels, Chooser&& choose)
{
  DiscoveryState state(bps, channels);
  const Slot cap = greedy_horizon_cap(bps, channels);
  std::map<Slot, Channel> scans;
  Slot t = 0;
  for (; !state.complete(); ++t) {
    if (t >= cap) throw std::logic_error("greedy exceeded LCM(B)*|C| slots");
    const auto ties = state.argmax(t);
    if (ties.empty()) continue;
    const Channel c = choose(std::as_const(state), t, std::span<const Channel>(ties));
    state.scan(c, t);
    scans.emplace(t, c);
  }
  return Schedule(std::move(scans), t);
}

namespace detail {

inline Channel prefer_tuned(const DiscoveryState& state, std::span<const Channel> ties)
{
  if (const auto tuned = state.tuned())
    if (std::find(ties.begin(), ties.end(), *tuned) != ties.end()) return *tuned;
  return ties.front();
}

/// Consecutive slots after t during which c stays in the argmax set if it is
/// scanned at t and kept tuned.
inline std::size_t argmax_run(DiscoveryState state, Channel c, Slot t, Slot cap)
{
  state.scan(c, t);
  std::size_t run = 0;
  for (Slot s = t + 1; s < cap && !state.complete(); ++s) {
    const auto v = state.value(c, s);
    if (v == 0) break;
    const auto ties = state.argmax(s);
    if (std::find(ties.begin(), ties.end(), c) == ties.end()) break;
    state.scan(c, s);
    ++run;
  }
  return run;
}

}  // namespace detail

inline Schedule greedy(const BeaconPeriodSet& bps, const ChannelSet& channels, TieBreak tie = TieBreak::First)
{
  switch (tie) {
    case TieBreak::First:
      return greedy_with(bps, channels,
                         [](const DiscoveryState&, Slot, std::span<const Channel> ties) { return ties.front(); });
    case TieBreak::Stay:
      return greedy_with(bps, channels, [](const DiscoveryState& state, Slot, std::span<const Channel> ties) {
        return detail::prefer_tuned(state, ties);
      });
    case TieBreak::Lookahead: {
      const Slot cap = greedy_horizon_cap(bps, channels);
      return greedy_with(bps, channels, [cap](const DiscoveryState& state, Slot t, std::span<const Channel> ties) {
        if (ties.size() == 1) return ties.front();
        std::size_t best_run = 0;
        std::vector<Channel> best;
        for (const Channel c : ties) {
          const auto run = detail::argmax_run(state, c, t, cap);
          if (best.empty() || run > best_run) {
            best_run = run;
            best.assign(1, c);
          } else if (run == best_run) {
            best.push_back(c);
          }
        }
        return detail::prefer_tuned(state, best);
      });
    }
  }
  throw std::logic_error("unknown tie-break");
}

// ---------------------------------------------------------------------------
// CHAN TRAIN

/// Greedy (FIRST) channel selection, after which the selected channel is
/// kept while its value at the next slot does not drop below the value just
/// achieved.
inline Schedule chan_train(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  DiscoveryState state(bps, channels);
  const Slot cap = greedy_horizon_cap(bps, channels);
  std::map<Slot, Channel> scans;
  std::optional<Channel> train;
  std::uint64_t last_value = 0;
  Slot t = 0;
  for (; !state.complete(); ++t) {
    if (t >= cap) throw std::logic_error("chan_train exceeded LCM(B)*|C| slots");
    if (train && state.value(*train, t) >= last_value) {
      last_value = state.scan(*train, t);
      scans.emplace(t, *train);
      continue;
    }
    const auto ties = state.argmax(t);
    if (ties.empty()) {
      train.reset();
      continue;
    }
    train = ties.front();
    last_value = state.scan(*train, t);
    scans.emplace(t, *train);
  }
  return Schedule(std::move(scans), t);
}

// ---------------------------------------------------------------------------
// OPT_B2

namespace detail {

// Depth-first search over slots [0, max(B)|C|): while t < b|C| the scanned
// channel must not have been used before at residue t mod b, for every b.
class RecursiveTwoPeriodSearch {
 public:
  RecursiveTwoPeriodSearch(const BeaconPeriodSet& bps, const ChannelSet& channels)
      : periods_(bps.periods().begin(), bps.periods().end()), channels_(channels.count())
  {
    for (const Period b : periods_) used_.emplace_back(b, std::vector<char>(channels_, 0));
    plan_.resize(bps.max() * channels_);
  }

  bool run() { return place(0); }
  const std::vector<Channel>& plan() const { return plan_; }

 private:
  bool allowed(Channel c, Slot t) const
  {
    for (std::size_t bi = 0; bi < periods_.size(); ++bi)
      if (t < periods_[bi] * channels_ && used_[bi][t % periods_[bi]][c]) return false;
    return true;
  }

  void mark(Channel c, Slot t, char flag)
  {
    for (std::size_t bi = 0; bi < periods_.size(); ++bi)
      if (t < periods_[bi] * channels_) used_[bi][t % periods_[bi]][c] = flag;
  }

  bool place(Slot t)
  {
    if (t == plan_.size()) return true;
    for (Channel c = 0; c < channels_; ++c) {
      if (!allowed(c, t)) continue;
      mark(c, t, 1);
      plan_[t] = c;
      if (place(t + 1)) return true;
      mark(c, t, 0);
    }
    return false;
  }

  std::vector<Period> periods_;
  std::uint32_t channels_;
  std::vector<std::vector<std::vector<char>>> used_;
  std::vector<Channel> plan_;
};

}  // namespace detail

/// Recursive schedule for a two-element BP set.
inline Schedule opt_b2(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  if (bps.size() != 2) throw DomainError("optb2 requires exactly two beacon periods");
  detail::RecursiveTwoPeriodSearch search(bps, channels);
  if (!search.run()) throw std::logic_error("optb2 found no recursive schedule");
  std::map<Slot, Channel> scans;
  for (Slot t = 0; t < search.plan().size(); ++t) scans.emplace(t, search.plan()[t]);
  return Schedule(std::move(scans), optimal_wdt(bps, channels));
}

// ---------------------------------------------------------------------------
// Recursive schedules for divisibility chains

/// |C| x period grid; entry (c, d) = k means channel c is scanned at slot k*period + d.
class ScheduleMatrix {
 public:
  ScheduleMatrix(Period period, std::vector<std::vector<std::uint32_t>> entries)
      : period_(period), entries_(std::move(entries))
  {
    if (period_ == 0 || entries_.empty()) throw DomainError("empty schedule matrix");
    const auto rows = static_cast<std::uint32_t>(entries_.size());
    for (const auto& row : entries_) {
      if (row.size() != period_) throw DomainError("schedule matrix row has wrong length");
      for (const auto v : row)
        if (v >= rows) throw DomainError("schedule matrix entry out of range");
    }
    for (Slot d = 0; d < period_; ++d) {
      std::vector<char> seen(rows, 0);
      for (const auto& row : entries_) {
        if (seen[row[d]]) throw DomainError("schedule matrix column is not injective");
        seen[row[d]] = 1;
      }
    }
  }

  /// PSV-shaped matrix for a single period: entry (c, d) = c.
  static ScheduleMatrix base(Period period, const ChannelSet& channels)
  {
    std::vector<std::vector<std::uint32_t>> entries(channels.count(), std::vector<std::uint32_t>(period));
    for (Channel c = 0; c < channels.count(); ++c) std::fill(entries[c].begin(), entries[c].end(), c);
    return ScheduleMatrix(period, std::move(entries));
  }

  Period period() const { return period_; }
  std::uint32_t channel_count() const { return static_cast<std::uint32_t>(entries_.size()); }
  std::uint32_t at(Channel c, Slot d) const { return entries_[c][d]; }
  const std::vector<std::vector<std::uint32_t>>& entries() const { return entries_; }
  Slot slot_of(Channel c, Slot d) const { return entries_[c][d] * period_ + d; }

  Schedule to_schedule() const
  {
    std::map<Slot, Channel> scans;
    for (Channel c = 0; c < channel_count(); ++c)
      for (Slot d = 0; d < period_; ++d) scans.emplace(slot_of(c, d), c);
    return Schedule(std::move(scans), period_ * channel_count());
  }

  friend bool operator==(const ScheduleMatrix&, const ScheduleMatrix&) = default;

 private:
  Period period_;
  std::vector<std::vector<std::uint32_t>> entries_;
};

/// Re-expresses a matrix for period b' as one for target = alpha*b'. Every
/// scanned slot s = A'(c,d')*b' + d' lands at column s mod target, row
/// s / target; the remaining cells of each column receive the unused row
/// values in ascending order, assigned to the missing channels in ascending
/// order.
inline ScheduleMatrix extend_recursive(const ScheduleMatrix& matrix, Period target)
{
  if (target == 0 || target % matrix.period() != 0)
    throw DomainError("target period must be a multiple of the matrix period");
  const auto rows = matrix.channel_count();
  std::vector<std::vector<std::optional<std::uint32_t>>> cells(rows,
                                                               std::vector<std::optional<std::uint32_t>>(target));
  for (Channel c = 0; c < rows; ++c)
    for (Slot d = 0; d < matrix.period(); ++d) {
      const Slot s = matrix.slot_of(c, d);
      cells[c][s % target] = static_cast<std::uint32_t>(s / target);
    }

  std::vector<std::vector<std::uint32_t>> entries(rows, std::vector<std::uint32_t>(target));
  for (Slot d = 0; d < target; ++d) {
    std::vector<char> used(rows, 0);
    for (Channel c = 0; c < rows; ++c)
      if (cells[c][d]) used[*cells[c][d]] = 1;
    std::uint32_t next = 0;
    for (Channel c = 0; c < rows; ++c) {
      if (cells[c][d]) {
        entries[c][d] = *cells[c][d];
        continue;
      }
      while (used[next]) ++next;
      entries[c][d] = next;
      used[next] = 1;
    }
  }
  return ScheduleMatrix(target, std::move(entries));
}

/// Recursive schedule for a divisibility chain, grown one period at a time.
inline Schedule recursive_f3(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  if (bps.family() != Family::F3) throw DomainError("recursive-f3 requires a divisibility chain of periods");
  auto matrix = ScheduleMatrix::base(bps.min(), channels);
  for (std::size_t i = 1; i < bps.size(); ++i) matrix = extend_recursive(matrix, bps.periods()[i]);
  return matrix.to_schedule();
}

// ---------------------------------------------------------------------------
// Strategy names

inline constexpr std::array<std::string_view, 7> kStrategyNames = {
    "psv", "greedy-first", "greedy-stay", "greedy-lookahead", "chantrain", "optb2", "recursive-f3"};

inline bool is_strategy(std::string_view name)
{
  return std::find(kStrategyNames.begin(), kStrategyNames.end(), name) != kStrategyNames.end();
}

inline Schedule make_schedule(std::string_view strategy, const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  if (strategy == "psv") return psv(bps, channels);
  if (strategy == "greedy-first") return greedy(bps, channels, TieBreak::First);
  if (strategy == "greedy-stay") return greedy(bps, channels, TieBreak::Stay);
  if (strategy == "greedy-lookahead") return greedy(bps, channels, TieBreak::Lookahead);
  if (strategy == "chantrain") return chan_train(bps, channels);
  if (strategy == "optb2") return opt_b2(bps, channels);
  if (strategy == "recursive-f3") return recursive_f3(bps, channels);
  throw DomainError("unknown strategy '" + std::string(strategy) + "'");
}

}  // namespace ndisco
