#pragma once

// Domain types for passive multi-channel discovery: beacon-period sets,
// channels, neighbor configurations, listening schedules and the exact
// metrics (WDT, MDT, NDoT) a schedule achieves under the uniform model.

#include "ndisco/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndisco {

using Slot = std::uint64_t;
using Channel = std::uint32_t;
using Period = std::uint64_t;

/// Raised for invalid domain input (bad BP sets, preconditions that do not hold).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family { F1, F2, F3 };

inline const char* to_string(Family f)
{
  switch (f) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
  }
  return "?";
}

namespace detail {

inline Period checked_lcm(Period a, Period b)
{
  const Period g = std::gcd(a, b);
  const Period step = a / g;
  if (step != 0 && b > std::numeric_limits<Period>::max() / step)
    throw DomainError("LCM of beacon periods overflows");
  return step * b;
}

}  // namespace detail

/// Most specific family: F3 for a divisibility chain, F2 if every period
/// divides the maximum, F1 otherwise.
inline Family classify_family(std::span<const Period> periods)
{
  if (periods.empty()) throw DomainError("empty beacon period set");
  std::vector<Period> sorted(periods.begin(), periods.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() == 0) throw DomainError("beacon periods must be positive");

  bool chain = true;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] % sorted[i - 1] != 0) chain = false;
  if (chain) return Family::F3;

  const Period top = sorted.back();
  for (const Period b : sorted)
    if (top % b != 0) return Family::F1;
  return Family::F2;
}

/// The set B of beacon periods (in slots), strictly increasing, with cached
/// GCD, LCM and family.
class BeaconPeriodSet {
 public:
  explicit BeaconPeriodSet(std::vector<Period> periods) : periods_(std::move(periods))
  {
    if (periods_.empty()) throw DomainError("empty beacon period set");
    std::sort(periods_.begin(), periods_.end());
    periods_.erase(std::unique(periods_.begin(), periods_.end()), periods_.end());
    if (periods_.front() == 0) throw DomainError("beacon periods must be positive");
    gcd_ = 0;
    lcm_ = 1;
    for (const Period b : periods_) {
      gcd_ = std::gcd(gcd_, b);
      lcm_ = detail::checked_lcm(lcm_, b);
    }
    family_ = classify_family(periods_);
  }

  BeaconPeriodSet(std::initializer_list<Period> periods)
      : BeaconPeriodSet(std::vector<Period>(periods))
  {
  }

  std::span<const Period> periods() const { return periods_; }
  std::size_t size() const { return periods_.size(); }
  Period gcd() const { return gcd_; }
  Period lcm() const { return lcm_; }
  Period min() const { return periods_.front(); }
  Period max() const { return periods_.back(); }
  Family family() const { return family_; }

  bool contains(Period b) const { return std::binary_search(periods_.begin(), periods_.end(), b); }

  std::size_t index_of(Period b) const
  {
    const auto it = std::lower_bound(periods_.begin(), periods_.end(), b);
    if (it == periods_.end() || *it != b) throw DomainError("period not in set");
    return static_cast<std::size_t>(it - periods_.begin());
  }

  /// Sum of all periods, i.e. the number of (period, offset) pairs.
  Period period_sum() const { return std::accumulate(periods_.begin(), periods_.end(), Period{0}); }

  friend bool operator==(const BeaconPeriodSet& a, const BeaconPeriodSet& b)
  {
    return a.periods_ == b.periods_;
  }

 private:
  std::vector<Period> periods_;
  Period gcd_ = 1;
  Period lcm_ = 1;
  Family family_ = Family::F1;
};

class ChannelSet {
 public:
  explicit ChannelSet(std::uint32_t count) : count_(count)
  {
    if (count_ == 0) throw DomainError("channel count must be at least 1");
  }
  std::uint32_t count() const { return count_; }
  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

 private:
  std::uint32_t count_;
};

/// A neighbor configuration (channel, beacon period, beacon offset) with its
/// probability under the uniform model.
struct Configuration {
  Channel channel = 0;
  Period period = 1;
  Slot offset = 0;
  Rational probability{0};

  friend bool operator==(const Configuration& a, const Configuration& b)
  {
    return a.channel == b.channel && a.period == b.period && a.offset == b.offset;
  }
};

inline Rational uniform_probability(Period period, const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  return Rational(1, static_cast<std::int64_t>(period * bps.size() * channels.count()));
}

/// Dense indexing of K_BC in (channel, period, offset) lexicographic order.
class ConfigurationIndex {
 public:
  ConfigurationIndex(const BeaconPeriodSet& bps, const ChannelSet& channels)
      : periods_(bps.periods().begin(), bps.periods().end()), channels_(channels.count())
  {
    prefix_.reserve(periods_.size());
    Period acc = 0;
    for (const Period b : periods_) {
      prefix_.push_back(acc);
      acc += b;
    }
    per_channel_ = acc;
  }

  std::size_t size() const { return static_cast<std::size_t>(per_channel_) * channels_; }
  std::size_t per_channel() const { return static_cast<std::size_t>(per_channel_); }

  /// Index of (c, periods[period_index], offset).
  std::size_t at(Channel c, std::size_t period_index, Slot offset) const
  {
    return static_cast<std::size_t>(c * per_channel_ + prefix_[period_index] + offset);
  }

 private:
  std::vector<Period> periods_;
  std::vector<Period> prefix_;
  Period per_channel_ = 0;
  std::uint32_t channels_;
};

/// All configurations of K_BC, ordered by (channel, period, offset).
inline std::vector<Configuration> configuration_space(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(bps.period_sum()) * channels.count());
  for (Channel c = 0; c < channels.count(); ++c)
    for (const Period b : bps.periods()) {
      const Rational p = uniform_probability(b, bps, channels);
      for (Slot d = 0; d < b; ++d) out.push_back({c, b, d, p});
    }
  return out;
}

/// A listening schedule: at most one channel per slot, idle slots absent.
class Schedule {
 public:
  Schedule() = default;

  explicit Schedule(std::map<Slot, Channel> scans, std::optional<Slot> horizon = std::nullopt)
      : scans_(std::move(scans))
  {
    const Slot needed = scans_.empty() ? 0 : scans_.rbegin()->first + 1;
    horizon_ = horizon.value_or(needed);
    if (horizon_ < needed) throw DomainError("schedule scans a slot beyond its horizon");
  }

  const std::map<Slot, Channel>& scans() const { return scans_; }
  Slot horizon() const { return horizon_; }
  bool empty() const { return scans_.empty(); }
  std::size_t size() const { return scans_.size(); }

  std::optional<Channel> channel_at(Slot t) const
  {
    const auto it = scans_.find(t);
    if (it == scans_.end()) return std::nullopt;
    return it->second;
  }

  /// Copy with one additional (or replaced) scan.
  Schedule with_scan(Slot t, Channel c) const
  {
    auto scans = scans_;
    scans[t] = c;
    return Schedule(std::move(scans), std::max(horizon_, t + 1));
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::map<Slot, Channel> scans_;
  Slot horizon_ = 0;
};

struct DiscoveryTime {
  Configuration configuration;
  std::optional<Slot> slot;  // nullopt: undiscovered
};

/// One step of the NDoT curve: cumulative probability of configurations
/// discovered at or before `slot`.
struct NdotPoint {
  Slot slot;
  Rational cumulative;
};

struct DiscoveryReport {
  std::vector<DiscoveryTime> times;  // in configuration_space order
  std::optional<Slot> wdt;           // max discovery slot + 1; nullopt if incomplete
  std::optional<Rational> mdt;       // defined only if complete
  std::vector<NdotPoint> ndot;

  bool complete() const { return wdt.has_value(); }

  std::optional<Slot> time_of(Channel c, Period b, Slot offset) const
  {
    for (const auto& t : times)
      if (t.configuration.channel == c && t.configuration.period == b && t.configuration.offset == offset)
        return t.slot;
    throw DomainError("configuration not in report");
  }

  /// Probability mass discovered within the first `elapsed` slots.
  Rational cdf_within(Slot elapsed) const
  {
    Rational acc{0};
    for (const auto& p : ndot) {
      if (p.slot >= elapsed) break;
      acc = p.cumulative;
    }
    return acc;
  }
};

/// T_k = first scanned slot on k's channel congruent to k's offset modulo its period.
inline DiscoveryReport discovery_times(const Schedule& schedule, const BeaconPeriodSet& bps,
                                       const ChannelSet& channels)
{
  const ConfigurationIndex index(bps, channels);
  auto space = configuration_space(bps, channels);
  std::vector<std::optional<Slot>> found(space.size());

  const auto periods = bps.periods();
  for (const auto& [t, c] : schedule.scans()) {
    if (c >= channels.count()) continue;
    for (std::size_t bi = 0; bi < periods.size(); ++bi) {
      auto& slot = found[index.at(c, bi, t % periods[bi])];
      if (!slot) slot = t;
    }
  }

  DiscoveryReport report;
  report.times.reserve(space.size());
  std::map<Slot, Rational> mass_at;
  bool complete = true;
  Slot last = 0;
  Rational mdt{0};
  for (std::size_t i = 0; i < space.size(); ++i) {
    report.times.push_back({space[i], found[i]});
    if (!found[i]) {
      complete = false;
      continue;
    }
    last = std::max(last, *found[i]);
    mdt += space[i].probability * static_cast<std::int64_t>(*found[i]);
    mass_at[*found[i]] += space[i].probability;
  }
  Rational cumulative{0};
  for (const auto& [t, mass] : mass_at) {
    cumulative += mass;
    report.ndot.push_back({t, cumulative});
  }
  if (complete) {
    report.wdt = last + 1;
    report.mdt = mdt;
  }
  return report;
}

/// Optimal duration of a complete discovery: max(B) * |C|.
inline Slot optimal_wdt(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  return bps.max() * channels.count();
}

/// Divides every period by GCD(B).
inline BeaconPeriodSet normalize_bp_set(const BeaconPeriodSet& bps)
{
  std::vector<Period> reduced;
  reduced.reserve(bps.size());
  for (const Period b : bps.periods()) reduced.push_back(b / bps.gcd());
  return BeaconPeriodSet(std::move(reduced));
}

/// Number of consecutive scan pairs on different channels; idle slots keep
/// the radio tuned to the previous channel.
inline std::size_t channel_switch_count(const Schedule& schedule)
{
  std::size_t switches = 0;
  std::optional<Channel> tuned;
  for (const auto& [t, c] : schedule.scans()) {
    if (tuned && *tuned != c) ++switches;
    tuned = c;
  }
  return switches;
}

/// True if some slot in [0, horizon) is not scanned.
inline bool has_idle_slot(const Schedule& schedule, Slot horizon)
{
  for (Slot t = 0; t < horizon; ++t)
    if (!schedule.channel_at(t)) return true;
  return false;
}

/// Parses "1,2,3" into a period list.
inline std::vector<Period> parse_period_list(const std::string& text)
{
  std::vector<Period> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = item.find_first_not_of(' ');
    item = first == std::string::npos ? std::string() : item.substr(first, item.find_last_not_of(' ') - first + 1);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 18)
      throw DomainError("invalid beacon period list: '" + text + "'");
    out.push_back(std::stoull(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace ndisco
