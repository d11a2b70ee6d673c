#pragma once

#include "ndisco/core.hpp"

namespace ndisco {

/// A concrete beaconing neighbor. `phase` is the fixed intra-slot position
/// of its beacons, in [0, 1).
struct Neighbor {
  Channel channel = 0;
  Period period = 1;
  Slot offset = 0;
  double phase = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

inline void validate_neighbor(const Neighbor& n, const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  if (n.channel >= channels.count()) throw DomainError("neighbor channel out of range");
  if (!bps.contains(n.period)) throw DomainError("neighbor period not in the BP set");
  if (n.offset >= n.period) throw DomainError("neighbor offset must be below its period");
  if (!(n.phase >= 0.0 && n.phase < 1.0)) throw DomainError("neighbor phase must lie in [0, 1)");
}

}  // namespace ndisco
