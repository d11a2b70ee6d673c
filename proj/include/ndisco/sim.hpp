#pragma once

// Slotted discovery simulation over sampled neighbor populations, with deaf
// periods after channel switches, and aggregation of sample metrics across a
// scenario x strategy grid.

#include "ndisco/core.hpp"
#include "ndisco/neighbor.hpp"
#include "ndisco/optimal.hpp"
#include "ndisco/schedulers.hpp"

#include <cmath>
#include <ostream>

namespace ndisco::sim {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: draw(n) is a pure function of (key, n), so any
/// neighbor's values can be regenerated without replaying earlier draws.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix64(key_ ^ mix64(counter)); }

  /// Uniform integer in [0, n) by multiply-shift (bias below n / 2^64).
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const
  {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(counter)) * n) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
};

struct Scenario {
  BeaconPeriodSet bps{1};
  ChannelSet channels{1};
  std::uint32_t neighbor_count = 1;
  double deaf_fraction = 0.0;
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;

  void validate() const
  {
    if (neighbor_count == 0) throw DomainError("scenario needs at least one neighbor");
    if (trials == 0) throw DomainError("scenario needs at least one trial");
    if (!(deaf_fraction >= 0.0 && deaf_fraction < 1.0)) throw DomainError("deaf_fraction must lie in [0, 1)");
  }
};

/// Key of the population drawn for `trial`.
inline std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial)
{
  return mix64(seed ^ mix64(trial ^ 0x6e6469736330ULL));
}

/// Neighbor i uses counters 4i .. 4i+3 for period, offset, channel, phase.
inline std::vector<Neighbor> sample_neighbors(const Scenario& scenario, std::uint64_t trial = 0)
{
  scenario.validate();
  const CounterRng rng(trial_key(scenario.seed, trial));
  const auto periods = scenario.bps.periods();
  std::vector<Neighbor> out;
  out.reserve(scenario.neighbor_count);
  for (std::uint64_t i = 0; i < scenario.neighbor_count; ++i) {
    Neighbor n;
    n.period = periods[rng.below(4 * i, periods.size())];
    n.offset = rng.below(4 * i + 1, n.period);
    n.channel = static_cast<Channel>(rng.below(4 * i + 2, scenario.channels.count()));
    n.phase = rng.unit(4 * i + 3);
    out.push_back(n);
  }
  return out;
}

struct TrialOutcome {
  std::vector<std::optional<Slot>> discovery;  // per neighbor
  double success_rate = 0.0;
  std::optional<double> smdt;  // mean over discovered neighbors
  std::optional<Slot> swdt;    // latest discovery slot
  std::vector<std::pair<Slot, double>> sndot;  // (slot, fraction discovered at or before slot)
  std::size_t switches = 0;

  /// Fraction of all neighbors discovered within the first `elapsed` slots.
  double fraction_within(Slot elapsed) const
  {
    double acc = 0.0;
    for (const auto& [slot, fraction] : sndot) {
      if (slot >= elapsed) break;
      acc = fraction;
    }
    return acc;
  }
};

/// A beacon at slot t is heard iff the neighbor's channel is scanned at t and
/// not (the radio switched channel entering t and the beacon's phase falls
/// in the first `deaf_fraction` of the slot).
inline TrialOutcome run_trial(const Schedule& schedule, std::span<const Neighbor> neighbors, double deaf_fraction)
{
  const Slot horizon = schedule.horizon();
  std::vector<int> scanned(horizon, -1);
  std::vector<char> switched(horizon, 0);
  std::optional<Channel> tuned;
  for (const auto& [t, c] : schedule.scans()) {
    scanned[t] = static_cast<int>(c);
    switched[t] = tuned && *tuned != c;
    tuned = c;
  }

  TrialOutcome out;
  out.switches = channel_switch_count(schedule);
  out.discovery.resize(neighbors.size());
  std::map<Slot, std::size_t> found_at;
  double sum = 0.0;
  std::size_t found = 0;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const auto& n = neighbors[i];
    for (Slot t = n.offset; t < horizon; t += n.period) {
      if (scanned[t] != static_cast<int>(n.channel)) continue;
      if (switched[t] && n.phase < deaf_fraction) continue;
      out.discovery[i] = t;
      break;
    }
    if (const auto t = out.discovery[i]) {
      ++found;
      sum += static_cast<double>(*t);
      ++found_at[*t];
      out.swdt = std::max(out.swdt.value_or(0), *t);
    }
  }
  const auto total = static_cast<double>(neighbors.size());
  out.success_rate = neighbors.empty() ? 1.0 : static_cast<double>(found) / total;
  if (found > 0) out.smdt = sum / static_cast<double>(found);
  std::size_t cumulative = 0;
  for (const auto& [t, k] : found_at) {
    cumulative += k;
    out.sndot.emplace_back(t, static_cast<double>(cumulative) / total);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation

struct Estimate {
  double mean = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width
  std::size_t samples = 0;
};

inline Estimate estimate(std::span<const double> xs)
{
  Estimate e;
  e.samples = xs.size();
  if (xs.empty()) return e;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (const double x : xs) sq += (x - e.mean) * (x - e.mean);
    const double sd = std::sqrt(sq / static_cast<double>(xs.size() - 1));
    e.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
  }
  return e;
}

struct GridEntry {
  std::string id;
  Scenario scenario;
  std::vector<std::string> strategies;
};

struct MetricRow {
  std::string scenario_id;
  std::string strategy;
  std::string metric;
  Estimate value;
};

struct CurveRow {
  std::string scenario_id;
  std::string strategy;
  double normalized_time;
  double fraction;
};

struct EvaluationOptions {
  bool normalize_ilp = false;
  std::uint64_t node_limit = kDefaultNodeLimit;
  Slot ilp_slot_ceiling = 20'000;  // largest t_max accepted for ILP normalization
};

struct EvaluationResult {
  std::vector<MetricRow> metrics;
  std::vector<CurveRow> curves;
};

inline constexpr std::array<std::string_view, 6> kMetricNames = {
    "success_rate", "smdt", "swdt", "smdt_normalized", "swdt_normalized", "switches"};

namespace detail {

struct TrialOptima {
  std::optional<double> smdt;
  std::optional<double> swdt;
};

inline double solve_optimum(const IlpModel& model, std::uint64_t node_limit)
{
  const auto result = solve_exact(model, node_limit);
  if (result.status != SolveStatus::Optimal)
    throw DomainError(std::string("ILP normalization failed: solver status ") + to_string(result.status));
  return to_double(*result.objective);
}

}  // namespace detail

/// Runs every (scenario, strategy) pair. Per-trial metrics: success rate,
/// SMDT and SWDT (discovered neighbors only), both normalized by max(B)|C|
/// or, with normalize_ilp, by the per-trial ILP optima; switch count. The
/// SNDoT curve is averaged pointwise on the grid k / (max(B)|C|).
inline EvaluationResult evaluate(std::span<const GridEntry> grid, const EvaluationOptions& options = {})
{
  EvaluationResult result;
  for (const auto& entry : grid) {
    const auto& sc = entry.scenario;
    sc.validate();
    const double unit = static_cast<double>(optimal_wdt(sc.bps, sc.channels));

    std::vector<std::vector<Neighbor>> populations;
    populations.reserve(sc.trials);
    for (std::uint64_t k = 0; k < sc.trials; ++k) populations.push_back(sample_neighbors(sc, k));

    std::vector<detail::TrialOptima> optima(sc.trials);
    if (options.normalize_ilp) {
      const Slot t_max = sample_t_max(sc.bps, sc.channels);
      if (t_max > options.ilp_slot_ceiling)
        throw DomainError("ILP normalization refused: t_max = " + std::to_string(t_max) + " exceeds the ceiling of " +
                          std::to_string(options.ilp_slot_ceiling));
      for (std::size_t k = 0; k < sc.trials; ++k) {
        const double mdt = detail::solve_optimum(build_sample_mdt(populations[k], sc.bps, sc.channels), options.node_limit);
        const double wdt = detail::solve_optimum(build_sample_wdt(populations[k], sc.bps, sc.channels), options.node_limit);
        if (mdt > 0.0) optima[k].smdt = mdt;
        if (wdt > 0.0) optima[k].swdt = wdt;
      }
    }

    for (const auto& strategy : entry.strategies) {
      const auto schedule = make_schedule(strategy, sc.bps, sc.channels);
      std::vector<double> success, smdt, swdt, smdt_n, swdt_n, switches;
      std::vector<TrialOutcome> outcomes;
      outcomes.reserve(sc.trials);
      for (std::size_t k = 0; k < sc.trials; ++k) {
        auto outcome = run_trial(schedule, populations[k], sc.deaf_fraction);
        success.push_back(outcome.success_rate);
        switches.push_back(static_cast<double>(outcome.switches));
        if (outcome.smdt) {
          smdt.push_back(*outcome.smdt);
          if (!options.normalize_ilp) smdt_n.push_back(*outcome.smdt / unit);
          else if (optima[k].smdt) smdt_n.push_back(*outcome.smdt / *optima[k].smdt);
        }
        if (outcome.swdt) {
          const auto w = static_cast<double>(*outcome.swdt);
          swdt.push_back(w);
          if (!options.normalize_ilp) swdt_n.push_back(w / unit);
          else if (optima[k].swdt) swdt_n.push_back(w / *optima[k].swdt);
        }
        outcomes.push_back(std::move(outcome));
      }
      const std::array<const std::vector<double>*, 6> series = {&success, &smdt, &swdt, &smdt_n, &swdt_n, &switches};
      for (std::size_t m = 0; m < series.size(); ++m) {
        if (series[m]->empty()) continue;
        result.metrics.push_back({entry.id, strategy, std::string(kMetricNames[m]), estimate(*series[m])});
      }
      for (Slot k = 0; k <= schedule.horizon(); ++k) {
        double acc = 0.0;
        for (const auto& o : outcomes) acc += o.fraction_within(k);
        result.curves.push_back(
            {entry.id, strategy, static_cast<double>(k) / unit, acc / static_cast<double>(outcomes.size())});
      }
    }
  }
  return result;
}

inline const Estimate& find_metric(const EvaluationResult& result, std::string_view scenario_id,
                                   std::string_view strategy, std::string_view metric)
{
  for (const auto& row : result.metrics)
    if (row.scenario_id == scenario_id && row.strategy == strategy && row.metric == metric) return row.value;
  throw DomainError("metric " + std::string(metric) + " missing for " + std::string(scenario_id) + "/" +
                    std::string(strategy));
}

inline void write_metrics_csv(const EvaluationResult& result, std::ostream& out)
{
  out << "scenario_id,strategy,metric,mean,ci95\n";
  for (const auto& row : result.metrics)
    out << row.scenario_id << ',' << row.strategy << ',' << row.metric << ',' << to_significant(row.value.mean) << ','
        << to_significant(row.value.ci95) << '\n';
}

inline void write_sndot_csv(const EvaluationResult& result, std::ostream& out)
{
  out << "scenario_id,strategy,normalized_time,fraction\n";
  for (const auto& row : result.curves)
    out << row.scenario_id << ',' << row.strategy << ',' << to_significant(row.normalized_time) << ','
        << to_significant(row.fraction) << '\n';
}

}  // namespace ndisco::sim
