#pragma once

// Integer programs for minimum mean / worst-case discovery time, an exact
// depth-first branch-and-bound solver for desk-scale instances, and LP-format
// export for external solvers.
//
// Variables: y(i, e) = 1 if entity e (a configuration or a neighbor) is
// detected at its i-th beacon slot offset + i*period; h(c, t) = 1 if channel
// c is scanned at slot t; z = makespan (worst-case objective only).
// Constraints: sum_i y(i, e) = 1;  y(i, e) <= h(channel(e), slot(i, e));
// sum_c h(c, t) <= 1;  and slot(i, e) * y(i, e) <= z for the makespan model.

#include "ndisco/core.hpp"
#include "ndisco/neighbor.hpp"

#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ndisco {

enum class ObjectiveKind { MeanDiscovery, Makespan };

struct Entity {
  std::string id;  // c<channel>b<period>d<offset> or n<index>
  Channel channel;
  Period period;
  Slot offset;
  Rational weight;  // objective weight of the detection slot (MeanDiscovery)
};

enum class VarKind { Binary, Continuous };

struct YVar {
  std::size_t entity;
  std::size_t occurrence;
  Slot slot;
};

struct Term {
  std::size_t var;
  Rational coef;
};

enum class Relation { Equal, LessEqual };

enum class ConstraintKind { ExactlyOne, Link, OneChannel, Makespan };

struct Constraint {
  ConstraintKind kind;
  std::size_t subject;  // entity (ExactlyOne), y index (Link, Makespan), slot (OneChannel)
  std::vector<Term> terms;
  Relation relation;
  Rational rhs;
};

/// Binary program over y, h (and z). Variables are laid out as
/// [y_0 .. y_{n-1}, h(0,0), h(1,0), .., h(|C|-1, t_max), z?].
class IlpModel {
 public:
  IlpModel(ObjectiveKind kind, BeaconPeriodSet bps, ChannelSet channels, Slot t_max, std::vector<Entity> entities)
      : kind_(kind), bps_(std::move(bps)), channels_(channels), t_max_(t_max), entities_(std::move(entities))
  {
    for (std::size_t e = 0; e < entities_.size(); ++e) {
      const auto& ent = entities_[e];
      if (ent.offset > t_max_) {
        if (!infeasibility_)
          infeasibility_ = "t_max = " + std::to_string(t_max_) + " is before the first beacon of " + ent.id;
        continue;
      }
      const std::size_t count = (t_max_ - ent.offset) / ent.period + 1;
      for (std::size_t i = 0; i < count; ++i) y_vars_.push_back({e, i, ent.offset + i * ent.period});
    }
    h_base_ = y_vars_.size();
    var_count_ = h_base_ + static_cast<std::size_t>((t_max_ + 1) * channels_.count());
    if (kind_ == ObjectiveKind::Makespan) z_var_ = var_count_++;

    // exactly-one per entity
    std::vector<std::vector<Term>> per_entity(entities_.size());
    for (std::size_t k = 0; k < y_vars_.size(); ++k) per_entity[y_vars_[k].entity].push_back({k, Rational(1)});
    for (std::size_t e = 0; e < entities_.size(); ++e)
      constraints_.push_back({ConstraintKind::ExactlyOne, e, std::move(per_entity[e]), Relation::Equal, Rational(1)});
    // linking
    for (std::size_t k = 0; k < y_vars_.size(); ++k) {
      const auto& y = y_vars_[k];
      constraints_.push_back({ConstraintKind::Link,
                              k,
                              {{k, Rational(1)}, {h_index(entities_[y.entity].channel, y.slot), Rational(-1)}},
                              Relation::LessEqual,
                              Rational(0)});
    }
    // one channel per slot
    for (Slot t = 0; t <= t_max_; ++t) {
      std::vector<Term> terms;
      for (Channel c = 0; c < channels_.count(); ++c) terms.push_back({h_index(c, t), Rational(1)});
      constraints_.push_back({ConstraintKind::OneChannel, static_cast<std::size_t>(t), std::move(terms),
                              Relation::LessEqual, Rational(1)});
    }
    if (kind_ == ObjectiveKind::Makespan) {
      for (std::size_t k = 0; k < y_vars_.size(); ++k)
        constraints_.push_back({ConstraintKind::Makespan,
                                k,
                                {{k, Rational(static_cast<std::int64_t>(y_vars_[k].slot))}, {*z_var_, Rational(-1)}},
                                Relation::LessEqual,
                                Rational(0)});
      objective_.push_back({*z_var_, Rational(1)});
    } else {
      for (std::size_t k = 0; k < y_vars_.size(); ++k)
        objective_.push_back(
            {k, entities_[y_vars_[k].entity].weight * static_cast<std::int64_t>(y_vars_[k].slot)});
    }
  }

  ObjectiveKind kind() const { return kind_; }
  const BeaconPeriodSet& bps() const { return bps_; }
  const ChannelSet& channels() const { return channels_; }
  Slot t_max() const { return t_max_; }
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<YVar>& y_vars() const { return y_vars_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  std::optional<std::size_t> z_var() const { return z_var_; }
  std::size_t variable_count() const { return var_count_; }

  /// Set when the model is infeasible by construction.
  const std::optional<std::string>& infeasibility() const { return infeasibility_; }

  std::size_t h_index(Channel c, Slot t) const
  {
    return h_base_ + static_cast<std::size_t>(t * channels_.count() + c);
  }

  VarKind var_kind(std::size_t v) const
  {
    return z_var_ && v == *z_var_ ? VarKind::Continuous : VarKind::Binary;
  }

  std::string var_name(std::size_t v) const
  {
    if (v < h_base_) {
      const auto& y = y_vars_[v];
      return "y_" + std::to_string(y.occurrence) + "_" + entities_[y.entity].id;
    }
    if (z_var_ && v == *z_var_) return "z";
    const auto rel = v - h_base_;
    return "h_" + std::to_string(rel % channels_.count()) + "_" + std::to_string(rel / channels_.count());
  }

  std::string constraint_name(const Constraint& con) const
  {
    switch (con.kind) {
      case ConstraintKind::ExactlyOne: return "one_" + entities_[con.subject].id;
      case ConstraintKind::Link: return "link_" + var_name(con.subject);
      case ConstraintKind::OneChannel: return "slot_" + std::to_string(con.subject);
      case ConstraintKind::Makespan: return "wdt_" + var_name(con.subject);
    }
    return "?";
  }

 private:
  ObjectiveKind kind_;
  BeaconPeriodSet bps_;
  ChannelSet channels_;
  Slot t_max_;
  std::vector<Entity> entities_;
  std::vector<YVar> y_vars_;
  std::size_t h_base_ = 0;
  std::size_t var_count_ = 0;
  std::optional<std::size_t> z_var_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  std::optional<std::string> infeasibility_;
};

inline std::string configuration_id(Channel c, Period b, Slot d)
{
  return "c" + std::to_string(c) + "b" + std::to_string(b) + "d" + std::to_string(d);
}

/// Minimum-MDT program over all of K_BC; default horizon t_max = LCM(B)|C| - 1.
inline IlpModel build_mdtopt(const BeaconPeriodSet& bps, const ChannelSet& channels,
                             std::optional<Slot> t_max = std::nullopt)
{
  std::vector<Entity> entities;
  for (const auto& k : configuration_space(bps, channels))
    entities.push_back({configuration_id(k.channel, k.period, k.offset), k.channel, k.period, k.offset, k.probability});
  return IlpModel(ObjectiveKind::MeanDiscovery, bps, channels, t_max.value_or(bps.lcm() * channels.count() - 1),
                  std::move(entities));
}

/// min(1000 max(B)|C| - 1, LCM(B)|C| - 1)
inline Slot sample_t_max(const BeaconPeriodSet& bps, const ChannelSet& channels)
{
  return std::min<Slot>(1000 * bps.max() * channels.count() - 1, bps.lcm() * channels.count() - 1);
}

namespace detail {

inline std::vector<Entity> neighbor_entities(std::span<const Neighbor> neighbors, const BeaconPeriodSet& bps,
                                             const ChannelSet& channels)
{
  if (neighbors.empty()) throw DomainError("neighbor list is empty");
  std::vector<Entity> entities;
  const Rational weight(1, static_cast<std::int64_t>(neighbors.size()));
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    validate_neighbor(neighbors[i], bps, channels);
    entities.push_back({"n" + std::to_string(i), neighbors[i].channel, neighbors[i].period, neighbors[i].offset, weight});
  }
  return entities;
}

}  // namespace detail

/// Minimum sample-mean discovery time over a concrete neighbor population.
inline IlpModel build_sample_mdt(std::span<const Neighbor> neighbors, const BeaconPeriodSet& bps,
                                 const ChannelSet& channels, std::optional<Slot> t_max = std::nullopt)
{
  return IlpModel(ObjectiveKind::MeanDiscovery, bps, channels, t_max.value_or(sample_t_max(bps, channels)),
                  detail::neighbor_entities(neighbors, bps, channels));
}

/// Minimum sample worst-case discovery time (objective z).
inline IlpModel build_sample_wdt(std::span<const Neighbor> neighbors, const BeaconPeriodSet& bps,
                                 const ChannelSet& channels, std::optional<Slot> t_max = std::nullopt)
{
  return IlpModel(ObjectiveKind::Makespan, bps, channels, t_max.value_or(sample_t_max(bps, channels)),
                  detail::neighbor_entities(neighbors, bps, channels));
}

// ---------------------------------------------------------------------------
// Assignments

/// The variable assignment a schedule induces: h from the scans, each y at
/// the entity's first scanned beacon, z at the latest detection.
inline std::vector<Rational> realize(const IlpModel& model, const Schedule& schedule)
{
  std::vector<Rational> values(model.variable_count(), Rational(0));
  for (const auto& [t, c] : schedule.scans())
    if (t <= model.t_max() && c < model.channels().count()) values[model.h_index(c, t)] = 1;
  std::vector<char> done(model.entities().size(), 0);
  Slot latest = 0;
  for (std::size_t k = 0; k < model.y_vars().size(); ++k) {
    const auto& y = model.y_vars()[k];
    if (done[y.entity]) continue;
    if (schedule.channel_at(y.slot) == model.entities()[y.entity].channel) {
      values[k] = 1;
      done[y.entity] = 1;
      latest = std::max(latest, y.slot);
    }
  }
  if (model.z_var()) values[*model.z_var()] = static_cast<std::int64_t>(latest);
  return values;
}

inline Rational evaluate_terms(std::span<const Term> terms, std::span<const Rational> values)
{
  Rational acc(0);
  for (const auto& term : terms) acc += term.coef * values[term.var];
  return acc;
}

inline bool is_feasible(const IlpModel& model, std::span<const Rational> values)
{
  for (std::size_t v = 0; v < values.size(); ++v)
    if (model.var_kind(v) == VarKind::Binary && values[v] != Rational(0) && values[v] != Rational(1)) return false;
  for (const auto& con : model.constraints()) {
    const auto lhs = evaluate_terms(con.terms, values);
    if (con.relation == Relation::Equal ? lhs != con.rhs : lhs > con.rhs) return false;
  }
  return true;
}

inline Rational objective_value(const IlpModel& model, std::span<const Rational> values)
{
  return evaluate_terms(model.objective(), values);
}

// ---------------------------------------------------------------------------
// Exact solver

enum class SolveStatus { Optimal, BudgetExceeded, Infeasible };

inline const char* to_string(SolveStatus s)
{
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::BudgetExceeded: return "budget-exceeded";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Rational> objective;  // best incumbent
  std::optional<Schedule> schedule;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeLimit = 50'000'000;

namespace detail {

// Depth-first branch-and-bound over the scan decisions in slot order. The y
// variables are implicit: every entity is detected at its first scanned
// beacon, which is optimal for both objectives. Pruning:
//  - bound: objective so far plus each undiscovered entity's earliest
//    remaining beacon (MeanDiscovery also charges, among entities whose next
//    beacon is the current slot, all channels but the heaviest one period);
//  - dominance: a slot is only left idle when no channel can detect anything
//    (an extra scan never delays a detection), and zero-value scans are
//    treated as idle;
//  - symmetry: among channels with identical entity sets of which nothing has
//    been detected yet, only the lowest-indexed is branched on;
//  - transposition: a (slot, detected set) state reached again with a no
//    better objective is cut.
class ScanBranchAndBound {
 public:
  explicit ScanBranchAndBound(const IlpModel& model, std::uint64_t node_limit = kDefaultNodeLimit)
      : model_(model), node_limit_(node_limit), channels_(model.channels().count())
  {
    const auto& ents = model.entities();
    std::int64_t den = 1;
    for (const auto& e : ents) den = std::lcm(den, e.weight.denominator());
    scale_ = den;
    for (const auto& e : ents) weights_.push_back(e.weight.numerator() * (den / e.weight.denominator()));
    words_ = (ents.size() + 63) / 64;
    discovered_.assign(words_, 0);
    undiscovered_ = ents.size();
    per_channel_found_.assign(channels_, 0);

    buckets_.resize(channels_);
    for (std::size_t i = 0; i < ents.size(); ++i) {
      auto& list = buckets_[ents[i].channel];
      auto it = std::find_if(list.begin(), list.end(), [&](const Bucket& b) { return b.period == ents[i].period; });
      if (it == list.end()) {
        list.push_back({ents[i].period, std::vector<std::vector<std::uint32_t>>(ents[i].period)});
        it = std::prev(list.end());
      }
      it->by_offset[ents[i].offset].push_back(static_cast<std::uint32_t>(i));
    }

    // channel equivalence classes by entity multiset
    std::vector<std::vector<std::tuple<Period, Slot, std::int64_t>>> signature(channels_);
    for (std::size_t i = 0; i < ents.size(); ++i)
      signature[ents[i].channel].emplace_back(ents[i].period, ents[i].offset, weights_[i]);
    for (auto& s : signature) std::sort(s.begin(), s.end());
    group_.resize(channels_);
    for (Channel c = 0; c < channels_; ++c) {
      group_[c] = c;
      for (Channel p = 0; p < c; ++p)
        if (signature[p] == signature[c]) {
          group_[c] = group_[p];
          break;
        }
    }
    plan_.assign(model.t_max() + 1, -1);
  }

  SolveResult solve()
  {
    SolveResult result;
    if (model_.infeasibility()) return result;
    descend(0, 0);
    result.nodes = nodes_;
    if (best_) {
      result.status = aborted_ ? SolveStatus::BudgetExceeded : SolveStatus::Optimal;
      result.objective = to_objective(*best_);
      std::map<Slot, Channel> scans;
      for (Slot t = 0; t < best_plan_.size(); ++t)
        if (best_plan_[t] >= 0) scans.emplace(t, static_cast<Channel>(best_plan_[t]));
      result.schedule = Schedule(std::move(scans));
    } else {
      result.status = aborted_ ? SolveStatus::BudgetExceeded : SolveStatus::Infeasible;
    }
    return result;
  }

  /// Applies the scans of `prefix` in [0, t) and returns the lower bound of
  /// the resulting node (nullopt if the node is infeasible).
  std::optional<Rational> bound_after(const Schedule& prefix, Slot t)
  {
    std::int64_t partial = 0;
    for (const auto& [s, c] : prefix.scans()) {
      if (s >= t) break;
      std::vector<std::uint32_t> found;
      partial = accumulate(partial, s, apply_scan(c, s, found));
    }
    const auto lb = bound(t, partial);
    if (!lb) return std::nullopt;
    return to_objective(*lb);
  }

 private:
  struct Bucket {
    Period period;
    std::vector<std::vector<std::uint32_t>> by_offset;
  };

  struct StateKeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const
    {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (const auto w : key) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
      }
      return static_cast<std::size_t>(h ^ (h >> 33));
    }
  };

  static constexpr std::size_t kMemoCapacity = 4'000'000;

  Rational to_objective(std::int64_t scaled) const
  {
    if (model_.kind() == ObjectiveKind::Makespan) return Rational(scaled);
    return Rational(scaled, scale_);
  }

  bool is_discovered(std::size_t i) const { return (discovered_[i / 64] >> (i % 64)) & 1U; }
  void set_discovered(std::size_t i) { discovered_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void clear_discovered(std::size_t i) { discovered_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  static Slot next_beacon(const Entity& e, Slot t)
  {
    if (t <= e.offset) return e.offset;
    return e.offset + (t - e.offset + e.period - 1) / e.period * e.period;
  }

  std::int64_t value(Channel c, Slot t) const
  {
    std::int64_t v = 0;
    for (const auto& bucket : buckets_[c])
      for (const auto i : bucket.by_offset[t % bucket.period])
        if (!is_discovered(i)) v += weights_[i];
    return v;
  }

  /// Returns the weight (MeanDiscovery) or count (Makespan) detected.
  std::int64_t apply_scan(Channel c, Slot t, std::vector<std::uint32_t>& found)
  {
    std::int64_t gained = 0;
    for (const auto& bucket : buckets_[c])
      for (const auto i : bucket.by_offset[t % bucket.period])
        if (!is_discovered(i)) {
          set_discovered(i);
          found.push_back(i);
          gained += weights_[i];
        }
    undiscovered_ -= found.size();
    per_channel_found_[c] += found.size();
    return gained;
  }

  void undo_scan(Channel c, const std::vector<std::uint32_t>& found)
  {
    for (const auto i : found) clear_discovered(i);
    undiscovered_ += found.size();
    per_channel_found_[c] -= found.size();
  }

  std::int64_t accumulate(std::int64_t partial, Slot t, std::int64_t gained) const
  {
    if (model_.kind() == ObjectiveKind::Makespan)
      return gained > 0 ? std::max<std::int64_t>(partial, static_cast<std::int64_t>(t)) : partial;
    return partial + gained * static_cast<std::int64_t>(t);
  }

  std::optional<std::int64_t> bound(Slot t, std::int64_t partial) const
  {
    const auto& ents = model_.entities();
    if (model_.kind() == ObjectiveKind::Makespan) {
      std::int64_t worst = partial;
      for (std::size_t i = 0; i < ents.size(); ++i) {
        if (is_discovered(i)) continue;
        const Slot next = next_beacon(ents[i], t);
        if (next > model_.t_max()) return std::nullopt;
        worst = std::max<std::int64_t>(worst, static_cast<std::int64_t>(next));
      }
      return worst;
    }
    std::int64_t total = partial;
    conflict_.assign(channels_, 0);
    for (std::size_t i = 0; i < ents.size(); ++i) {
      if (is_discovered(i)) continue;
      const Slot next = next_beacon(ents[i], t);
      if (next > model_.t_max()) return std::nullopt;
      total += weights_[i] * static_cast<std::int64_t>(next);
      if (next == t) conflict_[ents[i].channel] += weights_[i] * static_cast<std::int64_t>(ents[i].period);
    }
    std::int64_t sum = 0;
    std::int64_t top = 0;
    for (const auto v : conflict_) {
      sum += v;
      top = std::max(top, v);
    }
    return total + sum - top;
  }

  Slot next_event(Slot t) const
  {
    Slot next = model_.t_max() + 1;
    const auto& ents = model_.entities();
    for (std::size_t i = 0; i < ents.size(); ++i)
      if (!is_discovered(i)) next = std::min(next, next_beacon(ents[i], t));
    return next;
  }

  void descend(Slot t, std::int64_t partial)
  {
    if (aborted_) return;
    if (++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    if (undiscovered_ == 0) {
      if (!best_ || partial < *best_) {
        best_ = partial;
        best_plan_.assign(plan_.begin(), plan_.begin() + static_cast<std::ptrdiff_t>(t));
      }
      return;
    }
    if (t > model_.t_max()) return;
    const auto lb = bound(t, partial);
    if (!lb || (best_ && *lb >= *best_)) return;

    if (memo_enabled_) {
      auto key = discovered_;
      key.push_back(t);
      const auto it = memo_.find(key);
      if (it != memo_.end()) {
        if (it->second <= partial) return;
        it->second = partial;
      } else if (memo_.size() < kMemoCapacity) {
        memo_.emplace(std::move(key), partial);
      }
    }

    std::vector<std::pair<std::int64_t, Channel>> candidates;
    for (Channel c = 0; c < channels_; ++c) {
      const auto v = value(c, t);
      if (v > 0) candidates.emplace_back(v, c);
    }
    if (candidates.empty()) {
      descend(next_event(t + 1), partial);
      return;
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<std::uint32_t> found;
    std::vector<char> group_tried(channels_, 0);
    for (const auto& [v, c] : candidates) {
      if (per_channel_found_[c] == 0) {
        if (group_tried[group_[c]]) continue;
        group_tried[group_[c]] = 1;
      }
      found.clear();
      const auto gained = apply_scan(c, t, found);
      plan_[t] = static_cast<int>(c);
      descend(t + 1, accumulate(partial, t, gained));
      plan_[t] = -1;
      undo_scan(c, found);
      if (aborted_) return;
    }
  }

  const IlpModel& model_;
  std::uint64_t node_limit_;
  std::uint32_t channels_;
  std::int64_t scale_ = 1;
  std::vector<std::int64_t> weights_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> discovered_;
  std::size_t undiscovered_ = 0;
  std::vector<std::size_t> per_channel_found_;
  std::vector<std::vector<Bucket>> buckets_;
  std::vector<Channel> group_;
  std::vector<int> plan_;
  std::vector<int> best_plan_;
  std::optional<std::int64_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool memo_enabled_ = true;
  std::unordered_map<std::vector<std::uint64_t>, std::int64_t, StateKeyHash> memo_;
  mutable std::vector<std::int64_t> conflict_;
};

}  // namespace detail

/// Solves a model built by build_mdtopt / build_sample_mdt / build_sample_wdt.
/// The returned objective is recomputed from the model's own linear objective
/// on the realized assignment, and that assignment is checked against every
/// constraint.
inline SolveResult solve_exact(const IlpModel& model, std::uint64_t node_limit = kDefaultNodeLimit)
{
  detail::ScanBranchAndBound search(model, node_limit);
  auto result = search.solve();
  if (result.schedule) {
    const auto values = realize(model, *result.schedule);
    if (!is_feasible(model, values)) throw std::logic_error("solver produced an infeasible assignment");
    if (objective_value(model, values) != *result.objective)
      throw std::logic_error("solver objective disagrees with the model objective");
  }
  return result;
}

// ---------------------------------------------------------------------------
// LP export

namespace detail {

class LpLineWriter {
 public:
  explicit LpLineWriter(std::ostream& out) : out_(out) {}

  void start(const std::string& head)
  {
    out_ << head;
    width_ = head.size();
  }

  void token(const std::string& text)
  {
    if (width_ + text.size() + 1 > kMaxWidth) {
      out_ << "\n   ";
      width_ = 3;
    }
    out_ << ' ' << text;
    width_ += text.size() + 1;
  }

  void end() { out_ << '\n'; }

 private:
  static constexpr std::size_t kMaxWidth = 200;
  std::ostream& out_;
  std::size_t width_ = 0;
};

inline void write_terms(LpLineWriter& line, const IlpModel& model, std::span<const Term> terms)
{
  bool first = true;
  for (const auto& term : terms) {
    const bool negative = term.coef < Rational(0);
    const Rational mag = negative ? -term.coef : term.coef;
    std::string text = first ? (negative ? "-" : "") : (negative ? "- " : "+ ");
    if (mag != Rational(1)) text += to_exact_decimal(mag) + " ";
    text += model.var_name(term.var);
    line.token(text);
    first = false;
  }
}

}  // namespace detail

/// Writes the model in CPLEX LP format. Coefficients are exact decimals when
/// terminating, 17 significant digits otherwise.
inline void export_lp(const IlpModel& model, std::ostream& out)
{
  detail::LpLineWriter line(out);
  out << "\\ ndisco " << (model.kind() == ObjectiveKind::Makespan ? "min-makespan" : "min-mean-discovery")
      << " model, t_max = " << model.t_max() << "\n";
  out << "Minimize\n";
  line.start(" obj:");
  detail::write_terms(line, model, model.objective());
  line.end();
  out << "Subject To\n";
  for (const auto& con : model.constraints()) {
    line.start(" " + model.constraint_name(con) + ":");
    detail::write_terms(line, model, con.terms);
    line.token(con.relation == Relation::Equal ? "=" : "<=");
    line.token(to_exact_decimal(con.rhs));
    line.end();
  }
  if (model.z_var()) out << "Bounds\n z >= 0\n";
  out << "Binary\n";
  for (std::size_t v = 0; v < model.variable_count(); ++v)
    if (model.var_kind(v) == VarKind::Binary) out << ' ' << model.var_name(v) << '\n';
  out << "End\n";
  if (!out) throw std::ios_base::failure("failed to write LP model");
}

inline std::string export_lp(const IlpModel& model)
{
  std::ostringstream out;
  export_lp(model, out);
  return out.str();
}

}  // namespace ndisco
