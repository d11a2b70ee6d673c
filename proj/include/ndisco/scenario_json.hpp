#pragma once

// Scenario files for `ndisco simulate`. Accepted shapes: one scenario
// object, an array of them, or {"scenarios": [...]}. Each scenario is
//   {"id": "...", "bps": [...], "channels": n, "neighbors": n,
//    "deaf_fraction": x, "trials": n, "seed": n, "strategies": [...]}
// with "id" optional (defaults to s<index>).

#include "ndisco/json_io.hpp"
#include "ndisco/sim.hpp"

namespace ndisco {

namespace detail {

inline const json& require(const json& obj, const char* key, const std::string& where)
{
  if (!obj.contains(key)) throw DomainError(where + ": missing \"" + key + "\"");
  return obj[key];
}

inline std::uint64_t require_unsigned(const json& obj, const char* key, const std::string& where)
{
  const auto& v = require(obj, key, where);
  if (!v.is_number_unsigned()) throw DomainError(where + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline std::uint32_t require_count(const json& obj, const char* key, const std::string& where)
{
  const auto v = require_unsigned(obj, key, where);
  if (v == 0 || v > std::numeric_limits<std::uint32_t>::max())
    throw DomainError(where + ": \"" + key + "\" must be a positive 32-bit integer");
  return static_cast<std::uint32_t>(v);
}

inline sim::GridEntry scenario_from_json(const json& doc, std::size_t index)
{
  std::string where = "scenario " + std::to_string(index);
  if (!doc.is_object()) throw DomainError(where + ": expected an object");
  sim::GridEntry entry;
  entry.id = "s" + std::to_string(index);
  if (doc.contains("id")) {
    if (!doc["id"].is_string() || doc["id"].get<std::string>().empty())
      throw DomainError(where + ": \"id\" must be a nonempty string");
    entry.id = doc["id"].get<std::string>();
    if (entry.id.find_first_of(",\"\n\r") != std::string::npos)
      throw DomainError(where + ": \"id\" must not contain commas, quotes or newlines");
    where = "scenario " + entry.id;
  }

  const auto& bps = require(doc, "bps", where);
  if (!bps.is_array() || bps.empty()) throw DomainError(where + ": \"bps\" must be a nonempty array");
  std::vector<Period> periods;
  for (const auto& b : bps) {
    if (!b.is_number_unsigned()) throw DomainError(where + ": periods must be positive integers");
    periods.push_back(b.get<Period>());
  }
  auto& sc = entry.scenario;
  sc.bps = BeaconPeriodSet(std::move(periods));
  sc.channels = ChannelSet(require_count(doc, "channels", where));
  sc.neighbor_count = require_count(doc, "neighbors", where);
  sc.trials = require_count(doc, "trials", where);
  sc.seed = require_unsigned(doc, "seed", where);
  const auto& deaf = require(doc, "deaf_fraction", where);
  if (!deaf.is_number()) throw DomainError(where + ": \"deaf_fraction\" must be a number");
  sc.deaf_fraction = deaf.get<double>();
  sc.validate();

  const auto& strategies = require(doc, "strategies", where);
  if (!strategies.is_array() || strategies.empty())
    throw DomainError(where + ": \"strategies\" must be a nonempty array");
  for (const auto& s : strategies) {
    if (!s.is_string() || !is_strategy(s.get<std::string>()))
      throw DomainError(where + ": unknown strategy " + s.dump());
    entry.strategies.push_back(s.get<std::string>());
  }
  return entry;
}

}  // namespace detail

inline std::vector<sim::GridEntry> scenarios_from_json(const json& doc)
{
  const json* list = &doc;
  if (doc.is_object() && doc.contains("scenarios")) list = &doc["scenarios"];
  std::vector<sim::GridEntry> grid;
  if (list->is_array()) {
    for (std::size_t i = 0; i < list->size(); ++i) grid.push_back(detail::scenario_from_json((*list)[i], i));
  } else {
    grid.push_back(detail::scenario_from_json(*list, 0));
  }
  if (grid.empty()) throw DomainError("no scenarios given");
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (grid[i].id == grid[j].id) throw DomainError("duplicate scenario id " + grid[i].id);
  return grid;
}

}  // namespace ndisco
