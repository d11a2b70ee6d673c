#pragma once

#include "ndisco/core.hpp"

#include <nlohmann/json.hpp>

namespace ndisco {

using json = nlohmann::ordered_json;

/// {"horizon": n, "scans": [[slot, channel], ...]} sorted by slot.
inline json schedule_to_json(const Schedule& schedule)
{
  json scans = json::array();
  for (const auto& [t, c] : schedule.scans()) scans.push_back(json::array({t, c}));
  return json{{"horizon", schedule.horizon()}, {"scans", std::move(scans)}};
}

inline Schedule schedule_from_json(const json& doc)
{
  if (!doc.is_object() || !doc.contains("scans") || !doc["scans"].is_array())
    throw DomainError("schedule JSON needs a \"scans\" array");
  std::map<Slot, Channel> scans;
  for (const auto& entry : doc["scans"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() || !entry[1].is_number_unsigned())
      throw DomainError("schedule scans must be [slot, channel] pairs of nonnegative integers");
    const auto [it, inserted] = scans.emplace(entry[0].get<Slot>(), entry[1].get<Channel>());
    if (!inserted) throw DomainError("slot " + std::to_string(it->first) + " scanned twice");
  }
  std::optional<Slot> horizon;
  if (doc.contains("horizon")) {
    if (!doc["horizon"].is_number_unsigned()) throw DomainError("schedule horizon must be a nonnegative integer");
    horizon = doc["horizon"].get<Slot>();
  }
  return Schedule(std::move(scans), horizon);
}

/// times: [[channel, period, offset, slot-or-null], ...]
inline json report_to_json(const DiscoveryReport& report)
{
  json times = json::array();
  for (const auto& t : report.times) {
    json row = json::array({t.configuration.channel, t.configuration.period, t.configuration.offset});
    row.push_back(t.slot ? json(*t.slot) : json(nullptr));
    times.push_back(std::move(row));
  }
  json ndot = json::array();
  for (const auto& p : report.ndot)
    ndot.push_back(json::array({p.slot, to_fraction_string(p.cumulative), to_double(p.cumulative)}));
  json doc;
  doc["complete"] = report.complete();
  doc["wdt"] = report.wdt ? json(*report.wdt) : json(nullptr);
  doc["mdt"] = report.mdt ? json(to_fraction_string(*report.mdt)) : json(nullptr);
  doc["mdt_decimal"] = report.mdt ? json(to_double(*report.mdt)) : json(nullptr);
  doc["times"] = std::move(times);
  doc["ndot"] = std::move(ndot);
  return doc;
}

}  // namespace ndisco
