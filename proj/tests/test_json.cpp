#include "ndisco/json_io.hpp"
#include "ndisco/scenario_json.hpp"
#include "ndisco/schedulers.hpp"

#include <gtest/gtest.h>

using namespace ndisco;

TEST(ScheduleJson, RoundTrip)
{
  for (const auto& name : {"psv", "greedy-first", "greedy-lookahead", "chantrain"}) {
    const auto s = make_schedule(name, {1, 2, 3}, ChannelSet(3));
    const auto doc = schedule_to_json(s);
    const auto back = schedule_from_json(json::parse(doc.dump()));
    EXPECT_EQ(back.scans(), s.scans());
    EXPECT_EQ(back.horizon(), s.horizon());
  }
}

TEST(ScheduleJson, Layout)
{
  const Schedule s({{0, 1}, {2, 0}}, 4);
  EXPECT_EQ(schedule_to_json(s).dump(), R"({"horizon":4,"scans":[[0,1],[2,0]]})");
}

TEST(ScheduleJson, HorizonIsOptional)
{
  const auto s = schedule_from_json(json::parse(R"({"scans":[[3,0],[1,1]]})"));
  EXPECT_EQ(s.horizon(), 4u);
  EXPECT_EQ(s.channel_at(1), std::optional<Channel>(1));
}

TEST(ScheduleJson, RejectsMalformedInput)
{
  for (const auto* text : {R"([])", R"({})", R"({"scans":{}})", R"({"scans":[[0]]})", R"({"scans":[[0,-1]]})",
                           R"({"scans":[[0.5,0]]})", R"({"scans":[[0,0],[0,1]]})", R"({"scans":[[5,0]],"horizon":3})",
                           R"({"scans":[],"horizon":-1})", R"({"scans":[["0",0]]})"})
    EXPECT_THROW(schedule_from_json(json::parse(text)), DomainError) << text;
}

TEST(ReportJson, MixedPeriods)
{
  const BeaconPeriodSet b{1, 2, 3};
  const auto report = discovery_times(greedy(b, ChannelSet(3)), b, ChannelSet(3));
  const auto doc = report_to_json(report);
  EXPECT_TRUE(doc["complete"].get<bool>());
  EXPECT_EQ(doc["wdt"].get<Slot>(), *report.wdt);
  EXPECT_EQ(doc["mdt"].get<std::string>(), "49/18");
  EXPECT_NEAR(doc["mdt_decimal"].get<double>(), 49.0 / 18.0, 1e-15);
  EXPECT_EQ(doc["times"].size(), 18u);
  EXPECT_EQ(doc["ndot"].back()[1].get<std::string>(), "1");
}

TEST(ReportJson, IncompleteSchedule)
{
  const auto doc = report_to_json(discovery_times(Schedule(std::map<Slot, Channel>{{0, 0}}), {2}, ChannelSet(1)));
  EXPECT_FALSE(doc["complete"].get<bool>());
  EXPECT_TRUE(doc["wdt"].is_null());
  EXPECT_TRUE(doc["mdt"].is_null());
  EXPECT_TRUE(doc["times"][1][3].is_null());
}

namespace {

const char* kScenario = R"({"id":"demo","bps":[1,2,4],"channels":3,"neighbors":20,"deaf_fraction":0.25,
                            "trials":10,"seed":7,"strategies":["psv","greedy-first"]})";

}  // namespace

TEST(ScenarioJson, AcceptedShapes)
{
  const auto one = json::parse(kScenario);
  const auto a = scenarios_from_json(one);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].id, "demo");
  EXPECT_EQ(a[0].scenario.bps, BeaconPeriodSet({1, 2, 4}));
  EXPECT_EQ(a[0].scenario.channels.count(), 3u);
  EXPECT_EQ(a[0].scenario.neighbor_count, 20u);
  EXPECT_EQ(a[0].scenario.deaf_fraction, 0.25);
  EXPECT_EQ(a[0].scenario.trials, 10u);
  EXPECT_EQ(a[0].scenario.seed, 7u);
  EXPECT_EQ(a[0].strategies, (std::vector<std::string>{"psv", "greedy-first"}));

  auto unnamed = one;
  unnamed.erase("id");
  const auto b = scenarios_from_json(json::array({unnamed, unnamed}));
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[1].id, "s1");
  EXPECT_EQ(scenarios_from_json(json{{"scenarios", json::array({one})}}).size(), 1u);
}

TEST(ScenarioJson, RejectsBadScenarios)
{
  const auto base = json::parse(kScenario);
  const std::vector<std::pair<std::string, json>> edits{
      {"channels", 0},          {"channels", -1},         {"neighbors", 0},       {"trials", 2.5},
      {"seed", "x"},            {"deaf_fraction", 1.0},   {"deaf_fraction", "a"}, {"bps", json::array()},
      {"bps", json::array({0})}, {"strategies", json::array({"nope"})}, {"strategies", json::array()},
      {"id", "a,b"},            {"id", ""}};
  for (const auto& [key, value] : edits) {
    auto doc = base;
    doc[key] = value;
    EXPECT_THROW(scenarios_from_json(doc), DomainError) << key << "=" << value.dump();
  }
  for (const auto* key : {"bps", "channels", "neighbors", "deaf_fraction", "trials", "seed", "strategies"}) {
    auto doc = base;
    doc.erase(key);
    EXPECT_THROW(scenarios_from_json(doc), DomainError) << key;
  }
  EXPECT_THROW(scenarios_from_json(json::array()), DomainError);
  EXPECT_THROW(scenarios_from_json(json::array({base, base})), DomainError);
  EXPECT_THROW(scenarios_from_json(json(3)), DomainError);
}
