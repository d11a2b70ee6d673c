#include "ndisco/core.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace ndisco;

namespace {

// Every channel-or-idle assignment of slots [0, horizon).
void for_each_schedule(std::uint32_t channels, Slot horizon, const std::function<void(const Schedule&)>& visit)
{
  std::vector<int> digits(horizon, -1);
  while (true) {
    std::map<Slot, Channel> scans;
    for (Slot t = 0; t < horizon; ++t)
      if (digits[t] >= 0) scans.emplace(t, static_cast<Channel>(digits[t]));
    visit(Schedule(std::move(scans), horizon));
    Slot i = 0;
    while (i < horizon && ++digits[i] == static_cast<int>(channels)) digits[i++] = -1;
    if (i == horizon) return;
  }
}

Schedule random_schedule(std::mt19937_64& rng, std::uint32_t channels, Slot horizon, double idle)
{
  std::map<Slot, Channel> scans;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<Channel> pick(0, channels - 1);
  for (Slot t = 0; t < horizon; ++t)
    if (u(rng) >= idle) scans.emplace(t, pick(rng));
  return Schedule(std::move(scans), horizon);
}

BeaconPeriodSet random_bps(std::mt19937_64& rng, Period top, std::size_t max_size)
{
  std::uniform_int_distribution<Period> period(1, top);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::vector<Period> p;
  for (std::size_t i = size(rng); i > 0; --i) p.push_back(period(rng));
  return BeaconPeriodSet(p);
}

}  // namespace

TEST(BeaconPeriodSet, SortsDeduplicatesAndCachesGcdLcm)
{
  const BeaconPeriodSet b{6, 4, 6, 2};
  EXPECT_EQ(std::vector<Period>(b.periods().begin(), b.periods().end()), (std::vector<Period>{2, 4, 6}));
  EXPECT_EQ(b.gcd(), 2u);
  EXPECT_EQ(b.lcm(), 12u);
  EXPECT_EQ(b.min(), 2u);
  EXPECT_EQ(b.max(), 6u);
  EXPECT_EQ(b.period_sum(), 12u);
  EXPECT_TRUE(b.contains(4));
  EXPECT_FALSE(b.contains(3));
  EXPECT_EQ(b.index_of(6), 2u);
  EXPECT_THROW(b.index_of(5), DomainError);
}

TEST(BeaconPeriodSet, RejectsEmptyZeroAndOverflow)
{
  EXPECT_THROW(BeaconPeriodSet(std::vector<Period>{}), DomainError);
  EXPECT_THROW((BeaconPeriodSet{0, 3}), DomainError);
  EXPECT_THROW((BeaconPeriodSet{(Period{1} << 62) + 1, (Period{1} << 62) + 3}), DomainError);
}

TEST(ChannelSet, NeedsAtLeastOneChannel)
{
  EXPECT_THROW(ChannelSet(0), DomainError);
  EXPECT_EQ(ChannelSet(4).count(), 4u);
}

TEST(ClassifyFamily, KnownSets)
{
  const std::vector<Period> f1{1, 2, 3}, f2{2, 3, 4, 6, 12}, f3{1, 2, 4, 8};
  EXPECT_EQ(classify_family(f1), Family::F1);
  EXPECT_EQ(classify_family(f2), Family::F2);
  EXPECT_EQ(classify_family(f3), Family::F3);
  const std::vector<Period> single{7};
  EXPECT_EQ(classify_family(single), Family::F3);
}

TEST(ClassifyFamily, EmptyOrZeroIsAnError)
{
  EXPECT_THROW(classify_family(std::vector<Period>{}), DomainError);
  EXPECT_THROW(classify_family(std::vector<Period>{0, 2}), DomainError);
}

TEST(ClassifyFamily, AgreesWithDefinitionOnAllSmallSets)
{
  for (unsigned mask = 1; mask < (1u << 12); ++mask) {
    std::vector<Period> p;
    for (Period b = 1; b <= 12; ++b)
      if (mask & (1u << (b - 1))) p.push_back(b);
    bool chain = true, divides_max = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      divides_max = divides_max && p.back() % p[i] == 0;
      for (std::size_t j = i + 1; j < p.size(); ++j) chain = chain && p[j] % p[i] == 0;
    }
    const Family expected = chain ? Family::F3 : divides_max ? Family::F2 : Family::F1;
    ASSERT_EQ(classify_family(p), expected) << "mask " << mask;
  }
}

TEST(ConfigurationSpace, SingleConfiguration)
{
  const auto space = configuration_space({1}, ChannelSet(1));
  ASSERT_EQ(space.size(), 1u);
  EXPECT_EQ(space[0], (Configuration{0, 1, 0, Rational(1)}));
  EXPECT_EQ(space[0].probability, Rational(1));
}

TEST(ConfigurationSpace, UniformProbabilities)
{
  const auto space = configuration_space({1, 2}, ChannelSet(2));
  ASSERT_EQ(space.size(), 6u);
  for (const auto& k : space) EXPECT_EQ(k.probability, k.period == 1 ? Rational(1, 4) : Rational(1, 8));
}

TEST(ConfigurationSpace, SizeAndProbabilitiesSumToOne)
{
  const auto space = configuration_space({2, 3, 4, 6, 12}, ChannelSet(2));
  EXPECT_EQ(space.size(), 54u);
  Rational total(0);
  for (const auto& k : space) total += k.probability;
  EXPECT_EQ(total, Rational(1));
}

TEST(ConfigurationSpace, SumsToOneOnRandomInstances)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto b = random_bps(rng, 20, 5);
    const ChannelSet c(1 + static_cast<std::uint32_t>(rng() % 5));
    const auto space = configuration_space(b, c);
    ASSERT_EQ(space.size(), b.period_sum() * c.count());
    Rational total(0);
    for (const auto& k : space) {
      ASSERT_LT(k.offset, k.period);
      total += k.probability;
    }
    ASSERT_EQ(total, Rational(1));
  }
}

TEST(DiscoveryTimes, TwoChannelsOnePeriod)
{
  const Schedule s({{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  const auto r = discovery_times(s, {2}, ChannelSet(2));
  EXPECT_EQ(r.time_of(0, 2, 0), Slot{0});
  EXPECT_EQ(r.time_of(0, 2, 1), Slot{1});
  EXPECT_EQ(r.time_of(1, 2, 0), Slot{2});
  EXPECT_EQ(r.time_of(1, 2, 1), Slot{3});
  ASSERT_TRUE(r.mdt);
  EXPECT_EQ(*r.mdt, Rational(3, 2));
  EXPECT_EQ(r.wdt, Slot{4});
}

TEST(DiscoveryTimes, EmptyScheduleDiscoversNothing)
{
  const auto r = discovery_times(Schedule(), {1, 2, 3}, ChannelSet(2));
  EXPECT_FALSE(r.complete());
  EXPECT_FALSE(r.mdt);
  EXPECT_TRUE(r.ndot.empty());
  for (const auto& t : r.times) EXPECT_FALSE(t.slot);
}

TEST(DiscoveryTimes, HandTracedTwoPeriodSchedule)
{
  // c0, c1, c1, c0 on B={1,2}: times 0,1 on c1's two offsets, 3 for c0 offset 1.
  const Schedule s({{0, 0}, {1, 1}, {2, 1}, {3, 0}});
  const auto r = discovery_times(s, {1, 2}, ChannelSet(2));
  ASSERT_TRUE(r.mdt);
  EXPECT_EQ(*r.mdt, Rational(1));
  EXPECT_EQ(r.time_of(0, 2, 1), Slot{3});
  EXPECT_EQ(r.time_of(1, 2, 0), Slot{2});
}

TEST(DiscoveryTimes, InvariantsOnRandomSchedules)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto b = random_bps(rng, 8, 3);
    const ChannelSet c(1 + static_cast<std::uint32_t>(rng() % 3));
    const auto s = random_schedule(rng, c.count(), 3 * b.lcm() * c.count(), 0.3);
    const auto r = discovery_times(s, b, c);

    Rational prev(0);
    for (const auto& p : r.ndot) {
      ASSERT_GT(p.cumulative, prev);
      prev = p.cumulative;
    }
    ASSERT_EQ(r.complete(), !r.ndot.empty() && r.ndot.back().cumulative == Rational(1));

    if (r.complete()) {
      Rational mdt(0);
      Slot last = 0;
      for (const auto& t : r.times) {
        mdt += t.configuration.probability * static_cast<std::int64_t>(*t.slot);
        last = std::max(last, *t.slot);
      }
      ASSERT_EQ(*r.mdt, mdt);
      ASSERT_EQ(*r.wdt, last + 1);
      ASSERT_GE(*r.wdt, optimal_wdt(b, c));
    }
    // Within max(B)|C| slots the curve reaches 1 iff the schedule is done by then.
    const bool done_early = r.complete() && *r.wdt <= optimal_wdt(b, c);
    ASSERT_EQ(r.cdf_within(optimal_wdt(b, c)) == Rational(1), done_early);
  }
}

TEST(DiscoveryTimes, AddingAScanNeverDelaysADiscovery)
{
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto b = random_bps(rng, 6, 3);
    const ChannelSet c(1 + static_cast<std::uint32_t>(rng() % 3));
    const Slot h = 2 * b.lcm() * c.count();
    const auto s = random_schedule(rng, c.count(), h, 0.5);
    Slot t = rng() % (h + 3);
    while (s.channel_at(t)) ++t;  // an idle slot, so the scan is a pure addition
    const auto more = s.with_scan(t, static_cast<Channel>(rng() % c.count()));
    const auto before = discovery_times(s, b, c);
    const auto after = discovery_times(more, b, c);
    for (std::size_t k = 0; k < before.times.size(); ++k) {
      if (!before.times[k].slot) continue;
      ASSERT_TRUE(after.times[k].slot);
      ASSERT_LE(*after.times[k].slot, *before.times[k].slot);
    }
  }
}

TEST(DiscoveryTimes, WdtOptimalSchedulesHaveNoIdleSlot)
{
  // Exhaustive over tiny instances.
  for (const auto& periods : std::vector<std::vector<Period>>{{1}, {2}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}) {
    const BeaconPeriodSet b(periods);
    for (std::uint32_t nc = 1; nc <= 2; ++nc) {
      const ChannelSet c(nc);
      const Slot opt = optimal_wdt(b, c);
      std::size_t optimal_seen = 0;
      for_each_schedule(nc, opt, [&](const Schedule& s) {
        const auto r = discovery_times(s, b, c);
        if (r.complete()) {
          ASSERT_GE(*r.wdt, opt);
        }
        if (r.complete() && *r.wdt == opt) {
          ++optimal_seen;
          ASSERT_FALSE(has_idle_slot(s, opt));
        }
      });
      EXPECT_GT(optimal_seen, 0u);
    }
  }
}

TEST(OptimalWdt, Examples)
{
  EXPECT_EQ(optimal_wdt({1, 2, 3}, ChannelSet(3)), 9u);
  EXPECT_EQ(optimal_wdt({1}, ChannelSet(5)), 5u);
  EXPECT_EQ(optimal_wdt({2, 3, 4, 6, 12}, ChannelSet(2)), 24u);
}

TEST(NormalizeBpSet, DividesByGcd)
{
  EXPECT_EQ(normalize_bp_set({2, 4, 8}), (BeaconPeriodSet{1, 2, 4}));
  EXPECT_EQ(normalize_bp_set({6, 9}), (BeaconPeriodSet{2, 3}));
  EXPECT_EQ(normalize_bp_set({1, 2, 3}), (BeaconPeriodSet{1, 2, 3}));
}

TEST(NormalizeBpSet, PreservesFamilyAndReachesGcdOne)
{
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto base = random_bps(rng, 12, 4);
    std::vector<Period> scaled;
    const Period k = 1 + rng() % 6;
    for (const auto b : base.periods()) scaled.push_back(b * k);
    const BeaconPeriodSet b(scaled);
    const auto n = normalize_bp_set(b);
    ASSERT_EQ(n.gcd(), 1u);
    ASSERT_EQ(n.family(), b.family());
  }
}

TEST(ChannelSwitchCount, Examples)
{
  EXPECT_EQ(channel_switch_count(Schedule({{0, 0}, {1, 0}, {2, 1}, {3, 1}})), 1u);
  EXPECT_EQ(channel_switch_count(Schedule({{0, 0}, {1, 1}, {2, 0}, {3, 1}})), 3u);
  EXPECT_EQ(channel_switch_count(Schedule({{0, 0}, {2, 0}})), 0u);
  EXPECT_EQ(channel_switch_count(Schedule({{0, 0}, {5, 1}})), 1u);
  EXPECT_EQ(channel_switch_count(Schedule()), 0u);
}

TEST(Schedule, HorizonCoversScans)
{
  EXPECT_THROW(Schedule({{4, 0}}, 3), DomainError);
  const Schedule s(std::map<Slot, Channel>{{4, 0}});
  EXPECT_EQ(s.horizon(), 5u);
  EXPECT_EQ(s.channel_at(4), Channel{0});
  EXPECT_FALSE(s.channel_at(3));
  EXPECT_TRUE(has_idle_slot(s, 5));
  EXPECT_EQ(s.with_scan(7, 1).horizon(), 8u);
}

TEST(ParsePeriodList, AcceptsCommaSeparatedIntegers)
{
  EXPECT_EQ(parse_period_list("1,2,3"), (std::vector<Period>{1, 2, 3}));
  EXPECT_EQ(parse_period_list(" 4 , 8"), (std::vector<Period>{4, 8}));
  EXPECT_EQ(parse_period_list("12"), (std::vector<Period>{12}));
}

TEST(ParsePeriodList, RejectsMalformedText)
{
  for (const char* bad : {"", "1,,2", "1,", "a", "1 2", "-3", "1.5", "99999999999999999999"})
    EXPECT_THROW(parse_period_list(bad), DomainError) << bad;
}
