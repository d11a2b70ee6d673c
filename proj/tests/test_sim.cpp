#include "ndisco/sim.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ndisco;
using namespace ndisco::sim;

namespace {

Scenario scenario(BeaconPeriodSet b, std::uint32_t channels, std::uint32_t n, double deaf, std::uint32_t trials,
                  std::uint64_t seed)
{
  Scenario s;
  s.bps = std::move(b);
  s.channels = ChannelSet(channels);
  s.neighbor_count = n;
  s.deaf_fraction = deaf;
  s.trials = trials;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(RunTrial, BeaconInDeafWindowIsMissed)
{
  const auto s = psv({2}, ChannelSet(2));  // c0 at slots 0,1; c1 at 2,3
  const std::vector<Neighbor> early{{1, 2, 0, 0.1}};
  const auto missed = run_trial(s, early, 0.25);
  EXPECT_FALSE(missed.discovery[0]);
  EXPECT_EQ(missed.success_rate, 0.0);
  EXPECT_FALSE(missed.smdt);
  EXPECT_FALSE(missed.swdt);

  const std::vector<Neighbor> late{{1, 2, 0, 0.5}};
  const auto heard = run_trial(s, late, 0.25);
  ASSERT_TRUE(heard.discovery[0]);
  EXPECT_EQ(*heard.discovery[0], 2u);
  EXPECT_EQ(heard.success_rate, 1.0);
}

TEST(RunTrial, DeafnessOnlyAppliesRightAfterASwitch)
{
  const auto s = psv({2}, ChannelSet(2));
  const std::vector<Neighbor> n{{1, 2, 1, 0.0}, {0, 2, 0, 0.0}};
  const auto out = run_trial(s, n, 0.9);
  EXPECT_EQ(out.discovery[0], std::optional<Slot>(3));
  EXPECT_EQ(out.discovery[1], std::optional<Slot>(0));  // the first scan is not a switch
  EXPECT_EQ(out.switches, 1u);
}

TEST(RunTrial, WithoutDeafnessMatchesAnalyticDiscovery)
{
  for (const auto& name : {"psv", "greedy-first", "chantrain"}) {
    const BeaconPeriodSet b{2, 3, 4};
    const ChannelSet c(3);
    const auto s = make_schedule(name, b, c);
    const auto rep = discovery_times(s, b, c);
    const auto sc = scenario(b, 3, 200, 0.0, 1, 7);
    const auto pop = sample_neighbors(sc);
    const auto out = run_trial(s, pop, 0.0);
    EXPECT_EQ(out.success_rate, 1.0);
    for (std::size_t i = 0; i < pop.size(); ++i)
      EXPECT_EQ(out.discovery[i], rep.time_of(pop[i].channel, pop[i].period, pop[i].offset)) << name;
  }
}

TEST(RunTrial, SampleMetrics)
{
  const auto s = psv({2}, ChannelSet(2));
  const std::vector<Neighbor> n{{0, 2, 0, 0.0}, {0, 2, 1, 0.0}, {1, 2, 1, 0.0}};
  const auto out = run_trial(s, n, 0.0);
  EXPECT_DOUBLE_EQ(*out.smdt, 4.0 / 3.0);
  EXPECT_EQ(*out.swdt, 3u);
  ASSERT_EQ(out.sndot.size(), 3u);
  EXPECT_DOUBLE_EQ(out.fraction_within(1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(out.fraction_within(4), 1.0);
  EXPECT_DOUBLE_EQ(out.fraction_within(0), 0.0);
}

TEST(RunTrial, SuccessNeverRisesWithDeafness)
{
  const BeaconPeriodSet b{1, 2, 4};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto sc = scenario(b, 4, 300, 0.0, 1, seed);
    const auto pop = sample_neighbors(sc);
    for (const auto& name : {"psv", "greedy-first", "greedy-stay", "greedy-lookahead", "chantrain"}) {
      const auto s = make_schedule(name, b, ChannelSet(4));
      double previous = 1.0;
      for (const double deaf : {0.0, 0.1, 0.25, 0.5, 0.75, 0.99}) {
        const auto out = run_trial(s, pop, deaf);
        ASSERT_LE(out.success_rate, previous) << name << " deaf=" << deaf;
        previous = out.success_rate;
      }
    }
  }
}

TEST(Sampling, IsDeterministicAndCounterBased)
{
  const auto sc = scenario({1, 2, 3}, 3, 50, 0.0, 4, 99);
  EXPECT_EQ(sample_neighbors(sc, 2), sample_neighbors(sc, 2));
  EXPECT_NE(sample_neighbors(sc, 2), sample_neighbors(sc, 3));
  // A longer population extends a shorter one without disturbing it.
  auto longer = sc;
  longer.neighbor_count = 80;
  const auto a = sample_neighbors(sc, 1);
  const auto b = sample_neighbors(longer, 1);
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  auto other = sc;
  other.seed = 100;
  EXPECT_NE(sample_neighbors(sc, 0), sample_neighbors(other, 0));
}

TEST(Sampling, DrawsAreValidAndUniform)
{
  const auto sc = scenario({1, 2}, 2, 100'000, 0.0, 1, 1);
  const auto pop = sample_neighbors(sc);
  std::size_t two = 0, ch1 = 0;
  for (const auto& n : pop) {
    ASSERT_NO_THROW(validate_neighbor(n, sc.bps, sc.channels));
    two += n.period == 2;
    ch1 += n.channel == 1;
  }
  // Binomial(1e5, 1/2): standard deviation ~158, so 5 sigma is ~790.
  EXPECT_NEAR(static_cast<double>(two), 50'000.0, 790.0);
  EXPECT_NEAR(static_cast<double>(ch1), 50'000.0, 790.0);
}

TEST(Sampling, CounterRngRange)
{
  const CounterRng rng(5);
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    ASSERT_LT(rng.below(i, 7), 7u);
    const double u = rng.unit(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(rng.bits(3), CounterRng(5).bits(3));
  EXPECT_NE(rng.bits(3), CounterRng(6).bits(3));
}

TEST(Estimate, MeanAndInterval)
{
  const std::vector<double> xs{1, 2, 3, 4};
  const auto e = estimate(xs);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.ci95, 1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
  EXPECT_EQ(e.samples, 4u);
  EXPECT_EQ(estimate(std::vector<double>{7}).ci95, 0.0);
  EXPECT_EQ(estimate(std::vector<double>{}).samples, 0u);
}

TEST(ScenarioValidation, RejectsBadValues)
{
  EXPECT_THROW(scenario({2}, 1, 0, 0.0, 1, 0).validate(), DomainError);
  EXPECT_THROW(scenario({2}, 1, 1, 0.0, 0, 0).validate(), DomainError);
  EXPECT_THROW(scenario({2}, 1, 1, 1.0, 1, 0).validate(), DomainError);
  EXPECT_THROW(scenario({2}, 1, 1, -0.1, 1, 0).validate(), DomainError);
}

TEST(Evaluate, RowsCurvesAndTerminalFraction)
{
  const std::vector<GridEntry> grid{{"a", scenario({1, 2, 4}, 3, 40, 0.25, 30, 3), {"psv", "greedy-first"}},
                                    {"b", scenario({2, 3}, 2, 10, 0.0, 5, 4), {"chantrain"}}};
  const auto r = evaluate(grid);
  for (const auto& [id, strategy] : std::vector<std::pair<std::string, std::string>>{
           {"a", "psv"}, {"a", "greedy-first"}, {"b", "chantrain"}}) {
    for (const auto metric : kMetricNames) EXPECT_NO_THROW(find_metric(r, id, strategy, metric)) << metric;
    double terminal = -1.0;
    double previous = 0.0;
    for (const auto& row : r.curves)
      if (row.scenario_id == id && row.strategy == strategy) {
        ASSERT_GE(row.fraction, previous);
        previous = row.fraction;
        terminal = row.fraction;
      }
    EXPECT_NEAR(terminal, find_metric(r, id, strategy, "success_rate").mean, 1e-12);
  }
  EXPECT_EQ(find_metric(r, "b", "chantrain", "success_rate").mean, 1.0);
  EXPECT_THROW(find_metric(r, "b", "psv", "smdt"), DomainError);
}

TEST(Evaluate, NormalizedByOptimalWorstCase)
{
  const std::vector<GridEntry> grid{{"x", scenario({2, 4}, 2, 25, 0.0, 20, 11), {"greedy-first"}}};
  const auto r = evaluate(grid);
  EXPECT_NEAR(find_metric(r, "x", "greedy-first", "smdt_normalized").mean,
              find_metric(r, "x", "greedy-first", "smdt").mean / 8.0, 1e-12);
  EXPECT_LE(find_metric(r, "x", "greedy-first", "swdt_normalized").mean, 1.0);
}

TEST(Evaluate, IlpNormalizationNeverGoesBelowOne)
{
  const std::vector<GridEntry> grid{{"x", scenario({1, 2}, 2, 6, 0.0, 10, 5), {"psv", "greedy-first"}}};
  EvaluationOptions opt;
  opt.normalize_ilp = true;
  const auto r = evaluate(grid, opt);
  for (const auto& row : r.metrics)
    if (row.metric == "smdt_normalized" || row.metric == "swdt_normalized") EXPECT_GE(row.value.mean, 1.0 - 1e-12);
}

TEST(Evaluate, IlpNormalizationRefusedAboveCeiling)
{
  const std::vector<GridEntry> grid{{"x", scenario({7, 11, 13}, 4, 6, 0.0, 1, 5), {"psv"}}};
  EvaluationOptions opt;
  opt.normalize_ilp = true;
  opt.ilp_slot_ceiling = 1000;
  EXPECT_THROW(evaluate(grid, opt), DomainError);
}

TEST(Evaluate, IsDeterministic)
{
  const std::vector<GridEntry> grid{{"a", scenario({1, 2, 4}, 3, 40, 0.25, 30, 3), {"psv", "greedy-stay"}}};
  std::ostringstream m1, m2, s1, s2;
  const auto r1 = evaluate(grid);
  const auto r2 = evaluate(grid);
  write_metrics_csv(r1, m1);
  write_metrics_csv(r2, m2);
  write_sndot_csv(r1, s1);
  write_sndot_csv(r2, s2);
  EXPECT_EQ(m1.str(), m2.str());
  EXPECT_EQ(s1.str(), s2.str());
  EXPECT_EQ(m1.str().substr(0, m1.str().find('\n')), "scenario_id,strategy,metric,mean,ci95");
  EXPECT_EQ(s1.str().substr(0, s1.str().find('\n')), "scenario_id,strategy,normalized_time,fraction");
}
