#pragma once

// The end-to-end acceptance suite. Shared by the acceptance test binary and
// `ndisco paper-check`; each criterion yields boolean checks with expected
// and actual values rendered as text.

#include "ndisco/core.hpp"
#include "ndisco/json_io.hpp"
#include "ndisco/optimal.hpp"
#include "ndisco/oracle.hpp"
#include "ndisco/schedulers.hpp"
#include "ndisco/sim.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace ndisco::acceptance {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;  // console only; never part of the artifacts

  bool passed() const
  {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

struct SuiteOptions {
  std::uint64_t theorem_node_limit = 50'000;    // per ILP solve in the theorem grid
  std::uint64_t exact_node_limit = kDefaultNodeLimit;
  std::uint64_t simulation_seed = 1;
  std::uint32_t simulation_trials = 1000;
};

/// Files written by paper-check; must be byte-identical across runs.
struct Artifacts {
  std::string checks_json;
  std::string metrics_csv;
  std::string sndot_csv;

  friend bool operator==(const Artifacts&, const Artifacts&) = default;
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  Artifacts artifacts;

  bool passed() const
  {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed(); });
  }
};

namespace detail {

inline Check check_equal(std::string name, const std::string& expected, const std::string& actual)
{
  return {std::move(name), expected, actual, expected == actual};
}

inline std::string mdt_text(const Schedule& s, const BeaconPeriodSet& b, const ChannelSet& c)
{
  const auto rep = discovery_times(s, b, c);
  return rep.mdt ? to_fraction_string(*rep.mdt) : "incomplete";
}

inline std::string wdt_text(const Schedule& s, const BeaconPeriodSet& b, const ChannelSet& c)
{
  const auto rep = discovery_times(s, b, c);
  return rep.wdt ? std::to_string(*rep.wdt) : "incomplete";
}

inline std::string solve_text(const IlpModel& model, std::uint64_t node_limit)
{
  const auto r = solve_exact(model, node_limit);
  if (r.status != SolveStatus::Optimal) return std::string(to_string(r.status));
  return to_fraction_string(*r.objective);
}

inline Check runtime_check(std::string name, double seconds, double limit)
{
  char expected[32];
  std::snprintf(expected, sizeof expected, "< %g s", limit);
  const bool ok = seconds < limit;
  return {std::move(name), expected, ok ? "within limit" : "exceeded", ok};
}

template <class F>
double timed(F&& f)
{
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Running tally for a boolean property over many instances.
struct Tally {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::string first_violation;

  void record(bool ok, const std::string& where)
  {
    ++instances;
    if (ok) return;
    if (violations++ == 0) first_violation = where;
  }

  Check as_check(std::string name) const
  {
    std::string actual = std::to_string(violations) + " violations in " + std::to_string(instances);
    if (violations > 0) actual += " (first: " + first_violation + ")";
    return {std::move(name), "0 violations", actual, violations == 0 && instances > 0};
  }
};

inline std::string instance_label(const BeaconPeriodSet& b, const ChannelSet& c)
{
  std::string s = "B={";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b.periods()[i]);
  return s + "} |C|=" + std::to_string(c.count());
}

inline std::vector<std::vector<Period>> subsets_up_to_three(Period top)
{
  std::vector<std::vector<Period>> out;
  for (Period a = 1; a <= top; ++a) {
    out.push_back({a});
    for (Period b = a + 1; b <= top; ++b) {
      out.push_back({a, b});
      for (Period c = b + 1; c <= top; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Criteria

inline CriterionResult mdt_gap_f1(const SuiteOptions& opt)
{
  CriterionResult r{1, "Greedy and optimal MDT, B={1,2,3}, |C|=3", {}, 0.0};
  const BeaconPeriodSet b{1, 2, 3};
  const ChannelSet c(3);
  std::string greedy_mdt, ilp;
  const double tg = detail::timed([&] { greedy_mdt = detail::mdt_text(greedy(b, c), b, c); });
  const double ti = detail::timed([&] { ilp = detail::solve_text(build_mdtopt(b, c), opt.exact_node_limit); });
  r.checks.push_back(detail::check_equal("greedy MDT", "49/18", greedy_mdt));
  r.checks.push_back(detail::check_equal("MDTOPT optimum", "47/18", ilp));
  r.checks.push_back(detail::check_equal("optimal WDT", "9", std::to_string(optimal_wdt(b, c))));
  r.checks.push_back(detail::runtime_check("greedy runtime", tg, 1.0));
  r.checks.push_back(detail::runtime_check("ILP runtime", ti, 60.0));
  return r;
}

inline CriterionResult mdt_gap_f2(const SuiteOptions& opt)
{
  CriterionResult r{2, "Greedy and optimal MDT, B={2,3,4,6,12}, |C|=2", {}, 0.0};
  const BeaconPeriodSet b{2, 3, 4, 6, 12};
  const ChannelSet c(2);
  const auto g = greedy(b, c);
  std::string ilp;
  const double ti = detail::timed([&] { ilp = detail::solve_text(build_mdtopt(b, c), opt.exact_node_limit); });
  r.checks.push_back(detail::check_equal("greedy WDT", "24", detail::wdt_text(g, b, c)));
  r.checks.push_back(detail::check_equal("greedy MDT", "53/10", detail::mdt_text(g, b, c)));
  r.checks.push_back(detail::check_equal("MDTOPT optimum", "51/10", ilp));
  r.checks.push_back(detail::runtime_check("ILP runtime", ti, 300.0));
  return r;
}

inline CriterionResult horizon_dependence(const SuiteOptions& opt)
{
  CriterionResult r{3, "Optimal MDT depends on the horizon, B={1,2,4,5}, |C|=2", {}, 0.0};
  const BeaconPeriodSet b{1, 2, 4, 5};
  const ChannelSet c(2);
  r.checks.push_back(
      detail::check_equal("optimum at t_max=39", "11/4", detail::solve_text(build_mdtopt(b, c, 39), opt.exact_node_limit)));
  r.checks.push_back(
      detail::check_equal("optimum at t_max=9", "23/8", detail::solve_text(build_mdtopt(b, c, 9), opt.exact_node_limit)));
  return r;
}

inline CriterionResult recursive_nonexistence()
{
  CriterionResult r{4, "No recursive schedule for B={1,2,3}, |C|=2", {}, 0.0};
  bool exists = true;
  const double t = detail::timed([&] { exists = oracle::recursive_schedule_exists({1, 2, 3}, ChannelSet(2)).exists; });
  r.checks.push_back(detail::check_equal("recursive schedule exists", "false", exists ? "true" : "false"));
  r.checks.push_back(detail::runtime_check("decision runtime", t, 1.0));
  return r;
}

inline CriterionResult theorem_grid(const SuiteOptions& opt)
{
  CriterionResult r{5, "Theorem grid: B within {1..12}, |B|<=3, |C| in {1,2,3}", {}, 0.0};
  detail::Tally greedy_f2, greedy_f3, train_values, train_f2, optb2, rec_f3, lcm_bound, f2_makespan, no_idle;
  std::size_t solved = 0, attempted = 0;

  for (const auto& periods : detail::subsets_up_to_three(12)) {
    const BeaconPeriodSet b(periods);
    for (Channel nc = 1; nc <= 3; ++nc) {
      const ChannelSet c(nc);
      const auto where = detail::instance_label(b, c);
      const auto fam = b.family();
      std::vector<std::pair<std::string, Schedule>> produced;
      produced.emplace_back("psv", psv(b, c));

      const auto first = greedy(b, c, TieBreak::First);
      std::vector<std::pair<std::string, Schedule>> greedies = {
          {"first", first}, {"stay", greedy(b, c, TieBreak::Stay)}, {"lookahead", greedy(b, c, TieBreak::Lookahead)}};
      // Inverted tie-break: the propositions must not depend on tie order.
      greedies.emplace_back("highest", greedy_with(b, c, [](const DiscoveryState&, Slot, std::span<const Channel> ties) {
                              return ties.back();
                            }));
      for (const auto& [name, s] : greedies) {
        if (fam != Family::F1) greedy_f2.record(oracle::is_wdt_optimal(s, b, c), where + " " + name);
        if (fam == Family::F3) greedy_f3.record(oracle::is_recursive(s, b, c), where + " " + name);
        produced.emplace_back("greedy-" + name, s);
      }

      const auto train = chan_train(b, c);
      if (fam == Family::F3)
        train_values.record(achieved_values(train, b, c) == achieved_values(first, b, c), where);
      if (fam != Family::F1) train_f2.record(oracle::is_wdt_optimal(train, b, c), where);
      produced.emplace_back("chantrain", train);

      if (b.size() == 2) {
        const auto s = opt_b2(b, c);
        optb2.record(oracle::is_recursive(s, b, c), where);
        produced.emplace_back("optb2", s);
      }
      if (fam == Family::F3) {
        const auto s = recursive_f3(b, c);
        rec_f3.record(oracle::is_recursive(s, b, c), where);
        produced.emplace_back("recursive-f3", s);
      }

      ++attempted;
      const auto solved_model = solve_exact(build_mdtopt(b, c), opt.theorem_node_limit);
      if (solved_model.status == SolveStatus::Optimal) {
        ++solved;
        const auto rep = discovery_times(*solved_model.schedule, b, c);
        lcm_bound.record(rep.complete() && *rep.wdt <= b.lcm() * nc, where);
        if (fam != Family::F1) f2_makespan.record(rep.complete() && *rep.wdt == b.max() * nc, where);
        produced.emplace_back("mdt-optimal", *solved_model.schedule);
      }

      for (const auto& [name, s] : produced)
        if (oracle::is_wdt_optimal(s, b, c))
          no_idle.record(!has_idle_slot(s, optimal_wdt(b, c)), where + " " + name);
    }
  }

  r.checks.push_back(greedy_f2.as_check("greedy WDT-optimal on F2 (all tie-breaks)"));
  r.checks.push_back(greedy_f3.as_check("greedy recursive on F3 (all tie-breaks)"));
  r.checks.push_back(train_values.as_check("chan_train per-slot values equal greedy on F3"));
  r.checks.push_back(train_f2.as_check("chan_train WDT-optimal on F2"));
  r.checks.push_back(optb2.as_check("opt_b2 recursive for |B|=2"));
  r.checks.push_back(rec_f3.as_check("recursive_f3 recursive on F3"));
  r.checks.push_back(lcm_bound.as_check("MDT-optimal WDT <= LCM(B)|C|"));
  r.checks.push_back(f2_makespan.as_check("MDT-optimal WDT = max(B)|C| on F2"));
  r.checks.push_back(no_idle.as_check("WDT-optimal outputs have no idle slot"));
  r.checks.push_back({"ILP coverage at " + std::to_string(opt.theorem_node_limit) + " nodes", "reported",
                      std::to_string(solved) + " of " + std::to_string(attempted) + " solved to optimality", true});
  return r;
}

inline CriterionResult oracle_equivalence(const SuiteOptions& opt)
{
  CriterionResult r{6, "Solver equals brute force where sum(B)|C| <= 12", {}, 0.0};
  detail::Tally equal;
  // Every subset of {1..12} with period sum at most 12.
  std::vector<std::vector<Period>> sets;
  std::vector<Period> current;
  std::function<void(Period, Period)> walk = [&](Period next, Period sum) {
    if (!current.empty()) sets.push_back(current);
    for (Period p = next; sum + p <= 12; ++p) {
      current.push_back(p);
      walk(p + 1, sum + p);
      current.pop_back();
    }
  };
  walk(1, 0);
  for (const auto& periods : sets) {
    const BeaconPeriodSet b(periods);
    for (Channel nc = 1; b.period_sum() * nc <= 12; ++nc) {
      const ChannelSet c(nc);
      const auto where = detail::instance_label(b, c);
      const auto solved = solve_exact(build_mdtopt(b, c), opt.exact_node_limit);
      const auto brute = oracle::brute_force_mdt_optimal(b, c);
      const bool ok = solved.status == SolveStatus::Optimal && *solved.objective == brute.mdt;
      equal.record(ok, where + " solver " +
                           (solved.objective ? to_fraction_string(*solved.objective) : std::string(to_string(solved.status))) +
                           " vs " + to_fraction_string(brute.mdt));
    }
  }
  r.checks.push_back(equal.as_check("solve_exact MDT == brute_force_mdt_optimal MDT"));
  return r;
}

inline const BeaconPeriodSet& grid_bps()
{
  static const BeaconPeriodSet bps{1, 2, 4, 8, 16};
  return bps;
}

/// Scenario grid of the simulation criterion; its evaluation also produces
/// the CSV artifacts.
inline std::vector<sim::GridEntry> simulation_grid(const SuiteOptions& opt)
{
  std::vector<sim::GridEntry> grid;
  for (const double deaf : {0.0, 0.25}) {
    for (Channel nc = 2; nc <= 8; ++nc) {
      sim::Scenario s;
      s.bps = grid_bps();
      s.channels = ChannelSet(nc);
      s.neighbor_count = 20;
      s.deaf_fraction = deaf;
      s.trials = opt.simulation_trials;
      s.seed = opt.simulation_seed;
      grid.push_back({"c" + std::to_string(nc) + (deaf > 0.0 ? "-deaf25" : "-deaf0"), s,
                      {"psv", "greedy-first", "greedy-stay", "greedy-lookahead", "chantrain"}});
    }
  }
  return grid;
}

inline CriterionResult simulation_orderings(const SuiteOptions& opt, const sim::EvaluationResult& eval)
{
  CriterionResult r{7, "Simulation orderings, B={1,2,4,8,16}, 20 neighbors", {}, 0.0};
  auto mean = [&](const std::string& id, const char* strategy, const char* metric) {
    return sim::find_metric(eval, id, strategy, metric).mean;
  };
  std::vector<double> ratios;
  for (Channel nc = 2; nc <= 8; ++nc) {
    const auto id = "c" + std::to_string(nc) + "-deaf0";
    ratios.push_back(mean(id, "psv", "smdt") / mean(id, "greedy-first", "smdt"));
  }
  r.checks.push_back({"SMDT ratio psv/greedy-first at |C|=2", ">= 1.8", to_significant(ratios.front(), 6),
                      ratios.front() >= 1.8});
  std::string series;
  bool increasing = true;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    series += (i ? " " : "") + to_significant(ratios[i], 4);
    if (i > 0 && !(ratios[i] > ratios[i - 1])) increasing = false;
  }
  r.checks.push_back({"ratio strictly increasing |C|=2..8", "increasing", series, increasing});
  // The population ratio the sample ratio estimates (deaf_fraction 0 hears
  // every scanned beacon, so the SMDT mean is unbiased for the MDT).
  std::string exact;
  for (Channel nc = 2; nc <= 8; ++nc) {
    const auto& b = grid_bps();
    const ChannelSet c(nc);
    const Rational ratio = *discovery_times(psv(b, c), b, c).mdt / *discovery_times(greedy(b, c), b, c).mdt;
    exact += (nc > 2 ? " " : "") + to_significant(to_double(ratio), 4);
  }
  r.checks.push_back({"reference: exact MDT ratio psv/greedy-first |C|=2..8", "reported", exact, true});

  for (Channel nc = 2; nc <= 8; ++nc) {
    const auto id = "c" + std::to_string(nc) + "-deaf25";
    const double train = mean(id, "chantrain", "success_rate");
    const double first = mean(id, "greedy-first", "success_rate");
    r.checks.push_back({"success chantrain >= greedy-first at |C|=" + std::to_string(nc) + ", deaf 0.25",
                        ">= " + to_significant(first, 6), to_significant(train, 6), train >= first});
  }
  for (Channel nc = 2; nc <= 8; ++nc) {
    const auto id = "c" + std::to_string(nc) + "-deaf25";
    const double stay = mean(id, "greedy-stay", "switches");
    const double first = mean(id, "greedy-first", "switches");
    r.checks.push_back({"switches greedy-stay <= greedy-first at |C|=" + std::to_string(nc), "<= " + to_significant(first, 6),
                        to_significant(stay, 6), stay <= first});
  }
  (void)opt;
  return r;
}

inline CriterionResult statistical_sanity(const SuiteOptions& opt)
{
  CriterionResult r{8, "Sampling matches the uniform configuration model", {}, 0.0};
  constexpr std::uint32_t kSamples = 100'000;
  for (const auto& [periods, nc] : std::vector<std::pair<std::vector<Period>, Channel>>{{{1, 2}, 2}, {{1, 2, 3}, 3}}) {
    sim::Scenario s;
    s.bps = BeaconPeriodSet(periods);
    s.channels = ChannelSet(nc);
    s.neighbor_count = kSamples;
    s.seed = opt.simulation_seed;
    const auto neighbors = sim::sample_neighbors(s);
    const ConfigurationIndex index(s.bps, s.channels);
    std::vector<std::size_t> counts(index.size(), 0);
    for (const auto& n : neighbors) ++counts[index.at(n.channel, s.bps.index_of(n.period), n.offset)];
    double worst = 0.0;
    for (const auto& k : configuration_space(s.bps, s.channels)) {
      const double p = to_double(k.probability);
      const double expected = p * kSamples;
      const double sigma = std::sqrt(kSamples * p * (1.0 - p));
      const double z = std::abs(static_cast<double>(counts[index.at(k.channel, s.bps.index_of(k.period), k.offset)]) - expected) / sigma;
      worst = std::max(worst, z);
    }
    r.checks.push_back({"10^5 samples, " + detail::instance_label(s.bps, s.channels) + ": max |z| per bucket", "<= 3",
                        to_significant(worst, 4), worst <= 3.0});
  }

  // Sample mean of greedy discovery slots against the exact MDT.
  sim::Scenario s;
  s.bps = BeaconPeriodSet{1, 2, 3};
  s.channels = ChannelSet(3);
  s.neighbor_count = 10'000;
  s.seed = opt.simulation_seed;
  const auto schedule = greedy(s.bps, s.channels);
  const auto report = discovery_times(schedule, s.bps, s.channels);
  Rational second_moment(0);
  for (const auto& t : report.times)
    second_moment += t.configuration.probability * Rational(static_cast<std::int64_t>(*t.slot * *t.slot));
  const double mdt = to_double(*report.mdt);
  const double sigma = std::sqrt((to_double(second_moment) - mdt * mdt) / s.neighbor_count);
  const auto outcome = sim::run_trial(schedule, sim::sample_neighbors(s), 0.0);
  const double z = std::abs(*outcome.smdt - mdt) / sigma;
  r.checks.push_back({"greedy SMDT over 10^4 neighbors vs MDT 49/18", "|z| <= 3",
                      "SMDT " + to_significant(*outcome.smdt, 6) + ", |z| " + to_significant(z, 4), z <= 3.0});
  return r;
}

// ---------------------------------------------------------------------------
// Artifacts and the full run

inline std::string checks_to_json(std::span<const CriterionResult> criteria)
{
  json doc = json::array();
  for (const auto& c : criteria) {
    json checks = json::array();
    for (const auto& k : c.checks)
      checks.push_back({{"name", k.name}, {"expected", k.expected}, {"actual", k.actual}, {"passed", k.passed}});
    doc.push_back({{"criterion", c.id}, {"title", c.title}, {"passed", c.passed()}, {"checks", std::move(checks)}});
  }
  return doc.dump(2) + "\n";
}

inline Artifacts make_artifacts(std::span<const CriterionResult> criteria, const sim::EvaluationResult& eval)
{
  Artifacts a;
  a.checks_json = checks_to_json(criteria);
  std::ostringstream metrics, sndot;
  sim::write_metrics_csv(eval, metrics);
  sim::write_sndot_csv(eval, sndot);
  a.metrics_csv = metrics.str();
  a.sndot_csv = sndot.str();
  return a;
}

namespace detail {

// An exception inside a criterion becomes a failed check.
template <class F>
CriterionResult run_timed(int id, F&& f)
{
  CriterionResult out;
  const double seconds = timed([&] {
    try {
      out = f();
    } catch (const std::exception& e) {
      out = CriterionResult{id, "criterion " + std::to_string(id), {{"runs to completion", "no error", e.what(), false}}, 0.0};
    }
  });
  out.seconds = seconds;
  return out;
}

// Everything except the determinism criterion, which needs two of these.
inline std::vector<CriterionResult> core_criteria(const SuiteOptions& opt, sim::EvaluationResult& eval,
                                                  const std::function<void(const CriterionResult&)>& progress)
{
  std::vector<CriterionResult> out;
  auto add = [&](CriterionResult r) {
    if (progress) progress(r);
    out.push_back(std::move(r));
  };
  add(run_timed(1, [&] { return mdt_gap_f1(opt); }));
  add(run_timed(2, [&] { return mdt_gap_f2(opt); }));
  add(run_timed(3, [&] { return horizon_dependence(opt); }));
  add(run_timed(4, [&] { return recursive_nonexistence(); }));
  add(run_timed(5, [&] { return theorem_grid(opt); }));
  add(run_timed(6, [&] { return oracle_equivalence(opt); }));
  add(run_timed(7, [&] {
    const auto grid = simulation_grid(opt);
    eval = sim::evaluate(grid);
    return simulation_orderings(opt, eval);
  }));
  add(run_timed(8, [&] { return statistical_sanity(opt); }));
  return out;
}

}  // namespace detail

/// Runs criteria 1-9. Determinism regenerates the artifact-producing parts
/// (simulation, schedules of every generator, LP text) and compares bytes.
inline SuiteReport run_suite(const SuiteOptions& opt = {},
                             const std::function<void(const CriterionResult&)>& progress = {})
{
  SuiteReport report;
  sim::EvaluationResult eval;
  report.criteria = detail::core_criteria(opt, eval, progress);
  report.artifacts = make_artifacts(report.criteria, eval);

  auto determinism = detail::run_timed(9, [&] {
    CriterionResult r{9, "Determinism of artifacts", {}, 0.0};
    auto rerun = [&] {
      std::ostringstream out;
      sim::write_metrics_csv(sim::evaluate(simulation_grid(opt)), out);
      return out.str();
    };
    const bool same_metrics = rerun() == report.artifacts.metrics_csv;
    r.checks.push_back({"simulation metrics CSV", "byte-identical", same_metrics ? "identical" : "differs", same_metrics});
    std::string first, second;
    for (std::string* target : {&first, &second}) {
      for (const auto& periods : std::vector<std::vector<Period>>{{1, 2, 3}, {2, 3, 4, 6, 12}, {1, 2, 4, 8}, {2, 3}}) {
        const BeaconPeriodSet b(periods);
        const ChannelSet c(2);
        for (const auto name : kStrategyNames) {
          if (name == "optb2" && b.size() != 2) continue;
          if (name == "recursive-f3" && b.family() != Family::F3) continue;
          *target += schedule_to_json(make_schedule(name, b, c)).dump() + "\n";
        }
        *target += export_lp(build_mdtopt(b, c));
      }
    }
    r.checks.push_back({"schedule JSON and LP export", "byte-identical", first == second ? "identical" : "differs", first == second});
    return r;
  });
  if (progress) progress(determinism);
  report.criteria.push_back(std::move(determinism));
  // Rebuild with criterion 9 included.
  report.artifacts.checks_json = checks_to_json(report.criteria);
  return report;
}

/// One PASS/FAIL line per criterion followed by its checks.
inline void print_criterion(const CriterionResult& c, std::ostream& out)
{
  char head[256];
  std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.2f s)\n", c.passed() ? "PASS" : "FAIL", c.id,
                c.title.c_str(), c.seconds);
  out << head;
  for (const auto& k : c.checks)
    out << "    " << (k.passed ? "ok   " : "FAIL ") << k.name << " | expected " << k.expected << " | actual " << k.actual
        << '\n';
}

}  // namespace ndisco::acceptance
