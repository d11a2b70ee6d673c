// ndisco: generate, verify, optimize and simulate passive multi-channel
// discovery schedules.
//
// Exit codes: 0 success, 1 domain error (or failed paper-check), 2 usage error.

#include "ndisco/acceptance.hpp"
#include "ndisco/json_io.hpp"
#include "ndisco/optimal.hpp"
#include "ndisco/oracle.hpp"
#include "ndisco/scenario_json.hpp"
#include "ndisco/schedulers.hpp"
#include "ndisco/sim.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace ndisco;

constexpr Slot kMaxCliHorizon = 1'000'000;

struct InstanceFlags {
  std::string bps;
  std::uint32_t channels = 1;
  bool no_normalize = false;
};

void add_instance_flags(CLI::App& cmd, InstanceFlags& f)
{
  cmd.add_option("--bps", f.bps, "Beacon periods in slots, comma separated (e.g. 1,2,3)")
      ->required()
      ->check(CLI::Validator(
          [](std::string& text) {
            try {
              parse_period_list(text);
            } catch (const DomainError& e) {
              return std::string(e.what());
            }
            return std::string();
          },
          "LIST", "period list"));
  cmd.add_option("--channels", f.channels, "Number of channels")->required()->check(CLI::PositiveNumber);
  cmd.add_flag("--no-normalize", f.no_normalize, "Keep the periods as given instead of dividing by their GCD");
}

BeaconPeriodSet load_bps(const InstanceFlags& f)
{
  const BeaconPeriodSet given(parse_period_list(f.bps));
  if (f.no_normalize || given.gcd() == 1) return given;
  const auto reduced = normalize_bp_set(given);
  std::string list;
  for (const auto b : reduced.periods()) list += (list.empty() ? "" : ",") + std::to_string(b);
  std::cerr << "note: beacon periods divided by their GCD " << given.gcd() << "; working with {" << list
            << "} (slot counts are in units of " << given.gcd() << " slots; pass --no-normalize to keep them)\n";
  return reduced;
}

std::optional<Slot> checked_t_max(const std::optional<Slot>& t_max)
{
  if (t_max && *t_max > kMaxCliHorizon)
    throw DomainError("--t-max above " + std::to_string(kMaxCliHorizon) + " is not supported");
  return t_max;
}

// Empty path or "-" means standard output.
void write_text(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw DomainError("cannot write " + path);
}

std::string read_text(const std::string& path)
{
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_json(const std::string& text, const std::string& what)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(what + " is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------

int run_generate(const InstanceFlags& f, const std::string& strategy, const std::string& out)
{
  const auto bps = load_bps(f);
  const ChannelSet channels(f.channels);
  const auto schedule = make_schedule(strategy, bps, channels);
  const auto report = discovery_times(schedule, bps, channels);
  const std::string doc = schedule_to_json(schedule).dump() + "\n";
  write_text(out, doc);
  std::cout << "strategy=" << strategy << " wdt=" << (report.wdt ? std::to_string(*report.wdt) : "incomplete")
            << " mdt=" << (report.mdt ? to_fixed(*report.mdt) : "undefined")
            << " mdt_exact=" << (report.mdt ? to_fraction_string(*report.mdt) : "undefined")
            << " switches=" << channel_switch_count(schedule) << "\n";
  return 0;
}

int run_verify(const InstanceFlags& f, const std::string& schedule_path, const std::string& strategy)
{
  const auto bps = load_bps(f);
  const ChannelSet channels(f.channels);
  Schedule schedule;
  if (!schedule_path.empty()) {
    schedule = schedule_from_json(parse_json(read_text(schedule_path), schedule_path));
    for (const auto& [t, c] : schedule.scans())
      if (c >= channels.count())
        throw DomainError("slot " + std::to_string(t) + " scans channel " + std::to_string(c) + " but only " +
                          std::to_string(channels.count()) + " channels exist");
  } else {
    schedule = make_schedule(strategy, bps, channels);
  }
  const auto report = discovery_times(schedule, bps, channels);
  json verdict;
  verdict["complete"] = oracle::is_complete(schedule, bps, channels);
  verdict["recursive"] = oracle::is_recursive(schedule, bps, channels);
  verdict["wdt_optimal"] = oracle::is_wdt_optimal(schedule, bps, channels);
  verdict["wdt"] = report.wdt ? json(*report.wdt) : json(nullptr);
  verdict["mdt"] = report.mdt ? json(to_fraction_string(*report.mdt)) : json(nullptr);
  std::cout << verdict.dump() << "\n";
  return 0;
}

int run_optimize(const InstanceFlags& f, const std::optional<Slot>& t_max, std::uint64_t node_limit,
                 const std::string& out)
{
  const auto bps = load_bps(f);
  const ChannelSet channels(f.channels);
  const auto model = build_mdtopt(bps, channels, checked_t_max(t_max));
  const auto result = solve_exact(model, node_limit);
  json doc;
  doc["objective"] = result.objective ? json(to_fraction_string(*result.objective)) : json(nullptr);
  doc["objective_decimal"] = result.objective ? json(to_double(*result.objective)) : json(nullptr);
  doc["status"] = to_string(result.status);
  doc["t_max"] = model.t_max();
  doc["nodes"] = result.nodes;
  doc["schedule"] = result.schedule ? schedule_to_json(*result.schedule) : json(nullptr);
  write_text(out, doc.dump() + "\n");
  if (result.status == SolveStatus::Infeasible) {
    std::cerr << "error: model infeasible" << (model.infeasibility() ? ": " + *model.infeasibility() : "") << "\n";
    return 1;
  }
  if (result.status == SolveStatus::BudgetExceeded)
    std::cerr << "warning: node limit reached; the objective is the best schedule found, not a proven optimum\n";
  return 0;
}

int run_export_lp(const InstanceFlags& f, const std::optional<Slot>& t_max, const std::string& out)
{
  const auto bps = load_bps(f);
  const auto model = build_mdtopt(bps, ChannelSet(f.channels), checked_t_max(t_max));
  if (model.infeasibility()) std::cerr << "warning: model is infeasible: " << *model.infeasibility() << "\n";
  write_text(out, export_lp(model));
  return 0;
}

int run_simulate(const std::string& scenario_path, const std::string& metrics_out, const std::string& sndot_out,
                 bool normalize_ilp, std::uint64_t node_limit)
{
  auto grid = scenarios_from_json(parse_json(read_text(scenario_path), scenario_path));
  if (const char* env = std::getenv("NDISCO_SEED")) {
    std::uint64_t seed = 0;
    try {
      std::size_t used = 0;
      const std::string text(env);
      if (text.empty() || text[0] == '-') throw std::invalid_argument("sign");
      seed = std::stoull(text, &used, 10);
      if (used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DomainError("NDISCO_SEED must be an unsigned 64-bit integer");
    }
    for (auto& entry : grid) entry.scenario.seed = seed;
    std::cerr << "note: NDISCO_SEED overrides every scenario seed with " << seed << "\n";
  }
  sim::EvaluationOptions options;
  options.normalize_ilp = normalize_ilp;
  options.node_limit = node_limit;
  const auto result = sim::evaluate(grid, options);
  std::ostringstream metrics;
  sim::write_metrics_csv(result, metrics);
  write_text(metrics_out, metrics.str());
  if (!sndot_out.empty()) {
    std::ostringstream curves;
    sim::write_sndot_csv(result, curves);
    write_text(sndot_out, curves.str());
  }
  return 0;
}

int run_paper_check(const std::string& out_dir, std::uint64_t node_limit)
{
  acceptance::SuiteOptions options;
  options.theorem_node_limit = node_limit;
  const auto report = acceptance::run_suite(options, [](const acceptance::CriterionResult& c) {
    acceptance::print_criterion(c, std::cout);
    std::cout.flush();
  });
  std::size_t passed = 0;
  for (const auto& c : report.criteria) passed += c.passed();
  std::cout << passed << " of " << report.criteria.size() << " criteria passed\n";

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw DomainError("cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  write_text((dir / "checks.json").string(), report.artifacts.checks_json);
  write_text((dir / "metrics.csv").string(), report.artifacts.metrics_csv);
  write_text((dir / "sndot.csv").string(), report.artifacts.sndot_csv);
  std::cout << "artifacts written to " << out_dir << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Passive multi-channel neighbor discovery: listening schedules, optimal models and simulation"};
  app.footer(
      "Environment:\n  NDISCO_SEED  overrides the seed of every scenario given to `simulate`\n\n"
      "Exit codes: 0 success, 1 domain error or failed check, 2 usage error");
  app.require_subcommand(1);

  std::vector<std::string> strategies(kStrategyNames.begin(), kStrategyNames.end());
  InstanceFlags inst;
  std::string strategy = "greedy-first";
  std::string out;
  std::string schedule_path;
  std::optional<Slot> t_max;
  std::uint64_t node_limit = kDefaultNodeLimit;

  auto* generate = app.add_subcommand("generate", "Build a schedule and print its JSON plus a summary line");
  add_instance_flags(*generate, inst);
  generate->add_option("--strategy", strategy, "Scheduling strategy")->check(CLI::IsMember(strategies));
  generate->add_option("--out", out, "Write the schedule JSON here instead of standard output");

  auto* verify = app.add_subcommand("verify", "Check completeness, recursiveness and WDT optimality");
  add_instance_flags(*verify, inst);
  auto* schedule_opt = verify->add_option("--schedule", schedule_path, "Schedule JSON file ('-' for stdin)");
  verify->add_option("--strategy", strategy, "Generate the schedule with this strategy instead")
      ->check(CLI::IsMember(strategies))
      ->excludes(schedule_opt);

  auto* optimize = app.add_subcommand("optimize", "Solve the MDT-optimal schedule exactly");
  add_instance_flags(*optimize, inst);
  optimize->add_option("--t-max", t_max, "Last slot of the model horizon (default LCM(B)|C| - 1)");
  optimize->add_option("--node-limit", node_limit, "Branch-and-bound node budget")->check(CLI::PositiveNumber);
  optimize->add_option("--out", out, "Write the result JSON here instead of standard output");

  auto* export_cmd = app.add_subcommand("export-lp", "Write the MDT-optimal model in LP format");
  add_instance_flags(*export_cmd, inst);
  export_cmd->add_option("--t-max", t_max, "Last slot of the model horizon (default LCM(B)|C| - 1)");
  export_cmd->add_option("--out", out, "Output file (default standard output)");

  std::string scenario_path, sndot_out;
  bool normalize_ilp = false;
  auto* simulate = app.add_subcommand("simulate", "Evaluate strategies on sampled neighbor populations");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON file ('-' for stdin)")->required();
  simulate->add_option("--out", out, "Metrics CSV file (default standard output)");
  simulate->add_option("--sndot-out", sndot_out, "SNDoT curve CSV file");
  simulate->add_flag("--normalize-ilp", normalize_ilp, "Normalize SMDT/SWDT by per-trial ILP optima");
  simulate->add_option("--node-limit", node_limit, "Node budget per normalization ILP")->check(CLI::PositiveNumber);

  std::string check_dir = "paper-check";
  std::uint64_t grid_limit = acceptance::SuiteOptions{}.theorem_node_limit;
  auto* paper_check = app.add_subcommand("paper-check", "Run the acceptance criteria and write their artifacts");
  paper_check->add_option("--out", check_dir, "Artifact directory")->capture_default_str();
  paper_check->add_option("--node-limit", grid_limit, "Node budget per ILP in the theorem grid")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*generate) return run_generate(inst, strategy, out);
    if (*verify) return run_verify(inst, schedule_path, strategy);
    if (*optimize) return run_optimize(inst, t_max, node_limit, out);
    if (*export_cmd) return run_export_lp(inst, t_max, out);
    if (*simulate) return run_simulate(scenario_path, out, sndot_out, normalize_ilp, node_limit);
    if (*paper_check) return run_paper_check(check_dir, grid_limit);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
