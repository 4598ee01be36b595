// Command-line front end: workload generation, single runs, parameter
// sweeps, solver cross-checks, and the pickup-trace pipeline.
//
// Exit codes: 0 success, 1 validation/assertion failure, 2 I/O or parse
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "boa/genbench.hpp"
#include "boa/harness.hpp"
#include "boa/offline.hpp"
#include "boa/online.hpp"

using nlohmann::json;

namespace {

boa::GeoBoundingBox parse_bbox(const std::string& s) {
  boa::GeoBoundingBox bbox;
  double lat0, lon0, lat1, lon1;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &lat0, &lon0, &lat1, &lon1) != 4)
    throw boa::io_error("bad --bbox '" + s + "', expected lat0,lon0,lat1,lon1");
  bbox.lat_min = std::min(lat0, lat1);
  bbox.lat_max = std::max(lat0, lat1);
  bbox.lon_min = std::min(lon0, lon1);
  bbox.lon_max = std::max(lon0, lon1);
  return bbox;
}

std::pair<double, double> parse_window(const std::string& s) {
  double h0, h1;
  if (std::sscanf(s.c_str(), "%lf-%lf", &h0, &h1) != 2)
    throw boa::io_error("bad --window '" + s + "', expected h0-h1");
  return {h0, h1};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw boa::io_error("cannot open: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw boa::io_error("bad JSON in " + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw boa::io_error("cannot open for writing: " + path);
  out << text;
}

constexpr const char* kNycBbox = "40.5998,-74.0701,40.8998,-73.7701";

int cmd_gen(const std::string& config_path, const std::string& out_path) {
  json cfg_json = load_json(config_path);
  // The sweep parser already knows the config block's field names.
  json wrapped = {{"base", cfg_json}, {"values", {0.0}}};
  boa::SyntheticConfig cfg = boa::sweep_spec_from_json(wrapped).base;
  boa::Instance inst = boa::gen_synthetic(cfg);
  boa::validate_instance(inst);
  boa::save_instance(inst, out_path, json{{"generator", "synthetic"}, {"config", cfg_json}});
  std::cout << "wrote " << out_path << " (" << inst.workers.size() << " workers, "
            << inst.batch.tasks.size() << " tasks)\n";
  return 0;
}

int cmd_run(const std::string& instance_path, const std::string& algo_name_str,
            const std::string& order_str, std::optional<std::uint64_t> seed,
            const std::string& history_path, const std::string& out_path) {
  boa::Instance inst = boa::load_instance(instance_path);
  boa::validate_instance(inst);
  boa::Algo algo = boa::algo_from_name(algo_name_str);
  boa::ArrivalModel order = boa::arrival_model_from_name(order_str);

  boa::ArrivalStream stream;
  if (order == boa::ArrivalModel::Adversary) {
    stream = boa::order_adversary(inst);
  } else {
    stream = boa::order_random(inst, seed);
  }
  boa::Instance eff = inst;
  eff.workers = stream.workers;

  json out;
  switch (algo) {
    case boa::Algo::OptAlg1:
    case boa::Algo::OptExact: {
      boa::Matching m = algo == boa::Algo::OptAlg1 ? boa::algorithm1_optimal(eff)
                                                   : boa::budget_ssp_optimal(eff);
      auto report = boa::validate_matching(m, eff);
      if (!report.ok()) throw std::logic_error("solver output invalid: " + report.violations[0]);
      out = {{"schema", "boa-trace-v1"},
             {"algo", algo_name_str},
             {"matching", boa::matching_to_json(m)},
             {"unspent_budget", eff.batch.budget - m.total_cost}};
      break;
    }
    case boa::Algo::Greedy:
    case boa::Algo::GreedyRt:
    case boa::Algo::GreedyOt: {
      boa::ThresholdPolicy policy = boa::ThresholdPolicy::unbounded();
      if (algo == boa::Algo::GreedyRt) {
        policy = boa::ThresholdPolicy::random_exp(eff.c_max,
                                                  seed.value_or(0) ^ 0x5bd1e995u);
      } else if (algo == boa::Algo::GreedyOt) {
        if (history_path.empty())
          throw std::invalid_argument("greedy-ot requires --ot-history <instance.json>");
        boa::Instance hist = boa::load_instance(history_path);
        boa::validate_instance(hist);
        double tau = boa::extract_ot_threshold(boa::budget_ssp_optimal(hist));
        policy = boa::ThresholdPolicy::fixed(tau);
      }
      boa::RunTrace trace = boa::run_online(stream, eff.batch, eff.metric, policy);
      auto report = boa::validate_matching(trace.matching, eff);
      if (!report.ok()) throw std::logic_error("run output invalid: " + report.violations[0]);
      out = boa::trace_to_json(trace, algo_name_str);
      break;
    }
    case boa::Algo::GreedyRtExpectation: {
      auto support = boa::kappa_support(eff.c_max);
      std::vector<int> sizes =
          boa::greedy_rt_grade_sizes(stream, eff.batch, eff.metric, eff.c_max);
      double expectation =
          boa::greedy_rt_expectation(stream, eff.batch, eff.metric, eff.c_max);
      out = {{"schema", "boa-trace-v1"},
             {"algo", algo_name_str},
             {"kappa_support", support},
             {"per_kappa_sizes", sizes},
             {"expectation", expectation}};
      break;
    }
  }
  write_text(out_path, out.dump(2) + "\n");
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path, bool no_timing) {
  boa::SweepSpec spec = boa::load_sweep_spec(spec_path);
  if (no_timing) spec.include_timings = false;
  std::vector<boa::ResultRow> rows = boa::run_sweep(spec);
  boa::write_results_csv(rows, spec, out_path);
  std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_oracle_check(int trials, int max_size, std::uint64_t seed) {
  boa::OracleReport report = boa::oracle_check(trials, max_size, seed);
  std::printf("oracle-check: trials=%d checked=%d\n", report.trials, report.instances_checked);
  std::printf("  exact-vs-brute size mismatches: %d\n", report.size_mismatches);
  std::printf("  invalid matchings:              %d\n", report.invalid_matchings);
  std::printf("  expectation-bound violations:   %d\n", report.expectation_bound_violations);
  std::printf("  guided-bound checked/skipped:   %d/%d (multi-optimum skipped)\n",
              report.guided_bound_checked, report.guided_bound_skipped_multi);
  std::printf("  guided-bound violations:        %d\n", report.guided_bound_violations);
  std::printf("  overlap-property violations:    %d\n", report.overlap_violations);
  std::printf("  sorted-prefix max size gap:     %d\n", report.alg1_max_size_gap);
  std::printf("  toy fixture replay:             %s\n", report.toy_replay_ok ? "ok" : "FAILED");
  if (!report.ok()) {
    if (!report.failure_dump.empty())
      std::fprintf(stderr, "offending instance dumped to %s\n", report.failure_dump.c_str());
    return 1;
  }
  return 0;
}

int cmd_ingest(const std::string& csv_path, const std::string& bbox_str,
               const std::string& window_str, double velocity_kmh, bool lenient,
               const std::string& out_path) {
  boa::GeoBoundingBox bbox = parse_bbox(bbox_str);
  auto [h0, h1] = parse_window(window_str);
  boa::IngestOptions opts;
  opts.lenient = lenient;
  boa::IngestReport report = boa::ingest_pickups_csv(csv_path, bbox, h0, h1, velocity_kmh, opts);
  if (report.empty_result)
    std::fprintf(stderr, "warning: no records survived the bbox/window filter\n");

  json workers = json::array();
  for (const boa::Worker& w : report.workers)
    workers.push_back({{"id", w.id},
                       {"x", w.loc.x},
                       {"y", w.loc.y},
                       {"arrival", w.arrival},
                       {"velocity", w.velocity}});
  json out = {{"schema", "boa-workers-v1"},
              {"source", csv_path},
              {"window_hours", {h0, h1}},
              {"rows_total", report.rows_total},
              {"rows_outside", report.rows_outside},
              {"rows_malformed", report.rows_malformed},
              {"workers", workers}};
  write_text(out_path, out.dump(2) + "\n");
  std::cout << "wrote " << out_path << " (" << report.workers.size() << " workers, "
            << report.rows_outside << " filtered, " << report.rows_malformed << " malformed)\n";
  return 0;
}

int cmd_real(const std::string& pickups, const std::string& history, const std::string& bbox_str,
             const std::string& window_str, double budget, int n_tasks, std::uint64_t seed,
             double velocity_kmh, bool no_timing, const std::string& out_path) {
  boa::GeoBoundingBox bbox = parse_bbox(bbox_str);
  auto [h0, h1] = parse_window(window_str);
  boa::RealResult result =
      boa::run_real(pickups, history, bbox, h0, h1, n_tasks, seed, budget, velocity_kmh);
  boa::write_real_csv(result, !no_timing, out_path);
  std::cout << "wrote " << out_path << " (threshold " << result.opt_threshold << " km, "
            << result.workers_target << " target workers)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"budget-aware online task assignment toolkit"};
  app.require_subcommand(1);

  // gen
  std::string gen_config, gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--config", gen_config, "synthetic config JSON")->required();
  gen->add_option("--out", gen_out, "output instance JSON")->required();

  // run
  std::string run_instance, run_algo, run_order = "random", run_history, run_out;
  std::optional<std::uint64_t> run_seed;
  CLI::App* run = app.add_subcommand("run", "run one algorithm on an instance");
  run->add_option("--instance", run_instance, "instance JSON")->required();
  run->add_option("--algo", run_algo,
                  "opt-alg1|opt-exact|greedy|greedy-rt|greedy-rt-exp|greedy-ot")
      ->required();
  run->add_option("--order", run_order, "adversary|random");
  run->add_option("--seed", run_seed,
                  "redraws random-order arrivals and seeds the random threshold");
  run->add_option("--ot-history", run_history, "historical instance JSON (greedy-ot)");
  run->add_option("--out", run_out, "output trace JSON")->required();

  // sweep
  std::string sweep_spec, sweep_out;
  bool sweep_no_timing = false;
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep from a spec");
  sweep->add_option("--spec", sweep_spec, "sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "output results CSV")->required();
  sweep->add_flag("--no-timing", sweep_no_timing, "omit wall-clock columns (stable output)");

  // oracle-check
  int oc_trials = 500, oc_max_size = 6;
  std::uint64_t oc_seed = 42;
  CLI::App* oracle = app.add_subcommand("oracle-check", "cross-check solvers and bounds");
  oracle->add_option("--trials", oc_trials, "number of random instances");
  oracle->add_option("--max-size", oc_max_size, "max workers/tasks per instance (<= 10)");
  oracle->add_option("--seed", oc_seed, "rng seed");

  // ingest
  std::string ing_csv, ing_bbox = kNycBbox, ing_window = "0-12", ing_out;
  double ing_velocity = 40.0;
  bool ing_lenient = false;
  CLI::App* ingest = app.add_subcommand("ingest", "parse a pickup CSV into workers");
  ingest->add_option("--csv", ing_csv, "pickups CSV (Date/Time,Lat,Lon[,...])")->required();
  ingest->add_option("--bbox", ing_bbox, "lat0,lon0,lat1,lon1");
  ingest->add_option("--window", ing_window, "hour window h0-h1");
  ingest->add_option("--velocity-kmh", ing_velocity, "worker velocity in km/h");
  ingest->add_flag("--lenient", ing_lenient, "skip malformed rows instead of failing");
  ingest->add_option("--out", ing_out, "output workers JSON")->required();

  // real
  std::string real_pickups, real_history, real_bbox = kNycBbox, real_window = "0-12", real_out;
  double real_budget = 300.0, real_velocity = 40.0;
  int real_tasks = 6000;
  std::uint64_t real_seed = 0;
  bool real_no_timing = false;
  CLI::App* real = app.add_subcommand("real", "pickup-trace benchmark with guidance");
  real->add_option("--pickups", real_pickups, "target-day pickups CSV")->required();
  real->add_option("--history", real_history, "historical-day pickups CSV")->required();
  real->add_option("--bbox", real_bbox, "lat0,lon0,lat1,lon1");
  real->add_option("--window", real_window, "hour window h0-h1");
  real->add_option("--budget", real_budget, "budget in km");
  real->add_option("--tasks", real_tasks, "number of generated tasks");
  real->add_option("--seed", real_seed, "task generation seed");
  real->add_option("--velocity-kmh", real_velocity, "worker velocity in km/h");
  real->add_flag("--no-timing", real_no_timing, "omit seconds column (stable output)");
  real->add_option("--out", real_out, "output table CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_config, gen_out);
    if (run->parsed())
      return cmd_run(run_instance, run_algo, run_order, run_seed, run_history, run_out);
    if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out, sweep_no_timing);
    if (oracle->parsed()) return cmd_oracle_check(oc_trials, oc_max_size, oc_seed);
    if (ingest->parsed())
      return cmd_ingest(ing_csv, ing_bbox, ing_window, ing_velocity, ing_lenient, ing_out);
    if (real->parsed())
      return cmd_real(real_pickups, real_history, real_bbox, real_window, real_budget,
                      real_tasks, real_seed, real_velocity, real_no_timing, real_out);
  } catch (const boa::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
