#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "boa/genbench.hpp"
#include "boa/model.hpp"
#include "boa/offline.hpp"
#include "boa/online.hpp"

namespace boa {

enum class Algo { OptAlg1, OptExact, Greedy, GreedyRt, GreedyRtExpectation, GreedyOt };
enum class ArrivalModel { Adversary, Random };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);  // throws std::invalid_argument
std::string arrival_model_name(ArrivalModel m);
ArrivalModel arrival_model_from_name(const std::string& name);

// Six workers, six tasks, budget 10, c_max 16. The cost structure is an
// explicit table (see src/harness.cpp for why no planar layout exists);
// the instance exercises every algorithm on a known-by-hand ground truth:
// offline optimum of size 4 / cost 9, simple greedy of size 2 / cost 10,
// threshold grades of sizes {2,3,2,2}, guided greedy of size 4 / cost 10.
Instance toy_fixture();

struct SweepSpec {
  SyntheticConfig base;
  std::string swept = "n_workers";  // n_workers|n_tasks|budget|deadline_window
  std::vector<double> values;
  ArrivalModel order = ArrivalModel::Random;
  int seeds_per_point = 1;
  std::vector<Algo> algorithms;
  // Sibling seed offset for the historical instance guiding Greedy-OT:
  // same configuration, different realization.
  std::uint64_t history_seed_offset = 1000003;
  bool include_timings = true;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec load_sweep_spec(const std::string& path);

struct ResultRow {
  double value = 0.0;
  Algo algo = Algo::Greedy;
  double mean_size = 0.0;
  double mean_cost = 0.0;
  double mean_wall_s = 0.0;
  int seeds = 0;
  std::string error;  // non-empty marks a per-point failure row
};

// One instance + stream per (value, seed); every selected algorithm runs on
// the same effective worker set (the stream's, so offline optima and online
// runs see identical feasibility). Rows aggregate means over seeds.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Writes the rows as CSV and the full spec as a `<path>.spec.json` sidecar.
void write_results_csv(const std::vector<ResultRow>& rows, const SweepSpec& spec,
                       const std::string& path);

struct OracleReport {
  int trials = 0;
  int instances_checked = 0;
  int size_mismatches = 0;         // budget-truncated flow vs brute force
  int expectation_bound_violations = 0;     // expectation below |O|/(n+1)
  int guided_bound_checked = 0;        // unique-optimum instances
  int guided_bound_skipped_multi = 0;  // multiple optima, bound not asserted
  int guided_bound_violations = 0;
  int overlap_violations = 0;
  int invalid_matchings = 0;
  int alg1_max_size_gap = 0;  // worst size shortfall of the sorted-prefix rule
  bool toy_replay_ok = false;
  std::string failure_dump;  // path of the first offending instance, if any
  bool ok() const {
    return size_mismatches == 0 && expectation_bound_violations == 0 && guided_bound_violations == 0 &&
           overlap_violations == 0 && invalid_matchings == 0 && toy_replay_ok;
  }
};

// Randomized cross-check of the exact solver against the brute-force oracle
// plus the two competitive-ratio bounds, ending with a toy-fixture replay.
// size_bound caps |W| and |T| (must be <= 10 for the oracle).
OracleReport oracle_check(int trials, int size_bound, std::uint64_t seed,
                          const std::string& failure_dump_dir = ".");

struct RealRow {
  Algo algo = Algo::Greedy;
  int quantity = 0;
  double seconds = 0.0;
};

struct RealResult {
  long long workers_target = 0;
  long long workers_history = 0;
  double opt_threshold = 0.0;
  std::vector<RealRow> rows;
};

// Pickup-trace pipeline: ingest the target and historical day, derive the
// guidance threshold from the historical optimum, and run all algorithms on
// the target day against seeded tasks. Euclidean costs in km, times in
// minutes, velocity in km/h.
RealResult run_real(const std::string& pickups_csv, const std::string& history_csv,
                    const GeoBoundingBox& bbox, double window_start_hour,
                    double window_end_hour, int n_tasks, std::uint64_t task_seed,
                    double budget_km, double velocity_kmh, double task_lifetime_min = 180.0);

void write_real_csv(const RealResult& result, bool include_timings, const std::string& path);

}  // namespace boa
