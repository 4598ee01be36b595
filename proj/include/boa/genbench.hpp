#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "boa/cost.hpp"
#include "boa/model.hpp"
#include "boa/online.hpp"

namespace boa {

// File/parse failures, as opposed to domain validation errors.
class io_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntheticConfig {
  int n_workers = 6000;
  int n_tasks = 6000;
  double budget = 3000.0;
  double deadline_window = 60.0;  // d_t - r_t
  double square_side = 500.0;
  double time_horizon = 100.0;  // times drawn uniformly in [0, horizon - 1]
  double velocity = 1.0;
  MetricKind metric = MetricKind::Manhattan;
  std::uint64_t seed = 0;
};

// Uniform positions in the square, uniform arrival/release times over the
// horizon, deadlines at release + window. c_max is the square's metric
// diameter. Fully determined by the seed.
Instance gen_synthetic(const SyntheticConfig& cfg);

// Stream ordered by stored arrival times (ties by id). A reshuffle seed
// redraws arrival times uniformly over [0, max stored arrival] first, giving
// a fresh random arrival order over the same workers.
ArrivalStream order_random(const Instance& inst, std::optional<std::uint64_t> reshuffle_seed = {});

// Expensive-workers-first ordering: each worker scored by its cheapest
// deadline-feasible task (no feasible task scores infinity and goes first),
// sorted descending. Arrival times are reassigned as an evenly spaced
// increasing sequence over the stored arrival range so the stream stays
// self-consistent; feasibility downstream uses the new times.
ArrivalStream order_adversary(const Instance& inst);

struct PickupRecord {
  int year = 0, month = 0, day = 0;
  double seconds_of_day = 0.0;
  double lat = 0.0, lon = 0.0;
};

struct IngestOptions {
  bool lenient = false;  // skip malformed rows instead of throwing
};

struct IngestReport {
  std::vector<Worker> workers;
  long long rows_total = 0;
  long long rows_outside = 0;  // outside bbox or time window
  long long rows_malformed = 0;
  std::vector<std::string> malformed_lines;  // "line N: reason" (lenient mode)
  bool empty_result = false;
};

// Parses `Date/Time,Lat,Lon[,...]` CSVs (Uber-FOIL `M/D/YYYY H:MM:SS`
// timestamps, ISO-8601 fallback). Keeps records inside the bbox whose
// time-of-day falls in [window_start_hour, window_end_hour), projects them
// to km, and emits workers with arrivals in minutes since window start and
// uniform velocity in km/minute. Ids are sequential in file order.
IngestReport ingest_pickups_csv(const std::string& path, const GeoBoundingBox& bbox,
                                double window_start_hour, double window_end_hour,
                                double velocity_kmh, const IngestOptions& opts = {});

// Inverse of ingest for round-trips and fixture tooling: unprojects worker
// locations and writes FOIL-format rows on a fixed nominal date.
void write_pickups_csv(const std::vector<Worker>& workers, const GeoBoundingBox& bbox,
                       double window_start_hour, const std::string& path);

// Uniform task locations over the projected bbox, release uniform over
// [0, release_window_min], deadline at release + lifetime. The budget is the
// caller's to set.
TaskBatch gen_real_tasks(const GeoBoundingBox& bbox, int n_tasks, double release_window_min,
                         double lifetime_min, std::uint64_t seed);

// --- JSON serialization (self-describing, replayable) ---

nlohmann::json instance_to_json(const Instance& inst,
                                const nlohmann::json& provenance = nullptr);
Instance instance_from_json(const nlohmann::json& j);
void save_instance(const Instance& inst, const std::string& path,
                   const nlohmann::json& provenance = nullptr);
Instance load_instance(const std::string& path);

nlohmann::json matching_to_json(const Matching& m);
nlohmann::json trace_to_json(const RunTrace& trace, const std::string& algo);

}  // namespace boa
