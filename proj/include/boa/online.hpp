#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "boa/model.hpp"

namespace boa {

// Workers ordered by arrival time ascending, ties by worker id.
struct ArrivalStream {
  std::vector<Worker> workers;
};

// Sorts by (arrival, id). The online loop requires this ordering.
ArrivalStream stream_from_workers(std::vector<Worker> workers);

// The knob that turns the single online loop into the three algorithms:
// Unbounded   -> simple greedy (no cost cap),
// Fixed(tau)  -> threshold greedy with a pinned cap (historical-optimum
//                guidance, or one grade of the random-threshold variant),
// RandomExp   -> tau = e^kappa with kappa drawn once per run, uniformly over
//                {0, ..., ceil(ln(c_max + 1))}.
struct ThresholdPolicy {
  enum class Kind { Unbounded, Fixed, RandomExp };
  Kind kind = Kind::Unbounded;
  double tau = 0.0;        // Fixed
  double c_max = 0.0;      // RandomExp
  std::uint64_t seed = 0;  // RandomExp

  static ThresholdPolicy unbounded() { return {Kind::Unbounded, 0.0, 0.0, 0}; }
  static ThresholdPolicy fixed(double tau) { return {Kind::Fixed, tau, 0.0, 0}; }
  static ThresholdPolicy random_exp(double c_max, std::uint64_t seed) {
    return {Kind::RandomExp, 0.0, c_max, seed};
  }
};

enum class RejectReason { NoFeasibleTask, OverThreshold, OverBudget };

struct Decision {
  int worker_id = 0;
  bool assigned = false;
  int task_id = -1;
  double cost = 0.0;
  RejectReason reason = RejectReason::NoFeasibleTask;
};

struct RunTrace {
  Matching matching;
  std::vector<Decision> decisions;  // one per stream worker, arrival order
  double unspent_budget = 0.0;
  double tau = 0.0;   // resolved threshold (infinity for Unbounded)
  int kappa = -1;     // only set for RandomExp
};

// {0, 1, ..., n} with n = ceil(ln(c_max + 1)). Throws on c_max <= 0.
std::vector<int> kappa_support(double c_max);

// Uniform draw over kappa_support(c_max).
int sample_kappa(double c_max, std::mt19937_64& rng);

// Maximum pair cost of the historical optimal matching. Throws
// std::invalid_argument on an empty matching: "no history" has no sensible
// default threshold and callers must fall back explicitly.
double extract_ot_threshold(const Matching& historical_opt);

// One pass over the stream. For each worker: among unassigned tasks that are
// deadline-feasible, within the threshold, and affordable, assign the
// cheapest (ties: smallest task id). Assignments are never revoked; rejected
// workers are never reconsidered.
RunTrace run_online(const ArrivalStream& stream, const TaskBatch& batch,
                    const CostMetric& metric, const ThresholdPolicy& policy);

// Matching sizes of the fixed-threshold runs tau = e^i, one per grade.
std::vector<int> greedy_rt_grade_sizes(const ArrivalStream& stream, const TaskBatch& batch,
                                       const CostMetric& metric, double c_max);

// Exact expectation of the random-threshold greedy over its single random
// draw: the mean of the per-grade matching sizes.
double greedy_rt_expectation(const ArrivalStream& stream, const TaskBatch& batch,
                             const CostMetric& metric, double c_max);

}  // namespace boa
