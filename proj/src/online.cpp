#include "boa/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace boa {

ArrivalStream stream_from_workers(std::vector<Worker> workers) {
  std::sort(workers.begin(), workers.end(), [](const Worker& a, const Worker& b) {
    if (a.arrival != b.arrival) return a.arrival < b.arrival;
    return a.id < b.id;
  });
  return ArrivalStream{std::move(workers)};
}

std::vector<int> kappa_support(double c_max) {
  if (!(c_max > 0.0)) throw std::invalid_argument("kappa_support: c_max must be > 0");
  // Nudge before ceiling so exact integer logs (e.g. c_max = e - 1) are not
  // pushed up by float error.
  int n = static_cast<int>(std::ceil(std::log(c_max + 1.0) - 1e-9));
  if (n < 0) n = 0;
  std::vector<int> support(n + 1);
  std::iota(support.begin(), support.end(), 0);
  return support;
}

int sample_kappa(double c_max, std::mt19937_64& rng) {
  std::vector<int> support = kappa_support(c_max);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(support.size()) - 1);
  return support[pick(rng)];
}

double extract_ot_threshold(const Matching& historical_opt) {
  if (historical_opt.empty())
    throw std::invalid_argument("extract_ot_threshold: historical optimum is empty");
  double max_cost = 0.0;
  for (const Pair& p : historical_opt.pairs) max_cost = std::max(max_cost, p.cost);
  return max_cost;
}

RunTrace run_online(const ArrivalStream& stream, const TaskBatch& batch,
                    const CostMetric& metric, const ThresholdPolicy& policy) {
  RunTrace trace;
  switch (policy.kind) {
    case ThresholdPolicy::Kind::Unbounded:
      trace.tau = std::numeric_limits<double>::infinity();
      break;
    case ThresholdPolicy::Kind::Fixed:
      if (!(policy.tau > 0.0) || !std::isfinite(policy.tau))
        throw std::invalid_argument("run_online: fixed threshold must be finite and > 0");
      trace.tau = policy.tau;
      break;
    case ThresholdPolicy::Kind::RandomExp: {
      std::mt19937_64 rng(policy.seed);
      trace.kappa = sample_kappa(policy.c_max, rng);
      trace.tau = std::exp(static_cast<double>(trace.kappa));
      break;
    }
  }

  std::vector<bool> assigned(batch.tasks.size(), false);
  double used = 0.0;
  trace.decisions.reserve(stream.workers.size());

  for (const Worker& w : stream.workers) {
    int best_index = -1;
    double best_cost = 0.0;
    bool any_feasible = false;
    bool any_under_tau = false;
    for (std::size_t j = 0; j < batch.tasks.size(); ++j) {
      if (assigned[j]) continue;
      const Task& t = batch.tasks[j];
      if (!is_feasible(w, t, metric)) continue;
      any_feasible = true;
      double c = travel_cost(w, t, metric);
      if (c > trace.tau + kCostEps) continue;
      any_under_tau = true;
      if (used + c > batch.budget + kCostEps) continue;
      if (best_index < 0 || c < best_cost ||
          (c == best_cost && batch.tasks[j].id < batch.tasks[best_index].id)) {
        best_index = static_cast<int>(j);
        best_cost = c;
      }
    }

    Decision d;
    d.worker_id = w.id;
    if (best_index >= 0) {
      d.assigned = true;
      d.task_id = batch.tasks[best_index].id;
      d.cost = best_cost;
      assigned[best_index] = true;
      used += best_cost;
      trace.matching.add({w.id, d.task_id, best_cost});
    } else {
      d.reason = !any_feasible  ? RejectReason::NoFeasibleTask
                 : !any_under_tau ? RejectReason::OverThreshold
                                  : RejectReason::OverBudget;
    }
    trace.decisions.push_back(d);
  }

  trace.unspent_budget = batch.budget - used;
  return trace;
}

std::vector<int> greedy_rt_grade_sizes(const ArrivalStream& stream, const TaskBatch& batch,
                                       const CostMetric& metric, double c_max) {
  std::vector<int> sizes;
  for (int i : kappa_support(c_max)) {
    RunTrace t = run_online(stream, batch, metric,
                            ThresholdPolicy::fixed(std::exp(static_cast<double>(i))));
    sizes.push_back(static_cast<int>(t.matching.size()));
  }
  return sizes;
}

double greedy_rt_expectation(const ArrivalStream& stream, const TaskBatch& batch,
                             const CostMetric& metric, double c_max) {
  std::vector<int> sizes = greedy_rt_grade_sizes(stream, batch, metric, c_max);
  long long sum = std::accumulate(sizes.begin(), sizes.end(), 0LL);
  return static_cast<double>(sum) / static_cast<double>(sizes.size());
}

}  // namespace boa
