#include "boa/model.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "boa/cost.hpp"

namespace boa {

double travel_cost(const Worker& w, const Task& t, const CostMetric& metric) {
  switch (metric.kind()) {
    case MetricKind::Manhattan:
      return manhattan(w.loc, t.loc);
    case MetricKind::Euclidean:
      return euclidean(w.loc, t.loc);
    case MetricKind::Table:
      return metric.table()->cost(w.id, t.id);
  }
  throw std::logic_error("travel_cost: unknown metric kind");
}

bool is_feasible(const Worker& w, const Task& t, const CostMetric& metric) {
  return w.arrival + travel_cost(w, t, metric) / w.velocity <= t.deadline + kCostEps;
}

ValidationReport validate_matching(const Matching& m, const Instance& inst) {
  ValidationReport report;

  std::unordered_map<int, const Worker*> workers;
  for (const Worker& w : inst.workers) workers.emplace(w.id, &w);
  std::unordered_map<int, const Task*> tasks;
  for (const Task& t : inst.batch.tasks) tasks.emplace(t.id, &t);

  std::unordered_set<int> seen_workers, seen_tasks;
  double sum = 0.0;
  for (const Pair& p : m.pairs) {
    auto wit = workers.find(p.worker_id);
    auto tit = tasks.find(p.task_id);
    if (wit == workers.end()) {
      report.violations.push_back("invalid-reference: unknown worker id " +
                                  std::to_string(p.worker_id));
      continue;
    }
    if (tit == tasks.end()) {
      report.violations.push_back("invalid-reference: unknown task id " +
                                  std::to_string(p.task_id));
      continue;
    }
    if (!seen_workers.insert(p.worker_id).second)
      report.violations.push_back("one-to-one: worker " + std::to_string(p.worker_id) +
                                  " assigned twice");
    if (!seen_tasks.insert(p.task_id).second)
      report.violations.push_back("one-to-one: task " + std::to_string(p.task_id) +
                                  " assigned twice");

    double true_cost = travel_cost(*wit->second, *tit->second, inst.metric);
    if (std::abs(true_cost - p.cost) > kCostEps)
      report.violations.push_back("cost mismatch: pair (" + std::to_string(p.worker_id) +
                                  "," + std::to_string(p.task_id) + ") stores " +
                                  std::to_string(p.cost) + " but metric gives " +
                                  std::to_string(true_cost));
    if (!is_feasible(*wit->second, *tit->second, inst.metric))
      report.violations.push_back("deadline: pair (" + std::to_string(p.worker_id) + "," +
                                  std::to_string(p.task_id) + ") misses the task deadline");
    sum += p.cost;
  }

  if (std::abs(sum - m.total_cost) > kCostEps)
    report.violations.push_back("total_cost mismatch: stored " + std::to_string(m.total_cost) +
                                ", pairs sum to " + std::to_string(sum));
  if (sum > inst.batch.budget + kCostEps)
    report.violations.push_back("budget: total cost " + std::to_string(sum) +
                                " exceeds budget " + std::to_string(inst.batch.budget));
  return report;
}

void validate_instance(const Instance& inst, std::size_t exhaustive_limit) {
  std::unordered_set<int> ids;
  for (const Worker& w : inst.workers) {
    if (!std::isfinite(w.loc.x) || !std::isfinite(w.loc.y))
      throw std::invalid_argument("worker " + std::to_string(w.id) + ": non-finite location");
    if (!(w.velocity > 0.0))
      throw std::invalid_argument("worker " + std::to_string(w.id) + ": velocity must be > 0");
    if (!std::isfinite(w.arrival) || w.arrival < 0.0)
      throw std::invalid_argument("worker " + std::to_string(w.id) + ": bad arrival time");
    if (w.id < 0 || !ids.insert(w.id).second)
      throw std::invalid_argument("worker ids must be unique and non-negative");
  }
  ids.clear();
  for (const Task& t : inst.batch.tasks) {
    if (!std::isfinite(t.loc.x) || !std::isfinite(t.loc.y))
      throw std::invalid_argument("task " + std::to_string(t.id) + ": non-finite location");
    if (!(t.deadline > t.release) || t.release < 0.0)
      throw std::invalid_argument("task " + std::to_string(t.id) +
                                  ": deadline must exceed release");
    if (t.id < 0 || !ids.insert(t.id).second)
      throw std::invalid_argument("task ids must be unique and non-negative");
  }
  if (inst.batch.budget < 0.0) throw std::invalid_argument("budget must be >= 0");
  if (!(inst.c_max > 0.0)) throw std::invalid_argument("c_max must be > 0");
  if (inst.metric.kind() == MetricKind::Table && inst.metric.table() == nullptr)
    throw std::invalid_argument("table metric without a table");

  if (inst.workers.size() * inst.batch.tasks.size() <= exhaustive_limit) {
    for (const Worker& w : inst.workers)
      for (const Task& t : inst.batch.tasks)
        if (travel_cost(w, t, inst.metric) > inst.c_max + kCostEps)
          throw std::invalid_argument("c_max underestimates cost of pair (" +
                                      std::to_string(w.id) + "," + std::to_string(t.id) + ")");
  }
}

}  // namespace boa
