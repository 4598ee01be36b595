#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace boa {

// Absolute tolerance for cost equality and budget/threshold comparisons.
inline constexpr double kCostEps = 1e-9;

struct Location {
  double x = 0.0;
  double y = 0.0;
};

// A dynamically arriving agent. Arrival doubles as the decision instant:
// a worker is matched immediately on arrival or dropped for good.
struct Worker {
  int id = 0;
  Location loc;
  double arrival = 0.0;   // time the worker appears on the platform
  double velocity = 1.0;  // distance units per time unit, > 0
};

struct Task {
  int id = 0;
  Location loc;
  double release = 0.0;
  double deadline = 0.0;  // must be > release
};

// One requester's task set plus the single shared budget.
struct TaskBatch {
  std::vector<Task> tasks;
  double budget = 0.0;
};

enum class MetricKind { Manhattan, Euclidean, Table };

// Explicit worker->task cost table, keyed by (worker_id, task_id).
// Pairs not listed fall back to default_cost. Used for hand-built
// fixtures whose cost structure has no planar realization.
struct CostTable {
  std::map<std::pair<int, int>, double> entries;
  double default_cost = 0.0;

  double cost(int worker_id, int task_id) const {
    auto it = entries.find({worker_id, task_id});
    return it == entries.end() ? default_cost : it->second;
  }
};

class CostMetric {
 public:
  CostMetric() : kind_(MetricKind::Manhattan) {}

  static CostMetric manhattan() { return CostMetric(MetricKind::Manhattan); }
  static CostMetric euclidean() { return CostMetric(MetricKind::Euclidean); }
  static CostMetric table(CostTable t) {
    CostMetric m(MetricKind::Table);
    m.table_ = std::make_shared<const CostTable>(std::move(t));
    return m;
  }

  MetricKind kind() const { return kind_; }
  const CostTable* table() const { return table_.get(); }

 private:
  explicit CostMetric(MetricKind k) : kind_(k) {}
  MetricKind kind_;
  std::shared_ptr<const CostTable> table_;
};

// The full problem input. c_max is the estimated maximum travel cost,
// normally the metric diameter of the region the workload lives in.
struct Instance {
  std::vector<Worker> workers;
  TaskBatch batch;
  CostMetric metric;
  double c_max = 0.0;
};

struct Pair {
  int worker_id = 0;
  int task_id = 0;
  double cost = 0.0;
};

struct Matching {
  std::vector<Pair> pairs;
  double total_cost = 0.0;

  void add(const Pair& p) {
    pairs.push_back(p);
    total_cost += p.cost;
  }
  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

double travel_cost(const Worker& w, const Task& t, const CostMetric& metric);

// Deadline feasibility: arrival + cost/velocity <= deadline (inclusive).
bool is_feasible(const Worker& w, const Task& t, const CostMetric& metric);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks one-to-one structure, budget, deadline feasibility of every pair,
// pair-cost consistency against the metric, and id resolution.
ValidationReport validate_matching(const Matching& m, const Instance& inst);

// Throws std::invalid_argument on the first violated instance invariant.
// The exhaustive c_max check runs only when |W|*|T| <= exhaustive_limit.
void validate_instance(const Instance& inst, std::size_t exhaustive_limit = 40000);

}  // namespace boa
