#pragma once

#include <cstdint>
#include <vector>

#include "boa/model.hpp"

namespace boa {

// Costs are scaled to integers inside the flow solver so that potential
// arithmetic is exact and successive-shortest-path augmentation terminates.
inline constexpr double kFlowCostScale = 1e6;

// Bipartite assignment network: source -> workers -> tasks -> sink.
// Worker->task arcs exist only for deadline-feasible pairs. Every arc has a
// reverse twin of capacity 0 and negated cost at index (arc ^ 1).
class FlowNetwork {
 public:
  struct Arc {
    int to = 0;
    int cap = 0;
    long long cost = 0;  // scaled
  };

  FlowNetwork(int n_workers, int n_tasks);

  int source() const { return 0; }
  int sink() const { return n_workers_ + n_tasks_ + 1; }
  int vertex_count() const { return n_workers_ + n_tasks_ + 2; }
  int worker_vertex(int index) const { return 1 + index; }
  int task_vertex(int index) const { return 1 + n_workers_ + index; }
  int n_workers() const { return n_workers_; }
  int n_tasks() const { return n_tasks_; }

  // Adds a forward arc and its reverse twin; returns the forward arc index.
  int add_arc(int from, int to, int cap, long long cost);

  int forward_arc_count() const { return static_cast<int>(arcs_.size()) / 2; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::vector<Arc>& arcs() { return arcs_; }
  const std::vector<int>& out_arcs(int vertex) const { return adj_[vertex]; }

 private:
  int n_workers_;
  int n_tasks_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

struct FlowBuild {
  FlowNetwork net;
  std::vector<int> worker_ids;  // by worker index
  std::vector<int> task_ids;    // by task index
  // For worker index i: (task index, arc index, float cost) per feasible pair.
  struct PairArc {
    int worker_index;
    int task_index;
    int arc;
    double cost;
  };
  std::vector<PairArc> pair_arcs;
};

FlowBuild build_flow_network(const Instance& inst);

struct FlowResult {
  int flow = 0;
  // True (unreduced) cost of each augmenting path, scaled, in discovery
  // order. Non-decreasing by SSP convexity; the solver throws
  // std::logic_error if that ever fails.
  std::vector<long long> augmentation_costs;
  Matching matching;  // decoded from saturated worker->task arcs, float costs
};

// Successive shortest augmenting paths with vertex potentials (Dijkstra on
// reduced costs; initial potentials zero since all arc costs are
// non-negative). Runs to maximum flow.
FlowResult min_cost_max_flow(const FlowBuild& build);

// Algorithm: full min-cost max-flow, pairs sorted by cost ascending (ties by
// worker id, then task id), then greedily admitted while the running total
// stays within budget. An unaffordable pair is skipped, not a stopping point,
// so cheaper later pairs can still enter.
Matching algorithm1_optimal(const Instance& inst);

// Exact budget-constrained optimum: augment one unit at a time and stop
// before the first augmentation that would push the cumulative cost past the
// budget. Non-decreasing augmentation costs make the result the
// maximum-cardinality matching of cost <= budget, at minimum cost.
Matching budget_ssp_optimal(const Instance& inst);

struct BruteForceResult {
  Matching matching;
  // Number of distinct pair sets attaining (max size, min cost) within
  // budget; cost ties are grouped with tolerance kCostEps.
  long long optima_count = 0;
};

// Exhaustive oracle via subset DP over tasks. Maximizes cardinality subject
// to total cost <= budget, tie-broken by minimum total cost. Enforces
// |W| <= 10 and |T| <= 10.
BruteForceResult brute_force_detail(const Instance& inst);
Matching brute_force_optimal(const Instance& inst);

inline long long scale_cost(double cost) {
  return static_cast<long long>(cost * kFlowCostScale + 0.5);
}

}  // namespace boa
