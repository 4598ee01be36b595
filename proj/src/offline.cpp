#include "boa/offline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace boa {

FlowNetwork::FlowNetwork(int n_workers, int n_tasks)
    : n_workers_(n_workers), n_tasks_(n_tasks), adj_(n_workers + n_tasks + 2) {}

int FlowNetwork::add_arc(int from, int to, int cap, long long cost) {
  int index = static_cast<int>(arcs_.size());
  arcs_.push_back({to, cap, cost});
  arcs_.push_back({from, 0, -cost});
  adj_[from].push_back(index);
  adj_[to].push_back(index + 1);
  return index;
}

FlowBuild build_flow_network(const Instance& inst) {
  const int nw = static_cast<int>(inst.workers.size());
  const int nt = static_cast<int>(inst.batch.tasks.size());
  FlowBuild build{FlowNetwork(nw, nt), {}, {}, {}};
  FlowNetwork& net = build.net;

  build.worker_ids.reserve(nw);
  for (int i = 0; i < nw; ++i) {
    build.worker_ids.push_back(inst.workers[i].id);
    net.add_arc(net.source(), net.worker_vertex(i), 1, 0);
  }
  build.task_ids.reserve(nt);
  for (int j = 0; j < nt; ++j) {
    build.task_ids.push_back(inst.batch.tasks[j].id);
    net.add_arc(net.task_vertex(j), net.sink(), 1, 0);
  }
  for (int i = 0; i < nw; ++i) {
    const Worker& w = inst.workers[i];
    for (int j = 0; j < nt; ++j) {
      const Task& t = inst.batch.tasks[j];
      if (!is_feasible(w, t, inst.metric)) continue;
      double c = travel_cost(w, t, inst.metric);
      int arc = net.add_arc(net.worker_vertex(i), net.task_vertex(j), 1, scale_cost(c));
      build.pair_arcs.push_back({i, j, arc, c});
    }
  }
  return build;
}

namespace {

constexpr long long kInfCost = std::numeric_limits<long long>::max() / 4;

struct SspSolver {
  FlowNetwork& net;
  std::vector<long long> potential;
  std::vector<long long> dist;
  std::vector<int> parent_arc;

  explicit SspSolver(FlowNetwork& n)
      : net(n),
        potential(n.vertex_count(), 0),
        dist(n.vertex_count(), 0),
        parent_arc(n.vertex_count(), -1) {}

  // Dijkstra on reduced costs. Fills dist/parent and reports the true
  // (unreduced) path cost without applying the augmentation, so callers can
  // test affordability first. Initial potentials are zero; arc costs are
  // non-negative, so no Bellman-Ford bootstrap is needed.
  bool search(long long* path_cost) {
    const int s = net.source();
    const int e = net.sink();
    std::fill(dist.begin(), dist.end(), kInfCost);
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    dist[s] = 0;

    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0, s});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (int arc : net.out_arcs(u)) {
        const auto& a = net.arcs()[arc];
        if (a.cap <= 0) continue;
        long long nd = d + a.cost + potential[u] - potential[a.to];
        if (nd < dist[a.to]) {
          dist[a.to] = nd;
          parent_arc[a.to] = arc;
          heap.push({nd, a.to});
        }
      }
    }
    if (dist[e] >= kInfCost) return false;
    *path_cost = dist[e] + potential[e];  // potential[source] stays 0
    return true;
  }

  // Applies the path found by the last search and reweights potentials.
  // Unreached vertices keep their potentials; they stay unreachable in the
  // residual network, so their stale values never enter a reduced cost.
  void apply() {
    const int s = net.source();
    const int e = net.sink();
    for (int v = e; v != s;) {
      int arc = parent_arc[v];
      net.arcs()[arc].cap -= 1;
      net.arcs()[arc ^ 1].cap += 1;
      v = net.arcs()[arc ^ 1].to;
    }
    for (int v = 0; v < net.vertex_count(); ++v)
      if (dist[v] < kInfCost) potential[v] += dist[v];
  }
};

Matching decode_matching(const FlowBuild& build, const FlowNetwork& net) {
  Matching m;
  for (const auto& pa : build.pair_arcs) {
    // A saturated forward arc (capacity moved to the reverse twin) is a match.
    if (net.arcs()[pa.arc].cap == 0)
      m.add({build.worker_ids[pa.worker_index], build.task_ids[pa.task_index], pa.cost});
  }
  return m;
}

void check_convexity(const std::vector<long long>& costs) {
  for (std::size_t i = 1; i < costs.size(); ++i)
    if (costs[i] < costs[i - 1])
      throw std::logic_error("SSP convexity violated: augmentation costs decreased");
}

// Shared SSP driver. budget_scaled < 0 runs to maximum flow; otherwise the
// loop stops before the first augmentation that would overrun the budget.
FlowResult run_ssp_budgeted(const FlowBuild& original, long long budget_scaled) {
  FlowBuild build = original;  // residual state is invocation-local
  FlowResult result;
  SspSolver solver(build.net);
  long long spent = 0;
  long long path_cost = 0;
  while (solver.search(&path_cost)) {
    if (budget_scaled >= 0 && spent + path_cost > budget_scaled) break;
    solver.apply();
    spent += path_cost;
    result.flow += 1;
    result.augmentation_costs.push_back(path_cost);
  }
  check_convexity(result.augmentation_costs);
  result.matching = decode_matching(build, build.net);
  return result;
}

}  // namespace

FlowResult min_cost_max_flow(const FlowBuild& build) { return run_ssp_budgeted(build, -1); }

Matching algorithm1_optimal(const Instance& inst) {
  FlowResult full = min_cost_max_flow(build_flow_network(inst));
  std::vector<Pair> pairs = full.matching.pairs;
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.worker_id != b.worker_id) return a.worker_id < b.worker_id;
    return a.task_id < b.task_id;
  });
  Matching selected;
  double spent = 0.0;
  for (const Pair& p : pairs) {
    if (spent + p.cost <= inst.batch.budget + kCostEps) {
      selected.add(p);
      spent += p.cost;
    }
  }
  return selected;
}

Matching budget_ssp_optimal(const Instance& inst) {
  long long budget_scaled = scale_cost(inst.batch.budget);
  FlowResult res = run_ssp_budgeted(build_flow_network(inst), budget_scaled);
  return res.matching;
}

BruteForceResult brute_force_detail(const Instance& inst) {
  const int nw = static_cast<int>(inst.workers.size());
  const int nt = static_cast<int>(inst.batch.tasks.size());
  if (nw > 10 || nt > 10)
    throw std::invalid_argument("brute_force_optimal: instance larger than 10x10");

  // cost[i][j] < 0 marks an infeasible pair.
  std::vector<std::vector<double>> cost(nw, std::vector<double>(nt, -1.0));
  for (int i = 0; i < nw; ++i)
    for (int j = 0; j < nt; ++j)
      if (is_feasible(inst.workers[i], inst.batch.tasks[j], inst.metric))
        cost[i][j] = travel_cost(inst.workers[i], inst.batch.tasks[j], inst.metric);

  const int masks = 1 << nt;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[i][mask]: min cost to cover exactly the task set `mask` with a
  // subset of workers 0..i-1; count[i][mask]: assignments attaining it.
  std::vector<std::vector<double>> best(nw + 1, std::vector<double>(masks, kInf));
  std::vector<std::vector<long long>> count(nw + 1, std::vector<long long>(masks, 0));
  best[0][0] = 0.0;
  count[0][0] = 1;

  for (int i = 0; i < nw; ++i) {
    for (int mask = 0; mask < masks; ++mask) {
      if (count[i][mask] == 0) continue;
      double base = best[i][mask];
      if (base < best[i + 1][mask] - kCostEps) {
        best[i + 1][mask] = base;
        count[i + 1][mask] = count[i][mask];
      } else if (std::abs(base - best[i + 1][mask]) <= kCostEps) {
        count[i + 1][mask] += count[i][mask];
      }
      for (int j = 0; j < nt; ++j) {
        if (mask & (1 << j)) continue;
        if (cost[i][j] < 0) continue;
        int nmask = mask | (1 << j);
        double c = base + cost[i][j];
        if (c < best[i + 1][nmask] - kCostEps) {
          best[i + 1][nmask] = c;
          count[i + 1][nmask] = count[i][mask];
        } else if (std::abs(c - best[i + 1][nmask]) <= kCostEps) {
          count[i + 1][nmask] += count[i][mask];
        }
      }
    }
  }

  int best_size = 0;
  double best_cost = 0.0;
  bool found = false;
  for (int mask = 0; mask < masks; ++mask) {
    if (count[nw][mask] == 0) continue;
    if (best[nw][mask] > inst.batch.budget + kCostEps) continue;
    int size = std::popcount(static_cast<unsigned>(mask));
    if (!found || size > best_size ||
        (size == best_size && best[nw][mask] < best_cost - kCostEps)) {
      found = true;
      best_size = size;
      best_cost = best[nw][mask];
    }
  }

  BruteForceResult result;
  if (!found || best_size == 0) {
    result.optima_count = 1;  // the empty matching
    return result;
  }

  for (int mask = 0; mask < masks; ++mask) {
    if (count[nw][mask] == 0) continue;
    if (std::popcount(static_cast<unsigned>(mask)) != best_size) continue;
    if (std::abs(best[nw][mask] - best_cost) <= kCostEps) result.optima_count += count[nw][mask];
  }

  // Reconstruct one optimal assignment, walking layers backwards and
  // preferring "unmatched" then the smallest task id, so the result is
  // deterministic.
  int mask = -1;
  for (int m = 0; m < masks; ++m) {
    if (count[nw][m] == 0) continue;
    if (std::popcount(static_cast<unsigned>(m)) != best_size) continue;
    if (std::abs(best[nw][m] - best_cost) <= kCostEps) {
      mask = m;
      break;
    }
  }
  std::vector<Pair> chosen;
  for (int i = nw; i > 0; --i) {
    int wi = i - 1;
    if (count[i - 1][mask] > 0 && std::abs(best[i - 1][mask] - best[i][mask]) <= kCostEps)
      continue;  // worker wi unmatched
    int pick = -1;
    for (int j = 0; j < nt; ++j) {
      if (!(mask & (1 << j))) continue;
      if (cost[wi][j] < 0) continue;
      int pmask = mask ^ (1 << j);
      if (count[i - 1][pmask] == 0) continue;
      if (std::abs(best[i - 1][pmask] + cost[wi][j] - best[i][mask]) <= kCostEps) {
        pick = j;
        break;
      }
    }
    if (pick < 0) throw std::logic_error("brute force reconstruction failed");
    chosen.push_back({inst.workers[wi].id, inst.batch.tasks[pick].id, cost[wi][pick]});
    mask ^= 1 << pick;
  }
  std::reverse(chosen.begin(), chosen.end());
  for (const Pair& p : chosen) result.matching.add(p);
  return result;
}

Matching brute_force_optimal(const Instance& inst) { return brute_force_detail(inst).matching; }

}  // namespace boa
