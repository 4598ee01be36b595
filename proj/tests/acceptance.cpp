// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Exercises the library directly and the CLI binary end to end.
//
// Usage: boa_acceptance --cli <path-to-boa> --fixtures <fixtures-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "boa/cost.hpp"
#include "boa/genbench.hpp"
#include "boa/harness.hpp"
#include "boa/offline.hpp"
#include "boa/online.hpp"

namespace fs = std::filesystem;
using namespace boa;

namespace {

std::string g_cli;
std::string g_fixtures;
fs::path g_scratch;
int g_failures = 0;

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %-3s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!pass) g_failures += 1;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return "<unreadable:" + path.string() + ">";
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_to = {}) {
  std::string cmd = "\"" + g_cli + "\" " + args;
  if (!stdout_to.empty()) cmd += " > \"" + stdout_to.string() + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  return rc;
}

GeoBoundingBox nyc_bbox() { return {40.5998, 40.8998, -74.0701, -73.7701}; }

// --- C1: toy fixture golden outcomes -------------------------------------

void criterion1() {
  double start = now_s();
  Instance toy = toy_fixture();
  ArrivalStream stream = order_random(toy);
  std::ostringstream detail;
  bool ok = true;

  Matching alg1 = algorithm1_optimal(toy);
  Matching exact = budget_ssp_optimal(toy);
  ok &= alg1.size() == 4 && std::abs(alg1.total_cost - 9.0) <= 1e-9;
  ok &= exact.size() == 4 && std::abs(exact.total_cost - 9.0) <= 1e-9;

  RunTrace greedy = run_online(stream, toy.batch, toy.metric, ThresholdPolicy::unbounded());
  ok &= greedy.matching.size() == 2 && std::abs(greedy.matching.total_cost - 10.0) <= 1e-9;

  std::vector<int> sizes = greedy_rt_grade_sizes(stream, toy.batch, toy.metric, toy.c_max);
  ok &= sizes == std::vector<int>{2, 3, 2, 2};
  double expectation = greedy_rt_expectation(stream, toy.batch, toy.metric, toy.c_max);
  ok &= expectation == 2.25;  // (2+3+2+2)/4

  double tau = extract_ot_threshold(exact);
  ok &= tau == 5.0;
  RunTrace ot = run_online(stream, toy.batch, toy.metric, ThresholdPolicy::fixed(tau));
  ok &= ot.matching.size() == 4 && std::abs(ot.matching.total_cost - 10.0) <= 1e-9;

  double elapsed = now_s() - start;
  ok &= elapsed < 1.0;
  detail << "toy fixture golden outcomes: opt 4/9, greedy 2/10, grades {";
  for (std::size_t i = 0; i < sizes.size(); ++i) detail << (i ? "," : "") << sizes[i];
  detail << "} mean " << expectation << ", guided 4/" << ot.matching.total_cost << " ("
         << elapsed << "s)";
  report("C1", ok, detail.str());
}

// --- C2..C5: oracle batch --------------------------------------------------

void criteria_2_to_5() {
  double start = now_s();
  OracleReport rep = oracle_check(500, 6, 42, g_scratch.string());
  double elapsed = now_s() - start;

  {
    std::ostringstream d;
    bool ok = rep.size_mismatches == 0 && rep.instances_checked == 500 && elapsed < 60.0;
    d << "exact solver size equals brute force on " << rep.instances_checked
      << "/500 random instances, " << rep.size_mismatches << " mismatches (" << elapsed << "s)";
    report("C2", ok, d.str());
  }
  {
    // The solver throws on any decreasing augmentation sequence, so C1-C2
    // runs self-check; add 50 mid-size instances explicitly.
    bool ok = true;
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      SyntheticConfig cfg;
      cfg.n_workers = 200;
      cfg.n_tasks = 200;
      cfg.budget = 1e12;
      cfg.deadline_window = 60.0;
      cfg.seed = seed;
      FlowResult res = min_cost_max_flow(build_flow_network(gen_synthetic(cfg)));
      ok &= std::is_sorted(res.augmentation_costs.begin(), res.augmentation_costs.end());
      checked += 1;
    }
    std::ostringstream d;
    d << "augmentation costs non-decreasing: self-checked on every solver call, plus "
      << checked << " instances at 200x200";
    report("C3", ok, d.str());
  }
  {
    std::ostringstream d;
    bool ok = rep.expectation_bound_violations == 0;
    d << "random-threshold expectation >= opt/(grades) on all 500 instances, "
      << rep.expectation_bound_violations << " violations";
    report("C4", ok, d.str());
  }
  {
    std::ostringstream d;
    bool ok = rep.guided_bound_violations == 0 && rep.overlap_violations == 0;
    d << "guided-threshold size bound on " << rep.guided_bound_checked
      << " unique-optimum instances (" << rep.guided_bound_skipped_multi << " multi-optimum skipped), "
      << rep.guided_bound_violations << " bound / " << rep.overlap_violations
      << " overlap violations";
    report("C5", ok, d.str());
  }
}

// --- C6: adversary separation at 1500x1500 ---------------------------------

void criterion6() {
  double start = now_s();
  SweepSpec spec;
  spec.base.n_workers = 1500;
  spec.base.n_tasks = 1500;
  spec.base.budget = 750.0;
  spec.base.deadline_window = 60.0;
  spec.base.seed = 42;
  spec.swept = "budget";
  spec.values = {750.0};
  spec.order = ArrivalModel::Adversary;
  spec.seeds_per_point = 20;
  spec.algorithms = {Algo::OptExact, Algo::Greedy, Algo::GreedyRtExpectation, Algo::GreedyOt};

  std::vector<ResultRow> rows = run_sweep(spec);
  double opt = 0, greedy = 0, rt = 0, ot = 0;
  for (const ResultRow& r : rows) {
    if (r.algo == Algo::OptExact) opt = r.mean_size;
    if (r.algo == Algo::Greedy) greedy = r.mean_size;
    if (r.algo == Algo::GreedyRtExpectation) rt = r.mean_size;
    if (r.algo == Algo::GreedyOt) ot = r.mean_size;
  }
  double elapsed = now_s() - start;
  bool ok = ot >= rt && rt >= greedy && ot <= opt && rt <= opt && greedy <= opt &&
            ot >= 1.10 * greedy && elapsed < 300.0;
  std::ostringstream d;
  d << "adversary means at 1500x1500/B750 over 20 seeds: opt " << opt << " >= guided " << ot
    << " >= expectation " << rt << " >= greedy " << greedy << ", lift "
    << (greedy > 0 ? ot / greedy : 0.0) << "x (" << elapsed << "s)";
  report("C6", ok, d.str());
}

// --- C7: adversary ordering never helps plain greedy -----------------------

void criterion7() {
  double start = now_s();
  double sum_adv = 0, sum_rand = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    SyntheticConfig cfg;  // bold-row defaults: 6000/6000/3000/60
    cfg.seed = 4242 + static_cast<std::uint64_t>(s);
    Instance inst = gen_synthetic(cfg);

    ArrivalStream rand_stream = order_random(inst);
    Instance rand_eff = inst;
    rand_eff.workers = rand_stream.workers;
    sum_rand += static_cast<double>(
        run_online(rand_stream, rand_eff.batch, rand_eff.metric, ThresholdPolicy::unbounded())
            .matching.size());

    ArrivalStream adv_stream = order_adversary(inst);
    Instance adv_eff = inst;
    adv_eff.workers = adv_stream.workers;
    sum_adv += static_cast<double>(
        run_online(adv_stream, adv_eff.batch, adv_eff.metric, ThresholdPolicy::unbounded())
            .matching.size());
  }
  double mean_adv = sum_adv / seeds, mean_rand = sum_rand / seeds;
  double elapsed = now_s() - start;
  bool ok = mean_adv <= mean_rand;
  std::ostringstream d;
  d << "greedy means over " << seeds << " paired seeds at defaults: adversary " << mean_adv
    << " <= random " << mean_rand << " (" << elapsed << "s)";
  report("C7", ok, d.str());
}

// --- C8: threshold grade counts --------------------------------------------

void criterion8() {
  bool ok = kappa_support(16.0) == std::vector<int>{0, 1, 2, 3} &&
            kappa_support(1000.0).size() == 8;
  report("C8", ok, "grade support: c_max 16 -> {0,1,2,3}, c_max 1000 -> 8 grades");
}

// --- C9: projected region diagonal ------------------------------------------

void criterion9() {
  double diagonal = region_c_max(nyc_bbox(), CostMetric::euclidean());
  double rel = std::abs(diagonal - 41.7027) / 41.7027;
  std::ostringstream d;
  d << "projected study-region diagonal " << diagonal << " km, " << rel * 100
    << "% from 41.7027";
  report("C9", rel <= 0.02, d.str());
}

// --- C10: pickup pipeline golden output -------------------------------------

void criterion10() {
  fs::path csv1 = g_scratch / "real1.csv";
  fs::path csv2 = g_scratch / "real2.csv";
  std::string fixture = g_fixtures + "/pickups_day.csv";
  std::string args = "real --pickups \"" + fixture + "\" --history \"" + fixture +
                     "\" --tasks 40 --seed 7 --budget 30 --no-timing --out ";
  int rc1 = run_cli(args + "\"" + csv1.string() + "\"", g_scratch / "real1.log");
  int rc2 = run_cli(args + "\"" + csv2.string() + "\"", g_scratch / "real2.log");

  const std::string golden =
      "workers_target,workers_history,opt_threshold_km,algorithm,quantity\n"
      "50,50,2.876926,opt-exact,24\n"
      "50,50,2.876926,greedy,17\n"
      "50,50,2.876926,greedy-rt,17\n"
      "50,50,2.876926,greedy-ot,23\n";
  std::string out1 = read_file(csv1);
  bool ok = rc1 == 0 && rc2 == 0 && out1 == read_file(csv2) && out1 == golden;

  // Independent sanity on the same run: self-guidance cannot lose to the
  // unguided greedy here.
  RealResult res = run_real(fixture, fixture, nyc_bbox(), 0.0, 12.0, 40, 7, 30.0, 40.0);
  int greedy = 0, ot = 0;
  for (const RealRow& r : res.rows) {
    if (r.algo == Algo::Greedy) greedy = r.quantity;
    if (r.algo == Algo::GreedyOt) ot = r.quantity;
  }
  ok &= ot >= greedy;
  std::ostringstream d;
  d << "pickup pipeline golden output on bundled fixture (threshold " << res.opt_threshold
    << " km, guided " << ot << " >= greedy " << greedy
    << "); full-scale trace expectations (thresholds 0.72-0.84 km, guided ~70% of optimum) are "
       "documented, not CI-tested";
  report("C10", ok, d.str());
}

// --- C11: CLI determinism ----------------------------------------------------

void criterion11() {
  bool ok = true;
  std::ostringstream d;
  d << "byte-identical reruns:";

  auto compare = [&](const std::string& label, const fs::path& a, const fs::path& b) {
    std::string ca = read_file(a), cb = read_file(b);
    bool same = !ca.empty() && ca == cb && ca.find("<unreadable") != 0;
    ok &= same;
    d << " " << label << (same ? "+" : "!");
  };

  fs::path cfg = g_scratch / "cfg.json";
  std::ofstream(cfg) << "{\"n_workers\": 25, \"n_tasks\": 25, \"budget\": 50, "
                        "\"deadline_window\": 30, \"square_side\": 60, \"seed\": 9}\n";
  fs::path i1 = g_scratch / "i1.json", i2 = g_scratch / "i2.json";
  ok &= run_cli("gen --config \"" + cfg.string() + "\" --out \"" + i1.string() + "\"",
                g_scratch / "gen1.log") == 0;
  ok &= run_cli("gen --config \"" + cfg.string() + "\" --out \"" + i2.string() + "\"",
                g_scratch / "gen2.log") == 0;
  compare("gen", i1, i2);

  fs::path t1 = g_scratch / "t1.json", t2 = g_scratch / "t2.json";
  std::string run_args = "run --instance \"" + i1.string() +
                         "\" --algo greedy-ot --order random --seed 5 --ot-history \"" +
                         i1.string() + "\" --out ";
  ok &= run_cli(run_args + "\"" + t1.string() + "\"", g_scratch / "run1.log") == 0;
  ok &= run_cli(run_args + "\"" + t2.string() + "\"", g_scratch / "run2.log") == 0;
  compare("run", t1, t2);

  fs::path o1 = g_scratch / "o1.json", o2 = g_scratch / "o2.json";
  std::string opt_args =
      "run --instance \"" + i1.string() + "\" --algo opt-exact --order random --out ";
  ok &= run_cli(opt_args + "\"" + o1.string() + "\"", g_scratch / "opt1.log") == 0;
  ok &= run_cli(opt_args + "\"" + o2.string() + "\"", g_scratch / "opt2.log") == 0;
  compare("run-opt", o1, o2);

  fs::path spec = g_scratch / "spec.json";
  std::ofstream(spec) << "{\"base\": {\"n_workers\": 15, \"n_tasks\": 15, \"budget\": 30, "
                         "\"square_side\": 40, \"seed\": 2}, \"swept\": \"budget\", "
                         "\"values\": [10, 30], \"order\": \"adversary\", "
                         "\"seeds_per_point\": 2}\n";
  fs::path s1 = g_scratch / "s1.csv", s2 = g_scratch / "s2.csv";
  std::string sweep_args = "sweep --spec \"" + spec.string() + "\" --no-timing --out ";
  ok &= run_cli(sweep_args + "\"" + s1.string() + "\"", g_scratch / "sweep1.log") == 0;
  ok &= run_cli(sweep_args + "\"" + s2.string() + "\"", g_scratch / "sweep2.log") == 0;
  compare("sweep", s1, s2);
  compare("sweep-spec", fs::path(s1.string() + ".spec.json"),
          fs::path(s2.string() + ".spec.json"));

  fs::path w1 = g_scratch / "w1.json", w2 = g_scratch / "w2.json";
  std::string ing_args =
      "ingest --csv \"" + g_fixtures + "/pickups_small.csv\" --out ";
  ok &= run_cli(ing_args + "\"" + w1.string() + "\"", g_scratch / "ing1.log") == 0;
  ok &= run_cli(ing_args + "\"" + w2.string() + "\"", g_scratch / "ing2.log") == 0;
  compare("ingest", w1, w2);

  fs::path oc1 = g_scratch / "oc1.txt", oc2 = g_scratch / "oc2.txt";
  ok &= run_cli("oracle-check --trials 25 --max-size 5 --seed 7", oc1) == 0;
  ok &= run_cli("oracle-check --trials 25 --max-size 5 --seed 7", oc2) == 0;
  compare("oracle-check", oc1, oc2);

  report("C11", ok, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--cli") g_cli = argv[i + 1];
    if (flag == "--fixtures") g_fixtures = argv[i + 1];
  }
  if (g_cli.empty() || g_fixtures.empty()) {
    std::fprintf(stderr, "usage: boa_acceptance --cli <boa binary> --fixtures <dir>\n");
    return 2;
  }
  g_scratch = fs::temp_directory_path() / "boa_acceptance";
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  criterion1();
  criteria_2_to_5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
