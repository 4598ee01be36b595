#include "boa/genbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using nlohmann::json;

namespace boa {

Instance gen_synthetic(const SyntheticConfig& cfg) {
  if (cfg.n_workers <= 0 || cfg.n_tasks <= 0)
    throw std::invalid_argument("gen_synthetic: counts must be positive");
  if (!(cfg.square_side > 0.0) || !(cfg.deadline_window > 0.0))
    throw std::invalid_argument("gen_synthetic: square_side and deadline_window must be > 0");
  if (!(cfg.velocity > 0.0) || !(cfg.time_horizon >= 1.0))
    throw std::invalid_argument("gen_synthetic: bad velocity or time horizon");
  if (cfg.metric == MetricKind::Table)
    throw std::invalid_argument("gen_synthetic: table metric is not generable");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> pos(0.0, cfg.square_side);
  std::uniform_real_distribution<double> time(0.0, cfg.time_horizon - 1.0);

  Instance inst;
  inst.metric = cfg.metric == MetricKind::Manhattan ? CostMetric::manhattan()
                                                    : CostMetric::euclidean();
  inst.c_max = region_c_max(cfg.square_side, cfg.square_side, inst.metric);
  inst.workers.reserve(cfg.n_workers);
  for (int i = 0; i < cfg.n_workers; ++i) {
    Worker w;
    w.id = i;
    w.loc = {pos(rng), pos(rng)};
    w.arrival = time(rng);
    w.velocity = cfg.velocity;
    inst.workers.push_back(w);
  }
  inst.batch.budget = cfg.budget;
  inst.batch.tasks.reserve(cfg.n_tasks);
  for (int j = 0; j < cfg.n_tasks; ++j) {
    Task t;
    t.id = j;
    t.loc = {pos(rng), pos(rng)};
    t.release = time(rng);
    t.deadline = t.release + cfg.deadline_window;
    inst.batch.tasks.push_back(t);
  }
  return inst;
}

ArrivalStream order_random(const Instance& inst, std::optional<std::uint64_t> reshuffle_seed) {
  std::vector<Worker> workers = inst.workers;
  if (reshuffle_seed) {
    double hi = 0.0;
    for (const Worker& w : workers) hi = std::max(hi, w.arrival);
    std::mt19937_64 rng(*reshuffle_seed);
    std::uniform_real_distribution<double> time(0.0, hi);
    for (Worker& w : workers) w.arrival = time(rng);
  }
  return stream_from_workers(std::move(workers));
}

ArrivalStream order_adversary(const Instance& inst) {
  struct Scored {
    Worker worker;
    double score;
  };
  std::vector<Scored> scored;
  scored.reserve(inst.workers.size());
  for (const Worker& w : inst.workers) {
    double best = std::numeric_limits<double>::infinity();
    for (const Task& t : inst.batch.tasks)
      if (is_feasible(w, t, inst.metric)) best = std::min(best, travel_cost(w, t, inst.metric));
    scored.push_back({w, best});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.worker.id < b.worker.id;
  });

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const Worker& w : inst.workers) {
    lo = std::min(lo, w.arrival);
    hi = std::max(hi, w.arrival);
  }
  std::vector<Worker> ordered;
  ordered.reserve(scored.size());
  const std::size_t n = scored.size();
  for (std::size_t k = 0; k < n; ++k) {
    Worker w = scored[k].worker;
    w.arrival = n > 1 ? lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1)
                      : w.arrival;
    ordered.push_back(w);
  }
  return stream_from_workers(std::move(ordered));
}

namespace {

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_timestamp(const std::string& s, PickupRecord* rec) {
  int mo = 0, d = 0, y = 0, h = 0, mi = 0, sec = 0;
  // Uber-FOIL: M/D/YYYY H:MM:SS (seconds optional)
  int n = std::sscanf(s.c_str(), "%d/%d/%d %d:%d:%d", &mo, &d, &y, &h, &mi, &sec);
  if (n >= 5) {
    if (n == 5) sec = 0;
    rec->year = y;
    rec->month = mo;
    rec->day = d;
    rec->seconds_of_day = h * 3600.0 + mi * 60.0 + sec;
    return h >= 0 && h < 24 && mi >= 0 && mi < 60 && sec >= 0 && sec < 60;
  }
  // ISO-8601 fallback: YYYY-MM-DD[T ]HH:MM[:SS]
  char sep = 0;
  n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &sec);
  if (n >= 6 && (sep == 'T' || sep == ' ')) {
    if (n == 6) sec = 0;
    rec->year = y;
    rec->month = mo;
    rec->day = d;
    rec->seconds_of_day = h * 3600.0 + mi * 60.0 + sec;
    return h >= 0 && h < 24 && mi >= 0 && mi < 60 && sec >= 0 && sec < 60;
  }
  return false;
}

bool parse_double(const std::string& s, double* out) {
  try {
    std::size_t pos = 0;
    *out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

IngestReport ingest_pickups_csv(const std::string& path, const GeoBoundingBox& bbox,
                                double window_start_hour, double window_end_hour,
                                double velocity_kmh, const IngestOptions& opts) {
  validate_bbox(bbox);
  if (!(window_end_hour > window_start_hour))
    throw std::invalid_argument("ingest: window end must exceed window start");
  if (!(velocity_kmh > 0.0)) throw std::invalid_argument("ingest: velocity must be > 0");

  std::ifstream in(path);
  if (!in) throw io_error("cannot open pickups CSV: " + path);

  IngestReport report;
  std::string line;
  long long line_no = 0;
  bool header_seen = false;
  const double velocity_km_per_min = velocity_kmh / 60.0;
  int next_id = 0;

  auto malformed = [&](const std::string& reason) {
    std::string msg = "line " + std::to_string(line_no) + ": " + reason;
    if (!opts.lenient) throw io_error(path + ", " + msg);
    report.rows_malformed += 1;
    report.malformed_lines.push_back(msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!header_seen) {
      header_seen = true;
      continue;  // Date/Time,Lat,Lon[,Base]
    }
    if (line.empty() || line == "\r") continue;
    report.rows_total += 1;

    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() < 3) {
      malformed("expected at least 3 columns");
      continue;
    }
    PickupRecord rec;
    if (!parse_timestamp(fields[0], &rec)) {
      malformed("unparseable timestamp '" + fields[0] + "'");
      continue;
    }
    if (!parse_double(fields[1], &rec.lat) || !parse_double(fields[2], &rec.lon)) {
      malformed("unparseable coordinates");
      continue;
    }
    if (rec.lat < -90.0 || rec.lat > 90.0 || rec.lon < -180.0 || rec.lon > 180.0) {
      malformed("coordinates outside Earth ranges");
      continue;
    }

    double hour = rec.seconds_of_day / 3600.0;
    if (hour < window_start_hour || hour >= window_end_hour ||
        rec.lat < bbox.lat_min || rec.lat > bbox.lat_max ||
        rec.lon < bbox.lon_min || rec.lon > bbox.lon_max) {
      report.rows_outside += 1;
      continue;
    }

    Worker w;
    w.id = next_id++;
    w.loc = project_geo(rec.lat, rec.lon, bbox);
    w.arrival = (rec.seconds_of_day - window_start_hour * 3600.0) / 60.0;
    w.velocity = velocity_km_per_min;
    report.workers.push_back(w);
  }

  report.empty_result = report.workers.empty();
  return report;
}

void write_pickups_csv(const std::vector<Worker>& workers, const GeoBoundingBox& bbox,
                       double window_start_hour, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << "Date/Time,Lat,Lon,Base\n";
  char buf[128];
  for (const Worker& w : workers) {
    auto [lat, lon] = unproject_geo(w.loc, bbox);
    long long total_sec =
        std::llround(w.arrival * 60.0 + window_start_hour * 3600.0);
    long long h = total_sec / 3600;
    long long mi = (total_sec % 3600) / 60;
    long long sec = total_sec % 60;
    std::snprintf(buf, sizeof(buf), "5/7/2014 %lld:%02lld:%02lld,%.12f,%.12f,B00000\n", h, mi,
                  sec, lat, lon);
    out << buf;
  }
}

TaskBatch gen_real_tasks(const GeoBoundingBox& bbox, int n_tasks, double release_window_min,
                         double lifetime_min, std::uint64_t seed) {
  if (n_tasks <= 0) throw std::invalid_argument("gen_real_tasks: n_tasks must be > 0");
  if (!(lifetime_min > 0.0))
    throw std::invalid_argument("gen_real_tasks: lifetime must be > 0 (deadline > release)");
  if (release_window_min < 0.0)
    throw std::invalid_argument("gen_real_tasks: negative release window");

  auto [width, height] = bbox_extent_km(bbox);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> px(0.0, width);
  std::uniform_real_distribution<double> py(0.0, height);
  std::uniform_real_distribution<double> rel(0.0, release_window_min);

  TaskBatch batch;
  batch.tasks.reserve(n_tasks);
  for (int j = 0; j < n_tasks; ++j) {
    Task t;
    t.id = j;
    t.loc = {px(rng), py(rng)};
    t.release = rel(rng);
    t.deadline = t.release + lifetime_min;
    batch.tasks.push_back(t);
  }
  return batch;
}

// --- JSON ---

namespace {

std::string metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::Manhattan: return "manhattan";
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::Table: return "table";
  }
  throw std::logic_error("unknown metric kind");
}

}  // namespace

json instance_to_json(const Instance& inst, const json& provenance) {
  json j;
  j["schema"] = "boa-instance-v1";
  j["metric"] = metric_name(inst.metric.kind());
  if (inst.metric.kind() == MetricKind::Table) {
    const CostTable* table = inst.metric.table();
    json entries = json::array();
    for (const auto& [key, cost] : table->entries)
      entries.push_back({{"worker_id", key.first}, {"task_id", key.second}, {"cost", cost}});
    j["cost_table"] = {{"default_cost", table->default_cost}, {"entries", entries}};
  }
  j["c_max"] = inst.c_max;
  j["budget"] = inst.batch.budget;
  json workers = json::array();
  for (const Worker& w : inst.workers)
    workers.push_back({{"id", w.id},
                       {"x", w.loc.x},
                       {"y", w.loc.y},
                       {"arrival", w.arrival},
                       {"velocity", w.velocity}});
  j["workers"] = std::move(workers);
  json tasks = json::array();
  for (const Task& t : inst.batch.tasks)
    tasks.push_back({{"id", t.id},
                     {"x", t.loc.x},
                     {"y", t.loc.y},
                     {"release", t.release},
                     {"deadline", t.deadline}});
  j["tasks"] = std::move(tasks);
  if (!provenance.is_null()) j["provenance"] = provenance;
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  std::string metric = j.at("metric").get<std::string>();
  if (metric == "manhattan") {
    inst.metric = CostMetric::manhattan();
  } else if (metric == "euclidean") {
    inst.metric = CostMetric::euclidean();
  } else if (metric == "table") {
    CostTable table;
    const json& tj = j.at("cost_table");
    table.default_cost = tj.at("default_cost").get<double>();
    for (const json& e : tj.at("entries"))
      table.entries[{e.at("worker_id").get<int>(), e.at("task_id").get<int>()}] =
          e.at("cost").get<double>();
    inst.metric = CostMetric::table(std::move(table));
  } else {
    throw io_error("unknown metric '" + metric + "'");
  }
  inst.c_max = j.at("c_max").get<double>();
  inst.batch.budget = j.at("budget").get<double>();
  for (const json& wj : j.at("workers")) {
    Worker w;
    w.id = wj.at("id").get<int>();
    w.loc = {wj.at("x").get<double>(), wj.at("y").get<double>()};
    w.arrival = wj.at("arrival").get<double>();
    w.velocity = wj.at("velocity").get<double>();
    inst.workers.push_back(w);
  }
  for (const json& tj : j.at("tasks")) {
    Task t;
    t.id = tj.at("id").get<int>();
    t.loc = {tj.at("x").get<double>(), tj.at("y").get<double>()};
    t.release = tj.at("release").get<double>();
    t.deadline = tj.at("deadline").get<double>();
    inst.batch.tasks.push_back(t);
  }
  return inst;
}

void save_instance(const Instance& inst, const std::string& path, const json& provenance) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << instance_to_json(inst, provenance).dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open instance: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error("bad instance JSON in " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

json matching_to_json(const Matching& m) {
  json pairs = json::array();
  for (const Pair& p : m.pairs)
    pairs.push_back({{"worker_id", p.worker_id}, {"task_id", p.task_id}, {"cost", p.cost}});
  return {{"size", m.size()}, {"total_cost", m.total_cost}, {"pairs", std::move(pairs)}};
}

json trace_to_json(const RunTrace& trace, const std::string& algo) {
  json j;
  j["schema"] = "boa-trace-v1";
  j["algo"] = algo;
  if (std::isfinite(trace.tau))
    j["tau"] = trace.tau;
  else
    j["tau"] = nullptr;
  if (trace.kappa >= 0)
    j["kappa"] = trace.kappa;
  else
    j["kappa"] = nullptr;
  j["matching"] = matching_to_json(trace.matching);
  j["unspent_budget"] = trace.unspent_budget;
  json decisions = json::array();
  for (const Decision& d : trace.decisions) {
    json dj;
    dj["worker_id"] = d.worker_id;
    dj["assigned"] = d.assigned;
    if (d.assigned) {
      dj["task_id"] = d.task_id;
      dj["cost"] = d.cost;
    } else {
      switch (d.reason) {
        case RejectReason::NoFeasibleTask: dj["reason"] = "no-feasible-task"; break;
        case RejectReason::OverThreshold: dj["reason"] = "over-threshold"; break;
        case RejectReason::OverBudget: dj["reason"] = "over-budget"; break;
      }
    }
    decisions.push_back(std::move(dj));
  }
  j["decisions"] = std::move(decisions);
  return j;
}

}  // namespace boa
