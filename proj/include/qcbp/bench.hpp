#pragma once

// Exact reference chromatic number, dataset generation, benchmark records and
// summary reports.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qcbp/bnp.hpp"
#include "qcbp/graph.hpp"
#include "qcbp/pricing.hpp"

namespace qcbp {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Exact chromatic number (DSATUR backtracking)

namespace detail {

inline int greedy_clique_size(const Graph& g) {
  int best = g.n() > 0 ? 1 : 0;
  for (int start = 0; start < g.n(); ++start) {
    VertexSet clique = VertexSet::single(start), cand = g.neighbors(start);
    while (!cand.empty()) {
      int pick = -1, deg = -1;
      cand.for_each([&](int u) {
        const int d = (g.neighbors(u) & cand).size();
        if (d > deg) { deg = d; pick = u; }
      });
      clique.insert(pick);
      cand &= g.neighbors(pick);
    }
    best = std::max(best, clique.size());
  }
  return best;
}

struct Dsatur {
  const Graph& g;
  std::vector<int> color;
  std::vector<std::uint64_t> sat;  // bit c set: some neighbour has colour c
  int best;
  int lower;
  std::vector<int> best_color;

  int pick() const {
    int v = -1, vs = -1, vd = -1;
    for (int u = 0; u < g.n(); ++u) {
      if (color[static_cast<std::size_t>(u)] >= 0) continue;
      const int s = std::popcount(sat[static_cast<std::size_t>(u)]);
      int d = 0;
      g.neighbors(u).for_each([&](int w) { d += color[static_cast<std::size_t>(w)] < 0 ? 1 : 0; });
      if (s > vs || (s == vs && d > vd)) { v = u; vs = s; vd = d; }
    }
    return v;
  }

  void assign(int v, int c, std::vector<std::pair<int, std::uint64_t>>& undo) {
    color[static_cast<std::size_t>(v)] = c;
    g.neighbors(v).for_each([&](int w) {
      undo.emplace_back(w, sat[static_cast<std::size_t>(w)]);
      sat[static_cast<std::size_t>(w)] |= std::uint64_t{1} << c;
    });
  }

  void search(int colored, int used) {
    if (best <= lower) return;
    if (colored == g.n()) {
      if (used < best) { best = used; best_color = color; }
      return;
    }
    const int v = pick();
    for (int c = 0; c <= used && c < best - 1; ++c) {
      if ((sat[static_cast<std::size_t>(v)] >> c) & 1U) continue;
      std::vector<std::pair<int, std::uint64_t>> undo;
      assign(v, c, undo);
      search(colored + 1, std::max(used, c + 1));
      color[static_cast<std::size_t>(v)] = -1;
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) sat[static_cast<std::size_t>(it->first)] = it->second;
      if (best <= lower) return;
    }
  }
};

}  // namespace detail

/// Optimal colouring by DSATUR backtracking: saturation-ordered branching,
/// existing classes first then one new class, pruned against the incumbent
/// and stopped at the greedy clique bound.
inline Coloring exact_coloring(const Graph& g, int max_vertices = 20) {
  if (g.n() > max_vertices)
    throw BenchError("exact_reference_chromatic: " + std::to_string(g.n()) + " vertices exceed the oracle cap");
  Coloring out;
  if (g.n() == 0) return out;
  detail::Dsatur s{g, std::vector<int>(static_cast<std::size_t>(g.n()), -1),
                   std::vector<std::uint64_t>(static_cast<std::size_t>(g.n()), 0), g.n() + 1,
                   detail::greedy_clique_size(g), {}};
  s.search(0, 0);
  out.classes.assign(static_cast<std::size_t>(s.best), VertexSet{});
  for (int v = 0; v < g.n(); ++v) out.classes[static_cast<std::size_t>(s.best_color[static_cast<std::size_t>(v)])].insert(v);
  return out;
}

inline int exact_reference_chromatic(const Graph& g, int max_vertices = 20) {
  return exact_coloring(g, max_vertices).colors_used();
}

// ---------------------------------------------------------------------------
// Run configuration

enum class SolveMode { qcbp, hcg_only, exact };

inline const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::qcbp: return "qcbp";
    case SolveMode::hcg_only: return "hcg_only";
    case SolveMode::exact: return "exact";
  }
  return "?";
}

inline std::optional<SolveMode> parse_mode(const std::string& s) {
  if (s == "qcbp") return SolveMode::qcbp;
  if (s == "hcg_only") return SolveMode::hcg_only;
  if (s == "exact") return SolveMode::exact;
  return std::nullopt;
}

struct RunConfig {
  SolveMode mode = SolveMode::qcbp;
  SamplerKind sampler = SamplerKind::emulated_qaa;
  int shots = 200;
  std::uint64_t seed = 1;
  int node_budget = 1000;
  int hcg_max_iterations = 50;
  bool complete_branching = true;
  bool extend_to_maximal = false;
  EmulatorConfig emulator;    // shots/seed fields are overridden from above
  EmbeddingParams embedding;

  void validate() const {
    if (shots < 1) throw BenchError("shots must be >= 1");
    if (hcg_max_iterations < 1) throw BenchError("hcg iteration cap must be >= 1");
    emulator.validate();
  }
};

inline PricerConfig make_pricer_config(const RunConfig& rc, std::uint64_t instance_seed) {
  PricerConfig pc;
  pc.sampler = rc.sampler;
  pc.emulator = rc.emulator;
  pc.emulator.shots = rc.shots;
  pc.emulator.seed = instance_seed;
  pc.embedding = rc.embedding;
  pc.extend_to_maximal = rc.extend_to_maximal;
  pc.seed = instance_seed;
  return pc;
}

inline SolveConfig make_solve_config(const RunConfig& rc) {
  SolveConfig sc;
  sc.node_budget = rc.node_budget;
  sc.hcg.max_iterations = rc.hcg_max_iterations;
  sc.branch_and_bound = rc.mode == SolveMode::qcbp;
  sc.complete_branching = rc.complete_branching;
  return sc;
}

struct InstanceSolution {
  SolveResult result;
  std::uint64_t embeddings = 0;
};

/// Solves one instance in the configured mode; `exact` runs DSATUR.
inline InstanceSolution solve_instance(const Graph& g, const RunConfig& rc, std::uint64_t instance_seed) {
  rc.validate();
  InstanceSolution out;
  if (rc.mode == SolveMode::exact) {
    const auto t0 = std::chrono::steady_clock::now();
    out.result.coloring = exact_coloring(g, kMaxVertices);
    out.result.chi_hat = out.result.coloring.colors_used();
    out.result.proven_optimal = true;
    out.result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }
  Pricer pricer(make_pricer_config(rc, instance_seed));
  out.result = solve_qcbp(g, make_solve_config(rc), pricer);
  out.embeddings = pricer.embeddings_computed();
  return out;
}

// ---------------------------------------------------------------------------
// Dataset generation

struct DatasetSpec {
  std::vector<int> sizes{8, 9, 10, 11, 12};
  int per_size = 10;
  double ud_fraction = 0.55;
  std::uint64_t seed = 1;
  double radius = 10.0;        // µm
  double box_per_sqrt_n = 8.0; // box side = box_per_sqrt_n * sqrt(n) µm
};

struct ManifestEntry {
  std::string id;
  int n = 0;
  bool is_ud = true;
  std::uint64_t seed = 0;
  std::string dimacs;     // file name relative to the manifest
  std::string positions;  // file name relative to the manifest
};

struct Instance {
  ManifestEntry entry;
  Graph graph;
  std::vector<Point> positions;
};

inline std::string instance_id(int n, int index) {
  std::ostringstream os;
  os << "n" << std::setw(2) << std::setfill('0') << n << "_" << std::setw(3) << std::setfill('0') << index;
  return os.str();
}

inline std::vector<Instance> generate_instances(const DatasetSpec& spec) {
  std::vector<Instance> out;
  for (int n : spec.sizes) {
    const int ud_count = static_cast<int>(std::lround(spec.per_size * spec.ud_fraction));
    for (int i = 0; i < spec.per_size; ++i) {
      Instance inst;
      inst.entry.id = instance_id(n, i);
      inst.entry.n = n;
      inst.entry.is_ud = i < ud_count;
      inst.entry.seed = mix_seed(spec.seed, static_cast<std::uint64_t>(n) * 100003ULL + static_cast<std::uint64_t>(i));
      inst.entry.dimacs = inst.entry.id + ".col";
      inst.entry.positions = inst.entry.id + ".csv";
      auto ud = random_ud_graph(n, inst.entry.seed, spec.radius, spec.box_per_sqrt_n * std::sqrt(static_cast<double>(n)));
      inst.graph = inst.entry.is_ud ? ud.graph : perturb_graph(ud.graph, mix_seed(inst.entry.seed, 0xd15cULL));
      inst.positions = std::move(ud.positions);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

inline void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
  out << "instance,n,is_ud,seed,dimacs,positions\n";
  for (const auto& e : entries)
    out << e.id << ',' << e.n << ',' << (e.is_ud ? 1 : 0) << ',' << e.seed << ',' << e.dimacs << ','
        << e.positions << '\n';
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::vector<ManifestEntry> read_manifest(std::istream& in) {
  std::string line;
  std::vector<ManifestEntry> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) { header = false; continue; }
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw BenchError("manifest row has " + std::to_string(f.size()) + " fields: " + line);
    out.push_back({f[0], std::stoi(f[1]), f[2] == "1", std::stoull(f[3]), f[4], f[5]});
  }
  return out;
}

/// Writes `<id>.col`, `<id>.csv` and `manifest.csv` under `dir`.
inline std::vector<ManifestEntry> generate_dataset(const DatasetSpec& spec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto instances = generate_instances(spec);
  std::vector<ManifestEntry> entries;
  for (const auto& inst : instances) {
    std::ofstream col(dir / inst.entry.dimacs);
    std::ofstream pos(dir / inst.entry.positions);
    if (!col || !pos) throw BenchError("cannot write instance files under " + dir.string());
    write_dimacs(col, inst.graph);
    write_positions_csv(pos, inst.positions);
    entries.push_back(inst.entry);
  }
  std::ofstream man(dir / "manifest.csv");
  if (!man) throw BenchError("cannot write manifest under " + dir.string());
  write_manifest(man, entries);
  return entries;
}

inline std::vector<Instance> load_dataset(const std::filesystem::path& dir) {
  std::ifstream man(dir / "manifest.csv");
  if (!man) throw BenchError("missing manifest.csv in " + dir.string());
  std::vector<Instance> out;
  for (auto& e : read_manifest(man)) {
    std::ifstream col(dir / e.dimacs);
    if (!col) throw BenchError("missing instance file " + (dir / e.dimacs).string());
    Instance inst;
    inst.graph = parse_dimacs(col);
    if (inst.graph.n() != e.n) throw BenchError("instance " + e.id + " vertex count disagrees with manifest");
    if (std::ifstream pos(dir / e.positions); pos) inst.positions = read_positions_csv(pos);
    inst.entry = std::move(e);
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark records

struct BenchRecord {
  std::string instance;
  int n = 0;
  bool is_ud = true;
  std::string mode;
  std::string sampler;
  int chi_exact = 0;
  int chi_hat = 0;
  double gap = 0.0;
  bool proven = false;
  long shots = 0;
  long nodes_generated = 0;
  long nodes_explored = 0;
  long nodes_pruned = 0;
  int ilp_calls = 0;
  int quantum_calls = 0;
  double wall_ms = 0.0;
};

inline const char* kBenchHeader =
    "instance,n,is_ud,mode,sampler,chi_exact,chi_hat,gap,proven,shots,nodes_generated,nodes_explored,"
    "nodes_pruned,ilp_calls,quantum_calls";

inline std::string format_gap(double gap) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << gap;
  return os.str();
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows, bool with_timing = false) {
  out << kBenchHeader << (with_timing ? ",wall_ms" : "") << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << (r.is_ud ? 1 : 0) << ',' << r.mode << ',' << r.sampler << ','
        << r.chi_exact << ',' << r.chi_hat << ',' << format_gap(r.gap) << ',' << (r.proven ? 1 : 0) << ','
        << r.shots << ',' << r.nodes_generated << ',' << r.nodes_explored << ',' << r.nodes_pruned << ','
        << r.ilp_calls << ',' << r.quantum_calls;
    if (with_timing) out << ',' << std::fixed << std::setprecision(1) << r.wall_ms << std::defaultfloat;
    out << '\n';
  }
}

inline std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  std::vector<BenchRecord> out;
  if (!std::getline(in, line)) return out;
  const bool with_timing = line == std::string(kBenchHeader) + ",wall_ms";
  if (!with_timing && line != kBenchHeader) throw BenchError("unexpected benchmark CSV header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != (with_timing ? 16U : 15U)) throw BenchError("malformed benchmark row: " + line);
    BenchRecord r;
    r.instance = f[0];
    r.n = std::stoi(f[1]);
    r.is_ud = f[2] == "1";
    r.mode = f[3];
    r.sampler = f[4];
    r.chi_exact = std::stoi(f[5]);
    r.chi_hat = std::stoi(f[6]);
    r.gap = std::stod(f[7]);
    r.proven = f[8] == "1";
    r.shots = std::stol(f[9]);
    r.nodes_generated = std::stol(f[10]);
    r.nodes_explored = std::stol(f[11]);
    r.nodes_pruned = std::stol(f[12]);
    r.ilp_calls = std::stoi(f[13]);
    r.quantum_calls = std::stoi(f[14]);
    if (with_timing) r.wall_ms = std::stod(f[15]);
    out.push_back(std::move(r));
  }
  return out;
}

struct PricingLogRecord {
  std::string instance;
  std::string mode;
  long node = 0;
  PricingLogRow row;
};

inline void write_pricing_log_csv(std::ostream& out, const std::vector<PricingLogRecord>& rows) {
  out << "instance,mode,node,iteration,n_sub,shots,distinct_bitstrings,improving,maximal\n";
  for (const auto& r : rows)
    out << r.instance << ',' << r.mode << ',' << r.node << ',' << r.row.iteration << ',' << r.row.n_sub << ','
        << r.row.shots << ',' << r.row.distinct_bitstrings << ',' << r.row.improving << ',' << r.row.maximal
        << '\n';
}

inline std::vector<PricingLogRecord> read_pricing_log_csv(std::istream& in) {
  std::string line;
  std::vector<PricingLogRecord> out;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw BenchError("malformed pricing log row: " + line);
    out.push_back({f[0], f[1], std::stol(f[2]),
                   {std::stoi(f[3]), std::stoi(f[4]), std::stoi(f[5]), std::stoi(f[6]), std::stoi(f[7]),
                    std::stoi(f[8])}});
  }
  return out;
}

struct BenchOutput {
  std::vector<BenchRecord> records;
  std::vector<PricingLogRecord> pricing_log;
};

namespace detail {
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}
}  // namespace detail

/// One record per (instance, mode). Instance seeds derive from the run seed
/// and the instance id, so results do not depend on dataset order.
inline BenchOutput run_benchmark(const RunConfig& base, const std::vector<SolveMode>& modes,
                                 const std::vector<Instance>& instances, int oracle_cap = 20) {
  BenchOutput out;
  for (const auto& inst : instances) {
    const int chi = exact_reference_chromatic(inst.graph, oracle_cap);
    const std::uint64_t inst_seed =
        mix_seed(base.seed, detail::fnv1a(inst.entry.id) & 0xffffffffULL);
    for (auto mode : modes) {
      RunConfig rc = base;
      rc.mode = mode;
      const auto sol = solve_instance(inst.graph, rc, inst_seed);
      const auto& r = sol.result;
      if (!is_valid_coloring(inst.graph, r.coloring) || r.chi_hat != r.coloring.colors_used())
        throw BenchError("instance " + inst.entry.id + ": solver returned an invalid colouring");
      if (r.chi_hat < chi) throw BenchError("instance " + inst.entry.id + ": colouring beats the exact oracle");
      BenchRecord rec;
      rec.instance = inst.entry.id;
      rec.n = inst.graph.n();
      rec.is_ud = inst.entry.is_ud;
      rec.mode = to_string(mode);
      rec.sampler = mode == SolveMode::exact ? "none" : to_string(rc.sampler);
      rec.chi_exact = chi;
      rec.chi_hat = r.chi_hat;
      rec.gap = chi > 0 ? static_cast<double>(r.chi_hat - chi) / chi : 0.0;
      rec.proven = r.proven_optimal;
      rec.shots = r.stats.shots_total;
      rec.nodes_generated = r.stats.nodes_generated;
      rec.nodes_explored = r.stats.nodes_explored;
      rec.nodes_pruned = r.stats.nodes_pruned;
      rec.ilp_calls = r.stats.ilp_calls;
      rec.quantum_calls = r.stats.quantum_calls;
      rec.wall_ms = r.stats.wall_ms;
      out.records.push_back(rec);
      for (const auto& row : r.log) out.pricing_log.push_back({rec.instance, rec.mode, row.node, row.row});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summary report

template <typename T>
double median(std::vector<T> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? static_cast<double>(v[m]) : (static_cast<double>(v[m - 1]) + static_cast<double>(v[m])) / 2.0;
}

struct BenchSummary {
  // mode -> {ud, non-ud, total} optimality rates
  std::map<std::string, std::array<double, 3>> optimality;
  // mode -> n -> mean gap
  std::map<std::string, std::map<int, double>> mean_gap;
  std::map<std::string, std::map<int, int>> max_excess;  // worst chi_hat - chi_exact
  std::map<std::string, double> median_explored;
};

inline BenchSummary summarize(const std::vector<BenchRecord>& rows) {
  BenchSummary s;
  std::map<std::string, std::array<int, 6>> opt;  // ud hits, ud count, non hits, non count
  std::map<std::string, std::map<int, std::pair<double, int>>> gaps;
  std::map<std::string, std::vector<long>> explored;
  for (const auto& r : rows) {
    auto& o = opt[r.mode];
    const int k = r.is_ud ? 0 : 2;
    o[static_cast<std::size_t>(k)] += r.chi_hat == r.chi_exact ? 1 : 0;
    o[static_cast<std::size_t>(k + 1)] += 1;
    auto& g = gaps[r.mode][r.n];
    g.first += r.gap;
    g.second += 1;
    auto& ex = s.max_excess[r.mode][r.n];
    ex = std::max(ex, r.chi_hat - r.chi_exact);
    explored[r.mode].push_back(r.nodes_explored);
  }
  for (auto& [mode, o] : opt) {
    auto rate = [](int hit, int count) { return count ? static_cast<double>(hit) / count : 0.0; };
    s.optimality[mode] = {rate(o[0], o[1]), rate(o[2], o[3]), rate(o[0] + o[2], o[1] + o[3])};
  }
  for (auto& [mode, by_n] : gaps)
    for (auto& [n, g] : by_n) s.mean_gap[mode][n] = g.first / g.second;
  for (auto& [mode, v] : explored) s.median_explored[mode] = median(v);
  return s;
}

inline void write_report(std::ostream& out, const std::vector<BenchRecord>& rows,
                         const std::vector<PricingLogRecord>& log) {
  const auto s = summarize(rows);
  out << std::fixed << std::setprecision(3);
  out << "== Optimality rate (chi_hat == chi_exact)\n";
  out << "mode,ud,non_ud,total\n";
  for (const auto& [mode, r] : s.optimality) out << mode << ',' << r[0] << ',' << r[1] << ',' << r[2] << '\n';

  out << "\n== Mean relative gap by n\n";
  out << "mode,n,mean_gap,max_excess_colors\n";
  for (const auto& [mode, by_n] : s.mean_gap)
    for (const auto& [n, g] : by_n) out << mode << ',' << n << ',' << g << ',' << s.max_excess.at(mode).at(n) << '\n';

  std::map<std::tuple<std::string, int, bool>, std::vector<long>> shots, ilp;
  std::map<std::pair<std::string, int>, std::array<std::vector<long>, 3>> nodes;
  for (const auto& r : rows) {
    shots[{r.mode, r.n, r.is_ud}].push_back(r.shots);
    ilp[{r.mode, r.n, r.is_ud}].push_back(r.ilp_calls);
    auto& nd = nodes[{r.mode, r.n}];
    nd[0].push_back(r.nodes_generated);
    nd[1].push_back(r.nodes_explored);
    nd[2].push_back(r.nodes_pruned);
  }
  auto range = [](const std::vector<long>& v) {
    std::ostringstream os;
    os << *std::min_element(v.begin(), v.end()) << ',' << std::setprecision(1) << std::fixed << median(v) << ','
       << *std::max_element(v.begin(), v.end());
    return os.str();
  };
  out << "\n== Shots per instance\n";
  out << "mode,n,ud,min,median,max\n";
  for (const auto& [k, v] : shots)
    out << std::get<0>(k) << ',' << std::get<1>(k) << ',' << (std::get<2>(k) ? 1 : 0) << ',' << range(v) << '\n';

  out << "\n== Branch-and-bound nodes (min,median,max)\n";
  out << "mode,n,generated_min,generated_median,generated_max,explored_min,explored_median,explored_max,"
         "pruned_min,pruned_median,pruned_max\n";
  for (const auto& [k, v] : nodes)
    out << k.first << ',' << k.second << ',' << range(v[0]) << ',' << range(v[1]) << ',' << range(v[2]) << '\n';

  out << "\n== Median exact-pricer calls\n";
  out << "mode,n,ud,median_ilp_calls\n";
  for (const auto& [k, v] : ilp)
    out << std::get<0>(k) << ',' << std::get<1>(k) << ',' << (std::get<2>(k) ? 1 : 0) << ','
        << std::setprecision(1) << median(v) << std::setprecision(3) << '\n';

  if (!log.empty()) {
    std::map<int, std::array<long, 3>> by_sub;  // distinct, improving, maximal
    for (const auto& r : log) {
      auto& a = by_sub[r.row.n_sub];
      a[0] += r.row.distinct_bitstrings;
      a[1] += r.row.improving;
      a[2] += r.row.maximal;
    }
    out << "\n== Sampled sets by subproblem size\n";
    out << "n_sub,distinct,improving,maximal,improving_fraction,maximal_fraction\n";
    for (const auto& [n, a] : by_sub)
      out << n << ',' << a[0] << ',' << a[1] << ',' << a[2] << ','
          << (a[0] ? static_cast<double>(a[1]) / static_cast<double>(a[0]) : 0.0) << ','
          << (a[1] ? static_cast<double>(a[2]) / static_cast<double>(a[1]) : 0.0) << '\n';
  }
  out << std::defaultfloat;
}

}  // namespace qcbp
