// qcbp command-line driver: dataset generation, single solves, benchmark
// sweeps and report aggregation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qcbp/bench.hpp"

namespace fs = std::filesystem;
using namespace qcbp;

namespace {

std::ofstream open_out(const std::string& path) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

Graph load_graph(const std::string& path) {
  auto in = open_in(path);
  return parse_dimacs(in);
}

void write_coloring(std::ostream& out, const Coloring& c) {
  out << "vertex,color\n";
  std::vector<std::pair<int, int>> rows;
  for (std::size_t k = 0; k < c.classes.size(); ++k)
    c.classes[k].for_each([&](int v) { rows.emplace_back(v, static_cast<int>(k)); });
  std::sort(rows.begin(), rows.end());
  for (auto [v, k] : rows) out << v << ',' << k << '\n';
}

// One emulator pass over the whole graph with uniform weights, for inspecting
// the pulse and the raw measurement distribution.
void dump_emulation(const Graph& g, const RunConfig& rc, std::uint64_t seed, const std::string& pulse_path,
                    const std::string& samples_path) {
  const auto pc = make_pricer_config(rc, seed);
  const Register reg = embed(g, pc.embedding, mix_seed(pc.seed ^ 0x5eedULL, g.vertices().bits()));
  const auto report = audit(g, reg, pc.embedding.ud_radius);
  const auto pulse = build_adiabatic_pulse(report, pc.emulator);
  if (!pulse_path.empty()) {
    auto out = open_out(pulse_path);
    write_pulse_csv(out, pulse);
  }
  if (!samples_path.empty()) {
    const auto psi = evolve(reg, pulse, pc.emulator);
    auto out = open_out(samples_path);
    write_samples_csv(out, sample(psi, pc.emulator.shots, seed));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branch-and-price graph colouring with an emulated Rydberg-array pricer"};
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  std::string mode = "qcbp", sampler = "emulated_qaa";
  app.add_option("--mode", mode, "qcbp | hcg_only | exact")->capture_default_str();
  app.add_option("--sampler", sampler, "emulated_qaa | classical_stochastic | exact_pricer")->capture_default_str();
  app.add_option("--shots", rc.shots, "shots per sampler call")->capture_default_str();
  app.add_option("--seed", rc.seed, "run seed")->capture_default_str();
  app.add_option("--node-budget", rc.node_budget, "explored-node cap, 0 for unlimited")->capture_default_str();
  app.add_option("--hcg-max-iterations", rc.hcg_max_iterations)->capture_default_str();
  app.add_flag("--complete-branching,!--pool-branching", rc.complete_branching,
               "branch on every maximal set containing the branching vertex (--pool-branching: pool columns only)")
      ->capture_default_str();
  app.add_flag("--extend-to-maximal", rc.extend_to_maximal, "greedily extend sampled sets before adding them");
  app.add_option("--duration", rc.emulator.duration, "pulse length (us)")->capture_default_str();
  app.add_option("--delta-start", rc.emulator.delta_start, "initial detuning (rad/us)")->capture_default_str();
  app.add_option("--delta-end", rc.emulator.delta_end, "final detuning (rad/us)")->capture_default_str();
  app.add_option("--rise-fraction", rc.emulator.rise_fraction)->capture_default_str();
  app.add_option("--fall-fraction", rc.emulator.fall_fraction)->capture_default_str();
  app.add_option("--omega-max", rc.emulator.omega_max, "Rabi clamp (rad/us)")->capture_default_str();
  app.add_option("--c6", rc.emulator.c6, "interaction coefficient (rad um^6/us)")->capture_default_str();
  app.add_option("--dt", rc.emulator.dt, "integration step (us)")->capture_default_str();
  app.add_option("--max-qubits", rc.emulator.max_qubits)->capture_default_str();
  app.add_flag("--half-rabi", rc.emulator.half_rabi, "drive term Omega/2 instead of Omega");
  app.add_option("--embed-iterations", rc.embedding.iterations)->capture_default_str();
  app.add_option("--embed-restarts", rc.embedding.restarts)->capture_default_str();
  app.add_option("--embed-margin", rc.embedding.margin, "um")->capture_default_str();
  app.add_option("--ud-radius", rc.embedding.ud_radius, "um")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a dataset of DIMACS graphs and atom positions");
  DatasetSpec spec;
  std::string gen_out;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--sizes", spec.sizes, "vertex counts")->delimiter(',')->capture_default_str();
  gen->add_option("--per-size", spec.per_size)->capture_default_str();
  gen->add_option("--ud-fraction", spec.ud_fraction, "share of unperturbed unit-disk graphs")->capture_default_str();
  gen->add_option("--box-per-sqrt-n", spec.box_per_sqrt_n, "placement box side / sqrt(n), um")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "colour one DIMACS graph");
  std::string graph_path, stats_out, coloring_out, log_out, pulse_out, samples_out;
  solve->add_option("graph", graph_path, "DIMACS .col file")->required()->check(CLI::ExistingFile);
  solve->add_option("--stats-out", stats_out, "write the stats record here instead of stdout");
  solve->add_option("--coloring-out", coloring_out, "vertex,color CSV");
  solve->add_option("--pricing-log", log_out, "per-iteration sampler log CSV");
  solve->add_option("--pulse-out", pulse_out, "pulse schedule CSV for the whole-graph register");
  solve->add_option("--samples-out", samples_out, "bitstring counts of one whole-graph emulation");

  // bench
  auto* bench = app.add_subcommand("bench", "solve every instance of a dataset and compare with the exact oracle");
  std::string dataset, bench_out, bench_log, bench_report;
  std::vector<std::string> modes{"qcbp"};
  bool timing = false;
  bench->add_option("--dataset", dataset, "directory with manifest.csv")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--modes", modes, "modes to run per instance")->delimiter(',')->capture_default_str();
  bench->add_option("--out", bench_out, "benchmark CSV")->required();
  bench->add_option("--pricing-log", bench_log, "per-iteration sampler log CSV");
  bench->add_option("--report", bench_report, "summary tables");
  bench->add_flag("--timing", timing, "append wall_ms (breaks byte-identical reruns)");

  // report
  auto* report = app.add_subcommand("report", "summarise a benchmark CSV");
  std::string report_in, report_log;
  report->add_option("csv", report_in, "benchmark CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--pricing-log", report_log, "pricing log CSV")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto m = parse_mode(mode);
    if (!m) throw std::runtime_error("unknown mode '" + mode + "'");
    const auto s = parse_sampler(sampler);
    if (!s) throw std::runtime_error("unknown sampler '" + sampler + "'");
    rc.mode = *m;
    rc.sampler = *s;
    rc.validate();

    if (*gen) {
      spec.seed = rc.seed;
      const auto entries = generate_dataset(spec, gen_out);
      int ud = 0;
      for (const auto& e : entries) ud += e.is_ud ? 1 : 0;
      std::cout << "wrote " << entries.size() << " instances (" << ud << " unit-disk) to " << gen_out << "\n";
    } else if (*solve) {
      const Graph g = load_graph(graph_path);
      const std::uint64_t seed = mix_seed(rc.seed, 0);
      const auto sol = solve_instance(g, rc, seed);
      const auto& r = sol.result;
      if (!is_valid_coloring(g, r.coloring)) throw std::runtime_error("solver returned an invalid colouring");
      std::ostringstream rec;
      rec << "nodes_generated,nodes_explored,nodes_pruned,shots_total,ilp_calls,chi_hat,proven,wall_time\n"
          << r.stats.nodes_generated << ',' << r.stats.nodes_explored << ',' << r.stats.nodes_pruned << ','
          << r.stats.shots_total << ',' << r.stats.ilp_calls << ',' << r.chi_hat << ',' << (r.proven_optimal ? 1 : 0)
          << ',' << std::fixed << std::setprecision(3) << r.stats.wall_ms / 1000.0 << '\n';
      if (stats_out.empty()) std::cout << rec.str();
      else open_out(stats_out) << rec.str();
      if (!coloring_out.empty()) {
        auto out = open_out(coloring_out);
        write_coloring(out, r.coloring);
      }
      if (!log_out.empty()) {
        std::vector<PricingLogRecord> rows;
        for (const auto& row : r.log) rows.push_back({fs::path(graph_path).stem().string(), mode, row.node, row.row});
        auto out = open_out(log_out);
        write_pricing_log_csv(out, rows);
      }
      if (!pulse_out.empty() || !samples_out.empty()) {
        if (g.n() < 2) throw std::runtime_error("pulse/sample dumps need at least two vertices");
        dump_emulation(g, rc, seed, pulse_out, samples_out);
      }
    } else if (*bench) {
      std::vector<SolveMode> run_modes;
      for (const auto& name : modes) {
        const auto bm = parse_mode(name);
        if (!bm) throw std::runtime_error("unknown mode '" + name + "'");
        run_modes.push_back(*bm);
      }
      const auto instances = load_dataset(dataset);
      if (instances.empty()) throw std::runtime_error("dataset " + dataset + " has no instances");
      const auto out = run_benchmark(rc, run_modes, instances);
      {
        auto f = open_out(bench_out);
        write_bench_csv(f, out.records, timing);
      }
      if (!bench_log.empty()) {
        auto f = open_out(bench_log);
        write_pricing_log_csv(f, out.pricing_log);
      }
      if (!bench_report.empty()) {
        auto f = open_out(bench_report);
        write_report(f, out.records, out.pricing_log);
      }
      write_report(std::cout, out.records, out.pricing_log);
    } else if (*report) {
      auto in = open_in(report_in);
      const auto rows = read_bench_csv(in);
      std::vector<PricingLogRecord> log;
      if (!report_log.empty()) {
        auto lin = open_in(report_log);
        log = read_pricing_log_csv(lin);
      }
      write_report(std::cout, rows, log);
    }
  } catch (const std::exception& e) {
    std::cerr << "qcbp: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
