// headcount: process detection streams, simulate doorway scenarios,
// benchmark the engine and sweep tracker thresholds.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "headcount/bench.hpp"
#include "headcount/calibrate.hpp"
#include "headcount/config.hpp"
#include "headcount/engine.hpp"
#include "headcount/errors.hpp"
#include "headcount/simulator.hpp"

namespace {

using namespace headcount;

constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;

EngineConfig config_or_default(const std::string& path) {
  return path.empty() ? EngineConfig{} : load_config(path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct NoiseArgs {
  double miss = 0.0;
  double emb_sigma = 0.0;
  double jitter = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--miss-prob", miss, "Per-frame probability a head goes undetected");
    cmd->add_option("--emb-sigma", emb_sigma, "Per-component embedding noise sigma");
    cmd->add_option("--jitter", jitter, "Box center jitter sigma (normalized units)");
  }
  sim::NoiseSpec spec() const { return {miss, emb_sigma, jitter}; }
};

int cmd_run(const std::string& input, const std::string& config_path,
            const std::string& events_out, const std::string& report_out) {
  EngineConfig config = config_or_default(config_path);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + input);
  RunResult result = run(in, config);

  if (!events_out.empty()) {
    auto out = open_out(events_out);
    for (const auto& e : result.ledger.events()) out << event_to_json(e) << '\n';
  }
  if (!report_out.empty()) {
    auto snap = result.ledger.snapshot();
    nlohmann::ordered_json report;
    report["ledger"] = {{"ins", snap.ins}, {"outs", snap.outs}, {"occupancy", snap.occupancy}};
    report["frames"] = result.frames;
    report["timing"] = bench_to_json(result.timing);
    auto out = open_out(report_out);
    out << report.dump(2) << '\n';
  }
  std::cout << snapshot_to_json(result.ledger.snapshot()) << '\n';
  return 0;
}

int cmd_simulate(const std::string& scenario, std::uint64_t seed, const std::string& config_path,
                 const NoiseArgs& noise, const std::string& out_path,
                 const std::string& truth_path) {
  EngineConfig config = config_or_default(config_path);
  sim::CatalogOptions opts;
  opts.seed = seed;
  opts.embedding_dim = config.embedding_dim;
  opts.layout = config.layout;
  opts.miss_limit = config.tracker.miss_limit;
  sim::ScenarioSpec spec = sim::make_scenario(scenario, opts);
  spec.noise = noise.spec();
  sim::Generated g = sim::generate(spec);

  auto out = open_out(out_path);
  for (const auto& f : g.frames) out << serialize_frame(f) << '\n';
  if (!truth_path.empty()) {
    auto truth = open_out(truth_path);
    for (const auto& e : g.truth.events) truth << sim::truth_event_to_json(e) << '\n';
  }
  std::cout << "{\"frames\":" << g.frames.size() << ",\"ins\":" << g.truth.final_ins
            << ",\"outs\":" << g.truth.final_outs << "}\n";
  return 0;
}

int cmd_bench(const std::string& scenarios, int reps, const std::string& config_path,
              std::size_t track_frames) {
  EngineConfig config = config_or_default(config_path);
  nlohmann::ordered_json out;
  out["scenarios"] = bench_to_json(bench(split_list(scenarios), reps, config));
  if (track_frames > 0) out["track_counts"] = bench_to_json(bench_track_counts(3, track_frames, config));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_calibrate(const std::string& grid_path, const std::string& scenarios, int seeds,
                  const std::string& config_path, const NoiseArgs& noise) {
  EngineConfig config = config_or_default(config_path);
  std::ifstream in(grid_path);
  if (!in) throw ConfigError("cannot open grid file " + grid_path);
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("grid file is not valid JSON");

  CalibrationOptions opts;
  opts.scenarios = split_list(scenarios);
  opts.seeds.clear();
  for (int s = 1; s <= seeds; ++s) opts.seeds.push_back(static_cast<std::uint64_t>(s));
  opts.noise = noise.spec();
  std::cout << calibration_to_json(calibrate(grid_from_json(j), opts, config)).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doorway people counter: tracking, counting, simulation and benchmarks"};
  app.require_subcommand(1);

  std::string input, config_path, events_out, report_out;
  auto* run_cmd = app.add_subcommand("run", "Count entries and exits in a detection stream");
  run_cmd->add_option("--input", input, "Line-delimited detection stream")->required();
  run_cmd->add_option("--config", config_path, "Engine config (JSON)");
  run_cmd->add_option("--events-out", events_out, "Write crossing events here");
  run_cmd->add_option("--report-out", report_out, "Write ledger and timing report here");

  std::string scenario, out_path, truth_path;
  std::uint64_t seed = 1;
  NoiseArgs sim_noise;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic detection stream");
  sim_cmd->add_option("--scenario", scenario, "Catalog scenario name")->required();
  sim_cmd->add_option("--seed", seed, "Random seed");
  sim_cmd->add_option("--out", out_path, "Stream output file")->required();
  sim_cmd->add_option("--truth-out", truth_path, "Ground-truth events output file");
  sim_cmd->add_option("--config", config_path, "Engine config (layout, embedding_dim)");
  sim_noise.attach(sim_cmd);

  std::string scenarios = "clean_entry,crossing_pair,multi_3";
  int reps = 20;
  std::size_t track_frames = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Time the per-frame engine step");
  bench_cmd->add_option("--scenarios", scenarios, "Comma-separated scenario names");
  bench_cmd->add_option("--reps", reps, "Repetitions per scenario")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--track-frames", track_frames,
                        "Also time fixed 0..3 track frames this many times each");
  bench_cmd->add_option("--config", config_path, "Engine config (JSON)");

  std::string grid_path;
  int seeds = 3;
  NoiseArgs cal_noise;
  auto* cal_cmd = app.add_subcommand("calibrate", "Rank tracker thresholds on simulated scenarios");
  cal_cmd->add_option("--grid", grid_path, "JSON file with T, D and E arrays")->required();
  cal_cmd->add_option("--scenarios", scenarios, "Comma-separated scenario names");
  cal_cmd->add_option("--seeds", seeds, "Seeds 1..N per scenario")->check(CLI::PositiveNumber);
  cal_cmd->add_option("--config", config_path, "Base engine config (JSON)");
  cal_noise.attach(cal_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(input, config_path, events_out, report_out);
    if (*sim_cmd) return cmd_simulate(scenario, seed, config_path, sim_noise, out_path, truth_path);
    if (*bench_cmd) return cmd_bench(scenarios, reps, config_path, track_frames);
    if (*cal_cmd) return cmd_calibrate(grid_path, scenarios, seeds, config_path, cal_noise);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StreamError& e) {
    std::cerr << "stream error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
