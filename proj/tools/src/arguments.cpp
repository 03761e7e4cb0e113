#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "layoutbench/cli.hpp"

namespace layoutbench::cli {

namespace {

void add_input_options(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--annotations", config.annotations, "Annotation file (.jsonl native, .csv tabular)");
  cmd.add_flag("--tabular", config.tabular, "Read --annotations with the tabular adapter");
  cmd.add_option("--tabular-config", config.tabular_config, "JSON file with tabular columns and class-id map");
  cmd.add_option("--jobs", config.jobs, "Worker threads (output does not depend on it)")->check(CLI::PositiveNumber);
  cmd.add_flag("--strict", config.strict, "Fail on the first bad record or unreadable input");
}

void add_raster_options(CLI::App& cmd, RunConfig& config) {
  cmd.add_option("--canvas-dir", config.canvas_dir, "Directory of canvas images");
  cmd.add_option("--saliency-dirs", config.saliency_dirs,
                 "One or two saliency map directories, combined by pixel-wise max")
      ->expected(1, 2);
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Layout design sequences, metrics and benchmark tooling"};
  app.require_subcommand(1);

  RunConfig config;
  config.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string format_name = "table";
  std::string strategy_name = "dsf";
  std::string metric_list = "all";
  std::optional<std::string> out_path;

  auto* eval = app.add_subcommand("eval", "Score layouts with the eight metrics");
  add_input_options(*eval, config);
  add_raster_options(*eval, config);
  eval->add_option("--metrics", metric_list, "Comma-separated metrics or 'all'");
  eval->add_option("--out", out_path, "Directory for layouts.csv, report.json and report.csv");
  eval->add_option("--format", format_name, "Stdout format: table | json | csv");

  auto* seq = app.add_subcommand("dsf", "Order layout elements into design sequences");
  add_input_options(*seq, config);
  seq->add_option("--strategy", strategy_name, "dsf | geometric | random");
  seq->add_option("--length", config.length, "Fit every sequence to this length");
  seq->add_option("--seed", config.seed, "Seed for the random strategy");
  seq->add_option("--out", out_path, "Output sequence file (default: stdout)");

  auto* ablation = app.add_subcommand("ablation", "Compare ordering strategies at full and fitted length");
  add_input_options(*ablation, config);
  add_raster_options(*ablation, config);
  ablation->add_option("--length", config.length, "Fitted sequence length (default 8)");
  ablation->add_option("--seed", config.seed, "Seed for the random strategy");
  ablation->add_option("--metrics", metric_list, "Comma-separated metrics or 'all'");
  ablation->add_option("--out", out_path, "Directory for ablation.csv and ablation.json");

  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  add_input_options(*stats, config);
  stats->add_option("--canvas-dir", config.canvas_dir, "Directory of canvas images to count");
  stats->add_option("--out", out_path, "Write the statistics as JSON to this file");
  stats->add_option("--format", format_name, "Stdout format: table | json | csv");

  auto* render = app.add_subcommand("render", "Draw layouts as tinted boxes over their canvases");
  add_input_options(*render, config);
  render->add_option("--canvas-dir", config.canvas_dir, "Directory of canvas images");
  render->add_option("--image-dir", config.image_dir, "Output directory for PNG files");

  auto* generate = app.add_subcommand("generate", "Write synthetic baseline layouts");
  generate->add_option("--gen-spec", config.gen_spec, "Generator spec (JSON)");
  generate->add_option("--generator", config.generator, "random | grid");
  generate->add_option("--count", config.count, "Number of layouts");
  generate->add_option("--seed", config.seed, "Mixed into the spec seed");
  generate->add_option("--saliency-dirs", config.saliency_dirs, "Saliency maps for the grid generator")
      ->expected(1, 2);
  generate->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  generate->add_flag("--strict", config.strict, "Fail on unreadable saliency maps");
  generate->add_option("--out", out_path, "Output annotation file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  if (out_path) config.out = *out_path;
  const auto format = parse_format(format_name);
  if (!format) {
    std::cerr << "error: unknown --format '" << format_name << "'\n";
    return kExitUsage;
  }
  config.format = *format;
  const auto strategy = dsf::parse_strategy(strategy_name);
  if (!strategy) {
    std::cerr << "error: unknown --strategy '" << strategy_name << "'\n";
    return kExitUsage;
  }
  config.strategy = *strategy;
  try {
    config.metrics = metrics::MetricSet::parse(metric_list);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  apply_data_root(config);
  return run(config, std::cout, std::cerr);
}

}  // namespace layoutbench::cli
