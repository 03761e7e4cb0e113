#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "layoutbench/dsf.hpp"
#include "layoutbench/metrics.hpp"

namespace layoutbench::cli {

namespace fs = std::filesystem;

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // bad flags (reported by the argument parser)
  kExitInput = 2,     // unreadable or invalid input data
  kExitInternal = 3,  // unexpected failure inside the tool
};

enum class OutputFormat { Table, Json, Csv };

std::optional<OutputFormat> parse_format(std::string_view name);

struct RunConfig {
  std::string command;

  fs::path annotations;
  // Forces the tabular adapter (otherwise chosen by the .csv extension).
  bool tabular = false;
  std::optional<fs::path> tabular_config;

  std::optional<fs::path> canvas_dir;
  std::vector<fs::path> saliency_dirs;
  // Destination for rendered images.
  std::optional<fs::path> image_dir;

  dsf::Strategy strategy = dsf::Strategy::Dsf;
  std::optional<int> length;
  std::uint64_t seed = 0;
  metrics::MetricSet metrics = metrics::MetricSet::all();

  std::optional<fs::path> out;
  OutputFormat format = OutputFormat::Table;
  unsigned jobs = 1;
  bool strict = false;

  // generate
  std::optional<fs::path> gen_spec;
  std::string generator = "random";
  int count = 1;
};

/// Environment variable naming a dataset root with the conventional layout
/// canvases/, saliency_1/, saliency_2/ and annotations.jsonl (or .csv).
inline constexpr const char* kDataRootEnv = "LAYOUTBENCH_DATA_ROOT";

/// Fills unset input paths from the dataset root in kDataRootEnv.
void apply_data_root(RunConfig& config);

/// Per-layout seed for the random strategy: a hash of the run seed and the
/// layout's ids, so a layout's permutation does not depend on its position.
std::uint64_t layout_seed(std::uint64_t run_seed, const Layout& layout);

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_dsf(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_ablation(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs the selected command.
int main_entry(int argc, char** argv);

// Report serialization, shared by eval and the tests.
inline constexpr const char* kReportSchema = "layoutbench.report";
inline constexpr int kReportVersion = 1;

std::string format_number(double v);
void write_layout_rows(std::ostream& out, const std::vector<metrics::LayoutMetrics>& rows);
void write_report_json(std::ostream& out, const metrics::MetricReport& report, std::size_t skipped_records);
void write_report_csv(std::ostream& out, const metrics::MetricReport& report);
void write_report_table(std::ostream& out, const metrics::MetricReport& report);

}  // namespace layoutbench::cli
