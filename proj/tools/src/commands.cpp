#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "layoutbench/baseline_gen.hpp"
#include "layoutbench/cli.hpp"
#include "layoutbench/dataset_io.hpp"
#include "layoutbench/parallel.hpp"
#include "layoutbench/render.hpp"

namespace layoutbench::cli {

using nlohmann::json;
using metrics::Metric;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(fmt::format("cannot create directory '{}': {}", dir.string(), ec.message()));
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

// Loads annotations and prints per-record errors. Returns nullopt when
// --strict and any record failed.
std::optional<io::LoadResult> load_input(const RunConfig& config, std::ostream& err) {
  if (config.annotations.empty()) throw InputError("no annotations given (--annotations)");
  io::TabularConfig tabular;
  if (config.tabular_config) tabular = io::load_tabular_config(*config.tabular_config);
  const auto format = config.tabular || config.tabular_config ? io::AnnotationFormat::Tabular
                                                              : io::guess_format(config.annotations);
  io::LoadResult result = io::load_annotations(config.annotations, format, tabular);
  for (const auto& e : result.errors) {
    fmt::print(err, "{}:{}: {}\n", config.annotations.string(), e.line, e.message);
  }
  if (config.strict && !result.errors.empty()) return std::nullopt;
  return result;
}

// Resolves and loads the rasters a layout needs.
class RasterSource {
 public:
  explicit RasterSource(const RunConfig& config) {
    if (config.saliency_dirs.size() > 2) throw InputError("at most two saliency directories");
    for (const auto& dir : config.saliency_dirs) saliency_.emplace_back(dir);
    if (config.canvas_dir) canvas_.emplace(*config.canvas_dir);
  }

  bool has_saliency() const { return !saliency_.empty(); }
  bool has_canvas() const { return canvas_.has_value(); }

  std::optional<SaliencyRaster> saliency(const Layout& layout, std::vector<std::string>& problems) const {
    std::optional<SaliencyRaster> combined;
    for (const auto& index : saliency_) {
      auto map = load(index, layout, "saliency map", problems);
      if (!map) return std::nullopt;
      combined = combined ? composite_saliency(*combined, *map) : std::move(*map);
    }
    return combined;
  }

  std::optional<LuminanceRaster> canvas(const Layout& layout, std::vector<std::string>& problems) const {
    if (!canvas_) return std::nullopt;
    return load(*canvas_, layout, "canvas", problems);
  }

 private:
  static std::optional<Raster> load(const io::ImageIndex& index, const Layout& layout, const char* what,
                                    std::vector<std::string>& problems) {
    const auto path = index.find(layout.canvas_id);
    if (!path) {
      problems.push_back(fmt::format("{}: no {} file", layout.canvas_id, what));
      return std::nullopt;
    }
    try {
      return io::load_raster(*path, std::make_pair(layout.canvas_w, layout.canvas_h));
    } catch (const InputError& e) {
      problems.push_back(fmt::format("{}: {}", layout.canvas_id, e.what()));
      return std::nullopt;
    }
  }

  std::vector<io::ImageIndex> saliency_;
  std::optional<io::ImageIndex> canvas_;
};

// Evaluates `layouts` with rasters from `source`. `variants` maps a layout to
// the layouts actually scored (e.g. sequence-fitted versions); all variants
// share the rasters of their source layout.
template <typename Variants>
std::vector<std::vector<metrics::LayoutMetrics>> evaluate_variants(const std::vector<Layout>& layouts,
                                                                   const RasterSource& source,
                                                                   const metrics::MetricSet& selection,
                                                                   unsigned jobs, std::size_t variant_count,
                                                                   Variants&& variants,
                                                                   std::vector<std::vector<std::string>>& problems) {
  std::vector<std::vector<metrics::LayoutMetrics>> rows(variant_count,
                                                        std::vector<metrics::LayoutMetrics>(layouts.size()));
  problems.assign(layouts.size(), {});
  const bool want_saliency = selection.has(Metric::Uti) || selection.has(Metric::Occ);
  const bool want_image = selection.has(Metric::Rea);
  parallel_for(layouts.size(), jobs, [&](std::size_t i) {
    const Layout& layout = layouts[i];
    std::optional<SaliencyRaster> saliency;
    std::optional<LuminanceRaster> image;
    if (want_saliency && source.has_saliency()) saliency = source.saliency(layout, problems[i]);
    if (want_image && source.has_canvas()) image = source.canvas(layout, problems[i]);
    const std::vector<Layout> scored = variants(layout);
    for (std::size_t v = 0; v < variant_count; ++v) {
      rows[v][i] = metrics::evaluate_layout(scored[v], saliency ? &*saliency : nullptr,
                                            image ? &*image : nullptr, selection);
    }
  });
  return rows;
}

bool report_problems(const std::vector<std::vector<std::string>>& problems, std::ostream& err) {
  bool any = false;
  for (const auto& list : problems) {
    for (const auto& p : list) {
      fmt::print(err, "warning: {}\n", p);
      any = true;
    }
  }
  return any;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string flags_of(const metrics::LayoutDiagnostics& d) {
  std::vector<std::string> flags;
  if (d.empty_layout) flags.emplace_back("empty_layout");
  if (d.overlay_undefined) flags.emplace_back("overlay_undefined");
  if (d.no_valid_underlay) flags.emplace_back("no_valid_underlay");
  if (d.orphan_underlays > 0) flags.push_back(fmt::format("orphan_underlays={}", d.orphan_underlays));
  if (d.missing_saliency) flags.emplace_back("missing_saliency");
  if (d.missing_image) flags.emplace_back("missing_image");
  if (d.utility_degenerate) flags.emplace_back("utility_degenerate");
  if (d.occlusion_empty) flags.emplace_back("occlusion_empty");
  if (d.readability_empty) flags.emplace_back("readability_empty");
  return fmt::format("{}", fmt::join(flags, ";"));
}

void write_file(const fs::path& path, const std::string& contents) {
  auto out = open_output(path);
  out << contents;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xCBF29CE484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

void apply_data_root(RunConfig& config) {
  const char* root_env = std::getenv(kDataRootEnv);
  if (root_env == nullptr || *root_env == '\0') return;
  const fs::path root(root_env);
  if (config.annotations.empty()) {
    for (const char* name : {"annotations.jsonl", "annotations.csv"}) {
      if (fs::exists(root / name)) {
        config.annotations = root / name;
        break;
      }
    }
  }
  if (!config.canvas_dir && fs::is_directory(root / "canvases")) config.canvas_dir = root / "canvases";
  if (config.saliency_dirs.empty()) {
    for (const char* name : {"saliency_1", "saliency_2"}) {
      if (fs::is_directory(root / name)) config.saliency_dirs.push_back(root / name);
    }
  }
}

std::uint64_t layout_seed(std::uint64_t run_seed, const Layout& layout) {
  std::uint64_t h = fnv1a(layout.canvas_id);
  h = fnv1a(std::string_view("\x1f", 1), h);
  h = fnv1a(layout.layout_id, h);
  return splitmix64(run_seed ^ splitmix64(h));
}

std::string format_number(double v) { return fmt::format("{}", v); }

void write_layout_rows(std::ostream& out, const std::vector<metrics::LayoutMetrics>& rows) {
  out << "canvas_id,layout_id,elements,valid";
  for (Metric m : metrics::kAllMetrics) out << ',' << metrics::name(m);
  out << ",flags\n";
  for (const auto& row : rows) {
    out << csv_field(row.canvas_id) << ',' << csv_field(row.layout_id) << ',' << row.element_count << ','
        << row.valid_count;
    for (const auto& v : row.values) out << ',' << optional_number(v);
    out << ',' << flags_of(row.diagnostics) << '\n';
  }
}

void write_report_json(std::ostream& out, const metrics::MetricReport& report, std::size_t skipped_records) {
  json metrics_json = json::object();
  for (Metric m : metrics::kAllMetrics) {
    if (!report.selection.has(m)) continue;
    const auto& s = report.summaries[static_cast<std::size_t>(m)];
    metrics_json[std::string(metrics::name(m))] = {
        {"value", optional_json(s.mean)}, {"evaluated", s.evaluated}, {"excluded", s.excluded}};
  }
  json j = {{"schema", kReportSchema},
            {"version", kReportVersion},
            {"layouts", report.layouts},
            {"skipped_records", skipped_records},
            {"metrics", std::move(metrics_json)},
            {"diagnostics", report.diagnostics}};
  out << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const metrics::MetricReport& report) {
  out << "metric,value,evaluated,excluded\n";
  for (Metric m : metrics::kAllMetrics) {
    if (!report.selection.has(m)) continue;
    const auto& s = report.summaries[static_cast<std::size_t>(m)];
    out << metrics::name(m) << ',' << optional_number(s.mean) << ',' << s.evaluated << ',' << s.excluded << '\n';
  }
}

void write_report_table(std::ostream& out, const metrics::MetricReport& report) {
  fmt::print(out, "{:<8} {:>10} {:>10} {:>10}\n", "metric", "value", "evaluated", "excluded");
  for (Metric m : metrics::kAllMetrics) {
    if (!report.selection.has(m)) continue;
    const auto& s = report.summaries[static_cast<std::size_t>(m)];
    const std::string value = s.mean ? fmt::format("{:.4f}", *s.mean) : "-";
    fmt::print(out, "{:<8} {:>10} {:>10} {:>10}\n", metrics::name(m), value, s.evaluated, s.excluded);
  }
  fmt::print(out, "layouts: {}\n", report.layouts);
  for (const auto& [key, count] : report.diagnostics) fmt::print(out, "  {}: {}\n", key, count);
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto input = load_input(config, err);
  if (!input) {
    fmt::print(err, "error: --strict: bad records, no report written\n");
    return kExitInput;
  }
  const RasterSource source(config);
  if (config.metrics.any_content() && !source.has_saliency() &&
      (config.metrics.has(Metric::Uti) || config.metrics.has(Metric::Occ))) {
    fmt::print(err, "note: no saliency directories; uti/occ are excluded\n");
  }
  if (config.metrics.has(Metric::Rea) && !source.has_canvas()) {
    fmt::print(err, "note: no canvas directory; rea is excluded\n");
  }

  const std::vector<Layout> layouts = input->layouts();
  std::vector<std::vector<std::string>> problems;
  auto rows = evaluate_variants(layouts, source, config.metrics, config.jobs, 1,
                                [](const Layout& l) { return std::vector<Layout>{l}; }, problems)[0];
  const bool had_problems = report_problems(problems, err);
  if (config.strict && had_problems) {
    fmt::print(err, "error: --strict: unreadable inputs, no report written\n");
    return kExitInput;
  }

  const metrics::MetricReport report = metrics::aggregate(rows, config.metrics);
  metrics::canonical_sort(rows);

  if (config.out) {
    ensure_dir(*config.out);
    {
      auto f = open_output(*config.out / "layouts.csv");
      write_layout_rows(f, rows);
    }
    {
      auto f = open_output(*config.out / "report.json");
      write_report_json(f, report, input->errors.size());
    }
    {
      auto f = open_output(*config.out / "report.csv");
      write_report_csv(f, report);
    }
  }
  switch (config.format) {
    case OutputFormat::Table:
      write_report_table(out, report);
      break;
    case OutputFormat::Json:
      write_report_json(out, report, input->errors.size());
      break;
    case OutputFormat::Csv:
      write_report_csv(out, report);
      break;
  }
  return kExitOk;
}

int cmd_dsf(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto input = load_input(config, err);
  if (!input) return kExitInput;
  if (config.length && *config.length < 1) throw InputError("--length must be at least 1");

  std::vector<io::SequenceRecord> records(input->records.size());
  parallel_for(records.size(), config.jobs, [&](std::size_t i) {
    const auto& rec = input->records[i];
    const std::uint64_t seed = config.strategy == dsf::Strategy::Random ? layout_seed(config.seed, rec.layout) : 0;
    dsf::DesignSequence seq = dsf::order(rec.layout, config.strategy, seed);
    if (config.length) seq = dsf::fit_length(seq, *config.length);
    records[i] = io::SequenceRecord{rec, std::move(seq)};
  });

  if (config.out) {
    auto f = open_output(*config.out);
    io::write_sequences(f, records);
  } else {
    io::write_sequences(out, records);
  }
  return kExitOk;
}

int cmd_ablation(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto input = load_input(config, err);
  if (!input) return kExitInput;
  const int fitted = config.length.value_or(8);
  if (fitted < 1) throw InputError("--length must be at least 1");
  const std::vector<Layout> layouts = input->layouts();
  const int full = std::max(1, io::dataset_stats(layouts).max_elements);
  const RasterSource source(config);

  const std::array<dsf::Strategy, 3> strategies = {dsf::Strategy::Random, dsf::Strategy::Geometric,
                                                   dsf::Strategy::Dsf};
  std::vector<std::vector<std::string>> problems;
  // Variant 2s is strategy s at the full length, 2s+1 at the fitted length.
  auto rows = evaluate_variants(
      layouts, source, config.metrics, config.jobs, strategies.size() * 2,
      [&](const Layout& layout) {
        std::vector<Layout> scored;
        for (dsf::Strategy s : strategies) {
          const std::uint64_t seed = s == dsf::Strategy::Random ? layout_seed(config.seed, layout) : 0;
          const dsf::DesignSequence seq = dsf::order(layout, s, seed);
          scored.push_back(dsf::to_layout(dsf::fit_length(seq, full), layout));
          scored.push_back(dsf::to_layout(dsf::fit_length(seq, fitted), layout));
        }
        return scored;
      },
      problems);
  if (report_problems(problems, err) && config.strict) return kExitInput;

  json table = json::array();
  std::ostringstream csv;
  csv << "strategy,full_length,fitted_length";
  for (Metric m : metrics::kAllMetrics) csv << ',' << metrics::name(m);
  for (Metric m : metrics::kAllMetrics) csv << ",diff_" << metrics::name(m);
  csv << ",ae\n";
  fmt::print(out, "full length {} vs fitted length {} ({} layouts)\n", full, fitted, layouts.size());
  fmt::print(out, "{:<10}", "strategy");
  for (Metric m : metrics::kAllMetrics) fmt::print(out, " {:>17}", metrics::name(m));
  fmt::print(out, " {:>8}\n", "ae");

  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const auto report_full = metrics::aggregate(rows[2 * s], config.metrics);
    const auto report_fit = metrics::aggregate(rows[2 * s + 1], config.metrics);
    const auto a = report_full.values();
    const auto b = report_fit.values();
    std::optional<double> ae;
    try {
      ae = metrics::compute_ae(a, b);
    } catch (const InputError&) {
    }
    const std::string name(dsf::to_string(strategies[s]));
    json entry = {{"strategy", name}, {"full_length", full}, {"fitted_length", fitted}, {"ae", optional_json(ae)}};
    csv << name << ',' << full << ',' << fitted;
    fmt::print(out, "{:<10}", name);
    for (Metric m : metrics::kAllMetrics) {
      const auto i = static_cast<std::size_t>(m);
      std::optional<double> diff;
      if (a[i] && b[i]) diff = *b[i] - *a[i];
      entry["metrics"][std::string(metrics::name(m))] = {
          {"full", optional_json(a[i])}, {"fitted", optional_json(b[i])}, {"diff", optional_json(diff)}};
      csv << ',' << optional_number(b[i]);
      const std::string cell = b[i] ? fmt::format("{:.4f} ({:+.4f})", *b[i], diff.value_or(0.0)) : "-";
      fmt::print(out, " {:>17}", cell);
    }
    for (Metric m : metrics::kAllMetrics) {
      const auto i = static_cast<std::size_t>(m);
      csv << ',' << (a[i] && b[i] ? format_number(*b[i] - *a[i]) : "");
    }
    csv << ',' << optional_number(ae) << '\n';
    fmt::print(out, " {:>8}\n", ae ? fmt::format("{:.4f}", *ae) : "-");
    table.push_back(std::move(entry));
  }

  if (config.out) {
    ensure_dir(*config.out);
    write_file(*config.out / "ablation.csv", csv.str());
    json doc = {{"schema", "layoutbench.ablation"}, {"version", kReportVersion}, {"strategies", std::move(table)}};
    write_file(*config.out / "ablation.json", doc.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto input = load_input(config, err);
  if (!input) return kExitInput;
  std::optional<std::vector<std::string>> canvases;
  if (config.canvas_dir) canvases = io::ImageIndex(*config.canvas_dir).stems();
  const io::DatasetStats stats = io::dataset_stats(input->layouts(), canvases);

  json histogram = json::object();
  for (const auto& [n, count] : stats.histogram) histogram[std::to_string(n)] = count;
  json classes = json::object();
  for (ElementClass c : {ElementClass::Text, ElementClass::Logo, ElementClass::Underlay}) {
    const auto it = stats.class_counts.find(c);
    classes[std::string(to_string(c))] = it == stats.class_counts.end() ? 0 : it->second;
  }
  const json doc = {{"schema", "layoutbench.stats"},
                    {"version", kReportVersion},
                    {"n_pairs", stats.n_pairs},
                    {"n_canvases", stats.n_canvases},
                    {"max_elements", stats.max_elements},
                    {"complex_layouts", stats.complex_layouts},
                    {"complex_threshold", io::kComplexLayoutThreshold},
                    {"class_counts", classes},
                    {"histogram", histogram},
                    {"skipped_records", input->errors.size()}};
  if (config.out) write_file(*config.out, doc.dump(2) + "\n");

  if (config.format == OutputFormat::Json) {
    out << doc.dump(2) << '\n';
  } else if (config.format == OutputFormat::Csv) {
    out << "elements,layouts\n";
    for (const auto& [n, count] : stats.histogram) out << n << ',' << count << '\n';
  } else {
    fmt::print(out, "poster-layout pairs: {}\ncanvases: {}\nmax elements: {}\nlayouts with more than {} elements: {}\n",
               stats.n_pairs, stats.n_canvases, stats.max_elements, io::kComplexLayoutThreshold,
               stats.complex_layouts);
    fmt::print(out, "class counts: text {} logo {} underlay {}\n", classes["text"].get<std::size_t>(),
               classes["logo"].get<std::size_t>(), classes["underlay"].get<std::size_t>());
    fmt::print(out, "elements per layout:\n");
    for (const auto& [n, count] : stats.histogram) fmt::print(out, "  {:>3}: {}\n", n, count);
  }
  return kExitOk;
}

int cmd_render(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto input = load_input(config, err);
  if (!input) return kExitInput;
  const std::optional<fs::path> dest = config.image_dir ? config.image_dir : config.out;
  if (!dest) throw InputError("render needs --image-dir (or --out)");
  ensure_dir(*dest);
  std::optional<io::ImageIndex> canvases;
  if (config.canvas_dir) canvases.emplace(*config.canvas_dir);

  const auto& records = input->records;
  std::vector<std::string> warnings(records.size());
  std::vector<fs::path> written(records.size());
  parallel_for(records.size(), config.jobs, [&](std::size_t i) {
    const Layout& layout = records[i].layout;
    std::optional<render::RgbImage> background;
    if (canvases) {
      if (const auto path = canvases->find(layout.canvas_id)) {
        try {
          background = render::load_rgb(*path);
          if (background->width != layout.canvas_w || background->height != layout.canvas_h) {
            warnings[i] = fmt::format("{}: canvas image is {}x{}, layout canvas is {}x{}; using a blank field",
                                      layout.canvas_id, background->width, background->height, layout.canvas_w,
                                      layout.canvas_h);
            background.reset();
          }
        } catch (const InputError& e) {
          warnings[i] = fmt::format("{}: {}; using a blank field", layout.canvas_id, e.what());
        }
      } else {
        warnings[i] = fmt::format("{}: no canvas image; using a blank field", layout.canvas_id);
      }
    }
    const render::RgbImage image = render::render_wireframe(layout, background ? &*background : nullptr);
    std::string name = layout.canvas_id;
    if (!layout.layout_id.empty()) name += "_" + layout.layout_id;
    written[i] = *dest / (name + ".png");
    render::save_png(written[i], image);
  });
  for (const auto& w : warnings) {
    if (!w.empty()) fmt::print(err, "warning: {}\n", w);
  }
  fmt::print(out, "rendered {} layout(s) into {}\n", records.size(), dest->string());
  return kExitOk;
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  gen::GenSpec spec = config.gen_spec ? gen::load_gen_spec(*config.gen_spec) : gen::GenSpec{};
  spec.seed ^= config.seed;
  if (config.count < 0) throw InputError("--count must be non-negative");

  std::vector<io::AnnotationRecord> records;
  if (config.generator == "random") {
    records.resize(static_cast<std::size_t>(config.count));
    parallel_for(records.size(), config.jobs, [&](std::size_t i) {
      gen::GenSpec s = spec;
      s.seed = splitmix64(spec.seed + i);
      records[i].layout = gen::random_layout(s, fmt::format("gen{:05}", i));
    });
  } else if (config.generator == "grid") {
    if (config.saliency_dirs.empty()) throw InputError("the grid generator needs --saliency-dirs");
    RunConfig sal_config;
    sal_config.saliency_dirs = config.saliency_dirs;
    const RasterSource source(sal_config);
    const io::ImageIndex first_dir(config.saliency_dirs.front());
    const auto stems = first_dir.stems();
    const std::size_t n = std::min<std::size_t>(stems.size(), static_cast<std::size_t>(config.count));
    records.resize(n);
    std::vector<std::vector<std::string>> problems(n);
    parallel_for(n, config.jobs, [&](std::size_t i) {
      const Raster first = io::load_raster(*first_dir.find(stems[i]));
      Layout probe;
      probe.canvas_id = stems[i];
      probe.canvas_w = first.width();
      probe.canvas_h = first.height();
      const auto saliency = source.saliency(probe, problems[i]);
      if (!saliency) return;
      gen::GenSpec s = spec;
      s.canvas_w = probe.canvas_w;
      s.canvas_h = probe.canvas_h;
      s.seed = splitmix64(spec.seed + i);
      records[i].layout = gen::saliency_grid_layout(*saliency, s, stems[i]);
    });
    if (report_problems(problems, err) && config.strict) return kExitInput;
    std::erase_if(records, [](const io::AnnotationRecord& r) { return r.layout.canvas_id.empty(); });
  } else {
    throw InputError(fmt::format("unknown generator '{}' (random | grid)", config.generator));
  }

  if (config.out) {
    io::save_annotations(*config.out, records);
  } else {
    io::write_native(out, records);
  }
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "eval") return cmd_eval(config, out, err);
    if (config.command == "dsf") return cmd_dsf(config, out, err);
    if (config.command == "ablation") return cmd_ablation(config, out, err);
    if (config.command == "stats") return cmd_stats(config, out, err);
    if (config.command == "render") return cmd_render(config, out, err);
    if (config.command == "generate") return cmd_generate(config, out, err);
    fmt::print(err, "error: unknown command '{}'\n", config.command);
    return kExitUsage;
  } catch (const InputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    fmt::print(err, "internal error: {}\n", e.what());
    return kExitInternal;
  }
}

}  // namespace layoutbench::cli
