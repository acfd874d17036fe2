#include "cli.hpp"

#include <fstream>
#include <future>
#include <optional>

#include <CLI11.hpp>

#include "dcov/design.hpp"
#include "dcov/error.hpp"
#include "dcov/report.hpp"
#include "dcov/trace.hpp"

namespace dcov::cli {

namespace {

struct Config {
  std::string design_path;
  std::vector<std::string> trace_paths;
  std::vector<std::string> report_paths;
  std::string report_path;
  std::string diagram;
  std::string format;
  std::string out_path;
  bool strict = false;
  bool allow_midrun = false;
  bool ignore_initial_config = false;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

DesignModel load_design(const std::string& path) { return read_design_file(path); }

AnalysisOptions analysis_options(const Config& cfg) {
  AnalysisOptions options;
  if (!cfg.diagram.empty()) {
    options.diagram = cfg.diagram;
  }
  options.statechart.allow_midrun = cfg.allow_midrun;
  options.structure.ignore_initial_config = cfg.ignore_initial_config;
  return options;
}

// Traces are parsed and matched concurrently; the merge runs in argument
// order so the result equals a sequential run.
CoverageReport analyze_traces(const DesignModel& model, const Config& cfg) {
  AnalysisOptions options = analysis_options(cfg);
  if (options.diagram && !model.kind_of(*options.diagram)) {
    throw UsageError("unknown diagram '" + *options.diagram + "'");
  }
  std::vector<std::future<CoverageReport>> jobs;
  jobs.reserve(cfg.trace_paths.size());
  for (const auto& path : cfg.trace_paths) {
    jobs.push_back(std::async(std::launch::async, [&model, &options, path] {
      return analyze(model, read_trace_file(path), options);
    }));
  }
  std::optional<CoverageReport> merged;
  std::exception_ptr failure;
  for (auto& job : jobs) {
    try {
      CoverageReport r = job.get();
      merged = merged ? merge(*merged, r) : std::move(r);
    } catch (...) {
      if (!failure) {
        failure = std::current_exception();
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return *merged;
}

std::string render(const CoverageReport& report, const DesignModel* model, const Config& cfg, bool color) {
  if (cfg.format == "tsv") {
    return serialize_report(report);
  }
  if (cfg.format == "dot") {
    if (cfg.diagram.empty()) {
      throw UsageError("--format dot requires --diagram");
    }
    if (!model) {
      throw UsageError("--format dot requires --design");
    }
    return render_dot(*model, report, cfg.diagram);
  }
  return render_text(report, TextStyle{color});
}

void emit(const std::string& text, const Config& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw UsageError("cannot write '" + cfg.out_path + "'");
  }
  file << text;
  if (!file.flush()) {
    throw UsageError("cannot write '" + cfg.out_path + "'");
  }
}

int finish(const CoverageReport& report, const Config& cfg) {
  return cfg.strict && !report.clean() ? kNotClean : kOk;
}

int cmd_validate(const Config& cfg, std::ostream& out) {
  std::ifstream in(cfg.design_path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open design file '" + cfg.design_path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  DesignModel model;
  try {
    model = parse_design_syntax(text);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), cfg.design_path + ": " + e.reason());
  }
  auto diagnostics = validate_design(model);
  for (const auto& d : diagnostics) {
    out << cfg.design_path << ": " << d.message() << '\n';
  }
  if (diagnostics.empty()) {
    out << cfg.design_path << ": ok (" << model.diagram_names().size() << " diagrams)\n";
  }
  return diagnostics.empty() ? kOk : kNotClean;
}

int cmd_analyze(const Config& cfg, std::ostream& out, bool color) {
  DesignModel model = load_design(cfg.design_path);
  CoverageReport report = analyze_traces(model, cfg);
  emit(render(report, &model, cfg, color && cfg.out_path.empty()), cfg, out);
  return finish(report, cfg);
}

int cmd_merge(const Config& cfg, std::ostream& out, bool color) {
  std::optional<CoverageReport> merged;
  for (const auto& path : cfg.report_paths) {
    CoverageReport r = read_report_file(path);
    merged = merged ? merge(*merged, r) : std::move(r);
  }
  std::optional<DesignModel> model;
  if (!cfg.design_path.empty()) {
    model = load_design(cfg.design_path);
  }
  emit(render(*merged, model ? &*model : nullptr, cfg, color && cfg.out_path.empty()), cfg, out);
  return finish(*merged, cfg);
}

int cmd_render(const Config& cfg, std::ostream& out, bool color) {
  DesignModel model = load_design(cfg.design_path);
  CoverageReport report;
  if (!cfg.report_path.empty()) {
    if (!cfg.trace_paths.empty()) {
      throw UsageError("render takes either --report or --trace, not both");
    }
    report = read_report_file(cfg.report_path);
    if (report.digest != design_digest(model)) {
      throw UsageError("report '" + cfg.report_path + "' was produced from a different design");
    }
  } else if (!cfg.trace_paths.empty()) {
    report = analyze_traces(model, cfg);
  } else {
    throw UsageError("render requires --report or --trace");
  }
  emit(render(report, &model, cfg, color && cfg.out_path.empty()), cfg, out);
  return finish(report, cfg);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Environment env) {
  CLI::App app{"Design coverage analyzer: matches execution traces against design models."};
  app.name("designcov");
  app.require_subcommand(1);
  Config cfg;

  auto* validate = app.add_subcommand("validate", "Check a design file and print its diagnostics");
  validate->add_option("design", cfg.design_path, "Design file")->required();

  auto add_matching_flags = [&](CLI::App* cmd) {
    cmd->add_option("--diagram", cfg.diagram, "Restrict matching and rendering to one diagram");
    cmd->add_flag("--strict", cfg.strict, "Exit 1 when a mismatch or violation is present");
    cmd->add_flag("--allow-midrun", cfg.allow_midrun, "Let statechart traces start in any state");
    cmd->add_flag("--ignore-initial-config", cfg.ignore_initial_config,
                  "Do not count the empty configuration of newly created objects");
    cmd->add_option("--out", cfg.out_path, "Write output to a file instead of stdout");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Match traces against a design and report coverage");
  analyze_cmd->add_option("--design", cfg.design_path, "Design file")->required();
  analyze_cmd->add_option("--trace", cfg.trace_paths, "Trace file (repeatable)")->required();
  // Each subcommand has its own default format.
  std::string analyze_format = "text", merge_format = "tsv", render_format = "dot";
  analyze_cmd->add_option("--format", analyze_format, "Output format")
      ->check(CLI::IsMember({"text", "tsv", "dot"}))
      ->capture_default_str();
  add_matching_flags(analyze_cmd);

  auto* merge_cmd = app.add_subcommand("merge", "Union of report files (written with --format tsv)");
  merge_cmd->add_option("reports", cfg.report_paths, "Report files")->required();
  merge_cmd->add_option("--format", merge_format, "Output format")
      ->check(CLI::IsMember({"text", "tsv", "dot"}))
      ->capture_default_str();
  merge_cmd->add_option("--design", cfg.design_path, "Design file (needed for dot)");
  merge_cmd->add_option("--diagram", cfg.diagram, "Diagram to render (dot)");
  merge_cmd->add_flag("--strict", cfg.strict, "Exit 1 when a mismatch or violation is present");
  merge_cmd->add_option("--out", cfg.out_path, "Write output to a file instead of stdout");

  auto* render_cmd = app.add_subcommand("render", "Render a report or a fresh analysis");
  render_cmd->add_option("--design", cfg.design_path, "Design file")->required();
  render_cmd->add_option("--report", cfg.report_path, "Report file");
  render_cmd->add_option("--trace", cfg.trace_paths, "Trace file (repeatable)");
  render_cmd->add_option("--format", render_format, "Output format")
      ->check(CLI::IsMember({"text", "tsv", "dot"}))
      ->capture_default_str();
  add_matching_flags(render_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kError;
  }

  cfg.format = *analyze_cmd ? analyze_format : *merge_cmd ? merge_format : render_format;

  try {
    if (*validate) return cmd_validate(cfg, out);
    if (*analyze_cmd) return cmd_analyze(cfg, out, env.color);
    if (*merge_cmd) return cmd_merge(cfg, out, env.color);
    if (*render_cmd) return cmd_render(cfg, out, env.color);
  } catch (const std::exception& e) {
    err << "designcov: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

} // namespace dcov::cli
