#include "parlmine/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "parlmine/cleaning.hpp"
#include "parlmine/config.hpp"
#include "parlmine/csv.hpp"
#include "parlmine/deviance.hpp"
#include "parlmine/enrich.hpp"
#include "parlmine/error.hpp"
#include "parlmine/eventlog.hpp"
#include "parlmine/ingest.hpp"
#include "parlmine/io.hpp"
#include "parlmine/metrics.hpp"
#include "parlmine/stats.hpp"
#include "parlmine/viz.hpp"
#include "parlmine/xes.hpp"

namespace parlmine::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  config::RunConfig config;
  fs::path output_dir;

  std::ostream& diag() { return err_; }

  // Writes to the target file (atomically) or to the result stream.
  void emit(const std::string& target, std::string_view content) {
    if (target.empty()) {
      out_ << content;
      out_.flush();
      return;
    }
    io::write_file_atomic(resolve(target), content);
  }

  fs::path resolve(const std::string& target) const {
    fs::path p{target};
    if (p.is_relative() && !output_dir.empty()) p = output_dir / p;
    if (p.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(p.parent_path(), ec);
      if (ec) throw Error(Errc::SinkFailure, "cannot create directory " + p.parent_path().string());
    }
    return p;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

std::string xes_text(const EventLog& log) {
  std::ostringstream buffer;
  xes::write_xes(log, buffer);
  return buffer.str();
}

std::string label_of(const EventLog& log, const std::string& path) {
  return log.name.empty() ? fs::path(path).stem().string() : log.name;
}

const config::Profile& require_profile(const Session& s, const std::string& name) {
  const auto* p = s.config.find_profile(name);
  if (!p) throw UsageError("unknown profile '" + name + "'");
  return *p;
}

std::vector<double> cycle_times(const EventLog& log) {
  std::vector<double> out;
  out.reserve(log.traces.size());
  for (const auto& t : log.traces) out.push_back(static_cast<double>(cleaning::cycle_time_days(t)));
  return out;
}

metrics::YearlySeries metric_series(const EventLog& log, const std::string& metric) {
  if (metric == "freq") return metrics::yearly_frequencies(log);
  return metrics::yearly_mean_cycle_times(log);
}

// ---- convert ----------------------------------------------------------

struct ConvertArgs {
  std::string profile;
  std::vector<std::string> inputs;
  std::vector<std::string> formats;
  std::string out;
  std::string warnings;
};

void run_convert(Session& s, const ConvertArgs& a) {
  const auto* profile = s.config.find_profile(a.profile);
  std::vector<fs::path> inputs(a.inputs.begin(), a.inputs.end());
  if (inputs.empty() && profile) inputs = profile->inputs;
  if (inputs.empty()) throw UsageError("no input files for '" + a.profile + "'; give --input or a profile in --config");
  std::vector<std::string> formats = a.formats;
  if (formats.empty() && profile) formats = profile->date_formats;
  if (formats.empty()) formats = default_date_formats();

  std::vector<EventLog> logs;
  std::string warning_csv = csv::format_row({"source", "kind", "process_index", "document_index", "process_id", "detail"});
  std::vector<ingest::IngestWarning> all_warnings;
  for (const auto& input : inputs) {
    const auto raw = ingest::parse_export_file(input, input.stem().string());
    const auto warnings = ingest::scan_export(raw);
    for (const auto& w : warnings) {
      warning_csv += csv::format_row({input.string(), std::string(ingest::warning_kind_name(w.kind)),
                                      std::to_string(w.process_index),
                                      w.document_index ? std::to_string(*w.document_index) : "", w.process_id,
                                      w.detail});
    }
    for (auto kind : {ingest::WarningKind::MissingDate, ingest::WarningKind::MissingActivity,
                      ingest::WarningKind::EmptyProcess, ingest::WarningKind::SkippedElement}) {
      const auto n = ingest::count_warnings(warnings, kind);
      if (n == 0) continue;
      s.diag() << fmt::format("{}: {} {} warning(s) in {} process(es)\n", input.string(), n,
                              ingest::warning_kind_name(kind), ingest::count_flagged_processes(warnings, kind));
    }
    logs.push_back(build_log(raw, formats));
  }
  EventLog log;
  if (logs.size() == 1) {
    log = std::move(logs.front());
    log.name = a.profile;
  } else {
    log = merge_logs(logs, a.profile);
  }
  s.diag() << fmt::format("convert: {} traces, {} events\n", log.traces.size(), log.event_count());
  if (!a.warnings.empty()) s.emit(a.warnings, warning_csv);
  s.emit(a.out, xes_text(log));
}

// ---- clean ------------------------------------------------------------

struct CleanArgs {
  std::string log;
  std::string out;
  std::string report;
  std::string report_json;
  int min_year = 0;
  int max_year = 0;
  long max_cycle_days = 0;
  CLI::Option* min_year_opt = nullptr;
  CLI::Option* max_year_opt = nullptr;
  CLI::Option* cap_opt = nullptr;
};

void run_clean(Session& s, const CleanArgs& a) {
  auto policy = s.config.cleaning;
  if (a.min_year_opt->count()) policy.min_year = a.min_year;
  if (a.max_year_opt->count()) policy.max_year = a.max_year;
  if (a.cap_opt->count()) policy.max_cycle_days = a.max_cycle_days;
  const auto result = cleaning::clean(xes::read_xes_file(a.log), policy);
  const auto& r = result.report;
  s.diag() << fmt::format("clean: {} of {} traces remain ({} removed)\n", r.remaining, r.original, r.removed_total);
  if (!a.report.empty()) s.emit(a.report, cleaning::report_to_csv(r));
  if (!a.report_json.empty()) s.emit(a.report_json, cleaning::report_to_json(r));
  s.emit(a.out, xes_text(result.log));
}

// ---- filter -----------------------------------------------------------

struct FilterArgs {
  std::string log;
  std::string out;
  std::string attribute;
  std::string value;
  int from = 0;
  int to = 0;
  CLI::Option* from_opt = nullptr;
  CLI::Option* to_opt = nullptr;
  std::vector<std::string> relabel;
  std::string profile;
  bool study = false;
};

void run_filter(Session& s, const FilterArgs& a) {
  EventLog log = xes::read_xes_file(a.log);
  std::string attribute = a.attribute;
  std::string value = a.value;
  if (a.study && attribute.empty()) {
    attribute = s.config.filter_attribute;
    value = s.config.filter_value;
  }
  if (attribute.empty() != value.empty()) throw UsageError("--attribute and --value go together");
  if (!attribute.empty()) log = filter_by_case_attribute(log, attribute, value);

  const bool windowed = a.study || a.from_opt->count() || a.to_opt->count();
  if (windowed) {
    const int first = a.from_opt->count() ? a.from : s.config.window_first_year;
    const int last = a.to_opt->count() ? a.to : s.config.window_last_year;
    log = filter_by_time_window(log, first, last);
  }

  std::vector<RelabelRule> rules;
  if (!a.profile.empty()) rules = require_profile(s, a.profile).relabel_rules;
  for (const auto& text : a.relabel) rules.push_back(parse_relabel_rule(text));
  if (!rules.empty()) log = relabel_readings(log, rules);

  s.diag() << fmt::format("filter: {} traces, {} events\n", log.traces.size(), log.event_count());
  s.emit(a.out, xes_text(log));
}

// ---- summarize --------------------------------------------------------

struct SummarizeArgs {
  std::string log;
  std::string out;
  bool json = false;
  std::string yearly;
};

void run_summarize(Session& s, const SummarizeArgs& a) {
  const EventLog log = xes::read_xes_file(a.log);
  if (!a.yearly.empty()) {
    const auto series = metric_series(log, a.yearly);
    s.emit(a.out, a.json ? metrics::series_to_json(series) : metrics::series_to_csv(series));
    return;
  }
  const auto summary = metrics::summarize(log);
  s.emit(a.out, a.json ? metrics::summary_to_json(summary) : metrics::summary_to_csv(summary));
}

// ---- correlate --------------------------------------------------------

struct CorrelateArgs {
  std::string log;
  std::string sidecar;
  std::string metric = "freq";
  std::string feature = "squire_index";
  std::string out;
};

void run_correlate(Session& s, const CorrelateArgs& a) {
  const EventLog log = xes::read_xes_file(a.log);
  const auto table = enrich::load_sidecar_csv(a.sidecar);
  if (table.key != "year") throw Error(Errc::BadConfig, a.sidecar + ": first column must be 'year'");
  metrics::YearlySeries reference{a.feature, {}};
  for (const auto& [key, values] : table.rows) {
    auto it = values.find(a.feature);
    if (it == values.end()) continue;
    const double* v = std::get_if<double>(&it->second);
    if (!v) throw Error(Errc::BadConfig, a.sidecar + ": column '" + a.feature + "' is not numeric");
    int year = 0;
    try {
      year = std::stoi(key);
    } catch (const std::exception&) {
      throw Error(Errc::BadConfig, a.sidecar + ": bad year '" + key + "'");
    }
    reference.points[year] = *v;
  }
  const auto series = metric_series(log, a.metric);
  const auto result = stats::correlate_series(series, reference);

  int first = 0;
  int last = 0;
  bool any = false;
  for (const auto& [year, v] : series.points) {
    if (!reference.points.contains(year)) continue;
    if (!any) first = year;
    last = year;
    any = true;
  }
  std::string text = csv::format_row({"metric", "log", "feature", "time_span", "n", "p_value", "pearson_r", "significant"});
  text += csv::format_row({a.metric == "freq" ? "frequencies" : "cycle_time", label_of(log, a.log), a.feature,
                           fmt::format("{}-{}", first, last), std::to_string(result.n),
                           fmt::format("{:.6f}", result.p_value), fmt::format("{:.6f}", result.r),
                           result.significant ? "True" : "False"});
  s.emit(a.out, text);
}

// ---- compare ----------------------------------------------------------

struct CompareArgs {
  std::string log_a;
  std::string log_b;
  std::string out;
};

void run_compare(Session& s, const CompareArgs& a) {
  const EventLog la = xes::read_xes_file(a.log_a);
  const EventLog lb = xes::read_xes_file(a.log_b);
  const auto ca = cycle_times(la);
  const auto cb = cycle_times(lb);
  const auto result = stats::mann_whitney_u(ca, cb);
  nlohmann::ordered_json j;
  j["metric"] = "cycle_time_days";
  j["a"] = label_of(la, a.log_a);
  j["b"] = label_of(lb, a.log_b);
  j["u_statistic"] = result.u_statistic;
  j["p_value"] = result.p_value;
  j["n1"] = result.n1;
  j["n2"] = result.n2;
  j["method"] = result.method == stats::PValueMethod::Exact ? "exact" : "normal";
  j["significant"] = result.p_value < stats::kSignificanceLevel;
  s.emit(a.out, j.dump(2) + "\n");
}

// ---- chart ------------------------------------------------------------

struct DottedArgs {
  std::string log;
  std::string out;
  long window_days = viz::DottedChartSpec{}.window_days;
  int width = viz::DottedChartSpec{}.width_px;
  int height = viz::DottedChartSpec{}.height_px;
  std::string title;
};

void run_dotted(Session& s, const DottedArgs& a) {
  const EventLog log = xes::read_xes_file(a.log);
  viz::DottedChartSpec spec;
  spec.window_days = a.window_days;
  spec.width_px = a.width;
  spec.height_px = a.height;
  spec.title = a.title;
  s.emit(a.out, viz::render_dotted_chart(log, spec));
}

struct LinesArgs {
  std::vector<std::string> logs;
  std::string metric = "cycle";
  std::string out;
  int width = viz::LineChartSpec{}.width_px;
  int height = viz::LineChartSpec{}.height_px;
  std::string title;
};

void run_lines(Session& s, const LinesArgs& a) {
  viz::LineChartSpec spec;
  spec.width_px = a.width;
  spec.height_px = a.height;
  spec.title = a.title;
  spec.y_label = a.metric == "freq" ? "cases" : "mean cycle time (days)";
  for (const auto& path : a.logs) {
    const EventLog log = xes::read_xes_file(path);
    spec.series.emplace_back(label_of(log, path), metric_series(log, a.metric));
  }
  s.emit(a.out, viz::render_yearly_lines(spec));
}

// ---- features ---------------------------------------------------------

struct FeaturesArgs {
  std::string log;
  std::string out;
  std::string profile;
  std::vector<std::string> sidecars;
  std::vector<std::string> passed;
  double threshold = 0.0;
  CLI::Option* threshold_opt = nullptr;
  std::vector<std::string> reference;
  double factor = 0.0;
  CLI::Option* factor_opt = nullptr;
};

void run_features(Session& s, const FeaturesArgs& a) {
  const EventLog log = xes::read_xes_file(a.log);
  std::vector<fs::path> sidecar_paths = s.config.sidecars;
  std::set<std::string> passed(a.passed.begin(), a.passed.end());
  if (!a.profile.empty()) {
    const auto& p = require_profile(s, a.profile);
    sidecar_paths.insert(sidecar_paths.end(), p.sidecars.begin(), p.sidecars.end());
    passed.insert(p.passed_activities.begin(), p.passed_activities.end());
  }
  sidecar_paths.insert(sidecar_paths.end(), a.sidecars.begin(), a.sidecars.end());
  std::vector<enrich::SidecarTable> sidecars;
  for (const auto& p : sidecar_paths) sidecars.push_back(enrich::load_sidecar_csv(p));

  auto table = enrich::extract_features(log, sidecars, passed);

  if (a.threshold_opt->count() && !a.reference.empty()) throw UsageError("--threshold and --reference exclude each other");
  std::optional<double> threshold;
  if (a.threshold_opt->count()) {
    threshold = a.threshold;
  } else if (!a.reference.empty()) {
    // The fastest reference parliament (smallest mean cycle time) sets the bar.
    std::optional<metrics::LogSummary> fastest;
    for (const auto& path : a.reference) {
      const auto summary = metrics::summarize(xes::read_xes_file(path));
      if (!fastest || summary.mean_cycle_days < fastest->mean_cycle_days) fastest = summary;
    }
    const double factor = a.factor_opt->count() ? a.factor : s.config.delay_factor;
    threshold = enrich::compute_delay_threshold(*fastest, factor);
  }
  if (threshold) {
    table = enrich::label_delayed(std::move(table), log, *threshold);
    s.diag() << fmt::format("features: threshold {:.2f} days, {} of {} cases delayed\n", *threshold,
                            enrich::count_delayed(table), table.rows.size());
  }
  s.emit(a.out, enrich::to_csv(table));
}

// ---- induce -----------------------------------------------------------

struct InduceArgs {
  std::string table;
  std::string out;
  std::vector<std::string> hide;
  std::vector<std::string> presets;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  double test_fraction = 0.0;
  CLI::Option* fraction_opt = nullptr;
  std::size_t max_conditions = 0;
  CLI::Option* conditions_opt = nullptr;
  std::size_t beam_width = 0;
  CLI::Option* beam_opt = nullptr;
  std::size_t top = 5;
};

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

void run_induce(Session& s, const InduceArgs& a) {
  auto cfg = s.config.induction;
  if (a.seed_opt->count()) cfg.seed = a.seed;
  if (a.fraction_opt->count()) cfg.test_fraction = a.test_fraction;
  if (a.conditions_opt->count()) cfg.max_conditions = a.max_conditions;
  if (a.beam_opt->count()) cfg.beam_width = a.beam_width;
  cfg.hidden_patterns.insert(cfg.hidden_patterns.end(), a.hide.begin(), a.hide.end());
  for (const auto& preset : a.presets) {
    const auto patterns = preset == "time" ? deviance::hide_time_related() : deviance::hide_gesetz();
    cfg.hidden_patterns.insert(cfg.hidden_patterns.end(), patterns.begin(), patterns.end());
  }
  const auto table = enrich::load_feature_csv(a.table);
  const auto split = deviance::split_train_test(table, cfg);
  const auto rules = deviance::induce_rules(split.train, cfg);
  std::string text = csv::format_row(
      {"rank", "rule", "train_f1", "train_precision", "train_recall", "test_precision", "test_recall"});
  const std::size_t n = std::min(a.top, rules.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rules[i];
    const auto test = deviance::evaluate_rule(r.rule, split.test);
    text += csv::format_row({std::to_string(i + 1), r.rule.to_string(), fixed3(r.train.f1()), fixed3(r.train.precision),
                             fixed3(r.train.recall), fixed3(test.precision), fixed3(test.recall)});
  }
  s.diag() << fmt::format("induce: {} train rows, {} test rows, {} candidate rules\n", split.train.rows.size(),
                          split.test.rows.size(), rules.size());
  s.emit(a.out, text);
}

// ---- eval-rules -------------------------------------------------------

struct EvalArgs {
  std::string rules;
  std::string table;
  std::string out;
  bool simplify = false;
};

void run_eval(Session& s, const EvalArgs& a) {
  const auto rules = deviance::parse_rule_file(io::read_file(a.rules));
  const auto table = enrich::load_feature_csv(a.table);
  std::vector<std::pair<deviance::Rule, deviance::RuleEvaluation>> rows;
  for (const auto& rule : rules) {
    rows.emplace_back(rule, deviance::evaluate_rule(rule, table));
    if (!a.simplify) continue;
    for (std::size_t i = 0; rule.conditions.size() > 1 && i < rule.conditions.size(); ++i) {
      auto simpler = deviance::simplify_rule(rule, i);
      auto eval = deviance::evaluate_rule(simpler, table);
      rows.emplace_back(std::move(simpler), eval);
    }
  }
  s.emit(a.out, deviance::evaluations_to_csv(rows));
}

}  // namespace

int run(std::span<const std::string> argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process mining of parliamentary document exports", argv.empty() ? "parlmine" : argv[0]};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  std::string output_dir;
  app.add_option("--config", config_path, "INI run configuration");
  app.add_option("--output", output_dir, "directory for relative output paths");

  auto* convert = app.add_subcommand("convert", "Parse a profile's XML exports into one XES log");
  ConvertArgs cv;
  convert->add_option("profile", cv.profile, "profile name (also the log name)")->required();
  convert->add_option("--input", cv.inputs, "XML export (overrides the profile's inputs)");
  convert->add_option("--date-format", cv.formats, "date pattern such as dd.MM.yyyy");
  convert->add_option("-o,--out", cv.out, "XES output file (default: stdout)");
  convert->add_option("--warnings", cv.warnings, "scan warnings as CSV");

  auto* clean = app.add_subcommand("clean", "Apply the cleaning rules and write the filter report");
  CleanArgs cl;
  clean->add_option("log", cl.log, "XES input")->required();
  clean->add_option("-o,--out", cl.out, "cleaned XES (default: stdout)");
  clean->add_option("--report", cl.report, "filter report CSV");
  clean->add_option("--report-json", cl.report_json, "filter report JSON");
  cl.min_year_opt = clean->add_option("--min-year", cl.min_year);
  cl.max_year_opt = clean->add_option("--max-year", cl.max_year);
  cl.cap_opt = clean->add_option("--max-cycle-days", cl.max_cycle_days);

  auto* filter = app.add_subcommand("filter", "Filter by case attribute and start-year window, relabel readings");
  FilterArgs fl;
  filter->add_option("log", fl.log, "XES input")->required();
  filter->add_option("-o,--out", fl.out, "XES output (default: stdout)");
  filter->add_option("--attribute", fl.attribute, "case attribute key");
  filter->add_option("--value", fl.value, "required attribute value");
  fl.from_opt = filter->add_option("--from", fl.from, "first start year");
  fl.to_opt = filter->add_option("--to", fl.to, "last start year");
  filter->add_option("--relabel", fl.relabel, "rule '<regex> [| attr ~ regex] => label'");
  filter->add_option("--profile", fl.profile, "use the profile's relabel rules");
  filter->add_flag("--study", fl.study, "configured legislation filter and analysis window");

  auto* summarize = app.add_subcommand("summarize", "Log summary statistics");
  SummarizeArgs sm;
  summarize->add_option("log", sm.log, "XES input")->required();
  summarize->add_option("-o,--out", sm.out);
  summarize->add_flag("--json", sm.json);
  summarize->add_option("--yearly", sm.yearly, "per-year series instead")->check(CLI::IsMember({"freq", "cycle"}));

  auto* correlate = app.add_subcommand("correlate", "Correlate a yearly process metric with a year feature");
  CorrelateArgs co;
  correlate->add_option("log", co.log, "XES input")->required();
  correlate->add_option("year_features", co.sidecar, "CSV keyed by year")->required();
  correlate->add_option("--metric", co.metric)->check(CLI::IsMember({"freq", "cycle"}));
  correlate->add_option("--feature", co.feature, "sidecar column");
  correlate->add_option("-o,--out", co.out);

  auto* compare = app.add_subcommand("compare", "Mann-Whitney U test on the cycle times of two logs");
  CompareArgs cp;
  compare->add_option("log_a", cp.log_a)->required();
  compare->add_option("log_b", cp.log_b)->required();
  compare->add_option("-o,--out", cp.out);

  auto* chart = app.add_subcommand("chart", "SVG charts");
  chart->require_subcommand(1);
  auto* dotted = chart->add_subcommand("dotted", "Dotted chart in relative time");
  DottedArgs dt;
  dotted->add_option("log", dt.log)->required();
  dotted->add_option("-o,--out", dt.out);
  dotted->add_option("--window-days", dt.window_days)->check(CLI::PositiveNumber);
  dotted->add_option("--width", dt.width)->check(CLI::PositiveNumber);
  dotted->add_option("--height", dt.height)->check(CLI::PositiveNumber);
  dotted->add_option("--title", dt.title);
  auto* lines = chart->add_subcommand("lines", "Yearly metric per log");
  LinesArgs ln;
  lines->add_option("logs", ln.logs)->required();
  lines->add_option("--metric", ln.metric)->check(CLI::IsMember({"freq", "cycle"}));
  lines->add_option("-o,--out", ln.out);
  lines->add_option("--width", ln.width)->check(CLI::PositiveNumber);
  lines->add_option("--height", ln.height)->check(CLI::PositiveNumber);
  lines->add_option("--title", ln.title);

  auto* features = app.add_subcommand("features", "Per-trace feature table, optionally delay-labeled");
  FeaturesArgs ft;
  features->add_option("log", ft.log)->required();
  features->add_option("-o,--out", ft.out);
  features->add_option("--profile", ft.profile, "use the profile's sidecars and passed activities");
  features->add_option("--sidecar", ft.sidecars, "sidecar CSV keyed by year or case_id");
  features->add_option("--passed-activity", ft.passed, "activity marking a passed bill");
  ft.threshold_opt = features->add_option("--threshold", ft.threshold, "delay threshold in days");
  features->add_option("--reference", ft.reference, "logs whose fastest mean cycle time sets the threshold");
  ft.factor_opt = features->add_option("--delay-factor", ft.factor)->check(CLI::PositiveNumber);

  auto* induce = app.add_subcommand("induce", "Induce rules explaining delayed cases");
  InduceArgs in;
  induce->add_option("features", in.table, "labeled feature CSV")->required();
  induce->add_option("-o,--out", in.out);
  induce->add_option("--hide", in.hide, "hide features containing this text");
  induce->add_option("--preset", in.presets, "hiding preset")->check(CLI::IsMember({"time", "gesetz"}));
  in.seed_opt = induce->add_option("--seed", in.seed);
  in.fraction_opt = induce->add_option("--test-fraction", in.test_fraction);
  in.conditions_opt = induce->add_option("--max-conditions", in.max_conditions);
  in.beam_opt = induce->add_option("--beam-width", in.beam_width);
  induce->add_option("--top", in.top, "number of rules to report");

  auto* eval = app.add_subcommand("eval-rules", "Precision and recall of rules on a labeled feature table");
  EvalArgs ev;
  eval->add_option("rules", ev.rules, "rule file")->required();
  eval->add_option("features", ev.table, "labeled feature CSV")->required();
  eval->add_option("-o,--out", ev.out);
  eval->add_flag("--simplify", ev.simplify, "also evaluate each rule with one condition dropped");

  std::vector<const char*> raw;
  raw.reserve(argv.size() + 1);
  if (argv.empty()) raw.push_back("parlmine");
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Session session(out, err);
  try {
    if (!config_path.empty()) session.config = config::load_config(config_path);
  } catch (const Error& e) {
    err << "parlmine: " << e.what() << "\n";
    return e.code() == Errc::Io ? kExitData : kExitUsage;
  }
  session.output_dir = output_dir.empty() ? session.config.output_dir : fs::path(output_dir);

  try {
    if (*convert) run_convert(session, cv);
    else if (*clean) run_clean(session, cl);
    else if (*filter) run_filter(session, fl);
    else if (*summarize) run_summarize(session, sm);
    else if (*correlate) run_correlate(session, co);
    else if (*compare) run_compare(session, cp);
    else if (*dotted) run_dotted(session, dt);
    else if (*lines) run_lines(session, ln);
    else if (*features) run_features(session, ft);
    else if (*induce) run_induce(session, in);
    else if (*eval) run_eval(session, ev);
  } catch (const UsageError& e) {
    err << "parlmine: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "parlmine: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "parlmine: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace parlmine::cli
