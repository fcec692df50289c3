// ldct-harness: batch CLI for corrupting CT datasets, scoring classifier
// predictions and rendering reports.
//
// Subcommands: corrupt, eval, stress, baseline, report, bench, split-check.
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldct/ldct.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> threshold;
};

ldct::RunConfig resolve_config(const GlobalOptions& g) {
  ldct::RunConfig cfg;
  if (!g.config_path.empty()) cfg = ldct::load_config(g.config_path);
  if (g.seed) cfg.seeds = {*g.seed};
  if (g.out) cfg.out_dir = *g.out;
  if (g.threshold) cfg.threshold = *g.threshold;
  ldct::validate_config(cfg);
  return cfg;
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ldct::io_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw ldct::io_error("write failed for '" + path.string() + "'");
}

void write_report_files(const ldct::MetricsReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  write_text_file(dir / "report.json", ldct::report_to_json(report).dump(2) + "\n");
  write_text_file(dir / "report.csv", ldct::report_to_csv(report));
}

json severity_table_json(const ldct::RunConfig& cfg) {
  json table = json::array();
  for (const auto& s : cfg.severity_table) {
    table.push_back({{"level", s.level},
                     {"lambda", s.lambda},
                     {"motion_len", s.motion_len},
                     {"ring_alpha", s.ring_alpha}});
  }
  return table;
}

ldct::ClfSuiteParams suite_params(const ldct::RunConfig& cfg, std::uint64_t bootstrap_seed) {
  ldct::ClfSuiteParams p;
  p.threshold = cfg.threshold;
  p.bootstrap_n = cfg.bootstrap_n;
  p.ece_bins = cfg.ece_bins;
  p.ci_level = cfg.ci_level;
  p.bootstrap_seed = bootstrap_seed;
  return p;
}

std::vector<ldct::Prediction> apply_pooling(std::vector<ldct::Prediction> preds,
                                            const ldct::RunConfig& cfg) {
  if (cfg.patient_level) return ldct::pool_by_patient(preds, cfg.pooling);
  return preds;
}

void print_row_summary(const ldct::ReportRow& row) {
  auto fmt_metric = [](const std::optional<ldct::MetricWithCI>& m) -> std::string {
    if (!m) return "undef";
    std::string s = fmt_num(m->point);
    if (m->ci_low && m->ci_high) {
      s += " [" + fmt_num(*m->ci_low) + "," + fmt_num(*m->ci_high) + "]";
    }
    return s;
  };
  std::cout << row.condition << " (n=" << row.n_items << ")";
  if (row.clf) {
    std::cout << " acc=" << fmt_metric(row.clf->accuracy) << " auc=" << fmt_metric(row.clf->auc)
              << " sens=" << fmt_metric(row.clf->sensitivity)
              << " spec=" << fmt_metric(row.clf->specificity)
              << " ece=" << fmt_metric(row.clf->ece);
  }
  for (const auto& [name, agg] : row.across_seeds) {
    std::cout << " " << name << "=" << fmt_num(agg.mean);
    if (agg.sd) std::cout << "+-" << fmt_num(*agg.sd);
  }
  if (row.delta_auc) std::cout << " dAUC=" << fmt_num(*row.delta_auc);
  if (row.delta_acc) std::cout << " dAcc=" << fmt_num(*row.delta_acc);
  std::cout << "\n";
}

// ---------------------------------------------------------------------------
// corrupt
// ---------------------------------------------------------------------------

struct IqAccumulator {
  std::vector<double> mses;
  std::vector<std::optional<double>> psnrs;
  std::vector<double> ssims;  // only collected for images >= 11x11

  void add(const ldct::GrayImage& clean, const ldct::GrayImage& corrupted) {
    mses.push_back(ldct::mse(clean, corrupted));
    psnrs.push_back(ldct::psnr(clean, corrupted));
    if (clean.width >= 11 && clean.height >= 11) {
      ssims.push_back(ldct::ssim(clean, corrupted));
    }
  }

  ldct::IqAggregate aggregate() const {
    ldct::IqAggregate agg;
    agg.n_images = static_cast<int>(mses.size());
    if (mses.empty()) return agg;
    double mse_acc = 0.0, psnr_acc = 0.0, ssim_acc = 0.0;
    int n_finite = 0;
    for (std::size_t i = 0; i < mses.size(); ++i) {
      mse_acc += mses[i];
      if (psnrs[i]) {
        psnr_acc += *psnrs[i];
        ++n_finite;
      } else {
        ++agg.psnr_inf_count;
      }
    }
    agg.mse_mean = mse_acc / mses.size();
    if (n_finite > 0) agg.psnr_db_mean = psnr_acc / n_finite;
    if (!ssims.empty()) {
      for (double s : ssims) ssim_acc += s;
      agg.ssim_mean = ssim_acc / ssims.size();
    }
    return agg;
  }
};

int cmd_corrupt(const ldct::RunConfig& cfg, const std::string& manifest_path) {
  const ldct::Dataset ds = ldct::load_manifest(manifest_path);
  if (ds.records.empty()) throw ldct::validation_error("corrupt: manifest has no records");
  const fs::path root = fs::path(cfg.out_dir) / "corrupt";
  fs::create_directories(root);

  struct Condition {
    std::string tag;
    ldct::CorruptionSpec spec;
  };
  std::vector<Condition> conditions;
  for (double lambda : cfg.doses) {
    conditions.push_back({"dose_" + fmt_num(lambda), ldct::CorruptionSpec::at_dose(lambda)});
  }
  for (int level : cfg.severities) {
    conditions.push_back({"sev_" + std::to_string(level),
                          ldct::CorruptionSpec::at_severity(
                              ldct::resolve_severity(cfg.severity_table, level))});
  }

  ldct::MetricsReport iq_report;
  iq_report.config_hash = ldct::config_hash(cfg);
  iq_report.seeds = cfg.seeds;
  iq_report.severity_table = severity_table_json(cfg);

  std::size_t files_written = 0;
  for (const auto& cond : conditions) {
    std::vector<ldct::IqAggregate> per_seed;
    for (std::uint64_t seed : cfg.seeds) {
      const fs::path dir = root / cond.tag / ("seed_" + std::to_string(seed));
      fs::create_directories(dir);
      IqAccumulator iq;
      for (const auto& rec : ds.records) {
        const ldct::GrayImage clean = ldct::load_image(ds.resolve_path(rec));
        const ldct::SeedSpec item_seed{seed, ldct::fnv1a64(rec.id)};
        const ldct::GrayImage corrupted = ldct::apply_corruption(clean, cond.spec, item_seed);
        ldct::save_image(corrupted, (dir / (rec.id + ".png")).string());
        ++files_written;
        iq.add(clean, corrupted);
      }
      per_seed.push_back(iq.aggregate());
    }
    ldct::ReportRow row;
    row.condition = cond.tag;
    row.n_items = static_cast<long long>(ds.records.size());
    row.n_runs = static_cast<int>(cfg.seeds.size());
    row.iq = ldct::aggregate_iq_runs(per_seed);
    iq_report.rows.push_back(std::move(row));
  }

  json prov;
  prov["schema"] = "ldct-corrupt-provenance/v1";
  prov["config_hash"] = ldct::config_hash(cfg);
  prov["tool_version"] = ldct::kVersion;
  prov["manifest"] = manifest_path;
  prov["seeds"] = cfg.seeds;
  prov["doses"] = cfg.doses;
  prov["severities"] = cfg.severities;
  prov["severity_table"] = severity_table_json(cfg);
  prov["n_images"] = ds.records.size();
  prov["n_files"] = files_written;
  prov["layout"] = "<condition>/seed_<seed>/<id>.png";
  write_text_file(root / "provenance.json", prov.dump(2) + "\n");
  write_text_file(root / "iq_report.json", ldct::report_to_json(iq_report).dump(2) + "\n");

  std::cout << "corrupt: wrote " << files_written << " images under " << root.string() << "\n";
  for (const auto& row : iq_report.rows) {
    std::cout << "  " << row.condition;
    if (row.iq->psnr_db_mean) std::cout << " psnr=" << fmt_num(*row.iq->psnr_db_mean);
    if (row.iq->ssim_mean) std::cout << " ssim=" << fmt_num(*row.iq->ssim_mean);
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int cmd_eval(const ldct::RunConfig& cfg, const std::string& manifest_path,
             const std::string& scores_path, const std::string& condition) {
  const ldct::Dataset ds = ldct::load_manifest(manifest_path);
  const auto preds =
      apply_pooling(ldct::join_scores(ldct::read_scores(scores_path), ds), cfg);

  ldct::MetricsReport report;
  report.config_hash = ldct::config_hash(cfg);
  report.seeds = cfg.seeds;
  report.rows.push_back(ldct::make_clf_row(condition, preds, suite_params(cfg, cfg.seeds[0])));

  write_report_files(report, fs::path(cfg.out_dir) / "eval");
  print_row_summary(report.rows[0]);
  return 0;
}

// ---------------------------------------------------------------------------
// stress
// ---------------------------------------------------------------------------

int cmd_stress(const ldct::RunConfig& cfg, const std::string& manifest_path,
               const std::string& baseline_scores,
               const std::vector<std::string>& severity_scores) {
  const ldct::Dataset ds = ldct::load_manifest(manifest_path);

  std::map<int, std::string> files;
  for (const auto& spec : severity_scores) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ldct::validation_error("stress: --scores expects <severity>=<path>, got '" + spec +
                                   "'");
    }
    int level = 0;
    try {
      level = std::stoi(spec.substr(0, eq));
    } catch (const std::exception&) {
      throw ldct::validation_error("stress: bad severity in '" + spec + "'");
    }
    if (!files.emplace(level, spec.substr(eq + 1)).second) {
      throw ldct::validation_error("stress: duplicate score file for severity " +
                                   std::to_string(level));
    }
  }
  for (int level : cfg.severities) {
    if (!files.count(level)) {
      throw ldct::validation_error("stress: missing score file for severity " +
                                   std::to_string(level));
    }
  }
  for (const auto& [level, path] : files) {
    (void)path;
    if (std::find(cfg.severities.begin(), cfg.severities.end(), level) == cfg.severities.end()) {
      throw ldct::validation_error("stress: score file given for severity " +
                                   std::to_string(level) + " which is not in the config");
    }
  }

  ldct::MetricsReport report;
  report.config_hash = ldct::config_hash(cfg);
  report.seeds = cfg.seeds;
  report.severity_table = severity_table_json(cfg);

  const auto base_preds =
      apply_pooling(ldct::join_scores(ldct::read_scores(baseline_scores), ds), cfg);
  ldct::ReportRow base_row =
      ldct::make_clf_row("baseline", base_preds, suite_params(cfg, cfg.seeds[0]));
  double base_auc = 0.0, base_acc = 0.0;
  bool has_base_auc = false, has_base_acc = false;
  if (base_row.clf->auc) {
    base_auc = base_row.clf->auc->point;
    has_base_auc = true;
  }
  if (base_row.clf->accuracy) {
    base_acc = base_row.clf->accuracy->point;
    has_base_acc = true;
  }
  report.rows.push_back(std::move(base_row));

  for (int level : cfg.severities) {
    const auto preds =
        apply_pooling(ldct::join_scores(ldct::read_scores(files.at(level)), ds), cfg);
    ldct::ReportRow row = ldct::make_clf_row("sev_" + std::to_string(level), preds,
                                             suite_params(cfg, cfg.seeds[0]));
    if (row.clf->auc && has_base_auc) {
      row.delta_auc = ldct::robustness_delta(row.clf->auc->point, base_auc);
    }
    if (row.clf->accuracy && has_base_acc) {
      row.delta_acc = ldct::robustness_delta(row.clf->accuracy->point, base_acc);
    }
    report.rows.push_back(std::move(row));
  }

  write_report_files(report, fs::path(cfg.out_dir) / "stress");
  for (const auto& row : report.rows) print_row_summary(row);
  return 0;
}

// ---------------------------------------------------------------------------
// baseline
// ---------------------------------------------------------------------------

int cmd_baseline(const ldct::RunConfig& cfg, const std::string& manifest_path) {
  const ldct::Dataset ds = ldct::load_manifest(manifest_path);
  const ldct::SplitReport splits = ldct::validate_splits(ds);
  if (!splits.pass) {
    throw ldct::validation_error("baseline: manifest fails patient-level split check:\n" +
                                 splits.to_text());
  }

  ldct::MetricsReport report;
  report.config_hash = ldct::config_hash(cfg);
  report.seeds = cfg.seeds;

  const fs::path root = fs::path(cfg.out_dir) / "baseline";
  for (double lambda : cfg.doses) {
    const std::string tag = "dose_" + fmt_num(lambda);
    const ldct::CorruptionSpec spec = ldct::CorruptionSpec::at_dose(lambda);
    std::vector<ldct::ClfSuite> per_seed_suites;
    std::vector<ldct::IqAggregate> per_seed_iq;

    for (std::uint64_t seed : cfg.seeds) {
      const ldct::BaselineRun run = ldct::run_baseline(ds, spec, cfg.baseline, seed);
      const fs::path dir = root / tag / ("seed_" + std::to_string(seed));
      fs::create_directories(dir);
      ldct::write_scores(run.predictions, (dir / "scores.csv").string());
      write_text_file(dir / "model.json", ldct::logreg_to_json(run.model).dump(2) + "\n");

      const auto preds = apply_pooling(run.predictions, cfg);
      per_seed_suites.push_back(ldct::compute_clf_suite(preds, suite_params(cfg, seed)));

      // Image quality of the inputs the classifier saw (corrupted, then
      // denoised) against the clean references.
      IqAccumulator iq;
      for (const ldct::ManifestRecord* rec : ds.split_records(ldct::Split::test)) {
        const ldct::GrayImage clean = ldct::load_image(ds.resolve_path(*rec));
        const ldct::GrayImage corrupted =
            ldct::apply_corruption(clean, spec, ldct::SeedSpec{seed, ldct::fnv1a64(rec->id)});
        iq.add(clean, ldct::denoise(corrupted, cfg.baseline.denoiser));
      }
      per_seed_iq.push_back(iq.aggregate());
    }

    ldct::ReportRow row;
    if (cfg.seeds.size() == 1) {
      row = ldct::ReportRow{};
      row.condition = tag;
      row.n_items = per_seed_suites[0].n_items;
      row.clf = per_seed_suites[0];
    } else {
      row = ldct::make_multi_seed_row(tag, per_seed_suites);
    }
    row.iq = ldct::aggregate_iq_runs(per_seed_iq);
    report.rows.push_back(std::move(row));
  }

  write_report_files(report, root);
  for (const auto& row : report.rows) print_row_summary(row);
  return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const ldct::RunConfig& cfg, const std::vector<std::string>& inputs,
               const std::string& format) {
  if (inputs.empty()) throw ldct::validation_error("report: no input report files");
  std::optional<ldct::MetricsReport> merged;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw ldct::io_error("report: cannot open '" + path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ldct::validation_error("report '" + path + "': " + e.what());
    }
    ldct::MetricsReport r = ldct::report_from_json(j);
    if (!merged) {
      merged = std::move(r);
    } else {
      ldct::merge_report_rows(*merged, r);
    }
  }

  const fs::path dir = fs::path(cfg.out_dir) / "report";
  fs::create_directories(dir);
  if (format == "csv") {
    write_text_file(dir / "report.csv", ldct::report_to_csv(*merged));
    std::cout << "report: wrote " << (dir / "report.csv").string() << "\n";
  } else if (format == "json") {
    write_text_file(dir / "report.json", ldct::report_to_json(*merged).dump(2) + "\n");
    std::cout << "report: wrote " << (dir / "report.json").string() << "\n";
  } else if (format == "svg") {
    bool wrote = false;
    const auto dose_series = ldct::chart_series_from_report(*merged, "dose_");
    if (!dose_series.empty()) {
      write_text_file(dir / "report_dose.svg",
                      ldct::svg_line_chart("Accuracy and AUC across dose levels",
                                           "dose factor lambda", dose_series));
      std::cout << "report: wrote " << (dir / "report_dose.svg").string() << "\n";
      wrote = true;
    }
    const auto sev_series = ldct::chart_series_from_report(*merged, "sev_");
    if (!sev_series.empty()) {
      write_text_file(dir / "report_severity.svg",
                      ldct::svg_line_chart("Accuracy and AUC under artifact stress", "severity",
                                           sev_series));
      std::cout << "report: wrote " << (dir / "report_severity.svg").string() << "\n";
      wrote = true;
    }
    if (!wrote) {
      throw ldct::validation_error("report: no dose_* or sev_* rows with metrics to plot");
    }
  } else {
    throw ldct::validation_error("report: unknown format '" + format + "'");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct Timing {
  double median_ms = 0.0;
  double iqr_low_ms = 0.0;
  double iqr_high_ms = 0.0;
};

template <class Fn>
Timing time_op(Fn&& fn, int reps) {
  std::vector<double> ms;
  ms.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn(i);
    const auto t1 = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  Timing t;
  t.median_ms = ldct::detail::sorted_quantile(ms, 0.5);
  t.iqr_low_ms = ldct::detail::sorted_quantile(ms, 0.25);
  t.iqr_high_ms = ldct::detail::sorted_quantile(ms, 0.75);
  return t;
}

int cmd_bench(const ldct::RunConfig& cfg, int image_size, int reps) {
  if (image_size < 16) throw ldct::validation_error("bench: image size must be >= 16");
  if (reps < 20) throw ldct::validation_error("bench: need at least 20 repetitions");

  const ldct::GrayImage img = ldct::make_phantom(image_size, image_size);
  const ldct::SeverityLevel sev = ldct::resolve_severity(cfg.severity_table, 3);
  const ldct::GrayImage noisy =
      ldct::simulate_low_dose(img, ldct::DoseLevel{10.0}, ldct::SeedSpec{1, 1});

  std::map<std::string, Timing> timings;
  timings["dose_corruption"] = time_op(
      [&](int i) {
        ldct::simulate_low_dose(img, ldct::DoseLevel{10.0},
                                ldct::SeedSpec{1, static_cast<std::uint64_t>(i)});
      },
      reps);
  timings["severity_corruption"] = time_op(
      [&](int i) {
        ldct::apply_severity(img, sev, ldct::SeedSpec{1, static_cast<std::uint64_t>(i)});
      },
      reps);
  timings["iq_metrics"] = time_op(
      [&](int) {
        ldct::mse(img, noisy);
        ldct::psnr(img, noisy);
        ldct::ssim(img, noisy);
      },
      reps);
  timings["feature_extraction"] = time_op([&](int) { ldct::extract_features(noisy); }, reps);
  timings["gaussian_denoise"] = time_op(
      [&](int) { ldct::denoise(noisy, ldct::DenoiserSpec::gaussian(1.0)); }, reps);

  json j;
  j["schema"] = "ldct-bench/v1";
  j["image_size"] = image_size;
  j["repetitions"] = reps;
  json ops = json::object();
  std::cout << "bench: " << image_size << "x" << image_size << " phantom, " << reps
            << " repetitions (per-image, median [IQR] ms)\n";
  for (const auto& [name, t] : timings) {
    ops[name] = {{"median_ms", t.median_ms},
                 {"iqr_low_ms", t.iqr_low_ms},
                 {"iqr_high_ms", t.iqr_high_ms}};
    std::printf("  %-22s %8.3f [%8.3f, %8.3f]\n", name.c_str(), t.median_ms, t.iqr_low_ms,
                t.iqr_high_ms);
  }
  j["operations"] = ops;
  const fs::path dir = fs::path(cfg.out_dir) / "bench";
  fs::create_directories(dir);
  write_text_file(dir / "timings.json", j.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// split-check
// ---------------------------------------------------------------------------

int cmd_split_check(const ldct::RunConfig& cfg, const std::string& manifest_path) {
  const ldct::Dataset ds = ldct::load_manifest(manifest_path);
  const ldct::SplitReport report = ldct::validate_splits(ds);
  std::cout << report.to_text();
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  write_text_file(dir / "split_check.json", report.to_json().dump(2) + "\n");
  return report.pass ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"Low-dose CT corruption simulation and classifier evaluation harness"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON config file (flags override it)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Use a single seed for this run");
  std::string out_value;
  auto* out_opt = app.add_option("--out", out_value, "Output directory");
  double threshold_value = 0.5;
  auto* thr_opt = app.add_option("--threshold", threshold_value, "Decision threshold");

  std::string manifest;

  auto* corrupt = app.add_subcommand("corrupt", "Materialize corrupted image trees");
  corrupt->add_option("--manifest", manifest, "Dataset manifest CSV");

  auto* eval = app.add_subcommand("eval", "Score a prediction file against the test split");
  std::string scores_path, condition = "test";
  eval->add_option("--manifest", manifest, "Dataset manifest CSV");
  eval->add_option("--scores", scores_path, "Score CSV (id,score)")->required();
  eval->add_option("--condition", condition, "Condition tag for the report row");
  bool patient_level = false;
  std::string pooling = "";
  eval->add_flag("--patient-level", patient_level, "Pool slice scores per patient");
  eval->add_option("--pooling", pooling, "Patient pooling rule: max or mean");

  auto* stress = app.add_subcommand("stress", "Per-severity metrics with robustness deltas");
  std::string baseline_scores;
  std::vector<std::string> severity_scores;
  stress->add_option("--manifest", manifest, "Dataset manifest CSV");
  stress->add_option("--baseline", baseline_scores, "Baseline-condition score CSV")->required();
  stress->add_option("--scores", severity_scores,
                     "Per-severity score files as <severity>=<path> (repeatable)");

  auto* baseline = app.add_subcommand("baseline", "Run the denoise+logistic-regression baseline");
  baseline->add_option("--manifest", manifest, "Dataset manifest CSV");

  auto* report_cmd = app.add_subcommand("report", "Render report JSON to csv/json/svg");
  std::vector<std::string> report_inputs;
  std::string format = "csv";
  report_cmd->add_option("inputs", report_inputs, "Report JSON files")->required();
  report_cmd->add_option("--format", format, "Output format: csv, json or svg");

  auto* bench = app.add_subcommand("bench", "Time corruption and metric throughput");
  int image_size = 128, reps = 31;
  bench->add_option("--image-size", image_size, "Phantom side length");
  bench->add_option("--reps", reps, "Repetitions per operation (>= 20)");

  auto* split_check = app.add_subcommand("split-check", "Validate patient-level split purity");
  split_check->add_option("--manifest", manifest, "Dataset manifest CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (seed_opt->count()) g.seed = seed_value;
  if (out_opt->count()) g.out = out_value;
  if (thr_opt->count()) g.threshold = threshold_value;
  ldct::RunConfig cfg = resolve_config(g);
  if (manifest.empty()) manifest = cfg.manifest_path;

  const bool needs_manifest = corrupt->parsed() || eval->parsed() || stress->parsed() ||
                              baseline->parsed() || split_check->parsed();
  if (needs_manifest && manifest.empty()) {
    throw ldct::validation_error("no manifest given (use --manifest or config paths.manifest)");
  }

  if (eval->parsed() && !pooling.empty()) {
    if (pooling == "max") {
      cfg.pooling = ldct::PatientPooling::max;
    } else if (pooling == "mean") {
      cfg.pooling = ldct::PatientPooling::mean;
    } else {
      throw ldct::validation_error("eval: --pooling must be 'max' or 'mean'");
    }
  }
  if (eval->parsed() && patient_level) cfg.patient_level = true;

  if (corrupt->parsed()) return cmd_corrupt(cfg, manifest);
  if (eval->parsed()) return cmd_eval(cfg, manifest, scores_path, condition);
  if (stress->parsed()) return cmd_stress(cfg, manifest, baseline_scores, severity_scores);
  if (baseline->parsed()) return cmd_baseline(cfg, manifest);
  if (report_cmd->parsed()) return cmd_report(cfg, report_inputs, format);
  if (bench->parsed()) return cmd_bench(cfg, image_size, reps);
  if (split_check->parsed()) return cmd_split_check(cfg, manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ldct::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ldct::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
