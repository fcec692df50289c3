// MetricsReport: per-condition rows of image-quality means, classification
// metrics with confidence intervals, multi-seed aggregates and robustness
// deltas, with JSON/CSV/SVG rendering. Serialization is fully deterministic
// (no timestamps), so identical runs produce byte-identical reports.

#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldct/clf_metrics.hpp"
#include "ldct/iq_metrics.hpp"
#include "ldct/version.hpp"

namespace ldct {

// ---------------------------------------------------------------------------
// Row building blocks
// ---------------------------------------------------------------------------

struct IqAggregate {
  int n_images = 0;
  double mse_mean = 0.0;
  std::optional<double> psnr_db_mean;  // mean over finite per-image PSNRs
  long long psnr_inf_count = 0;        // identical image pairs, excluded above
  std::optional<double> ssim_mean;
};

inline IqAggregate aggregate_iq(const std::vector<IQResult>& per_image) {
  IqAggregate agg;
  agg.n_images = static_cast<int>(per_image.size());
  if (per_image.empty()) return agg;
  double mse_acc = 0.0, psnr_acc = 0.0, ssim_acc = 0.0;
  int n_finite = 0;
  for (const auto& r : per_image) {
    mse_acc += r.mse;
    ssim_acc += r.ssim;
    if (r.psnr_db) {
      psnr_acc += *r.psnr_db;
      ++n_finite;
    } else {
      ++agg.psnr_inf_count;
    }
  }
  agg.mse_mean = mse_acc / per_image.size();
  agg.ssim_mean = ssim_acc / per_image.size();
  if (n_finite > 0) agg.psnr_db_mean = psnr_acc / n_finite;
  return agg;
}

inline IqAggregate aggregate_iq_runs(const std::vector<IqAggregate>& per_run) {
  IqAggregate agg;
  if (per_run.empty()) return agg;
  double mse_acc = 0.0, psnr_acc = 0.0, ssim_acc = 0.0;
  int n_psnr = 0, n_ssim = 0;
  for (const auto& r : per_run) {
    agg.n_images += r.n_images;
    agg.psnr_inf_count += r.psnr_inf_count;
    mse_acc += r.mse_mean;
    if (r.psnr_db_mean) {
      psnr_acc += *r.psnr_db_mean;
      ++n_psnr;
    }
    if (r.ssim_mean) {
      ssim_acc += *r.ssim_mean;
      ++n_ssim;
    }
  }
  agg.mse_mean = mse_acc / per_run.size();
  if (n_psnr > 0) agg.psnr_db_mean = psnr_acc / n_psnr;
  if (n_ssim > 0) agg.ssim_mean = ssim_acc / n_ssim;
  return agg;
}

/// The full classification metric suite for one prediction set: threshold
/// metrics and ECE with bootstrap CIs, AUC with both DeLong and bootstrap
/// CIs. Metrics whose ratios are undefined stay disengaged.
struct ClfSuite {
  long long n_items = 0;
  std::optional<MetricWithCI> accuracy, sensitivity, specificity, precision, f1;
  std::optional<MetricWithCI> auc;            // DeLong CI
  std::optional<MetricWithCI> auc_bootstrap;  // percentile bootstrap CI
  std::optional<MetricWithCI> ece;
};

struct ClfSuiteParams {
  double threshold = 0.5;
  int bootstrap_n = 2000;
  int ece_bins = 15;
  double ci_level = 0.95;
  std::uint64_t bootstrap_seed = 0;
};

inline ClfSuite compute_clf_suite(const std::vector<Prediction>& preds,
                                  const ClfSuiteParams& params) {
  if (preds.empty()) throw std::invalid_argument("compute_clf_suite: empty prediction set");
  ClfSuite suite;
  suite.n_items = static_cast<long long>(preds.size());

  const double threshold = params.threshold;
  const int ece_bins = params.ece_bins;
  auto pick = [threshold](const std::vector<Prediction>& ps, int which) -> std::optional<double> {
    const ThresholdMetrics m = threshold_metrics(confusion(ps, threshold));
    switch (which) {
      case 0: return m.accuracy;
      case 1: return m.sensitivity;
      case 2: return m.specificity;
      case 3: return m.precision;
      default: return m.f1;
    }
  };
  auto auc_fn = [](const std::vector<Prediction>& ps) -> std::optional<double> {
    try {
      return roc_auc(ps);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };
  auto ece_fn = [ece_bins](const std::vector<Prediction>& ps) -> std::optional<double> {
    return ece(ps, ece_bins);
  };

  // Each metric bootstraps on its own derived stream.
  auto boot = [&](const MetricFn& fn, std::uint64_t stream) -> std::optional<MetricWithCI> {
    if (!fn(preds)) return std::nullopt;
    return bootstrap_ci(fn, preds, params.bootstrap_n, params.ci_level,
                        SeedSpec{params.bootstrap_seed, stream});
  };

  suite.accuracy = boot([&](const auto& ps) { return pick(ps, 0); }, 1);
  suite.sensitivity = boot([&](const auto& ps) { return pick(ps, 1); }, 2);
  suite.specificity = boot([&](const auto& ps) { return pick(ps, 2); }, 3);
  suite.precision = boot([&](const auto& ps) { return pick(ps, 3); }, 4);
  suite.f1 = boot([&](const auto& ps) { return pick(ps, 4); }, 5);
  suite.auc_bootstrap = boot(auc_fn, 6);
  suite.ece = boot(ece_fn, 7);

  if (auc_fn(preds)) {
    try {
      suite.auc = delong_auc_ci(preds, params.ci_level);
    } catch (const std::invalid_argument&) {
      MetricWithCI point_only;  // fewer than 2 per class: point estimate only
      point_only.point = roc_auc(preds);
      suite.auc = point_only;
    }
  }
  return suite;
}

// ---------------------------------------------------------------------------
// Report rows
// ---------------------------------------------------------------------------

struct ReportRow {
  std::string condition;  // e.g. "clean", "dose_10", "sev_3", "baseline"
  long long n_items = 0;
  int n_runs = 1;
  std::optional<IqAggregate> iq;
  std::optional<ClfSuite> clf;                     // single-run metrics
  std::map<std::string, RunAggregate> across_seeds;  // multi-seed mean +- SD
  std::optional<double> delta_auc, delta_acc;
};

struct MetricsReport {
  std::string config_hash;
  std::vector<std::uint64_t> seeds;
  std::string tool_version = kVersion;
  nlohmann::json severity_table;  // null unless severities are involved
  std::vector<ReportRow> rows;
};

inline ReportRow make_clf_row(const std::string& condition,
                              const std::vector<Prediction>& preds,
                              const ClfSuiteParams& params) {
  ReportRow row;
  row.condition = condition;
  row.n_items = static_cast<long long>(preds.size());
  row.clf = compute_clf_suite(preds, params);
  return row;
}

/// Collapses per-seed suites into mean +- SD per metric point estimate.
inline ReportRow make_multi_seed_row(const std::string& condition,
                                     const std::vector<ClfSuite>& per_seed) {
  ReportRow row;
  row.condition = condition;
  row.n_runs = static_cast<int>(per_seed.size());
  if (!per_seed.empty()) row.n_items = per_seed.front().n_items;

  auto collect = [&](const std::string& name,
                     std::optional<MetricWithCI> ClfSuite::* member) {
    std::vector<double> values;
    for (const auto& s : per_seed) {
      if (s.*member) values.push_back((s.*member)->point);
    }
    if (!values.empty()) row.across_seeds[name] = aggregate_runs(values);
  };
  collect("accuracy", &ClfSuite::accuracy);
  collect("sensitivity", &ClfSuite::sensitivity);
  collect("specificity", &ClfSuite::specificity);
  collect("precision", &ClfSuite::precision);
  collect("f1", &ClfSuite::f1);
  collect("auc", &ClfSuite::auc);
  collect("ece", &ClfSuite::ece);
  return row;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json opt_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

inline std::optional<double> opt_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

inline const char* ci_method_name(CiMethod m) {
  switch (m) {
    case CiMethod::bootstrap: return "bootstrap";
    case CiMethod::delong: return "delong";
    case CiMethod::none: return "none";
  }
  return "?";
}

inline CiMethod ci_method_from_name(const std::string& s) {
  if (s == "bootstrap") return CiMethod::bootstrap;
  if (s == "delong") return CiMethod::delong;
  return CiMethod::none;
}

inline nlohmann::json metric_json(const std::optional<MetricWithCI>& m) {
  if (!m) return nullptr;
  nlohmann::json j;
  j["point"] = m->point;
  j["ci_low"] = opt_json(m->ci_low);
  j["ci_high"] = opt_json(m->ci_high);
  j["method"] = ci_method_name(m->method);
  j["n_resamples_used"] = m->n_resamples_used;
  return j;
}

inline std::optional<MetricWithCI> metric_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  MetricWithCI m;
  m.point = j.at("point").get<double>();
  m.ci_low = opt_from_json(j.at("ci_low"));
  m.ci_high = opt_from_json(j.at("ci_high"));
  m.method = ci_method_from_name(j.value("method", "none"));
  m.n_resamples_used = j.value("n_resamples_used", 0);
  return m;
}

}  // namespace detail

inline nlohmann::json report_to_json(const MetricsReport& report) {
  nlohmann::json j;
  j["schema"] = "ldct-report/v1";
  j["provenance"] = {{"config_hash", report.config_hash},
                     {"seeds", report.seeds},
                     {"tool_version", report.tool_version}};
  j["severity_table"] = report.severity_table;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row;
    row["condition"] = r.condition;
    row["n_items"] = r.n_items;
    row["n_runs"] = r.n_runs;
    if (r.iq) {
      row["iq"] = {{"n_images", r.iq->n_images},
                   {"mse_mean", r.iq->mse_mean},
                   {"psnr_db_mean", detail::opt_json(r.iq->psnr_db_mean)},
                   {"psnr_inf_count", r.iq->psnr_inf_count},
                   {"ssim_mean", detail::opt_json(r.iq->ssim_mean)}};
    } else {
      row["iq"] = nullptr;
    }
    if (r.clf) {
      row["clf"] = {{"accuracy", detail::metric_json(r.clf->accuracy)},
                    {"sensitivity", detail::metric_json(r.clf->sensitivity)},
                    {"specificity", detail::metric_json(r.clf->specificity)},
                    {"precision", detail::metric_json(r.clf->precision)},
                    {"f1", detail::metric_json(r.clf->f1)},
                    {"auc", detail::metric_json(r.clf->auc)},
                    {"auc_bootstrap", detail::metric_json(r.clf->auc_bootstrap)},
                    {"ece", detail::metric_json(r.clf->ece)}};
    } else {
      row["clf"] = nullptr;
    }
    if (!r.across_seeds.empty()) {
      nlohmann::json a = nlohmann::json::object();
      for (const auto& [name, agg] : r.across_seeds) {
        a[name] = {{"mean", agg.mean}, {"sd", detail::opt_json(agg.sd)}, {"n_runs", agg.n_runs}};
      }
      row["across_seeds"] = a;
    } else {
      row["across_seeds"] = nullptr;
    }
    row["delta_auc"] = detail::opt_json(r.delta_auc);
    row["delta_acc"] = detail::opt_json(r.delta_acc);
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

inline MetricsReport report_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "ldct-report/v1") {
    throw validation_error("report_from_json: unknown schema");
  }
  MetricsReport report;
  const auto& prov = j.at("provenance");
  report.config_hash = prov.value("config_hash", "");
  if (prov.contains("seeds")) report.seeds = prov["seeds"].get<std::vector<std::uint64_t>>();
  report.tool_version = prov.value("tool_version", "");
  report.severity_table = j.value("severity_table", nlohmann::json());
  for (const auto& row : j.at("rows")) {
    ReportRow r;
    r.condition = row.at("condition").get<std::string>();
    r.n_items = row.value("n_items", 0LL);
    r.n_runs = row.value("n_runs", 1);
    if (row.contains("iq") && !row["iq"].is_null()) {
      IqAggregate iq;
      const auto& ji = row["iq"];
      iq.n_images = ji.value("n_images", 0);
      iq.mse_mean = ji.value("mse_mean", 0.0);
      iq.psnr_db_mean = detail::opt_from_json(ji.at("psnr_db_mean"));
      iq.psnr_inf_count = ji.value("psnr_inf_count", 0LL);
      iq.ssim_mean = detail::opt_from_json(ji.at("ssim_mean"));
      r.iq = iq;
    }
    if (row.contains("clf") && !row["clf"].is_null()) {
      ClfSuite s;
      const auto& jc = row["clf"];
      s.n_items = r.n_items;
      s.accuracy = detail::metric_from_json(jc.at("accuracy"));
      s.sensitivity = detail::metric_from_json(jc.at("sensitivity"));
      s.specificity = detail::metric_from_json(jc.at("specificity"));
      s.precision = detail::metric_from_json(jc.at("precision"));
      s.f1 = detail::metric_from_json(jc.at("f1"));
      s.auc = detail::metric_from_json(jc.at("auc"));
      s.auc_bootstrap = detail::metric_from_json(jc.at("auc_bootstrap"));
      s.ece = detail::metric_from_json(jc.at("ece"));
      r.clf = s;
    }
    if (row.contains("across_seeds") && !row["across_seeds"].is_null()) {
      for (const auto& [name, ja] : row["across_seeds"].items()) {
        RunAggregate agg;
        agg.mean = ja.at("mean").get<double>();
        agg.sd = detail::opt_from_json(ja.at("sd"));
        agg.n_runs = ja.value("n_runs", 0);
        r.across_seeds[name] = agg;
      }
    }
    r.delta_auc = detail::opt_from_json(row.at("delta_auc"));
    r.delta_acc = detail::opt_from_json(row.at("delta_acc"));
    report.rows.push_back(std::move(r));
  }
  return report;
}

/// Merges rows from `extra` into `base` by condition tag: new conditions are
/// appended, existing ones gain only their missing sub-objects. Existing
/// fields are never overwritten, so merge order cannot silently change values.
inline void merge_report_rows(MetricsReport& base, const MetricsReport& extra) {
  for (const auto& row : extra.rows) {
    ReportRow* target = nullptr;
    for (auto& r : base.rows) {
      if (r.condition == row.condition) {
        target = &r;
        break;
      }
    }
    if (!target) {
      base.rows.push_back(row);
      continue;
    }
    if (!target->iq && row.iq) target->iq = row.iq;
    if (!target->clf && row.clf) target->clf = row.clf;
    if (target->across_seeds.empty()) target->across_seeds = row.across_seeds;
    if (!target->delta_auc && row.delta_auc) target->delta_auc = row.delta_auc;
    if (!target->delta_acc && row.delta_acc) target->delta_acc = row.delta_acc;
    if (target->n_items == 0) target->n_items = row.n_items;
  }
}

// ---------------------------------------------------------------------------
// CSV flattening
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_num(*v) : std::string();
}

}  // namespace detail

inline std::string report_to_csv(const MetricsReport& report) {
  static const char* kMetricNames[] = {"accuracy", "sensitivity", "specificity",
                                       "precision", "f1"};
  std::ostringstream os;
  os << "condition,n_items,n_runs";
  for (const char* m : kMetricNames) {
    os << "," << m << "," << m << "_ci_low," << m << "_ci_high";
  }
  os << ",auc,auc_ci_low,auc_ci_high,auc_boot_ci_low,auc_boot_ci_high";
  os << ",ece,ece_ci_low,ece_ci_high";
  for (const char* m : {"accuracy", "sensitivity", "specificity", "precision", "f1", "auc", "ece"}) {
    os << "," << m << "_mean," << m << "_sd";
  }
  os << ",mse,psnr_db,psnr_inf_count,ssim,delta_auc,delta_acc\n";

  for (const auto& r : report.rows) {
    os << r.condition << "," << r.n_items << "," << r.n_runs;
    auto emit_metric = [&](const std::optional<MetricWithCI>& m) {
      if (m) {
        os << "," << detail::fmt_num(m->point) << "," << detail::fmt_opt(m->ci_low) << ","
           << detail::fmt_opt(m->ci_high);
      } else {
        os << ",,,";
      }
    };
    if (r.clf) {
      emit_metric(r.clf->accuracy);
      emit_metric(r.clf->sensitivity);
      emit_metric(r.clf->specificity);
      emit_metric(r.clf->precision);
      emit_metric(r.clf->f1);
      emit_metric(r.clf->auc);
      if (r.clf->auc_bootstrap) {
        os << "," << detail::fmt_opt(r.clf->auc_bootstrap->ci_low) << ","
           << detail::fmt_opt(r.clf->auc_bootstrap->ci_high);
      } else {
        os << ",,";
      }
      emit_metric(r.clf->ece);
    } else {
      for (int i = 0; i < 6 * 3 + 2 + 3; ++i) os << ",";
    }
    for (const char* name :
         {"accuracy", "sensitivity", "specificity", "precision", "f1", "auc", "ece"}) {
      const auto it = r.across_seeds.find(name);
      if (it != r.across_seeds.end()) {
        os << "," << detail::fmt_num(it->second.mean) << "," << detail::fmt_opt(it->second.sd);
      } else {
        os << ",,";
      }
    }
    if (r.iq) {
      os << "," << detail::fmt_num(r.iq->mse_mean) << "," << detail::fmt_opt(r.iq->psnr_db_mean)
         << "," << r.iq->psnr_inf_count << "," << detail::fmt_opt(r.iq->ssim_mean);
    } else {
      os << ",,,,";
    }
    os << "," << detail::fmt_opt(r.delta_auc) << "," << detail::fmt_opt(r.delta_acc) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG line charts
// ---------------------------------------------------------------------------

struct ChartSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), sorted by x
};

/// Minimal SVG line chart: axes with tick labels, one polyline per series,
/// legend. Publication plotting is expected to start from the CSV instead.
inline std::string svg_line_chart(const std::string& title, const std::string& x_label,
                                  const std::vector<ChartSeries>& series) {
  const int width = 640, height = 420;
  const int ml = 60, mr = 140, mt = 40, mb = 50;
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  const double y_pad = (y_max - y_min) * 0.1 + 1e-9;
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return mt + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << title << "</text>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w << "\" y2=\""
     << mt + plot_h << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + plot_h
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_min + (x_max - x_min) * t / 4.0;
    const double yv = y_min + (y_max - y_min) * t / 4.0;
    os << "<text x=\"" << detail::fmt_num(px(xv)) << "\" y=\"" << mt + plot_h + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::fmt_num(xv) << "</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << detail::fmt_num(py(yv) + 4)
       << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt_num(yv) << "</text>\n";
  }
  os << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";

  int color_index = 0;
  for (const auto& s : series) {
    const char* color = kColors[color_index % 5];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : s.points) {
      os << detail::fmt_num(px(x)) << "," << detail::fmt_num(py(y)) << " ";
    }
    os << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      os << "<circle cx=\"" << detail::fmt_num(px(x)) << "\" cy=\"" << detail::fmt_num(py(y))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const int ly = mt + 16 + 18 * color_index;
    os << "<line x1=\"" << ml + plot_w + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
       << ml + plot_w + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << ml + plot_w + 40 << "\" y=\"" << ly << "\" font-size=\"12\">" << s.name
       << "</text>\n";
    ++color_index;
  }
  os << "</svg>\n";
  return os.str();
}

/// Builds Accuracy/AUC-vs-condition chart series from report rows whose
/// condition is "dose_<x>" or "sev_<x>".
inline std::vector<ChartSeries> chart_series_from_report(const MetricsReport& report,
                                                         const std::string& prefix) {
  ChartSeries acc{"accuracy", {}};
  ChartSeries auc{"auc", {}};
  for (const auto& r : report.rows) {
    if (r.condition.rfind(prefix, 0) != 0) continue;
    double x = 0.0;
    try {
      x = std::stod(r.condition.substr(prefix.size()));
    } catch (const std::exception&) {
      continue;
    }
    std::optional<double> acc_v, auc_v;
    if (r.clf) {
      if (r.clf->accuracy) acc_v = r.clf->accuracy->point;
      if (r.clf->auc) auc_v = r.clf->auc->point;
    }
    if (const auto it = r.across_seeds.find("accuracy"); it != r.across_seeds.end()) {
      acc_v = it->second.mean;
    }
    if (const auto it = r.across_seeds.find("auc"); it != r.across_seeds.end()) {
      auc_v = it->second.mean;
    }
    if (acc_v) acc.points.emplace_back(x, *acc_v);
    if (auc_v) auc.points.emplace_back(x, *auc_v);
  }
  auto by_x = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(acc.points.begin(), acc.points.end(), by_x);
  std::sort(auc.points.begin(), auc.points.end(), by_x);
  std::vector<ChartSeries> out;
  if (!acc.points.empty()) out.push_back(std::move(acc));
  if (!auc.points.empty()) out.push_back(std::move(auc));
  return out;
}

}  // namespace ldct
