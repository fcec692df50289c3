// Classification metrics and uncertainty: confusion-matrix metrics at a
// threshold, rank-based ROC AUC, DeLong and percentile-bootstrap confidence
// intervals, expected calibration error, robustness deltas, and multi-run
// aggregation. Undefined ratios propagate as disengaged optionals, never as
// 0 or NaN.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldct/errors.hpp"
#include "ldct/rng.hpp"

namespace ldct {

struct Prediction {
  std::string id;
  double score = 0.0;  // probability of the positive class, in [0,1]
  int label = 0;       // 0 or 1
  std::string patient_id;  // empty when unknown
};

struct ConfusionCounts {
  long long tp = 0, tn = 0, fp = 0, fn = 0;
  long long total() const { return tp + tn + fp + fn; }
};

struct ThresholdMetrics {
  std::optional<double> accuracy, sensitivity, specificity, precision, f1;
};

enum class CiMethod { bootstrap, delong, none };

struct MetricWithCI {
  double point = 0.0;
  std::optional<double> ci_low, ci_high;
  CiMethod method = CiMethod::none;
  int n_resamples_used = 0;
};

/// score >= threshold predicts positive (boundary inclusive).
inline ConfusionCounts confusion(const std::vector<Prediction>& preds, double threshold = 0.5) {
  if (preds.empty()) throw std::invalid_argument("confusion: empty prediction list");
  ConfusionCounts c;
  for (const auto& p : preds) {
    const bool predicted_positive = p.score >= threshold;
    if (p.label == 1) {
      predicted_positive ? ++c.tp : ++c.fn;
    } else {
      predicted_positive ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

inline ThresholdMetrics threshold_metrics(const ConfusionCounts& c) {
  if (c.total() <= 0) throw std::invalid_argument("threshold_metrics: empty counts");
  auto ratio = [](long long num, long long den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  ThresholdMetrics m;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  m.sensitivity = ratio(c.tp, c.tp + c.fn);
  m.specificity = ratio(c.tn, c.tn + c.fp);
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  return m;
}

/// Rank-based (Mann-Whitney) AUC with average ranks for tied scores: the
/// probability a random positive outscores a random negative, ties counted
/// half. Throws on single-class input.
inline double roc_auc(const std::vector<Prediction>& preds) {
  const std::size_t n = preds.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return preds[a].score < preds[b].score; });

  double pos_rank_sum = 0.0;
  long long n_pos = 0, n_neg = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && preds[order[j + 1]].score == preds[order[i]].score) ++j;
    const double avg_rank = static_cast<double>(i + 1 + j + 1) / 2.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) {
      if (preds[order[k]].label == 1) {
        pos_rank_sum += avg_rank;
        ++n_pos;
      } else {
        ++n_neg;
      }
    }
    i = j + 1;
  }
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("roc_auc: undefined for single-class input");
  }
  const double m = static_cast<double>(n_pos);
  return (pos_rank_sum - m * (m + 1.0) / 2.0) / (m * static_cast<double>(n_neg));
}

/// Inverse standard normal CDF: Acklam's rational approximation refined with
/// one Halley step against erfc, accurate to near machine precision.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

/// DeLong structural components: V10[i] is positive i's mean Mann-Whitney
/// kernel against all negatives, V01[j] the mirror for negative j. The AUC
/// variance estimate is S10/m + S01/n with sample variances of the
/// components.
struct DelongStats {
  double auc = 0.0;
  std::vector<double> v10, v01;
  double variance = 0.0;
};

inline DelongStats delong_stats(const std::vector<Prediction>& preds) {
  std::vector<double> pos, neg;
  for (const auto& p : preds) (p.label == 1 ? pos : neg).push_back(p.score);
  const std::size_t m = pos.size(), n = neg.size();
  if (m < 2 || n < 2) {
    throw std::invalid_argument("delong_stats: need at least 2 positives and 2 negatives");
  }
  auto psi = [](double x, double y) { return x > y ? 1.0 : (x == y ? 0.5 : 0.0); };

  DelongStats s;
  s.v10.assign(m, 0.0);
  s.v01.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double k = psi(pos[i], neg[j]);
      s.v10[i] += k;
      s.v01[j] += k;
    }
  }
  for (double& v : s.v10) {
    v /= static_cast<double>(n);
    s.auc += v;
  }
  s.auc /= static_cast<double>(m);
  for (double& v : s.v01) v /= static_cast<double>(m);

  auto sample_var = [](const std::vector<double>& xs, double mean) {
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(xs.size() - 1);
  };
  s.variance = sample_var(s.v10, s.auc) / static_cast<double>(m) +
               sample_var(s.v01, s.auc) / static_cast<double>(n);
  return s;
}

/// AUC with a DeLong confidence interval, truncated to [0,1]. Requires
/// >= 2 positives and >= 2 negatives.
inline MetricWithCI delong_auc_ci(const std::vector<Prediction>& preds, double level = 0.95) {
  const DelongStats s = delong_stats(preds);
  const double se = std::sqrt(std::max(s.variance, 0.0));
  const double z = normal_quantile(0.5 + level / 2.0);

  MetricWithCI out;
  out.point = s.auc;
  out.ci_low = std::max(0.0, s.auc - z * se);
  out.ci_high = std::min(1.0, s.auc + z * se);
  out.method = CiMethod::delong;
  return out;
}

namespace detail {

// Linear-interpolation quantile of sorted values (same convention as the
// default numpy percentile).
inline double sorted_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

using MetricFn = std::function<std::optional<double>(const std::vector<Prediction>&)>;

/// Percentile bootstrap CI with image-level resampling. Resamples where the
/// metric is undefined are skipped; n_resamples_used counts the kept ones.
/// Deterministic given the seed.
inline MetricWithCI bootstrap_ci(const MetricFn& metric, const std::vector<Prediction>& preds,
                                 int n_resamples = 2000, double level = 0.95,
                                 SeedSpec seed = {}) {
  if (preds.empty()) throw std::invalid_argument("bootstrap_ci: empty prediction list");
  if (n_resamples < 1) throw std::invalid_argument("bootstrap_ci: n_resamples must be >= 1");
  const std::optional<double> point = metric(preds);
  if (!point) throw validation_error("bootstrap_ci: metric undefined on the full set");

  const std::size_t n = preds.size();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_resamples));
  std::vector<Prediction> resample(n);
  for (int b = 0; b < n_resamples; ++b) {
    CounterRng rng{seed.master_seed, seed.stream_index, stream_tag::kBootstrap,
                   static_cast<std::uint64_t>(b)};
    for (std::size_t i = 0; i < n; ++i) resample[i] = preds[rng.bounded(n)];
    if (const auto v = metric(resample)) values.push_back(*v);
  }
  if (values.empty()) throw validation_error("bootstrap_ci: metric undefined on all resamples");

  std::sort(values.begin(), values.end());
  const double alpha = 1.0 - level;
  MetricWithCI out;
  out.point = *point;
  out.ci_low = detail::sorted_quantile(values, alpha / 2.0);
  out.ci_high = detail::sorted_quantile(values, 1.0 - alpha / 2.0);
  out.method = CiMethod::bootstrap;
  out.n_resamples_used = static_cast<int>(values.size());
  return out;
}

/// Expected calibration error over equal-width probability bins on [0,1]
/// (left-closed; the last bin is right-closed).
inline double ece(const std::vector<Prediction>& preds, int n_bins = 15) {
  if (preds.empty()) throw std::invalid_argument("ece: empty prediction list");
  if (n_bins < 1) throw std::invalid_argument("ece: n_bins must be >= 1");
  std::vector<double> score_sum(n_bins, 0.0), label_sum(n_bins, 0.0);
  std::vector<long long> count(n_bins, 0);
  for (const auto& p : preds) {
    int b = static_cast<int>(std::floor(p.score * n_bins));
    b = std::min(std::max(b, 0), n_bins - 1);
    score_sum[b] += p.score;
    label_sum[b] += p.label;
    ++count[b];
  }
  double acc = 0.0;
  const double n = static_cast<double>(preds.size());
  for (int b = 0; b < n_bins; ++b) {
    if (count[b] == 0) continue;
    const double w = static_cast<double>(count[b]) / n;
    acc += w * std::abs(label_sum[b] / count[b] - score_sum[b] / count[b]);
  }
  return acc;
}

/// Robustness drop: corrupted-condition metric minus baseline-condition
/// metric. Negative means degradation.
inline double robustness_delta(double corrupt, double baseline) {
  if (!std::isfinite(corrupt) || !std::isfinite(baseline)) {
    throw std::invalid_argument("robustness_delta: inputs must be finite");
  }
  return corrupt - baseline;
}

struct RunAggregate {
  double mean = 0.0;
  std::optional<double> sd;  // disengaged for a single run
  int n_runs = 0;
};

/// Mean and unbiased (n-1) SD across per-run metric values.
inline RunAggregate aggregate_runs(const std::vector<double>& per_run) {
  if (per_run.empty()) throw std::invalid_argument("aggregate_runs: no runs");
  RunAggregate agg;
  agg.n_runs = static_cast<int>(per_run.size());
  agg.mean = std::accumulate(per_run.begin(), per_run.end(), 0.0) / per_run.size();
  if (per_run.size() > 1) {
    double acc = 0.0;
    for (double v : per_run) acc += (v - agg.mean) * (v - agg.mean);
    agg.sd = std::sqrt(acc / static_cast<double>(per_run.size() - 1));
  }
  return agg;
}

enum class PatientPooling { max, mean };

/// Pools slice-level predictions to one prediction per patient. A patient is
/// labeled positive if any slice is positive; the pooled score is the max
/// (default) or mean slice score.
inline std::vector<Prediction> pool_by_patient(const std::vector<Prediction>& preds,
                                               PatientPooling pooling = PatientPooling::max) {
  std::map<std::string, std::vector<const Prediction*>> groups;
  for (const auto& p : preds) {
    if (p.patient_id.empty()) {
      throw validation_error("pool_by_patient: prediction '" + p.id + "' has no patient_id");
    }
    groups[p.patient_id].push_back(&p);
  }
  std::vector<Prediction> out;
  out.reserve(groups.size());
  for (const auto& [patient, slices] : groups) {
    Prediction pooled;
    pooled.id = patient;
    pooled.patient_id = patient;
    double score_acc = pooling == PatientPooling::max ? 0.0 : 0.0;
    for (const auto* s : slices) {
      pooled.label = std::max(pooled.label, s->label);
      if (pooling == PatientPooling::max) {
        score_acc = std::max(score_acc, s->score);
      } else {
        score_acc += s->score;
      }
    }
    pooled.score = pooling == PatientPooling::max
                       ? score_acc
                       : score_acc / static_cast<double>(slices.size());
    out.push_back(std::move(pooled));
  }
  return out;
}

}  // namespace ldct
