// From-scratch binary logistic regression trained by full-batch gradient
// descent on L2-regularized cross-entropy. Weights start at zero, so
// training is exactly reproducible; the seed is recorded but only matters
// if mini-batching is ever added.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldct/errors.hpp"
#include "ldct/features.hpp"

namespace ldct {

struct LogRegTrainConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-3;
  std::uint64_t seed = 0;
};

struct LogRegModel {
  std::array<double, kFeatureCount> weights{};
  double bias = 0.0;
  double l2 = 0.0;
  LogRegTrainConfig train_meta;
};

struct LogRegTrainResult {
  LogRegModel model;
  std::vector<double> loss_per_epoch;  // loss before each update, plus final
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline double predict_logreg(const LogRegModel& model, const FeatureVector& x) {
  double z = model.bias;
  for (int i = 0; i < kFeatureCount; ++i) z += model.weights[i] * x.values[i];
  return sigmoid(z);
}

namespace detail {

// Numerically safe -[y log p + (1-y) log(1-p)] written in terms of the logit.
inline double bce_from_logit(double z, int y) {
  // log(1 + exp(-|z|)) + max(z,0) - y*z
  const double m = std::max(z, 0.0);
  return m - y * z + std::log1p(std::exp(-std::abs(z)));
}

}  // namespace detail

/// Mean cross-entropy plus (l2/2)*||w||^2. The bias is not regularized.
inline double logreg_loss(const LogRegModel& model,
                          const std::vector<FeatureVector>& xs, const std::vector<int>& ys) {
  double loss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double z = model.bias;
    for (int k = 0; k < kFeatureCount; ++k) z += model.weights[k] * xs[i].values[k];
    loss += detail::bce_from_logit(z, ys[i]);
  }
  loss /= static_cast<double>(xs.size());
  double w2 = 0.0;
  for (double w : model.weights) w2 += w * w;
  return loss + 0.5 * model.l2 * w2;
}

/// Analytic gradient of logreg_loss with respect to (weights, bias).
inline void logreg_gradient(const LogRegModel& model,
                            const std::vector<FeatureVector>& xs, const std::vector<int>& ys,
                            std::array<double, kFeatureCount>& grad_w, double& grad_b) {
  grad_w.fill(0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double z = model.bias;
    for (int k = 0; k < kFeatureCount; ++k) z += model.weights[k] * xs[i].values[k];
    const double err = sigmoid(z) - ys[i];
    for (int k = 0; k < kFeatureCount; ++k) grad_w[k] += err * xs[i].values[k];
    grad_b += err;
  }
  const double inv_n = 1.0 / static_cast<double>(xs.size());
  for (int k = 0; k < kFeatureCount; ++k) grad_w[k] = grad_w[k] * inv_n + model.l2 * model.weights[k];
  grad_b *= inv_n;
}

inline LogRegTrainResult train_logreg(const std::vector<FeatureVector>& xs,
                                      const std::vector<int>& ys,
                                      const LogRegTrainConfig& config) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("train_logreg: need >= 2 examples with matching labels");
  }
  bool has_pos = false, has_neg = false;
  for (int y : ys) {
    if (y == 1) has_pos = true;
    else if (y == 0) has_neg = true;
    else throw std::invalid_argument("train_logreg: labels must be 0 or 1");
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("train_logreg: training set must contain both classes");
  }
  for (const auto& x : xs) {
    for (double v : x.values) {
      if (!std::isfinite(v)) throw std::invalid_argument("train_logreg: non-finite feature");
    }
  }

  LogRegTrainResult result;
  LogRegModel& m = result.model;
  m.l2 = config.l2;
  m.train_meta = config;

  std::array<double, kFeatureCount> grad_w{};
  double grad_b = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double loss = logreg_loss(m, xs, ys);
    if (!std::isfinite(loss)) {
      throw validation_error("train_logreg: non-finite loss at epoch " + std::to_string(epoch));
    }
    result.loss_per_epoch.push_back(loss);
    logreg_gradient(m, xs, ys, grad_w, grad_b);
    for (int k = 0; k < kFeatureCount; ++k) m.weights[k] -= config.learning_rate * grad_w[k];
    m.bias -= config.learning_rate * grad_b;
  }
  result.loss_per_epoch.push_back(logreg_loss(m, xs, ys));
  return result;
}

// Model (de)serialization: a small versioned JSON document.

inline nlohmann::json logreg_to_json(const LogRegModel& model) {
  nlohmann::json j;
  j["schema"] = "ldct-logreg/v1";
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["l2"] = model.l2;
  j["train_meta"] = {{"learning_rate", model.train_meta.learning_rate},
                     {"epochs", model.train_meta.epochs},
                     {"l2", model.train_meta.l2},
                     {"seed", model.train_meta.seed}};
  j["feature_schema_hash"] = feature_schema_hash();
  return j;
}

inline LogRegModel logreg_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "ldct-logreg/v1") {
    throw validation_error("logreg_from_json: unknown schema");
  }
  if (j.at("feature_schema_hash").get<std::uint64_t>() != feature_schema_hash()) {
    throw validation_error("logreg_from_json: feature schema mismatch");
  }
  LogRegModel m;
  const auto& w = j.at("weights");
  if (w.size() != kFeatureCount) throw validation_error("logreg_from_json: bad weight count");
  for (int i = 0; i < kFeatureCount; ++i) m.weights[i] = w[i].get<double>();
  m.bias = j.at("bias").get<double>();
  m.l2 = j.at("l2").get<double>();
  const auto& t = j.at("train_meta");
  m.train_meta.learning_rate = t.at("learning_rate").get<double>();
  m.train_meta.epochs = t.at("epochs").get<int>();
  m.train_meta.l2 = t.at("l2").get<double>();
  m.train_meta.seed = t.at("seed").get<std::uint64_t>();
  return m;
}

}  // namespace ldct
