// Declarative run configuration: a single JSON document with nested
// sections, overridable by CLI flags (flags win). The canonical dump is
// hashed into every report so results are self-describing.

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldct/artifacts.hpp"
#include "ldct/augment.hpp"
#include "ldct/baseline.hpp"
#include "ldct/clf_metrics.hpp"
#include "ldct/errors.hpp"
#include "ldct/rng.hpp"

namespace ldct {

struct RunConfig {
  std::vector<double> doses{1.0, 5.0, 10.0, 20.0, 40.0};
  std::vector<int> severities{1, 2, 3, 4, 5};
  std::vector<std::uint64_t> seeds{7, 17, 27};
  double threshold = 0.5;
  int bootstrap_n = 2000;
  int ece_bins = 15;
  double ci_level = 0.95;
  bool patient_level = false;
  PatientPooling pooling = PatientPooling::max;
  std::vector<SeverityLevel> severity_table = default_severity_table();
  BaselineConfig baseline;
  std::string manifest_path;
  std::string out_dir = "out";
};

namespace detail {

inline nlohmann::json denoiser_to_json(const DenoiserSpec& d) {
  switch (d.kind) {
    case DenoiserSpec::Kind::identity:
      return {{"kind", "identity"}};
    case DenoiserSpec::Kind::gaussian:
      return {{"kind", "gaussian"}, {"sigma", d.sigma}};
    case DenoiserSpec::Kind::nlm:
      return {{"kind", "nlm"}, {"patch", d.patch}, {"window", d.window}, {"h", d.h}};
  }
  throw std::logic_error("denoiser_to_json: bad kind");
}

inline DenoiserSpec denoiser_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return DenoiserSpec::identity();
  if (kind == "gaussian") return DenoiserSpec::gaussian(j.value("sigma", 1.0));
  if (kind == "nlm") {
    return DenoiserSpec::nlm(j.value("patch", 5), j.value("window", 11), j.value("h", 0.1));
  }
  throw validation_error("config: unknown denoiser kind '" + kind + "'");
}

}  // namespace detail

inline nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["doses"] = c.doses;
  j["severities"] = c.severities;
  j["seeds"] = c.seeds;
  j["threshold"] = c.threshold;
  j["bootstrap_n"] = c.bootstrap_n;
  j["ece_bins"] = c.ece_bins;
  j["ci_level"] = c.ci_level;
  j["patient_level"] = {{"enabled", c.patient_level},
                        {"pooling", c.pooling == PatientPooling::max ? "max" : "mean"}};
  nlohmann::json table = nlohmann::json::array();
  for (const auto& s : c.severity_table) {
    table.push_back({{"level", s.level},
                     {"lambda", s.lambda},
                     {"motion_len", s.motion_len},
                     {"ring_alpha", s.ring_alpha}});
  }
  j["severity_table"] = table;
  nlohmann::json b;
  b["denoiser"] = detail::denoiser_to_json(c.baseline.denoiser);
  b["learning_rate"] = c.baseline.train.learning_rate;
  b["epochs"] = c.baseline.train.epochs;
  b["l2"] = c.baseline.train.l2;
  b["augment_copies"] = c.baseline.augment_copies;
  if (c.baseline.augment) {
    const auto& a = *c.baseline.augment;
    b["augment"] = {{"rotate_deg_max", a.rotate_deg_max},
                    {"flip_h_prob", a.flip_h_prob},
                    {"flip_v_prob", a.flip_v_prob},
                    {"translate_frac_max", a.translate_frac_max}};
  } else {
    b["augment"] = nullptr;
  }
  j["baseline"] = b;
  j["paths"] = {{"manifest", c.manifest_path}, {"out", c.out_dir}};
  return j;
}

inline void validate_config(const RunConfig& c) {
  if (c.doses.empty()) throw validation_error("config: doses must be nonempty");
  for (double d : c.doses) {
    if (!(d > 0.0)) throw validation_error("config: dose lambda must be > 0");
  }
  if (c.seeds.empty()) throw validation_error("config: seeds must be nonempty");
  if (!(c.threshold > 0.0 && c.threshold < 1.0)) {
    throw validation_error("config: threshold must be in (0,1)");
  }
  if (c.bootstrap_n < 1) throw validation_error("config: bootstrap_n must be >= 1");
  if (c.ece_bins < 1) throw validation_error("config: ece_bins must be >= 1");
  if (!(c.ci_level > 0.0 && c.ci_level < 1.0)) {
    throw validation_error("config: ci_level must be in (0,1)");
  }
  validate_severity_table(c.severity_table);
  for (int s : c.severities) resolve_severity(c.severity_table, s);
}

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("doses")) c.doses = j["doses"].get<std::vector<double>>();
  if (j.contains("severities")) c.severities = j["severities"].get<std::vector<int>>();
  if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (j.contains("threshold")) c.threshold = j["threshold"].get<double>();
  if (j.contains("bootstrap_n")) c.bootstrap_n = j["bootstrap_n"].get<int>();
  if (j.contains("ece_bins")) c.ece_bins = j["ece_bins"].get<int>();
  if (j.contains("ci_level")) c.ci_level = j["ci_level"].get<double>();
  if (j.contains("patient_level")) {
    const auto& p = j["patient_level"];
    c.patient_level = p.value("enabled", false);
    const std::string pooling = p.value("pooling", "max");
    if (pooling == "max") {
      c.pooling = PatientPooling::max;
    } else if (pooling == "mean") {
      c.pooling = PatientPooling::mean;
    } else {
      throw validation_error("config: pooling must be 'max' or 'mean'");
    }
  }
  if (j.contains("severity_table")) {
    c.severity_table.clear();
    for (const auto& row : j["severity_table"]) {
      SeverityLevel s;
      s.level = row.at("level").get<int>();
      s.lambda = row.at("lambda").get<double>();
      s.motion_len = row.at("motion_len").get<int>();
      s.ring_alpha = row.at("ring_alpha").get<double>();
      c.severity_table.push_back(s);
    }
  }
  if (j.contains("baseline")) {
    const auto& b = j["baseline"];
    if (b.contains("denoiser")) c.baseline.denoiser = detail::denoiser_from_json(b["denoiser"]);
    c.baseline.train.learning_rate = b.value("learning_rate", c.baseline.train.learning_rate);
    c.baseline.train.epochs = b.value("epochs", c.baseline.train.epochs);
    c.baseline.train.l2 = b.value("l2", c.baseline.train.l2);
    c.baseline.augment_copies = b.value("augment_copies", c.baseline.augment_copies);
    if (b.contains("augment") && !b["augment"].is_null()) {
      AugmentConfig a;
      const auto& ja = b["augment"];
      a.rotate_deg_max = ja.value("rotate_deg_max", a.rotate_deg_max);
      a.flip_h_prob = ja.value("flip_h_prob", a.flip_h_prob);
      a.flip_v_prob = ja.value("flip_v_prob", a.flip_v_prob);
      a.translate_frac_max = ja.value("translate_frac_max", a.translate_frac_max);
      c.baseline.augment = a;
    }
  }
  if (j.contains("paths")) {
    c.manifest_path = j["paths"].value("manifest", "");
    c.out_dir = j["paths"].value("out", c.out_dir);
  }
  validate_config(c);
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

/// FNV-1a hash of the canonical JSON dump, rendered as fixed-width hex.
inline std::string config_hash(const RunConfig& c) {
  const std::uint64_t h = fnv1a64(config_to_json(c).dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ldct
