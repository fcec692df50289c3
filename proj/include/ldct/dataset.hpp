// Manifest-driven dataset ingestion and patient-level split validation.
// Manifests are CSV files with header id,image_path,label,patient_id,split;
// image paths are resolved relative to the manifest's directory.

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldct/csv.hpp"
#include "ldct/errors.hpp"

namespace ldct {

enum class Split { train, val, test };

inline const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "?";
}

struct ManifestRecord {
  std::string id;
  std::string image_path;
  int label = 0;  // 1 = hemorrhage present
  std::string patient_id;
  Split split = Split::train;
};

struct Dataset {
  std::vector<ManifestRecord> records;
  std::string root;  // directory image paths are relative to

  std::vector<const ManifestRecord*> split_records(Split s) const {
    std::vector<const ManifestRecord*> out;
    for (const auto& r : records) {
      if (r.split == s) out.push_back(&r);
    }
    return out;
  }

  std::string resolve_path(const ManifestRecord& r) const {
    const std::filesystem::path p(r.image_path);
    if (p.is_absolute()) return r.image_path;
    return (std::filesystem::path(root) / p).string();
  }
};

inline Dataset load_manifest(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) throw validation_error("manifest '" + path + "': empty file");

  const auto header = csv::split_line(lines[0]);
  const std::vector<std::string> expected{"id", "image_path", "label", "patient_id", "split"};
  if (header != expected) {
    throw validation_error("manifest '" + path +
                           "': header must be id,image_path,label,patient_id,split");
  }

  Dataset ds;
  ds.root = std::filesystem::path(path).parent_path().string();
  if (ds.root.empty()) ds.root = ".";
  std::set<std::string> seen_ids;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const auto fields = csv::split_line(lines[i]);
    if (fields.size() != 5) {
      throw validation_error("manifest line " + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
    }
    ManifestRecord r;
    r.id = fields[0];
    r.image_path = fields[1];
    if (fields[2] == "0") {
      r.label = 0;
    } else if (fields[2] == "1") {
      r.label = 1;
    } else {
      throw validation_error("manifest line " + std::to_string(line_no) + ": label '" + fields[2] +
                             "' must be 0 or 1");
    }
    r.patient_id = fields[3];
    if (fields[4] == "train") {
      r.split = Split::train;
    } else if (fields[4] == "val") {
      r.split = Split::val;
    } else if (fields[4] == "test") {
      r.split = Split::test;
    } else {
      throw validation_error("manifest line " + std::to_string(line_no) + ": unknown split '" +
                             fields[4] + "'");
    }
    if (r.id.empty()) {
      throw validation_error("manifest line " + std::to_string(line_no) + ": empty id");
    }
    if (!seen_ids.insert(r.id).second) {
      throw validation_error("manifest line " + std::to_string(line_no) + ": duplicate id '" +
                             r.id + "'");
    }
    ds.records.push_back(std::move(r));
  }
  return ds;
}

/// Canonical CSV rendering of a dataset, matching the load_manifest schema.
inline std::string manifest_to_csv(const Dataset& ds) {
  std::ostringstream os;
  os << "id,image_path,label,patient_id,split\n";
  for (const auto& r : ds.records) {
    os << r.id << "," << r.image_path << "," << r.label << "," << r.patient_id << ","
       << split_name(r.split) << "\n";
  }
  return os.str();
}

/// Patient-level split purity report: PASS iff every patient maps to exactly
/// one split. Order-invariant over records.
struct SplitReport {
  bool pass = true;
  // patient -> the set of splits it appears in (only multi-split offenders)
  std::map<std::string, std::set<std::string>> leaked;
  std::map<std::string, std::size_t> split_counts;

  std::string to_text() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << ": patient-level split check\n";
    for (const auto& [split, n] : split_counts) {
      os << "  " << split << ": " << n << " records\n";
    }
    if (!pass) {
      os << "  leaked patients:\n";
      for (const auto& [patient, splits] : leaked) {
        os << "    " << patient << ": {";
        bool first = true;
        for (const auto& s : splits) {
          if (!first) os << ",";
          os << s;
          first = false;
        }
        os << "}\n";
      }
    }
    return os.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["split_counts"] = split_counts;
    nlohmann::json l = nlohmann::json::object();
    for (const auto& [patient, splits] : leaked) l[patient] = splits;
    j["leaked_patients"] = l;
    return j;
  }
};

inline SplitReport validate_splits(const Dataset& ds) {
  SplitReport report;
  std::map<std::string, std::set<std::string>> patient_splits;
  for (const auto& r : ds.records) {
    patient_splits[r.patient_id].insert(split_name(r.split));
    ++report.split_counts[split_name(r.split)];
  }
  for (const auto& [patient, splits] : patient_splits) {
    if (splits.size() > 1) {
      report.pass = false;
      report.leaked[patient] = splits;
    }
  }
  return report;
}

}  // namespace ldct
