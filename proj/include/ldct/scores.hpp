// Score-file interop: the CSV surface through which external classifiers
// (or the built-in baseline) hand predictions to the metric suite. Schema:
// header "id,score", one row per test-split id, scores in [0,1].

#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ldct/clf_metrics.hpp"
#include "ldct/csv.hpp"
#include "ldct/dataset.hpp"
#include "ldct/errors.hpp"

namespace ldct {

struct ScoreRow {
  std::string id;
  double score = 0.0;
};

inline std::vector<ScoreRow> read_scores(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) throw validation_error("score file '" + path + "': empty file");
  const auto header = csv::split_line(lines[0]);
  if (header != std::vector<std::string>{"id", "score"}) {
    throw validation_error("score file '" + path + "': header must be id,score");
  }
  std::vector<ScoreRow> rows;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = csv::split_line(lines[i]);
    if (fields.size() != 2) {
      throw validation_error("score file line " + std::to_string(i + 1) + ": expected 2 fields");
    }
    ScoreRow r;
    r.id = fields[0];
    try {
      std::size_t used = 0;
      r.score = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("trailing chars");
    } catch (const std::exception&) {
      throw validation_error("score file line " + std::to_string(i + 1) + ": bad score '" +
                             fields[1] + "'");
    }
    if (!(r.score >= 0.0 && r.score <= 1.0)) {
      throw validation_error("score file line " + std::to_string(i + 1) + ": score " + fields[1] +
                             " outside [0,1]");
    }
    if (!seen.insert(r.id).second) {
      throw validation_error("score file '" + path + "': duplicate id '" + r.id + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_scores(const std::vector<Prediction>& preds, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw io_error("write_scores: cannot open '" + path + "'");
  std::fputs("id,score\n", f);
  for (const auto& p : preds) {
    std::fprintf(f, "%s,%.17g\n", p.id.c_str(), p.score);
  }
  std::fclose(f);
}

namespace detail {

inline std::string join_ids(const std::vector<std::string>& ids, std::size_t cap = 10) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < cap; ++i) {
    if (i) out += ",";
    out += ids[i];
  }
  if (ids.size() > cap) out += ",... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace detail

/// Joins a score file with the manifest's test split. The join must be a
/// bijection: missing, extra and non-test ids are all listed in the error.
inline std::vector<Prediction> join_scores(const std::vector<ScoreRow>& scores,
                                           const Dataset& ds) {
  std::map<std::string, const ManifestRecord*> test_ids;
  for (const ManifestRecord* r : ds.split_records(Split::test)) test_ids[r->id] = r;

  std::vector<std::string> missing, extra;
  std::map<std::string, double> by_id;
  for (const auto& s : scores) {
    if (!test_ids.count(s.id)) {
      extra.push_back(s.id);
    } else {
      by_id[s.id] = s.score;
    }
  }
  for (const auto& [id, rec] : test_ids) {
    (void)rec;
    if (!by_id.count(id)) missing.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "score/manifest join failed:";
    if (!missing.empty()) msg += " missing test ids: " + detail::join_ids(missing) + ";";
    if (!extra.empty()) msg += " unknown or non-test ids: " + detail::join_ids(extra) + ";";
    throw validation_error(msg);
  }

  std::vector<Prediction> preds;
  preds.reserve(scores.size());
  for (const ManifestRecord* r : ds.split_records(Split::test)) {
    Prediction p;
    p.id = r->id;
    p.score = by_id.at(r->id);
    p.label = r->label;
    p.patient_id = r->patient_id;
    preds.push_back(std::move(p));
  }
  return preds;
}

}  // namespace ldct
