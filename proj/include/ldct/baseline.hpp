// The classical denoise-then-classify baseline: corrupt, optionally denoise,
// extract intensity features, fit logistic regression on the train split and
// score the held-out test split.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldct/artifacts.hpp"
#include "ldct/augment.hpp"
#include "ldct/clf_metrics.hpp"
#include "ldct/dataset.hpp"
#include "ldct/denoise.hpp"
#include "ldct/features.hpp"
#include "ldct/logreg.hpp"
#include "ldct/png_io.hpp"

namespace ldct {

struct BaselineConfig {
  DenoiserSpec denoiser = DenoiserSpec::identity();
  LogRegTrainConfig train;
  // Augmentation is applied to the train split only; each train image
  // contributes `augment_copies` extra augmented feature rows.
  std::optional<AugmentConfig> augment;
  int augment_copies = 1;
};

struct FeaturizedItem {
  const ManifestRecord* record;
  FeatureVector features;
};

/// Corrupts, denoises and featurizes one split. Per-image randomness is keyed
/// by (run_seed, fnv1a64(id)), so results are independent of iteration order
/// and identical for every pipeline evaluated at the same seed. Evaluation
/// splits must be featurized with `augment_cfg == nullptr`; run_baseline
/// passes augmentation for the train split only.
inline std::vector<FeaturizedItem> featurize_split(
    const Dataset& ds, Split split, const CorruptionSpec& corruption,
    const DenoiserSpec& denoiser, std::uint64_t run_seed,
    const AugmentConfig* augment_cfg = nullptr, int augment_copies = 1) {
  std::vector<FeaturizedItem> out;
  for (const ManifestRecord* rec : ds.split_records(split)) {
    const GrayImage clean = load_image(ds.resolve_path(*rec));
    const SeedSpec seed{run_seed, fnv1a64(rec->id)};
    const GrayImage corrupted = apply_corruption(clean, corruption, seed);
    const GrayImage denoised = denoise(corrupted, denoiser);
    out.push_back({rec, extract_features(denoised)});
    if (augment_cfg != nullptr) {
      for (int copy = 0; copy < augment_copies; ++copy) {
        const std::uint64_t item_seed =
            fnv1a64(rec->id) ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(copy + 1));
        const GrayImage aug = augment(clean, *augment_cfg, item_seed);
        const GrayImage aug_corrupted = apply_corruption(aug, corruption, seed);
        out.push_back({rec, extract_features(denoise(aug_corrupted, denoiser))});
      }
    }
  }
  return out;
}

struct BaselineRun {
  std::vector<Prediction> predictions;  // held-out test split, manifest order
  LogRegModel model;
};

/// Runs the full baseline at one corruption setting and seed. Train and test
/// images are corrupted under the same spec; the model never sees the test
/// split. Deterministic given (dataset, corruption, config, run_seed).
inline BaselineRun run_baseline(const Dataset& ds, const CorruptionSpec& corruption,
                                const BaselineConfig& config, std::uint64_t run_seed) {
  const auto train = featurize_split(ds, Split::train, corruption, config.denoiser, run_seed,
                                     config.augment ? &*config.augment : nullptr,
                                     config.augment_copies);
  if (train.empty()) throw validation_error("run_baseline: empty train split");

  std::vector<FeatureVector> xs;
  std::vector<int> ys;
  xs.reserve(train.size());
  ys.reserve(train.size());
  for (const auto& item : train) {
    xs.push_back(item.features);
    ys.push_back(item.record->label);
  }

  LogRegTrainConfig train_cfg = config.train;
  train_cfg.seed = run_seed;
  BaselineRun run;
  run.model = train_logreg(xs, ys, train_cfg).model;

  const auto test = featurize_split(ds, Split::test, corruption, config.denoiser, run_seed);
  if (test.empty()) throw validation_error("run_baseline: empty test split");
  for (const auto& item : test) {
    Prediction p;
    p.id = item.record->id;
    p.score = predict_logreg(run.model, item.features);
    p.label = item.record->label;
    p.patient_id = item.record->patient_id;
    run.predictions.push_back(std::move(p));
  }
  return run;
}

}  // namespace ldct
