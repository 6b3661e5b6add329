#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fairstream/drift.hpp"
#include "fairstream/fairness.hpp"
#include "fairstream/imbalance.hpp"
#include "fairstream/mixed_nb.hpp"

namespace fairstream {

/// Which modules are wired into the test-then-train loop.
/// mnb: both flags off; damnb: mitigation only; dcamnb: both on.
struct VariantConfig {
  bool use_imbalance_weights = false;
  bool use_mitigation = false;
  bool use_drift_store = false;

  double alpha = 0.9;
  double epsilon = 1e-6;
  double lambda = 0.001;
  double gamma = 1.0;
  size_t window = 1000;
  double eta = 0.02;
  double bucket_width = 0.05;
  uint64_t rng_seed = 0;
};

// Throws std::invalid_argument for anything but mnb/damnb/dcamnb.
VariantConfig variant_preset(std::string_view name);

struct StepRecord {
  uint64_t step;  // 1-based
  BinaryLabel truth;
  BinaryLabel predicted;
  SensitiveGroup group;
  double weight;
  double ocim;
  double disc;
  bool drift;
  MitigationDirection mitigation;
};

/// Confusion counts and derived metrics for one pass (or an average over
/// shuffles, in which case the counts are arithmetic means).
struct Metrics {
  double tp = 0, fp = 0, tn = 0, fn = 0;
  double steps = 0;
  double recall = 0, balanced_accuracy = 0, gmean = 0, tpr = 0, tnr = 0;
  double disc_score = 0;
};

// Zero-denominator rates come out as 0.
Metrics compute_metrics(double tp, double fp, double tn, double fn, double disc);

struct EvalReport {
  Metrics metrics;
  double runtime_seconds = 0;
  std::vector<Metrics> per_shuffle;  // empty for plain stream runs
};

struct StreamResult {
  EvalReport report;
  std::vector<StepRecord> trace;
};

enum class StepPhase { Predict, Train };
using StepObserver = std::function<void(uint64_t step, StepPhase phase)>;

// One prequential pass in the given order. Per instance: predict, record the
// prediction (fairness + confusion), update the imbalance monitor with the
// true label, feed OCIM to the drift detector (recurrence store if enabled),
// weight, train, then mitigate if the cumulative disc exceeds epsilon.
// Throws std::invalid_argument on an empty stream.
StreamResult run_stream(std::span<const Instance> instances,
                        const ModelLayout& layout, const VariantConfig& config,
                        bool want_trace = false,
                        const StepObserver& observer = {});
StreamResult run_stream(std::span<const Instance> instances,
                        std::span<const uint32_t> order,
                        const ModelLayout& layout, const VariantConfig& config,
                        bool want_trace = false,
                        const StepObserver& observer = {});

// Deterministic Fisher-Yates permutation from a seeded mt19937_64; the same
// seed always yields the same order on every platform.
std::vector<uint32_t> shuffled_order(size_t n, uint64_t seed);

// Runs `shuffles` permutations seeded rng_seed, rng_seed+1, ... and averages
// every metric arithmetically. When first_trace is non-null it receives the
// step trace of the first shuffle.
EvalReport run_shuffled(std::span<const Instance> instances,
                        const ModelLayout& layout, const VariantConfig& config,
                        int shuffles = 10,
                        std::vector<StepRecord>* first_trace = nullptr);

}  // namespace fairstream
