#pragma once

#include <nlohmann/json_fwd.hpp>

#include "fairstream/schema.hpp"

namespace fairstream {

/// Weighted running moments of one continuous attribute for one class
/// (weighted generalization of the Welford recurrences; unit weights reduce
/// to the classic ones).
struct GaussianStat {
  double weight = 0.0;  // W
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x, double w) {
    weight += w;
    const double delta = x - mean;
    mean += (w / weight) * delta;
    m2 += w * delta * (x - mean);
  }

  double variance() const { return weight > 0.0 ? m2 / weight : 0.0; }

  bool operator==(const GaussianStat&) const = default;
};

struct Posterior {
  double log_score_positive;
  double log_score_negative;
  BinaryLabel predicted;
};

/// The four weighted cells of the sensitive attribute's count table:
/// N(C+,S-), N(C-,S-), N(C+,S+), N(C-,S+).
struct SensitiveCounts {
  double pos_protected = 0.0;
  double neg_protected = 0.0;
  double pos_nonprotected = 0.0;
  double neg_nonprotected = 0.0;
};

struct CountShift {
  double d_pos_protected = 0.0;
  double d_neg_protected = 0.0;
  double d_pos_nonprotected = 0.0;
  double d_neg_nonprotected = 0.0;

  bool is_zero() const {
    return d_pos_protected == 0.0 && d_neg_protected == 0.0 &&
           d_pos_nonprotected == 0.0 && d_neg_nonprotected == 0.0;
  }
};

/// Online Mixed Naive Bayes for binary classification: per-class weighted
/// count tables for nominal attributes plus weighted running Gaussian moments
/// for continuous ones. All posterior arithmetic is done in log space.
///
/// A model is a plain value: copying it is the snapshot operation and
/// assignment is restore.
class MixedNaiveBayes {
public:
  MixedNaiveBayes() = default;
  explicit MixedNaiveBayes(ModelLayout layout);

  // Log scores are always finite: priors and nominal likelihoods are add-1
  // smoothed and Gaussian variances are floored. An exact tie (including the
  // cold-start case) predicts negative.
  Posterior predict(const Instance& inst) const;

  // weight must be > 0 (throws std::invalid_argument otherwise).
  void train(const Instance& inst, double weight);

  SensitiveCounts sensitive_counts() const;

  // Applies the four deltas to the sensitive attribute's cells and recomputes
  // the affected row totals. Class priors and all other attribute tables are
  // untouched. A shift that would drive any cell negative is rejected
  // (std::invalid_argument) and leaves the model unchanged.
  void apply_count_shift(const CountShift& shift);

  double class_weight_total(BinaryLabel c) const {
    return stats(c).weight_total;
  }
  double nominal_count(BinaryLabel c, int slot, int32_t category) const;
  double nominal_row_total(BinaryLabel c, int slot) const {
    return stats(c).row_total.at(slot);
  }
  const GaussianStat& gaussian(BinaryLabel c, int slot) const {
    return stats(c).gauss.at(slot);
  }
  int observed_domain_size(int slot) const { return domain_size_.at(slot); }
  const ModelLayout& layout() const { return layout_; }

  // Versioned snapshot document; round trips exactly through from_json.
  nlohmann::json to_json() const;
  static MixedNaiveBayes from_json(const nlohmann::json& j);

  bool operator==(const MixedNaiveBayes&) const = default;

  static constexpr double kVarianceFloor = 1e-9;

private:
  struct ClassStats {
    double weight_total = 0.0;
    std::vector<std::vector<double>> counts;  // [nominal slot][category id]
    std::vector<double> row_total;            // [nominal slot]
    std::vector<GaussianStat> gauss;          // [continuous slot]
    bool operator==(const ClassStats&) const = default;
  };

  ClassStats& stats(BinaryLabel c) {
    return c == BinaryLabel::Positive ? pos_ : neg_;
  }
  const ClassStats& stats(BinaryLabel c) const {
    return c == BinaryLabel::Positive ? pos_ : neg_;
  }

  double class_log_score(const ClassStats& cs, const Instance& inst,
                         double prior_total) const;

  ModelLayout layout_;
  ClassStats pos_, neg_;
  // Observed category domain per nominal slot, shared across classes.
  std::vector<std::vector<uint8_t>> seen_;
  std::vector<int> domain_size_;
};

}  // namespace fairstream
