#pragma once

#include <algorithm>
#include <cstdint>

#include "fairstream/schema.hpp"

namespace fairstream {

/// Decayed class-prevalence tracker. cp+ and cp- start at 0.5, are updated as
/// a convex combination on every arriving true label, and always sum to 1.
/// OCIM = cp+ - cp- is the stream's imbalance signal.
class ImbalanceMonitor {
public:
  explicit ImbalanceMonitor(double alpha = 0.9, double cp_positive0 = 0.5)
      : cp_pos_(cp_positive0), cp_neg_(1.0 - cp_positive0), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must be in (0,1)");
    if (!(cp_positive0 >= 0.0 && cp_positive0 <= 1.0))
      throw std::invalid_argument("initial cp must be in [0,1]");
  }

  void update(BinaryLabel truth) {
    const double ind_pos = truth == BinaryLabel::Positive ? 1.0 : 0.0;
    cp_pos_ = alpha_ * cp_pos_ + (1.0 - alpha_) * ind_pos;
    cp_neg_ = alpha_ * cp_neg_ + (1.0 - alpha_) * (1.0 - ind_pos);
    ++seen_;
  }

  double cp_positive() const { return cp_pos_; }
  double cp_negative() const { return cp_neg_; }
  double ocim() const { return cp_pos_ - cp_neg_; }
  uint64_t seen() const { return seen_; }

  // Training weight for the arriving instance: 1 unless the instance belongs
  // to the current minority class, in which case the balanced class weight
  // CW_y = 1/(2 cp_y) is stretched by the imbalance. Clamped to [1e-3, 1e3]
  // so a nearly vanished class cannot blow up the model's moments.
  double instance_weight(BinaryLabel truth) const {
    const double ocim_t = ocim();
    double w = 1.0;
    if (truth == BinaryLabel::Negative && ocim_t > 0.0 && cp_neg_ > 0.0) {
      w = class_weight(cp_neg_) / (1.0 - ocim_t);
    } else if (truth == BinaryLabel::Positive && ocim_t < 0.0 && cp_pos_ > 0.0) {
      w = class_weight(cp_pos_) / (1.0 + ocim_t);
    }
    return std::clamp(w, kMinWeight, kMaxWeight);
  }

  static constexpr double kMinWeight = 1e-3;
  static constexpr double kMaxWeight = 1e3;

private:
  static double class_weight(double cp) { return 1.0 / (2.0 * cp); }

  double cp_pos_;
  double cp_neg_;
  double alpha_;
  uint64_t seen_ = 0;
};

}  // namespace fairstream
