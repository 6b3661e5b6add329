#pragma once

#include "fairstream/mixed_nb.hpp"
#include "fairstream/schema.hpp"

namespace fairstream {

enum class MitigationDirection { None, TowardProtected, TowardNonProtected };

struct MitigationAction {
  MitigationDirection direction = MitigationDirection::None;
  CountShift deltas;
};

/// Cumulative statistical parity tracker plus the count-shift decision logic.
/// disc > 0 means the protected group S- receives positive predictions at a
/// lower rate than S+, i.e. S- is disadvantaged.
class FairnessTracker {
public:
  FairnessTracker(double gamma = 1.0, double epsilon = 1e-6,
                  double lambda = 0.001)
      : gamma_(gamma), epsilon_(epsilon), lambda_(lambda) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (lambda < 0.0 || lambda >= 1.0)
      throw std::invalid_argument("lambda must be in [0,1)");
  }

  void record_prediction(SensitiveGroup group, BinaryLabel predicted) {
    const bool pos = predicted == BinaryLabel::Positive;
    if (group == SensitiveGroup::Protected) {
      seen_protected_ += 1.0;
      if (pos) pos_pred_protected_ += 1.0;
    } else {
      seen_nonprotected_ += 1.0;
      if (pos) pos_pred_nonprotected_ += 1.0;
    }
  }

  double discrimination() const {
    return rate(pos_pred_nonprotected_, seen_nonprotected_) -
           rate(pos_pred_protected_, seen_protected_);
  }

  // Algorithm: when S- is disadvantaged (disc > epsilon), move lambda of the
  // protected group's negative-class mass to its positive class and lambda of
  // the non-protected group's positive-class mass to its negative class. The
  // mirrored branch handles reverse discrimination. Deltas sum to zero within
  // each group, so group totals are conserved.
  MitigationAction decide_mitigation(const SensitiveCounts& c) const {
    const double disc = discrimination();
    MitigationAction action;
    if (disc > epsilon_) {
      const double m_prot = lambda_ * c.neg_protected;
      const double m_non = lambda_ * c.pos_nonprotected;
      action.direction = MitigationDirection::TowardProtected;
      action.deltas = {+m_prot, -m_prot, -m_non, +m_non};
    } else if (disc < -epsilon_) {
      const double m_prot = lambda_ * c.pos_protected;
      const double m_non = lambda_ * c.neg_nonprotected;
      action.direction = MitigationDirection::TowardNonProtected;
      action.deltas = {-m_prot, +m_prot, +m_non, -m_non};
    }
    return action;
  }

  double pos_pred_protected() const { return pos_pred_protected_; }
  double seen_protected() const { return seen_protected_; }
  double pos_pred_nonprotected() const { return pos_pred_nonprotected_; }
  double seen_nonprotected() const { return seen_nonprotected_; }
  double epsilon() const { return epsilon_; }
  double lambda() const { return lambda_; }
  double gamma() const { return gamma_; }

private:
  double rate(double num, double seen) const {
    const double denom = seen + gamma_;
    return denom > 0.0 ? num / denom : 0.0;
  }

  double pos_pred_protected_ = 0.0;
  double seen_protected_ = 0.0;
  double pos_pred_nonprotected_ = 0.0;
  double seen_nonprotected_ = 0.0;
  double gamma_;
  double epsilon_;
  double lambda_;
};

}  // namespace fairstream
