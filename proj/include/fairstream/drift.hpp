#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fairstream/mixed_nb.hpp"

namespace fairstream {

struct DriftEvent {
  uint64_t step;   // 1-based index of the observation that fired
  double ocim;
  double mean;     // windowed OCIM mean at firing time
};

/// Fires when the current OCIM deviates from its windowed mean by more than
/// eta. The mean is taken over the most recent min(seen, window) values
/// (including the current one). After firing, a cooldown of one full window
/// suppresses further events.
class DriftDetector {
public:
  explicit DriftDetector(size_t window = 1000, double eta = 0.02)
      : capacity_(window), eta_(eta) {
    if (window == 0) throw std::invalid_argument("window must be > 0");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
    buffer_.reserve(window);
  }

  std::optional<DriftEvent> observe(double ocim) {
    ++seen_;
    if (buffer_.size() < capacity_) {
      buffer_.push_back(ocim);
      sum_ += ocim;
    } else {
      sum_ += ocim - buffer_[head_];
      buffer_[head_] = ocim;
      head_ = (head_ + 1) % capacity_;
    }
    const double mean = sum_ / static_cast<double>(buffer_.size());
    if (cooldown_ > 0) {
      --cooldown_;
      return std::nullopt;
    }
    if (std::abs(ocim - mean) > eta_) {
      cooldown_ = capacity_;
      return DriftEvent{seen_, ocim, mean};
    }
    return std::nullopt;
  }

  size_t window() const { return capacity_; }

private:
  std::vector<double> buffer_;  // ring once full
  size_t head_ = 0;
  size_t capacity_;
  double eta_;
  double sum_ = 0.0;
  size_t cooldown_ = 0;
  uint64_t seen_ = 0;
};

// Quantized concept signature: the OCIM bucket at detection time.
inline int ocim_signature(double ocim, double bucket_width = 0.05) {
  if (!(bucket_width > 0.0))
    throw std::invalid_argument("bucket_width must be > 0");
  return static_cast<int>(std::floor(ocim / bucket_width));
}

/// Snapshot store for concept recurrence, keyed by OCIM bucket. A drift at a
/// known signature restores the stored model; a drift at a new signature
/// snapshots the live model and learning continues on it.
class RecurrenceStore {
public:
  enum class Action { Stored, Restored };

  Action on_drift(int signature, MixedNaiveBayes& live_model) {
    auto it = entries_.find(signature);
    if (it != entries_.end()) {
      live_model = it->second;
      return Action::Restored;
    }
    entries_.emplace(signature, live_model);
    return Action::Stored;
  }

  size_t size() const { return entries_.size(); }
  bool contains(int signature) const { return entries_.count(signature) > 0; }

private:
  std::map<int, MixedNaiveBayes> entries_;
};

}  // namespace fairstream
