#include "fairstream/harness.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fairstream {

VariantConfig variant_preset(std::string_view name) {
  VariantConfig c;
  if (name == "mnb") {
    // defaults
  } else if (name == "damnb") {
    c.use_mitigation = true;
  } else if (name == "dcamnb") {
    c.use_mitigation = true;
    c.use_imbalance_weights = true;
  } else {
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
  }
  return c;
}

Metrics compute_metrics(double tp, double fp, double tn, double fn,
                        double disc) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.tn = tn;
  m.fn = fn;
  m.steps = tp + fp + tn + fn;
  m.tpr = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  m.tnr = tn + fp > 0 ? tn / (tn + fp) : 0.0;
  m.recall = m.tpr;
  m.balanced_accuracy = (m.tpr + m.tnr) / 2.0;
  m.gmean = std::sqrt(m.tpr * m.tnr);
  m.disc_score = disc;
  return m;
}

StreamResult run_stream(std::span<const Instance> instances,
                        const ModelLayout& layout, const VariantConfig& config,
                        bool want_trace, const StepObserver& observer) {
  std::vector<uint32_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0u);
  return run_stream(instances, order, layout, config, want_trace, observer);
}

StreamResult run_stream(std::span<const Instance> instances,
                        std::span<const uint32_t> order,
                        const ModelLayout& layout, const VariantConfig& config,
                        bool want_trace, const StepObserver& observer) {
  if (order.empty()) throw std::invalid_argument("run_stream: empty stream");

  const auto t0 = std::chrono::steady_clock::now();

  MixedNaiveBayes model(layout);
  ImbalanceMonitor imbalance(config.alpha);
  FairnessTracker fairness(config.gamma, config.epsilon, config.lambda);
  DriftDetector detector(config.window, config.eta);
  RecurrenceStore store;

  StreamResult result;
  if (want_trace) result.trace.reserve(order.size());
  uint64_t tp = 0, fp = 0, tn = 0, fn = 0;

  uint64_t step = 0;
  for (uint32_t idx : order) {
    ++step;
    const Instance& inst = instances[idx];

    // 1. test
    if (observer) observer(step, StepPhase::Predict);
    const Posterior post = model.predict(inst);
    const bool pred_pos = post.predicted == BinaryLabel::Positive;
    const bool true_pos = inst.label == BinaryLabel::Positive;
    if (true_pos)
      pred_pos ? ++tp : ++fn;
    else
      pred_pos ? ++fp : ++tn;

    // 2. fairness bookkeeping on the prediction
    fairness.record_prediction(inst.group, post.predicted);

    // 3. imbalance monitor on the true label
    imbalance.update(inst.label);
    const double ocim = imbalance.ocim();

    // 4. drift / recurrence
    bool drifted = false;
    if (config.use_drift_store) {
      if (auto event = detector.observe(ocim)) {
        drifted = true;
        store.on_drift(ocim_signature(event->ocim, config.bucket_width), model);
      }
    }

    // 5. instance weight
    const double weight =
        config.use_imbalance_weights ? imbalance.instance_weight(inst.label)
                                     : 1.0;

    // 6. train
    if (observer) observer(step, StepPhase::Train);
    model.train(inst, weight);

    // 7. mitigation on the cumulative disc
    MitigationDirection mitigation = MitigationDirection::None;
    if (config.use_mitigation) {
      const MitigationAction action =
          fairness.decide_mitigation(model.sensitive_counts());
      if (action.direction != MitigationDirection::None) {
        model.apply_count_shift(action.deltas);
        mitigation = action.direction;
      }
    }

    if (want_trace)
      result.trace.push_back({step, inst.label, post.predicted, inst.group,
                              weight, ocim, fairness.discrimination(), drifted,
                              mitigation});
  }

  result.report.metrics =
      compute_metrics(static_cast<double>(tp), static_cast<double>(fp),
                      static_cast<double>(tn), static_cast<double>(fn),
                      fairness.discrimination());
  result.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

std::vector<uint32_t> shuffled_order(size_t n, uint64_t seed) {
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 rng(seed);
  // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
  // implementation-defined, this is reproducible everywhere.
  for (size_t i = n; i > 1; --i) {
    const size_t j = rng() % i;
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

EvalReport run_shuffled(std::span<const Instance> instances,
                        const ModelLayout& layout, const VariantConfig& config,
                        int shuffles, std::vector<StepRecord>* first_trace) {
  if (shuffles < 1) throw std::invalid_argument("shuffles must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  EvalReport report;
  for (int s = 0; s < shuffles; ++s) {
    const auto order =
        shuffled_order(instances.size(), config.rng_seed + static_cast<uint64_t>(s));
    const bool trace_this = first_trace != nullptr && s == 0;
    StreamResult r = run_stream(instances, order, layout, config, trace_this);
    if (trace_this) *first_trace = std::move(r.trace);
    report.per_shuffle.push_back(r.report.metrics);
  }

  Metrics& avg = report.metrics;
  const double n = static_cast<double>(shuffles);
  for (const Metrics& m : report.per_shuffle) {
    avg.tp += m.tp / n;
    avg.fp += m.fp / n;
    avg.tn += m.tn / n;
    avg.fn += m.fn / n;
    avg.steps += m.steps / n;
    avg.recall += m.recall / n;
    avg.balanced_accuracy += m.balanced_accuracy / n;
    avg.gmean += m.gmean / n;
    avg.tpr += m.tpr / n;
    avg.tnr += m.tnr / n;
    avg.disc_score += m.disc_score / n;
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace fairstream
