#include "fairstream/mixed_nb.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fairstream {

namespace {
constexpr int kSnapshotVersion = 1;
}

MixedNaiveBayes::MixedNaiveBayes(ModelLayout layout) : layout_(std::move(layout)) {
  const size_t n = layout_.nominal_names.size();
  const size_t c = layout_.continuous_names.size();
  for (ClassStats* cs : {&pos_, &neg_}) {
    cs->counts.resize(n);
    cs->row_total.assign(n, 0.0);
    cs->gauss.resize(c);
  }
  seen_.resize(n);
  domain_size_.assign(n, 0);
}

double MixedNaiveBayes::nominal_count(BinaryLabel c, int slot,
                                      int32_t category) const {
  const auto& row = stats(c).counts.at(slot);
  if (category < 0 || static_cast<size_t>(category) >= row.size()) return 0.0;
  return row[category];
}

double MixedNaiveBayes::class_log_score(const ClassStats& cs,
                                        const Instance& inst,
                                        double prior_total) const {
  // Add-1 smoothed prior keeps the score finite before both classes are seen
  // and reduces to W_C / total once counts dominate.
  double score = std::log((cs.weight_total + 1.0) / (prior_total + 2.0));

  for (size_t slot = 0; slot < layout_.nominal_names.size(); ++slot) {
    const int k = domain_size_[slot];
    if (k == 0) continue;  // attribute never observed in training: neutral
    const int32_t id = inst.nominal[slot];
    double count = 0.0;
    if (id >= 0 && static_cast<size_t>(id) < cs.counts[slot].size())
      count = cs.counts[slot][id];
    score += std::log((count + 1.0) / (cs.row_total[slot] + k));
  }

  for (size_t slot = 0; slot < layout_.continuous_names.size(); ++slot) {
    const GaussianStat& g = cs.gauss[slot];
    if (g.weight < 2.0) continue;  // too little class weight for a variance
    const double var = std::max(g.variance(), kVarianceFloor);
    const double d = inst.continuous[slot] - g.mean;
    score += -0.5 * std::log(2.0 * std::numbers::pi * var) -
             d * d / (2.0 * var);
  }
  return score;
}

Posterior MixedNaiveBayes::predict(const Instance& inst) const {
  const double total = pos_.weight_total + neg_.weight_total;
  Posterior p;
  p.log_score_positive = class_log_score(pos_, inst, total);
  p.log_score_negative = class_log_score(neg_, inst, total);
  // Ties (including cold start) predict negative.
  p.predicted = p.log_score_positive > p.log_score_negative
                    ? BinaryLabel::Positive
                    : BinaryLabel::Negative;
  return p;
}

void MixedNaiveBayes::train(const Instance& inst, double weight) {
  if (!(weight > 0.0))
    throw std::invalid_argument("train: weight must be > 0");
  ClassStats& cs = stats(inst.label);
  cs.weight_total += weight;

  for (size_t slot = 0; slot < layout_.nominal_names.size(); ++slot) {
    const int32_t id = inst.nominal[slot];
    if (id < 0) throw std::invalid_argument("train: negative category id");
    auto& row = cs.counts[slot];
    if (static_cast<size_t>(id) >= row.size()) row.resize(id + 1, 0.0);
    row[id] += weight;
    cs.row_total[slot] += weight;

    auto& seen = seen_[slot];
    if (static_cast<size_t>(id) >= seen.size()) seen.resize(id + 1, 0);
    if (!seen[id]) {
      seen[id] = 1;
      ++domain_size_[slot];
    }
  }

  for (size_t slot = 0; slot < layout_.continuous_names.size(); ++slot)
    cs.gauss[slot].add(inst.continuous[slot], weight);
}

SensitiveCounts MixedNaiveBayes::sensitive_counts() const {
  if (layout_.sensitive_slot < 0)
    throw std::logic_error("model layout has no sensitive attribute");
  const int s = layout_.sensitive_slot;
  return {nominal_count(BinaryLabel::Positive, s, 0),
          nominal_count(BinaryLabel::Negative, s, 0),
          nominal_count(BinaryLabel::Positive, s, 1),
          nominal_count(BinaryLabel::Negative, s, 1)};
}

namespace {

// Moves weight between the two classes of one sensitive group. The group
// total pos+neg is preserved exactly: the larger resulting cell is taken as
// the anchor and the other derived as the complement, so re-summing the two
// cells reproduces the original total bit for bit.
void shift_group(double& pos, double& neg, double d_pos, double d_neg) {
  const double total = pos + neg;
  const double t_pos = pos + d_pos;
  const double t_neg = neg + d_neg;
  if (t_pos < 0.0 || t_neg < 0.0)
    throw std::invalid_argument(
        "apply_count_shift: shift would drive a sensitive cell negative");
  if (d_pos == 0.0 && d_neg == 0.0) return;
  if (t_pos >= t_neg) {
    pos = t_pos;
    neg = total - t_pos;
  } else {
    neg = t_neg;
    pos = total - t_neg;
  }
}

}  // namespace

void MixedNaiveBayes::apply_count_shift(const CountShift& shift) {
  if (layout_.sensitive_slot < 0)
    throw std::logic_error("model layout has no sensitive attribute");
  const int s = layout_.sensitive_slot;
  for (ClassStats* cs : {&pos_, &neg_}) {
    auto& row = cs->counts[s];
    if (row.size() < 2) row.resize(2, 0.0);
  }
  double p_prot = pos_.counts[s][0], n_prot = neg_.counts[s][0];
  double p_non = pos_.counts[s][1], n_non = neg_.counts[s][1];
  // Validate both groups before mutating anything.
  {
    double a = p_prot, b = n_prot;
    shift_group(a, b, shift.d_pos_protected, shift.d_neg_protected);
    double c = p_non, d = n_non;
    shift_group(c, d, shift.d_pos_nonprotected, shift.d_neg_nonprotected);
    p_prot = a;
    n_prot = b;
    p_non = c;
    n_non = d;
  }
  pos_.counts[s][0] = p_prot;
  neg_.counts[s][0] = n_prot;
  pos_.counts[s][1] = p_non;
  neg_.counts[s][1] = n_non;
  for (ClassStats* cs : {&pos_, &neg_})
    cs->row_total[s] =
        std::accumulate(cs->counts[s].begin(), cs->counts[s].end(), 0.0);
}

namespace {

nlohmann::json class_to_json(const std::string& tag, double weight_total,
                             const std::vector<std::vector<double>>& counts,
                             const std::vector<double>& row_total,
                             const std::vector<GaussianStat>& gauss) {
  nlohmann::json g = nlohmann::json::array();
  for (const auto& s : gauss)
    g.push_back({{"weight", s.weight}, {"mean", s.mean}, {"m2", s.m2}});
  return {{"class", tag},
          {"weight_total", weight_total},
          {"counts", counts},
          {"row_total", row_total},
          {"gaussian", g}};
}

}  // namespace

nlohmann::json MixedNaiveBayes::to_json() const {
  nlohmann::json seen = nlohmann::json::array();
  for (const auto& s : seen_) seen.push_back(std::vector<int>(s.begin(), s.end()));
  return {
      {"format", "fairstream-model"},
      {"version", kSnapshotVersion},
      {"layout",
       {{"nominal", layout_.nominal_names},
        {"continuous", layout_.continuous_names},
        {"sensitive_slot", layout_.sensitive_slot}}},
      {"positive", class_to_json("positive", pos_.weight_total, pos_.counts,
                                 pos_.row_total, pos_.gauss)},
      {"negative", class_to_json("negative", neg_.weight_total, neg_.counts,
                                 neg_.row_total, neg_.gauss)},
      {"observed", seen},
      {"domain_size", domain_size_},
  };
}

MixedNaiveBayes MixedNaiveBayes::from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "fairstream-model" ||
      j.value("version", 0) != kSnapshotVersion)
    throw std::invalid_argument("not a fairstream model snapshot");
  ModelLayout layout;
  layout.nominal_names = j["layout"]["nominal"].get<std::vector<std::string>>();
  layout.continuous_names =
      j["layout"]["continuous"].get<std::vector<std::string>>();
  layout.sensitive_slot = j["layout"]["sensitive_slot"].get<int>();
  MixedNaiveBayes m(layout);
  for (auto [tag, cs] : {std::pair{"positive", &m.pos_}, {"negative", &m.neg_}}) {
    const auto& cj = j[tag];
    cs->weight_total = cj["weight_total"].get<double>();
    cs->counts = cj["counts"].get<std::vector<std::vector<double>>>();
    cs->row_total = cj["row_total"].get<std::vector<double>>();
    cs->gauss.clear();
    for (const auto& g : cj["gaussian"])
      cs->gauss.push_back({g["weight"].get<double>(), g["mean"].get<double>(),
                           g["m2"].get<double>()});
  }
  m.seen_.clear();
  for (const auto& s : j["observed"]) {
    auto v = s.get<std::vector<int>>();
    m.seen_.emplace_back(v.begin(), v.end());
  }
  m.domain_size_ = j["domain_size"].get<std::vector<int>>();
  return m;
}

}  // namespace fairstream
