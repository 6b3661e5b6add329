#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "fairstream/mixed_nb.hpp"

using namespace fairstream;

namespace {

ModelLayout one_nominal() {
  ModelLayout l;
  l.nominal_names = {"color"};
  return l;
}

ModelLayout one_continuous() {
  ModelLayout l;
  l.continuous_names = {"x"};
  return l;
}

ModelLayout sensitive_only() {
  ModelLayout l;
  l.nominal_names = {"gender"};
  l.sensitive_slot = 0;
  return l;
}

Instance nom(int32_t id, BinaryLabel y = BinaryLabel::Positive) {
  return {{id}, {}, y, SensitiveGroup::NonProtected};
}

Instance cont(double x, BinaryLabel y = BinaryLabel::Positive) {
  return {{}, {x}, y, SensitiveGroup::NonProtected};
}

// Two-pass batch oracle for weighted population moments.
struct BatchMoments {
  double mean = 0, variance = 0, weight = 0;
};
BatchMoments batch_moments(const std::vector<std::pair<double, double>>& xw) {
  BatchMoments b;
  for (auto [x, w] : xw) {
    b.weight += w;
    b.mean += w * x;
  }
  b.mean /= b.weight;
  for (auto [x, w] : xw) b.variance += w * (x - b.mean) * (x - b.mean);
  b.variance /= b.weight;
  return b;
}

}  // namespace

TEST_CASE("smoothed nominal posterior matches the hand-computed oracle") {
  MixedNaiveBayes m(one_nominal());
  // counts +:{red:2}, -:{red:1, blue:1}; observed domain {red, blue}
  m.train(nom(0, BinaryLabel::Positive), 1.0);
  m.train(nom(0, BinaryLabel::Positive), 1.0);
  m.train(nom(0, BinaryLabel::Negative), 1.0);
  m.train(nom(1, BinaryLabel::Negative), 1.0);

  const Posterior p = m.predict(nom(0));
  CHECK(p.log_score_positive == doctest::Approx(std::log(0.375)).epsilon(1e-12));
  CHECK(p.log_score_negative == doctest::Approx(std::log(0.25)).epsilon(1e-12));
  CHECK(p.predicted == BinaryLabel::Positive);
}

TEST_CASE("gaussian likelihood at the mean is the standard normal peak") {
  MixedNaiveBayes m(one_continuous());
  m.train(cont(-1.0), 1.0);
  m.train(cont(1.0), 1.0);  // mean 0, sigma^2 = 1
  const Posterior p = m.predict(cont(0.0));
  // positive score = log prior + log N(0; 0, 1); negative class contributes
  // only its prior (no data -> neutral gaussian)
  const double prior_pos = std::log(3.0 / 4.0);
  const double expected = prior_pos + std::log(1.0 / std::sqrt(2 * std::numbers::pi));
  CHECK(p.log_score_positive == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::exp(p.log_score_positive - prior_pos) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-12));
}

TEST_CASE("cold start predicts negative") {
  MixedNaiveBayes m(one_nominal());
  CHECK(m.predict(nom(0)).predicted == BinaryLabel::Negative);
}

TEST_CASE("welford examples") {
  SUBCASE("unit weights 2,4,6") {
    GaussianStat g;
    for (double x : {2.0, 4.0, 6.0}) g.add(x, 1.0);
    CHECK(g.mean == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(g.m2 == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(g.variance() == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("single observation has zero spread") {
    GaussianStat g;
    g.add(5.0, 1.0);
    CHECK(g.mean == 5.0);
    CHECK(g.m2 == 0.0);
  }
  SUBCASE("weighted observations") {
    GaussianStat g;
    g.add(1.0, 2.0);
    g.add(4.0, 1.0);
    CHECK(g.mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.variance() == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("weighted moments match the two-pass batch oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<double, double>> xw;
    GaussianStat g;
    const int n = 2 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      const double x = (rng() % 10000) / 100.0 - 50.0;
      const double w = 0.01 + (rng() % 1000) / 250.0;
      xw.push_back({x, w});
      g.add(x, w);
    }
    const BatchMoments b = batch_moments(xw);
    CHECK(g.mean == doctest::Approx(b.mean).epsilon(1e-9));
    CHECK(g.variance() == doctest::Approx(b.variance).epsilon(1e-9));
  }
}

TEST_CASE("moments are order-insensitive for unit weights") {
  std::mt19937_64 rng(11);
  std::vector<double> xs;
  for (int i = 0; i < 100; ++i) xs.push_back((rng() % 1000) / 10.0);
  GaussianStat fwd;
  for (double x : xs) fwd.add(x, 1.0);
  std::shuffle(xs.begin(), xs.end(), rng);
  GaussianStat perm;
  for (double x : xs) perm.add(x, 1.0);
  CHECK(fwd.mean == doctest::Approx(perm.mean).epsilon(1e-9));
  CHECK(fwd.variance() == doctest::Approx(perm.variance()).epsilon(1e-9));
}

TEST_CASE("train rejects non-positive weights") {
  MixedNaiveBayes m(one_nominal());
  CHECK_THROWS_AS(m.train(nom(0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(m.train(nom(0), -1.0), std::invalid_argument);
}

TEST_CASE("sensitive counts") {
  ModelLayout l = sensitive_only();
  MixedNaiveBayes m(l);
  auto c = m.sensitive_counts();
  CHECK(c.pos_protected == 0.0);
  CHECK(c.neg_protected == 0.0);
  CHECK(c.pos_nonprotected == 0.0);
  CHECK(c.neg_nonprotected == 0.0);

  Instance prot_pos{{0}, {}, BinaryLabel::Positive, SensitiveGroup::Protected};
  m.train(prot_pos, 1.0);
  c = m.sensitive_counts();
  CHECK(c.pos_protected == 1.0);

  m.train(prot_pos, 1.5);
  CHECK(m.sensitive_counts().pos_protected == 2.5);
}

TEST_CASE("apply_count_shift moves mass but conserves group totals") {
  MixedNaiveBayes m(sensitive_only());
  auto bulk_train = [&](BinaryLabel y, int32_t id, double total) {
    Instance i{{id}, {}, y, id == 0 ? SensitiveGroup::Protected
                                    : SensitiveGroup::NonProtected};
    m.train(i, total);
  };
  bulk_train(BinaryLabel::Positive, 0, 10.0);
  bulk_train(BinaryLabel::Negative, 0, 90.0);
  bulk_train(BinaryLabel::Positive, 1, 60.0);
  bulk_train(BinaryLabel::Negative, 1, 40.0);

  SUBCASE("positive-discrimination branch, lambda 0.1") {
    // +9 to C+S-, -9 from C-S-, -6 from C+S+, +6 to C-S+
    m.apply_count_shift({9.0, -9.0, -6.0, 6.0});
    const auto c = m.sensitive_counts();
    CHECK(c.pos_protected == doctest::Approx(19.0));
    CHECK(c.neg_protected == doctest::Approx(81.0));
    CHECK(c.pos_nonprotected == doctest::Approx(54.0));
    CHECK(c.neg_nonprotected == doctest::Approx(46.0));
    CHECK(c.pos_protected + c.neg_protected == 100.0);
    CHECK(c.pos_nonprotected + c.neg_nonprotected == 100.0);
    // class priors untouched
    CHECK(m.class_weight_total(BinaryLabel::Positive) == 70.0);
    CHECK(m.class_weight_total(BinaryLabel::Negative) == 130.0);
  }
  SUBCASE("zero shift is identity") {
    const MixedNaiveBayes before = m;
    m.apply_count_shift({});
    CHECK(m == before);
  }
  SUBCASE("negative-driving shift is rejected and leaves the model unchanged") {
    const MixedNaiveBayes before = m;
    CHECK_THROWS_AS(m.apply_count_shift({91.0, -91.0, 0.0, 0.0}),
                    std::invalid_argument);
    CHECK(m == before);
  }
}

TEST_CASE("snapshot and restore") {
  MixedNaiveBayes m(one_nominal());
  m.train(nom(0, BinaryLabel::Positive), 1.0);
  m.train(nom(1, BinaryLabel::Negative), 2.0);

  const MixedNaiveBayes snap = m;  // snapshot is a deep copy
  CHECK(snap == m);

  m.train(nom(1, BinaryLabel::Positive), 1.0);
  CHECK_FALSE(snap == m);
  const Posterior before = snap.predict(nom(1));

  m = snap;  // restore
  const Posterior after = m.predict(nom(1));
  CHECK(before.log_score_positive == after.log_score_positive);
  CHECK(before.log_score_negative == after.log_score_negative);
}

TEST_CASE("model snapshot serializes and round trips") {
  ModelLayout l;
  l.nominal_names = {"gender", "color"};
  l.continuous_names = {"x"};
  l.sensitive_slot = 0;
  MixedNaiveBayes m(l);
  m.train({{0, 2}, {1.5}, BinaryLabel::Positive, SensitiveGroup::Protected}, 1.0);
  m.train({{1, 0}, {-0.5}, BinaryLabel::Negative, SensitiveGroup::NonProtected},
          2.25);

  const auto j = m.to_json();
  CHECK(MixedNaiveBayes::from_json(j) == m);
  // through text
  CHECK(MixedNaiveBayes::from_json(nlohmann::json::parse(j.dump())) == m);
  CHECK_THROWS_AS(MixedNaiveBayes::from_json(nlohmann::json{{"format", "x"}}),
                  std::invalid_argument);
}

TEST_CASE("log scores stay finite on sparse models") {
  ModelLayout l;
  l.nominal_names = {"a", "b"};
  l.continuous_names = {"x"};
  MixedNaiveBayes m(l);
  m.train({{0, 0}, {3.0}, BinaryLabel::Positive, SensitiveGroup::NonProtected},
          1.0);
  // unseen categories, one-sided class counts, constant continuous values
  for (int32_t id : {0, 1, 7}) {
    const Posterior p = m.predict({{id, id}, {3.0}, BinaryLabel::Positive,
                                   SensitiveGroup::NonProtected});
    CHECK(std::isfinite(p.log_score_positive));
    CHECK(std::isfinite(p.log_score_negative));
  }
}
