#include <doctest.h>

#include <random>

#include "fairstream/drift.hpp"

using namespace fairstream;

namespace {

ModelLayout tiny_layout() {
  ModelLayout l;
  l.nominal_names = {"g"};
  l.sensitive_slot = 0;
  return l;
}

}  // namespace

TEST_CASE("constant ocim stream never fires") {
  DriftDetector d(1000, 0.02);
  for (int i = 0; i < 5000; ++i) CHECK_FALSE(d.observe(0.3).has_value());
}

TEST_CASE("a jump beyond eta fires once the window is primed") {
  DriftDetector d(1000, 0.02);
  for (int i = 0; i < 1000; ++i) REQUIRE_FALSE(d.observe(0.0).has_value());
  const auto event = d.observe(0.05);
  REQUIRE(event.has_value());
  CHECK(event->ocim == 0.05);
  CHECK(event->mean == doctest::Approx(0.05 / 1000.0));
}

TEST_CASE("the same jump under a larger eta does not fire") {
  DriftDetector d(1000, 0.10);
  for (int i = 0; i < 1000; ++i) d.observe(0.0);
  CHECK_FALSE(d.observe(0.05).has_value());
}

TEST_CASE("cooldown suppresses events for one window") {
  DriftDetector d(100, 0.02);
  std::mt19937_64 rng(9);
  uint64_t last_fire = 0;
  int fires = 0;
  for (int i = 1; i <= 20000; ++i) {
    // noisy alternating signal that would fire constantly without cooldown
    const double x = (i / 50) % 2 == 0 ? 0.2 : -0.2;
    if (auto e = d.observe(x + (rng() % 100) / 1000.0)) {
      if (fires > 0) CHECK(e->step - last_fire > 100);
      last_fire = e->step;
      ++fires;
    }
  }
  CHECK(fires > 1);
}

TEST_CASE("ocim signatures quantize by bucket") {
  CHECK(ocim_signature(0.12, 0.05) == 2);
  CHECK(ocim_signature(-0.01, 0.05) == -1);
  CHECK(ocim_signature(0.0, 0.05) == 0);
}

TEST_CASE("recurrence store: store on new signature, restore on known") {
  RecurrenceStore store;
  MixedNaiveBayes live(tiny_layout());
  Instance prot_pos{{0}, {}, BinaryLabel::Positive, SensitiveGroup::Protected};

  live.train(prot_pos, 1.0);
  CHECK(store.on_drift(2, live) == RecurrenceStore::Action::Stored);
  CHECK(store.size() == 1);

  const MixedNaiveBayes snapshot = live;
  live.train(prot_pos, 5.0);
  CHECK_FALSE(live == snapshot);

  CHECK(store.on_drift(2, live) == RecurrenceStore::Action::Restored);
  CHECK(live == snapshot);

  CHECK(store.on_drift(-1, live) == RecurrenceStore::Action::Stored);
  CHECK(store.size() == 2);
}
