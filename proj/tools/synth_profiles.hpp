// Deterministic generative models for benchmark surrogate streams.
//
// Each profile emits rows with the same shape as a published benchmark
// dataset (row count, attribute mix, class ratio, sensitive attribute) from a
// seeded naive-Bayes-style generative model: group -> label -> features.
// Feature strengths control how separable the classes are and how strongly
// the classifier's positive-prediction rate differs between groups.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace synth {

// Portable uniform/normal draws; std::normal_distribution's stream is
// implementation-defined, this is stable across library versions.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  double uniform() { return (gen() >> 11) * 0x1.0p-53; }
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
};

struct NomSpec {
  std::string name;
  int cardinality;
  double class_strength;  // 0 = uninformative, 1 = fully reversed by class
  double group_strength;  // exponential tilt of categories by group
};

struct ContSpec {
  std::string name;
  double shift, scale;  // cosmetic units
  double class_effect;  // mean separation in sigma units
  double group_effect;  // protected-group mean offset in sigma units
};

struct Profile {
  std::string name;
  uint64_t rows;
  uint64_t default_seed;
  std::string label_name, pos_label, neg_label;
  std::string sens_name, prot_value, nonprot_value;
  double p_protected;
  double p_pos_given_prot, p_pos_given_nonprot;
  std::vector<NomSpec> nominals;
  std::vector<ContSpec> conts;
};

inline std::vector<double> category_probs(const NomSpec& f, bool positive,
                                          bool is_protected) {
  const int k = f.cardinality;
  std::vector<double> w(k);
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    const double base = 1.0 + c;                    // skewed negative-class shape
    const double rev = static_cast<double>(k - c);  // reversed shape
    double v = positive
                   ? (1.0 - f.class_strength) * base + f.class_strength * rev
                   : base;
    if (f.group_strength != 0.0) {
      const double ramp = k > 1 ? 2.0 * c / (k - 1) - 1.0 : 0.0;
      v *= std::exp(f.group_strength * ramp * (is_protected ? 1.0 : -1.0));
    }
    w[c] = v;
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

inline int draw_categorical(const std::vector<double>& probs, Rng& rng) {
  double u = rng.uniform();
  for (size_t c = 0; c < probs.size(); ++c) {
    u -= probs[c];
    if (u < 0.0) return static_cast<int>(c);
  }
  return static_cast<int>(probs.size()) - 1;
}

inline Profile adult_profile() {
  Profile p;
  p.name = "adult";
  p.rows = 45175;
  p.default_seed = 2024;
  p.label_name = "income";
  p.pos_label = ">50K";
  p.neg_label = "<=50K";
  p.sens_name = "gender";
  p.prot_value = "Female";
  p.nonprot_value = "Male";
  p.p_protected = 0.33;
  p.p_pos_given_prot = 0.10;
  p.p_pos_given_nonprot = 0.36;
  p.nominals = {
      {"workclass", 7, 0.25, 0.00},
      {"education", 8, 0.55, 0.00},
      {"marital_status", 7, 0.55, 0.45},
      {"occupation", 10, 0.50, 0.50},
      {"relationship", 6, 0.55, 0.45},
      {"race", 5, 0.08, 0.00},
      {"native_country", 10, 0.05, 0.00},
  };
  p.conts = {
      {"age", 38.0, 13.0, 0.60, -0.25},
      {"fnlwgt", 190000.0, 105000.0, 0.00, 0.00},
      {"education_num", 10.0, 2.5, 0.65, 0.00},
      {"capital_gain", 1000.0, 7000.0, 0.50, 0.00},
      {"hours_per_week", 40.0, 12.0, 0.55, -0.30},
  };
  return p;
}

inline Profile law_profile() {
  Profile p;
  p.name = "law";
  p.rows = 18692;
  p.default_seed = 7177;
  p.label_name = "pass_bar";
  p.pos_label = "passed";
  p.neg_label = "failed";
  p.sens_name = "gender";
  p.prot_value = "Female";
  p.nonprot_value = "Male";
  p.p_protected = 0.44;
  p.p_pos_given_prot = 0.18;
  p.p_pos_given_nonprot = 0.25;
  p.nominals = {
      {"race", 5, 0.15, 0.00},
      {"cluster", 6, 0.20, 0.10},
      {"family_income", 5, 0.15, 0.10},
      {"part_time", 2, 0.15, 0.10},
      {"region", 8, 0.05, 0.00},
      {"college", 6, 0.10, 0.00},
  };
  p.conts = {
      {"lsat", 36.0, 5.5, 0.55, -0.05},
      {"ugpa", 3.2, 0.4, 0.45, 0.00},
      {"zfygpa", 0.0, 1.0, 0.50, 0.00},
      {"decile", 5.5, 2.8, 0.35, 0.00},
  };
  return p;
}

inline Profile default_profile() {
  Profile p;
  p.name = "default";
  p.rows = 30000;
  p.default_seed = 4242;
  p.label_name = "default_payment";
  p.pos_label = "yes";
  p.neg_label = "no";
  p.sens_name = "gender";
  p.prot_value = "Female";
  p.nonprot_value = "Male";
  p.p_protected = 0.60;
  p.p_pos_given_prot = 0.20;
  p.p_pos_given_nonprot = 0.25;
  p.nominals = {
      {"education", 5, 0.15, 0.05},
      {"marriage", 3, 0.10, 0.10},
      {"pay_0", 6, 0.50, 0.00},
      {"pay_2", 6, 0.40, 0.00},
      {"pay_3", 6, 0.30, 0.00},
      {"pay_4", 6, 0.25, 0.00},
      {"pay_5", 6, 0.20, 0.00},
      {"pay_6", 6, 0.20, 0.00},
  };
  p.conts = {
      {"limit_bal", 160000.0, 120000.0, -0.35, 0.05},
      {"age", 35.0, 9.0, 0.10, 0.00},
      {"bill_amt1", 50000.0, 70000.0, -0.10, 0.00},
      {"bill_amt2", 48000.0, 69000.0, -0.10, 0.00},
      {"bill_amt3", 46000.0, 68000.0, -0.08, 0.00},
      {"bill_amt4", 43000.0, 64000.0, -0.08, 0.00},
      {"pay_amt1", 5600.0, 10000.0, -0.25, 0.00},
      {"pay_amt2", 5900.0, 11000.0, -0.22, 0.00},
      {"pay_amt3", 5200.0, 9800.0, -0.20, 0.00},
      {"pay_amt4", 4800.0, 9500.0, -0.18, 0.00},
      {"pay_amt5", 4800.0, 9400.0, -0.15, 0.00},
      {"pay_amt6", 5200.0, 10000.0, -0.15, 0.00},
      {"util_ratio", 0.4, 0.3, 0.30, 0.00},
      {"months_on_book", 30.0, 12.0, -0.10, 0.00},
  };
  return p;
}

inline Profile bank_profile() {
  Profile p;
  p.name = "bank";
  p.rows = 41188;
  p.default_seed = 9090;
  p.label_name = "subscription";
  p.pos_label = "yes";
  p.neg_label = "no";
  p.sens_name = "marital_status";
  p.prot_value = "married";
  p.nonprot_value = "non-married";
  p.p_protected = 0.61;
  p.p_pos_given_prot = 0.095;
  p.p_pos_given_nonprot = 0.145;
  p.nominals = {
      {"job", 10, 0.25, 0.15},
      {"education", 7, 0.15, 0.05},
      {"housing", 2, 0.10, 0.05},
      {"loan", 2, 0.10, 0.00},
      {"contact", 2, 0.35, 0.00},
      {"month", 10, 0.35, 0.00},
      {"day_of_week", 5, 0.03, 0.00},
      {"poutcome", 3, 0.55, 0.00},
  };
  p.conts = {
      {"age", 40.0, 10.0, 0.15, 0.20},
      {"duration", 258.0, 250.0, 0.95, 0.00},
      {"campaign", 2.5, 2.5, -0.20, 0.00},
      {"pdays", 960.0, 190.0, -0.45, 0.00},
      {"previous", 0.2, 0.5, 0.45, 0.00},
      {"emp_var_rate", 0.1, 1.6, -0.55, 0.00},
      {"cons_price_idx", 93.5, 0.6, -0.25, 0.00},
      {"cons_conf_idx", -40.0, 4.6, 0.20, 0.00},
      {"euribor3m", 3.6, 1.7, -0.55, 0.00},
      {"nr_employed", 5167.0, 72.0, -0.60, 0.00},
  };
  return p;
}

inline Profile profile_by_name(const std::string& name) {
  if (name == "adult") return adult_profile();
  if (name == "law") return law_profile();
  if (name == "default") return default_profile();
  if (name == "bank") return bank_profile();
  throw std::invalid_argument("unknown dataset profile '" + name + "'");
}

inline void generate(const Profile& p, uint64_t seed, uint64_t rows,
                     const std::string& out_path) {
  Rng rng(seed);

  // Pre-tabulated category distributions, indexed by (class, group).
  std::vector<std::vector<std::vector<double>>> probs(p.nominals.size());
  for (size_t f = 0; f < p.nominals.size(); ++f) {
    probs[f] = {category_probs(p.nominals[f], false, false),
                category_probs(p.nominals[f], false, true),
                category_probs(p.nominals[f], true, false),
                category_probs(p.nominals[f], true, true)};
  }

  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_path);

  out << p.sens_name;
  for (const auto& f : p.nominals) out << ',' << f.name;
  for (const auto& f : p.conts) out << ',' << f.name;
  out << ',' << p.label_name << '\n';

  char buf[64];
  const uint64_t missing_every = rows / 20 + 1;  // ~20 rows with "?" markers
  for (uint64_t i = 0; i < rows; ++i) {
    const bool prot = rng.uniform() < p.p_protected;
    const double p_pos = prot ? p.p_pos_given_prot : p.p_pos_given_nonprot;
    const bool pos = rng.uniform() < p_pos;

    out << (prot ? p.prot_value : p.nonprot_value);
    for (size_t f = 0; f < p.nominals.size(); ++f) {
      const auto& dist = probs[f][(pos ? 2 : 0) + (prot ? 1 : 0)];
      out << ",v" << draw_categorical(dist, rng);
    }
    for (const auto& f : p.conts) {
      const double z = rng.normal() + (pos ? f.class_effect : 0.0) +
                       (prot ? f.group_effect : 0.0);
      std::snprintf(buf, sizeof(buf), "%.4f", f.shift + f.scale * z);
      out << ',' << buf;
    }
    out << ',' << (pos ? p.pos_label : p.neg_label) << '\n';

    if ((i + 1) % missing_every == 0) {
      // an extra unusable row, exercising the drop_row cleaning policy
      out << (prot ? p.prot_value : p.nonprot_value);
      for (size_t f = 0; f < p.nominals.size(); ++f) out << ",?";
      for (size_t f = 0; f < p.conts.size(); ++f) out << ",?";
      out << ',' << (pos ? p.pos_label : p.neg_label) << '\n';
    }
  }
}

}  // namespace synth
