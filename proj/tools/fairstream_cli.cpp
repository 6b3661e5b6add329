// fairstream: prequential evaluation of the online mixed naive Bayes
// classifier with discrimination mitigation and class-imbalance weighting.
//
//   fairstream run   --data manifest.json --variant dcamnb --report out.json
//   fairstream sweep --data manifest.json --variant dcamnb \
//       --param lambda --values 1e-5 1e-4 1e-3 1e-2 --out-dir sweep/

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fairstream/harness.hpp"
#include "fairstream/ingest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunRequest {
  std::string data;
  std::string variant = "mnb";
  double alpha = 0.9;
  double epsilon = 1e-6;
  double lambda = 0.001;
  double gamma = 1.0;
  size_t window = 1000;
  double eta = 0.02;
  double bucket_width = 0.05;
  std::string mode = "shuffled";
  int shuffles = 10;
  uint64_t seed = 0;
  bool drift = false;
  std::string report_path;
  std::string trace_path;
};

fairstream::VariantConfig to_config(const RunRequest& r) {
  fairstream::VariantConfig c = fairstream::variant_preset(r.variant);
  c.alpha = r.alpha;
  c.epsilon = r.epsilon;
  c.lambda = r.lambda;
  c.gamma = r.gamma;
  c.window = r.window;
  c.eta = r.eta;
  c.bucket_width = r.bucket_width;
  c.rng_seed = r.seed;
  c.use_drift_store = r.drift;
  return c;
}

json request_to_json(const RunRequest& r) {
  return {{"data", r.data},        {"variant", r.variant},
          {"alpha", r.alpha},      {"epsilon", r.epsilon},
          {"lambda", r.lambda},    {"gamma", r.gamma},
          {"window", r.window},    {"eta", r.eta},
          {"bucket_width", r.bucket_width},
          {"mode", r.mode},        {"shuffles", r.shuffles},
          {"seed", r.seed},        {"drift", r.drift}};
}

json metrics_to_json(const fairstream::Metrics& m) {
  return {{"tp", m.tp},
          {"fp", m.fp},
          {"tn", m.tn},
          {"fn", m.fn},
          {"steps", m.steps},
          {"recall", m.recall},
          {"balanced_accuracy", m.balanced_accuracy},
          {"gmean", m.gmean},
          {"tpr", m.tpr},
          {"tnr", m.tnr},
          {"disc_score", m.disc_score}};
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

const char* label_token(fairstream::BinaryLabel l) {
  return l == fairstream::BinaryLabel::Positive ? "+" : "-";
}

const char* mitigation_token(fairstream::MitigationDirection d) {
  switch (d) {
    case fairstream::MitigationDirection::TowardProtected:
      return "toward_protected";
    case fairstream::MitigationDirection::TowardNonProtected:
      return "toward_nonprotected";
    default:
      return "none";
  }
}

std::string trace_to_csv(const std::vector<fairstream::StepRecord>& trace) {
  std::string out = "step,true,pred,group,weight,ocim,disc,drift,mitigation\n";
  char buf[256];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof(buf),
                  "%" PRIu64 ",%s,%s,%s,%.17g,%.17g,%.17g,%d,%s\n", r.step,
                  label_token(r.truth), label_token(r.predicted),
                  r.group == fairstream::SensitiveGroup::Protected ? "S-" : "S+",
                  r.weight, r.ocim, r.disc, r.drift ? 1 : 0,
                  mitigation_token(r.mitigation));
    out += buf;
  }
  return out;
}

// Runs one evaluation and writes report/trace files. Returns the report.
fairstream::EvalReport execute(const RunRequest& req,
                               const fairstream::Dataset& dataset) {
  const fairstream::VariantConfig config = to_config(req);
  fairstream::EvalReport report;
  std::vector<fairstream::StepRecord> trace;
  const bool want_trace = !req.trace_path.empty();

  if (req.mode == "stream") {
    fairstream::StreamResult r = fairstream::run_stream(
        dataset.instances, dataset.layout, config, want_trace);
    report = std::move(r.report);
    trace = std::move(r.trace);
  } else {
    report = fairstream::run_shuffled(dataset.instances, dataset.layout, config,
                                      req.shuffles,
                                      want_trace ? &trace : nullptr);
  }

  if (!req.report_path.empty()) {
    json j = {{"format", "fairstream-report"},
              {"version", 1},
              {"request", request_to_json(req)},
              {"cleaning",
               {{"raw_rows", dataset.stats.raw_rows},
                {"kept", dataset.stats.kept},
                {"dropped_missing", dataset.stats.dropped_missing}}},
              {"report", metrics_to_json(report.metrics)}};
    if (!report.per_shuffle.empty()) {
      json per = json::array();
      for (const auto& m : report.per_shuffle) per.push_back(metrics_to_json(m));
      j["report"]["per_shuffle"] = per;
    }
    write_atomic(req.report_path, j.dump(2) + "\n");
  }
  if (want_trace) write_atomic(req.trace_path, trace_to_csv(trace));

  std::printf("%s %s: B.Acc=%.2f%% gmean=%.2f%% disc=%.3f%% (%.1fs)\n",
              fs::path(req.data).stem().string().c_str(), req.variant.c_str(),
              100.0 * report.metrics.balanced_accuracy,
              100.0 * report.metrics.gmean, 100.0 * report.metrics.disc_score,
              report.runtime_seconds);
  return report;
}

void add_common_options(CLI::App* cmd, RunRequest& req) {
  cmd->add_option("--data", req.data, "dataset manifest (json)")->required();
  cmd->add_option("--variant", req.variant, "model variant")
      ->check(CLI::IsMember({"mnb", "damnb", "dcamnb"}));
  cmd->add_option("--alpha", req.alpha, "imbalance decay factor");
  cmd->add_option("--epsilon", req.epsilon, "mitigation trigger threshold");
  cmd->add_option("--lambda", req.lambda, "mitigation shift factor");
  cmd->add_option("--gamma", req.gamma, "disc score adjustment factor");
  cmd->add_option("--window", req.window, "drift detector window");
  cmd->add_option("--eta", req.eta, "drift detector threshold");
  cmd->add_option("--bucket-width", req.bucket_width,
                  "recurrence signature bucket width");
  cmd->add_option("--mode", req.mode, "evaluation mode")
      ->check(CLI::IsMember({"stream", "shuffled"}));
  cmd->add_option("--shuffles", req.shuffles, "shuffle count (shuffled mode)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", req.seed, "rng seed for the shuffle protocol");
  cmd->add_flag("--drift", req.drift, "enable drift detection + recurrence store");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairness- and imbalance-aware online naive Bayes evaluator"};
  app.require_subcommand(1);

  RunRequest req;
  std::string param;
  std::vector<std::string> values;
  std::string out_dir;

  CLI::App* run = app.add_subcommand("run", "single prequential evaluation");
  add_common_options(run, req);
  run->add_option("--report", req.report_path, "report output file (json)");
  run->add_option("--trace", req.trace_path, "step trace output file (csv)");

  CLI::App* sweep =
      app.add_subcommand("sweep", "evaluate across one hyperparameter");
  add_common_options(sweep, req);
  sweep->add_option("--param", param, "hyperparameter to sweep")
      ->required()
      ->check(CLI::IsMember({"lambda", "alpha", "eta", "gamma", "epsilon",
                             "window"}));
  sweep->add_option("--values", values, "values to sweep over")->required();
  sweep->add_option("--out-dir", out_dir, "directory for reports and traces")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are a usage error
  }

  try {
    const fairstream::DatasetManifest manifest =
        fairstream::load_manifest(req.data);
    const fairstream::Dataset dataset = fairstream::load_dataset(manifest);
    if (!dataset.stats.protected_value_seen)
      std::fprintf(stderr,
                   "warning: protected value '%s' never appears in column '%s'\n",
                   manifest.schema.protected_value.c_str(),
                   manifest.schema.sensitive_attribute.c_str());
    if (dataset.instances.empty())
      throw fairstream::IngestError("no usable rows in " + manifest.path);

    if (run->parsed()) {
      execute(req, dataset);
      return 0;
    }

    // sweep
    if (values.empty()) throw std::invalid_argument("empty sweep value list");
    std::printf("%-12s %10s %12s\n", param.c_str(), "B.Acc(%)", "disc(%)");
    for (const std::string& token : values) {
      RunRequest point = req;
      const double v = std::stod(token);
      if (param == "lambda") point.lambda = v;
      else if (param == "alpha") point.alpha = v;
      else if (param == "eta") point.eta = v;
      else if (param == "gamma") point.gamma = v;
      else if (param == "epsilon") point.epsilon = v;
      else if (param == "window") point.window = static_cast<size_t>(v);
      point.report_path =
          (fs::path(out_dir) / (param + "_" + token + ".report.json")).string();
      point.trace_path =
          (fs::path(out_dir) / (param + "_" + token + ".trace.csv")).string();
      const fairstream::EvalReport r = execute(point, dataset);
      std::printf("%-12s %10.2f %12.3f\n", token.c_str(),
                  100.0 * r.metrics.balanced_accuracy,
                  100.0 * r.metrics.disc_score);
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
