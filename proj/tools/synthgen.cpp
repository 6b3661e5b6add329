// synthgen: writes a deterministic surrogate benchmark stream as CSV.
//
//   synthgen --dataset adult --out data/streams/adult_synth.csv

#include <cstdio>

#include <CLI11.hpp>

#include "synth_profiles.hpp"

int main(int argc, char** argv) {
  CLI::App app{"deterministic surrogate benchmark stream generator"};
  std::string dataset, out_path;
  uint64_t seed = 0, rows = 0;
  app.add_option("--dataset", dataset, "profile: adult, law, default, bank")
      ->required();
  app.add_option("--out", out_path, "output csv path")->required();
  app.add_option("--seed", seed, "rng seed (default: profile seed)");
  app.add_option("--rows", rows, "row count override");
  CLI11_PARSE(app, argc, argv);

  try {
    const synth::Profile p = synth::profile_by_name(dataset);
    synth::generate(p, seed ? seed : p.default_seed, rows ? rows : p.rows,
                    out_path);
    std::printf("wrote %s (%s profile)\n", out_path.c_str(), p.name.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
