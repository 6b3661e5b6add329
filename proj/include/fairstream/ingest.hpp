#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairstream/schema.hpp"

namespace fairstream {

class IngestError : public std::runtime_error {
public:
  explicit IngestError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DatasetManifest {
  std::string path;  // resolved relative to the manifest file's directory
  StreamSchema schema;
  char delimiter = ',';
  bool has_header = true;
  std::vector<std::string> missing_markers = {"?", ""};
};

struct CleaningStats {
  uint64_t raw_rows = 0;
  uint64_t kept = 0;
  uint64_t dropped_missing = 0;
  bool protected_value_seen = false;  // warning-level check, never an error
};

/// A loaded, validated stream: interned instances in file order plus the
/// per-slot category dictionaries (id -> token). The sensitive slot is always
/// binarized: id 0 = protected value, id 1 = everything else.
struct Dataset {
  StreamSchema schema;
  ModelLayout layout;
  std::vector<std::vector<std::string>> categories;  // per nominal slot
  std::vector<Instance> instances;
  CleaningStats stats;
};

nlohmann::json schema_to_json(const StreamSchema& schema);
StreamSchema schema_from_json(const nlohmann::json& j);

nlohmann::json manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const nlohmann::json& j);
DatasetManifest load_manifest(const std::filesystem::path& file);

// Loads the delimited file named by the manifest. Rows containing a missing
// marker (or an unparsable continuous field) in any used column are dropped
// and counted; everything else is interned in order.
Dataset load_dataset(const DatasetManifest& manifest);
Dataset load_dataset(std::istream& in, const DatasetManifest& manifest);

}  // namespace fairstream
