#include "fairstream/ingest.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace fairstream {

namespace {

std::string kind_name(AttrKind k) {
  return k == AttrKind::Nominal ? "nominal" : "continuous";
}

AttrKind kind_from_name(const std::string& s) {
  if (s == "nominal") return AttrKind::Nominal;
  if (s == "continuous") return AttrKind::Continuous;
  throw IngestError("unknown attribute kind '" + s + "'");
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

nlohmann::json schema_to_json(const StreamSchema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& a : schema.attributes)
    attrs.push_back({{"name", a.name}, {"kind", kind_name(a.kind)}});
  return {{"attributes", attrs},
          {"label", {{"column", schema.label_attribute},
                     {"positive", schema.positive_label}}},
          {"sensitive", {{"column", schema.sensitive_attribute},
                         {"protected", schema.protected_value}}}};
}

StreamSchema schema_from_json(const nlohmann::json& j) {
  StreamSchema s;
  for (const auto& a : j.at("attributes"))
    s.attributes.push_back(
        {a.at("name").get<std::string>(),
         kind_from_name(a.at("kind").get<std::string>())});
  s.label_attribute = j.at("label").at("column").get<std::string>();
  s.positive_label = j.at("label").at("positive").get<std::string>();
  s.sensitive_attribute = j.at("sensitive").at("column").get<std::string>();
  s.protected_value = j.at("sensitive").at("protected").get<std::string>();
  s.validate();
  return s;
}

nlohmann::json manifest_to_json(const DatasetManifest& m) {
  nlohmann::json j = schema_to_json(m.schema);
  j["path"] = m.path;
  j["delimiter"] = std::string(1, m.delimiter);
  j["has_header"] = m.has_header;
  j["missing_markers"] = m.missing_markers;
  return j;
}

DatasetManifest manifest_from_json(const nlohmann::json& j) {
  DatasetManifest m;
  m.path = j.at("path").get<std::string>();
  m.schema = schema_from_json(j);
  if (j.contains("delimiter")) {
    auto d = j["delimiter"].get<std::string>();
    if (d.size() != 1) throw IngestError("delimiter must be a single character");
    m.delimiter = d[0];
  }
  if (j.contains("has_header")) m.has_header = j["has_header"].get<bool>();
  if (j.contains("missing_markers"))
    m.missing_markers = j["missing_markers"].get<std::vector<std::string>>();
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestError("cannot open manifest " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError("manifest " + file.string() + ": " + e.what());
  }
  DatasetManifest m = manifest_from_json(j);
  std::filesystem::path data(m.path);
  if (data.is_relative()) data = file.parent_path() / data;
  m.path = data.string();
  return m;
}

Dataset load_dataset(const DatasetManifest& manifest) {
  std::ifstream in(manifest.path);
  if (!in) throw IngestError("cannot open dataset " + manifest.path);
  return load_dataset(in, manifest);
}

Dataset load_dataset(std::istream& in, const DatasetManifest& manifest) {
  const StreamSchema& schema = manifest.schema;
  Dataset ds;
  ds.schema = schema;
  ds.layout = make_layout(schema);

  const size_t n_nominal = ds.layout.nominal_names.size();
  const size_t n_continuous = ds.layout.continuous_names.size();
  ds.categories.resize(n_nominal);
  std::vector<std::unordered_map<std::string, int32_t>> interner(n_nominal);
  if (ds.layout.sensitive_slot >= 0) {
    auto& cats = ds.categories[ds.layout.sensitive_slot];
    cats = {schema.protected_value, "<non-protected>"};
  }

  std::vector<std::string> trimmed_markers;
  for (const auto& mm : manifest.missing_markers)
    trimmed_markers.emplace_back(trim(mm));

  auto is_missing = [&](std::string_view token) {
    for (const auto& mm : trimmed_markers)
      if (token == mm) return true;
    return false;
  };

  // Column index per schema attribute.
  std::string line;
  std::vector<int> column(schema.attributes.size(), -1);
  if (manifest.has_header) {
    if (!std::getline(in, line))
      throw IngestError(manifest.path + ": empty file, header expected");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split(line, manifest.delimiter);
    std::unordered_map<std::string, int> by_name;
    for (size_t i = 0; i < fields.size(); ++i)
      by_name.emplace(std::string(trim(fields[i])), static_cast<int>(i));
    for (size_t a = 0; a < schema.attributes.size(); ++a) {
      auto it = by_name.find(schema.attributes[a].name);
      if (it == by_name.end())
        throw IngestError(manifest.path + ": header lacks schema attribute '" +
                          schema.attributes[a].name + "'");
      column[a] = it->second;
    }
  } else {
    for (size_t a = 0; a < schema.attributes.size(); ++a)
      column[a] = static_cast<int>(a);
  }

  const int label_attr = schema.attribute_index(schema.label_attribute);
  uint64_t row_number = manifest.has_header ? 1 : 0;

  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++ds.stats.raw_rows;

    auto fields = split(line, manifest.delimiter);
    Instance inst;
    inst.nominal.assign(n_nominal, -1);
    inst.continuous.assign(n_continuous, 0.0);

    bool missing = false;
    size_t nom_slot = 0, cont_slot = 0;
    for (size_t a = 0; a < schema.attributes.size() && !missing; ++a) {
      if (column[a] >= static_cast<int>(fields.size()))
        throw IngestError(manifest.path + ": row " + std::to_string(row_number) +
                          " has too few fields");
      const std::string_view token = trim(fields[column[a]]);
      const auto& attr = schema.attributes[a];
      const bool is_label = static_cast<int>(a) == label_attr;

      if (is_missing(token)) {
        missing = true;
        break;
      }
      if (is_label) {
        inst.label = token == schema.positive_label ? BinaryLabel::Positive
                                                    : BinaryLabel::Negative;
        continue;
      }
      if (attr.kind == AttrKind::Continuous) {
        double v;
        if (!parse_double(token, v)) {
          missing = true;  // unparsable continuous field counts as missing
          break;
        }
        inst.continuous[cont_slot++] = v;
      } else {
        const int slot = static_cast<int>(nom_slot++);
        if (slot == ds.layout.sensitive_slot) {
          const bool prot = token == schema.protected_value;
          inst.nominal[slot] = prot ? 0 : 1;
          inst.group = prot ? SensitiveGroup::Protected
                            : SensitiveGroup::NonProtected;
          if (prot) ds.stats.protected_value_seen = true;
        } else {
          auto [it, inserted] = interner[slot].try_emplace(
              std::string(token),
              static_cast<int32_t>(ds.categories[slot].size()));
          if (inserted) ds.categories[slot].emplace_back(token);
          inst.nominal[slot] = it->second;
        }
      }
    }

    if (missing) {
      ++ds.stats.dropped_missing;
      continue;
    }
    ds.instances.push_back(std::move(inst));
    ++ds.stats.kept;
  }
  return ds;
}

}  // namespace fairstream
