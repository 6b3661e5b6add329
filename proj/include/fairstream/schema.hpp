#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairstream {

enum class AttrKind { Nominal, Continuous };

enum class BinaryLabel : uint8_t { Negative = 0, Positive = 1 };

// S- is the protected (sensitive) group, S+ the non-protected one.
enum class SensitiveGroup : uint8_t { Protected = 0, NonProtected = 1 };

struct AttributeSpec {
  std::string name;
  AttrKind kind;
  bool operator==(const AttributeSpec&) const = default;
};

class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Declarative description of a dataset stream: which columns exist, which one
/// carries the label, and which nominal column defines the sensitive group.
/// Rows with missing values are always dropped (and counted) during ingest.
struct StreamSchema {
  std::vector<AttributeSpec> attributes;
  std::string label_attribute;
  std::string positive_label;
  std::string sensitive_attribute;
  std::string protected_value;

  // Throws SchemaError on duplicate names, dangling label/sensitive
  // references, or a non-nominal sensitive attribute.
  void validate() const;

  // Index into attributes, or -1.
  int attribute_index(std::string_view name) const;

  bool operator==(const StreamSchema&) const = default;
};

// Trims ASCII whitespace from both ends. Category tokens are compared
// case-sensitively but whitespace-insensitively (Adult-style CSVs pad fields).
std::string_view trim(std::string_view s);

/// A fully validated stream element. Nominal values are interned per-attribute
/// category ids (see Dataset::categories); the sensitive attribute is
/// binarized at ingest so that id 0 = protected value, id 1 = anything else.
struct Instance {
  std::vector<int32_t> nominal;    // one id per nominal feature slot
  std::vector<double> continuous;  // one value per continuous feature slot
  BinaryLabel label;
  SensitiveGroup group;
};

/// Mapping from the schema's non-label attributes onto the model's feature
/// slots. Slot order follows schema order within each kind.
struct ModelLayout {
  std::vector<std::string> nominal_names;
  std::vector<std::string> continuous_names;
  int sensitive_slot = -1;  // index into nominal slots

  bool operator==(const ModelLayout&) const = default;
};

ModelLayout make_layout(const StreamSchema& schema);

// A raw parsed row, attribute name -> token, before interning.
using RawRecord = std::map<std::string, std::string>;

// Protected iff the sensitive attribute's (trimmed) value equals the schema's
// protected_value. Throws SchemaError if the attribute is absent.
SensitiveGroup classify_group(const RawRecord& row, const StreamSchema& schema);

inline BinaryLabel classify_label(std::string_view raw, const StreamSchema& schema) {
  return trim(raw) == schema.positive_label ? BinaryLabel::Positive
                                            : BinaryLabel::Negative;
}

}  // namespace fairstream
