#include "fairstream/schema.hpp"

#include <set>

namespace fairstream {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

int StreamSchema::attribute_index(std::string_view name) const {
  for (size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i].name == name) return static_cast<int>(i);
  return -1;
}

void StreamSchema::validate() const {
  std::set<std::string> names;
  for (const auto& a : attributes) {
    if (a.name.empty()) throw SchemaError("schema: empty attribute name");
    if (!names.insert(a.name).second)
      throw SchemaError("schema: duplicate attribute '" + a.name + "'");
  }
  const int li = attribute_index(label_attribute);
  if (li < 0)
    throw SchemaError("schema: label attribute '" + label_attribute +
                      "' not declared");
  const int si = attribute_index(sensitive_attribute);
  if (si < 0)
    throw SchemaError("schema: sensitive attribute '" + sensitive_attribute +
                      "' not declared");
  if (attributes[si].kind != AttrKind::Nominal)
    throw SchemaError("schema: sensitive attribute '" + sensitive_attribute +
                      "' must be nominal");
  if (sensitive_attribute == label_attribute)
    throw SchemaError("schema: sensitive attribute cannot be the label");
}

ModelLayout make_layout(const StreamSchema& schema) {
  schema.validate();
  ModelLayout layout;
  for (const auto& a : schema.attributes) {
    if (a.name == schema.label_attribute) continue;
    if (a.kind == AttrKind::Nominal) {
      if (a.name == schema.sensitive_attribute)
        layout.sensitive_slot = static_cast<int>(layout.nominal_names.size());
      layout.nominal_names.push_back(a.name);
    } else {
      layout.continuous_names.push_back(a.name);
    }
  }
  return layout;
}

SensitiveGroup classify_group(const RawRecord& row, const StreamSchema& schema) {
  auto it = row.find(schema.sensitive_attribute);
  if (it == row.end())
    throw SchemaError("instance lacks sensitive attribute '" +
                      schema.sensitive_attribute + "'");
  return trim(it->second) == schema.protected_value ? SensitiveGroup::Protected
                                                    : SensitiveGroup::NonProtected;
}

}  // namespace fairstream
