#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xcsp3kit/xml.hpp"

namespace xcsp3kit {

// Ordered, and objects may repeat a key: the default mode keeps document
// order, so separated siblings with the same name become separate keys.
struct JsonValue {
  using Object = std::vector<std::pair<std::string, JsonValue>>;
  using Array = std::vector<JsonValue>;
  std::variant<std::monostate, std::string, Array, Object> v;

  bool is_null() const { return std::holds_alternative<std::monostate>(v); }
  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_array() const { return std::holds_alternative<Array>(v); }
  bool is_object() const { return std::holds_alternative<Object>(v); }
  const std::string& str() const { return std::get<std::string>(v); }
  const Array& array() const { return std::get<Array>(v); }
  const Object& object() const { return std::get<Object>(v); }
};

struct JsonOptions {
  // group same-name siblings into one array at the first occurrence; order of
  // differently named siblings is lost
  bool safe_mode = false;
  bool resolve_aliases = false;
};

JsonValue to_json_value(const RawElement& root, const JsonOptions& opts = {});
std::string dump_json(const JsonValue& v, int indent = 2);
std::string to_json(const RawElement& root, const JsonOptions& opts = {});

std::string json_escape(std::string_view s);

}  // namespace xcsp3kit
