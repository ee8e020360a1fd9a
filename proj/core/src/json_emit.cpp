#include "xcsp3kit/json_emit.hpp"

#include <cstdio>
#include <map>

namespace xcsp3kit {

namespace {

std::string text_key(const RawElement& e) {
  const std::string& n = e.name;
  if (n == "var" || n == "array") return "domain";
  if (n == "intension") return "function";
  if (n == "minimize" || n == "maximize") {
    const std::string* t = e.attr("type");
    return !t || *t == "expression" ? "expression" : "list";
  }
  static const char* lists[] = {"allDifferent", "allEqual", "ordered", "channel",
                                "circuit",      "clause",   "cube",    "allIntersecting"};
  for (const char* l : lists)
    if (n == l) return "list";
  return "#text";
}

JsonValue element_value(const RawElement& e, const JsonOptions& opts);

void children_into(const RawElement& e, const JsonOptions& opts, JsonValue::Object& out) {
  const auto& cs = e.children;
  if (opts.safe_mode) {
    std::map<std::string, size_t> slot;
    std::map<std::string, size_t> count;
    for (const auto& c : cs) ++count[c.name];
    for (const auto& c : cs) {
      JsonValue v = element_value(c, opts);
      auto it = slot.find(c.name);
      if (it == slot.end()) {
        slot[c.name] = out.size();
        if (count[c.name] > 1) out.emplace_back(c.name, JsonValue{JsonValue::Array{std::move(v)}});
        else out.emplace_back(c.name, std::move(v));
      } else {
        std::get<JsonValue::Array>(out[it->second].second.v).push_back(std::move(v));
      }
    }
    return;
  }
  for (size_t i = 0; i < cs.size();) {
    size_t j = i;
    while (j < cs.size() && cs[j].name == cs[i].name) ++j;
    if (j - i == 1) {
      out.emplace_back(cs[i].name, element_value(cs[i], opts));
    } else {
      JsonValue::Array arr;
      for (size_t k = i; k < j; ++k) arr.push_back(element_value(cs[k], opts));
      out.emplace_back(cs[i].name, JsonValue{std::move(arr)});
    }
    i = j;
  }
}

JsonValue element_value(const RawElement& e, const JsonOptions& opts) {
  std::string text = std::string(trim(e.text));
  if (e.attributes.empty() && e.children.empty()) {
    if (text.empty()) return {};
    return JsonValue{text};
  }
  JsonValue::Object obj;
  for (const auto& [k, v] : e.attributes) obj.emplace_back("@" + k, JsonValue{v});
  if (!text.empty()) obj.emplace_back(text_key(e), JsonValue{text});
  children_into(e, opts, obj);
  return JsonValue{std::move(obj)};
}

void dump_into(const JsonValue& v, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  if (v.is_null()) {
    out += "null";
  } else if (v.is_string()) {
    out += '"' + json_escape(v.str()) + '"';
  } else if (v.is_array()) {
    out += '[';
    const auto& a = v.array();
    for (size_t i = 0; i < a.size(); ++i) {
      if (i) out += ',';
      newline(depth + 1);
      dump_into(a[i], indent, depth + 1, out);
    }
    if (!a.empty()) newline(depth);
    out += ']';
  } else {
    out += '{';
    const auto& o = v.object();
    for (size_t i = 0; i < o.size(); ++i) {
      if (i) out += ',';
      newline(depth + 1);
      out += '"' + json_escape(o[i].first) + "\": ";
      dump_into(o[i].second, indent, depth + 1, out);
    }
    if (!o.empty()) newline(depth);
    out += '}';
  }
}

}  // namespace

std::string json_escape(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

JsonValue to_json_value(const RawElement& input, const JsonOptions& opts) {
  RawElement resolved;
  const RawElement* root = &input;
  if (opts.resolve_aliases) {
    resolved = resolve_aliases(input);
    root = &resolved;
  }
  if (root->name != "instance") {
    JsonValue::Object wrap;
    wrap.emplace_back(root->name, element_value(*root, opts));
    return JsonValue{std::move(wrap)};
  }
  JsonValue::Object obj;
  for (const auto& [k, v] : root->attributes) obj.emplace_back("@" + k, JsonValue{v});
  children_into(*root, opts, obj);
  return JsonValue{std::move(obj)};
}

std::string dump_json(const JsonValue& v, int indent) {
  std::string out;
  dump_into(v, indent, 0, out);
  out += '\n';
  return out;
}

std::string to_json(const RawElement& root, const JsonOptions& opts) { return dump_json(to_json_value(root, opts), 2); }

}  // namespace xcsp3kit
