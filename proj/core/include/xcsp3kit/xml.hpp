#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xcsp3kit/diagnostic.hpp"

namespace xcsp3kit {

struct RawElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<RawElement> children;
  // character data directly under this element, concatenated, untrimmed
  std::string text;
  Location location;

  const std::string* attr(std::string_view key) const;
  bool has_attr(std::string_view key) const { return attr(key) != nullptr; }
  void set_attr(std::string_view key, std::string value);
  bool erase_attr(std::string_view key);

  const RawElement* child(std::string_view child_name) const;
  std::vector<const RawElement*> children_named(std::string_view child_name) const;

  std::string trimmed_text() const;
  bool has_content() const;  // children or non-blank text
};

std::string_view trim(std::string_view s);
bool is_blank(std::string_view s);

// expat backed; comments and processing instructions are dropped
RawElement load_document(std::string_view bytes);
RawElement load_file(const std::string& path);

RawElement resolve_aliases(const RawElement& root);

enum class Framework { CSP, COP };

struct DocumentFrame {
  std::shared_ptr<const RawElement> root;
  Framework framework = Framework::CSP;
  const RawElement* variables = nullptr;
  const RawElement* constraints = nullptr;  // may be null
  const RawElement* objectives = nullptr;   // COP only
  const RawElement* annotations = nullptr;  // opaque
  Warnings warnings;
};

DocumentFrame validate_skeleton(RawElement root);

// load + aliases + skeleton
DocumentFrame read_frame(std::string_view bytes);
DocumentFrame read_frame_file(const std::string& path);

}  // namespace xcsp3kit
