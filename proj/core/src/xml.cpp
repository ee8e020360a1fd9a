#include "xcsp3kit/xml.hpp"

#include <expat.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace xcsp3kit {

namespace {
bool ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
}  // namespace

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && ws(s[b])) ++b;
  while (e > b && ws(s[e - 1])) --e;
  return s.substr(b, e - b);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

const std::string* RawElement::attr(std::string_view key) const {
  for (const auto& [k, v] : attributes)
    if (k == key) return &v;
  return nullptr;
}

void RawElement::set_attr(std::string_view key, std::string value) {
  for (auto& [k, v] : attributes)
    if (k == key) {
      v = std::move(value);
      return;
    }
  attributes.emplace_back(std::string(key), std::move(value));
}

bool RawElement::erase_attr(std::string_view key) {
  auto it = std::find_if(attributes.begin(), attributes.end(),
                         [&](const auto& kv) { return kv.first == key; });
  if (it == attributes.end()) return false;
  attributes.erase(it);
  return true;
}

const RawElement* RawElement::child(std::string_view child_name) const {
  for (const auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

std::vector<const RawElement*> RawElement::children_named(std::string_view child_name) const {
  std::vector<const RawElement*> out;
  for (const auto& c : children)
    if (c.name == child_name) out.push_back(&c);
  return out;
}

std::string RawElement::trimmed_text() const { return std::string(trim(text)); }

bool RawElement::has_content() const { return !children.empty() || !is_blank(text); }

// ---------------------------------------------------------------------------
// loading

namespace {

struct LoadState {
  XML_Parser parser = nullptr;
  std::vector<RawElement> stack;
  RawElement root;
  bool have_root = false;
  std::unique_ptr<Error> pending;

  Location here() const {
    return {static_cast<int>(XML_GetCurrentLineNumber(parser)),
            static_cast<int>(XML_GetCurrentColumnNumber(parser)) + 1};
  }
};

void on_start(void* ud, const XML_Char* name, const XML_Char** atts) {
  auto* st = static_cast<LoadState*>(ud);
  if (st->pending) return;
  RawElement e;
  e.name = name;
  e.location = st->here();
  for (int i = 0; atts[i]; i += 2) {
    std::string v = atts[i + 1];
    if (!v.empty() && (ws(v.front()) || ws(v.back()))) {
      st->pending = std::make_unique<Error>(
          ErrorKind::Grammar, "attribute-whitespace",
          std::string("leading or trailing whitespace in value of attribute '") + atts[i] + "'",
          e.location);
      XML_StopParser(st->parser, XML_FALSE);
      return;
    }
    e.attributes.emplace_back(atts[i], std::move(v));
  }
  st->stack.push_back(std::move(e));
}

void on_end(void* ud, const XML_Char*) {
  auto* st = static_cast<LoadState*>(ud);
  if (st->pending) return;
  RawElement e = std::move(st->stack.back());
  st->stack.pop_back();
  // formatting whitespace between child elements carries nothing
  if (!e.children.empty() && is_blank(e.text)) e.text.clear();
  if (st->stack.empty()) {
    st->root = std::move(e);
    st->have_root = true;
  } else {
    st->stack.back().children.push_back(std::move(e));
  }
}

void on_text(void* ud, const XML_Char* s, int len) {
  auto* st = static_cast<LoadState*>(ud);
  if (st->pending || st->stack.empty()) return;
  st->stack.back().text.append(s, static_cast<size_t>(len));
}

}  // namespace

RawElement load_document(std::string_view bytes) {
  if (is_blank(bytes)) fail(ErrorKind::Xml, "not-xml", "not XML: empty input");

  LoadState st;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) fail(ErrorKind::Xml, "internal", "cannot create XML parser");
  st.parser = parser.get();
  XML_SetUserData(st.parser, &st);
  XML_SetElementHandler(st.parser, on_start, on_end);
  XML_SetCharacterDataHandler(st.parser, on_text);

  auto status = XML_Parse(st.parser, bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (st.pending) throw *st.pending;
  if (status != XML_STATUS_OK) {
    auto code = XML_GetErrorCode(st.parser);
    Location loc = st.here();
    std::string tag = code == XML_ERROR_DUPLICATE_ATTRIBUTE ? "duplicate-attribute" : "xml-syntax";
    if (code == XML_ERROR_NO_ELEMENTS && st.stack.empty() && !st.have_root)
      fail(ErrorKind::Xml, "not-xml", "not XML: no element found", loc);
    fail(ErrorKind::Xml, tag, std::string("XML error: ") + XML_ErrorString(code), loc);
  }
  if (!st.have_root) fail(ErrorKind::Xml, "not-xml", "not XML: no root element");
  return std::move(st.root);
}

RawElement load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Structure, "io", "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_document(ss.str());
}

// ---------------------------------------------------------------------------
// aliases

namespace {

struct IdEntry {
  RawElement* element = nullptr;
  size_t first = 0;  // pre-order index
  size_t last = 0;   // last pre-order index inside the subtree
  bool had_alias = false;
  bool has_id_below = false;
};

struct AliasIndex {
  std::unordered_map<std::string, IdEntry> ids;
  size_t counter = 0;

  // returns whether the subtree below e (excluding e) carries an id
  bool collect(RawElement& e) {
    size_t me = counter++;
    bool below = false;
    for (auto& c : e.children) below = collect(c) || below;
    if (const std::string* id = e.attr("id")) {
      if (ids.count(*id))
        fail(ErrorKind::Structure, "duplicate-id", "id '" + *id + "' is not unique", e.location);
      ids[*id] = IdEntry{&e, me, counter - 1, e.has_attr("as"), below};
    }
    return below || e.has_attr("id");
  }
};

void resolve_in_place(RawElement& e, AliasIndex& idx, size_t& counter) {
  size_t me = counter++;
  if (const std::string* as = e.attr("as")) {
    std::string target = *as;
    if (e.has_content())
      fail(ErrorKind::Structure, "non-empty-alias",
           "element <" + e.name + "> with as=\"" + target + "\" has content of its own", e.location);
    auto it = idx.ids.find(target);
    if (it == idx.ids.end())
      fail(ErrorKind::Structure, "dangling-id", "as=\"" + target + "\" refers to no element",
           e.location);
    const IdEntry& t = it->second;
    if (t.last >= me)
      fail(ErrorKind::Structure, "forward-reference",
           "as=\"" + target + "\" refers to an element that does not precede it", e.location);
    if (t.had_alias)
      fail(ErrorKind::Structure, "transitive-alias",
           "as=\"" + target + "\" refers to an element that is itself an alias", e.location);
    if (t.has_id_below)
      fail(ErrorKind::Structure, "id-in-target",
           "as=\"" + target + "\" refers to an element containing id-bearing elements", e.location);
    e.children = t.element->children;
    e.text = t.element->text;
    e.erase_attr("as");
    return;
  }
  for (auto& c : e.children) resolve_in_place(c, idx, counter);
}

}  // namespace

RawElement resolve_aliases(const RawElement& root) {
  RawElement out = root;
  AliasIndex idx;
  idx.collect(out);
  size_t counter = 0;
  resolve_in_place(out, idx, counter);
  return out;
}

// ---------------------------------------------------------------------------
// skeleton

namespace {

const char* kOtherFrameworks[] = {"WCSP", "FCSP", "QCSP", "QCSP+", "QCOP", "QCOP+", "SCSP",
                                  "SCOP", "QSTR", "TCSP", "NCSP", "NCOP", "DisCSP", "DisWCSP"};

void reject_reification(const RawElement& e) {
  // "hrefifiedFrom" is a misspelling seen in the wild
  for (const char* a : {"reifiedBy", "hreifiedFrom", "hreifiedTo", "hrefifiedFrom"})
    if (e.has_attr(a))
      unsupported(std::string("reification (attribute ") + a + " on <" + e.name + ">)", e.location);
  for (const auto& c : e.children) reject_reification(c);
}

}  // namespace

DocumentFrame validate_skeleton(RawElement root) {
  DocumentFrame f;
  if (root.name != "instance")
    fail(ErrorKind::Structure, "skeleton", "root element must be <instance>, found <" + root.name + ">",
         root.location);
  const std::string* format = root.attr("format");
  if (!format) fail(ErrorKind::Structure, "missing-format", "missing attribute format", root.location);
  if (*format != "XCSP3")
    fail(ErrorKind::Structure, "bad-format", "format must be XCSP3, found '" + *format + "'",
         root.location);
  const std::string* type = root.attr("type");
  if (!type) fail(ErrorKind::Structure, "missing-type", "missing attribute type", root.location);
  if (*type == "CSP") {
    f.framework = Framework::CSP;
  } else if (*type == "COP") {
    f.framework = Framework::COP;
  } else {
    for (const char* other : kOtherFrameworks)
      if (*type == other)
        throw Error(ErrorKind::Unsupported, "unsupported-framework", "framework " + *type,
                    root.location);
    fail(ErrorKind::Structure, "bad-framework", "unknown framework '" + *type + "'", root.location);
  }
  for (const auto& [k, v] : root.attributes)
    if (k != "format" && k != "type" && k != "id" && k != "note" && k != "class")
      warn(&f.warnings, "unknown-attribute", "unknown attribute '" + k + "' on <instance>",
           root.location);

  reject_reification(root);

  auto shared = std::make_shared<RawElement>(std::move(root));
  f.root = shared;
  for (const auto& c : shared->children) {
    const RawElement** slot = nullptr;
    if (c.name == "variables") slot = &f.variables;
    else if (c.name == "constraints") slot = &f.constraints;
    else if (c.name == "objectives") slot = &f.objectives;
    else if (c.name == "annotations") slot = &f.annotations;
    else
      fail(ErrorKind::Structure, "skeleton", "unexpected element <" + c.name + "> under <instance>",
           c.location);
    if (*slot)
      fail(ErrorKind::Structure, "skeleton", "element <" + c.name + "> appears twice", c.location);
    *slot = &c;
  }
  if (!is_blank(shared->text))
    fail(ErrorKind::Structure, "skeleton", "unexpected text under <instance>", shared->location);
  if (!f.variables)
    fail(ErrorKind::Structure, "skeleton", "missing <variables>", shared->location);
  bool any = false;
  for (const auto& c : f.variables->children) any = any || c.name == "var" || c.name == "array";
  if (!any)
    fail(ErrorKind::Structure, "skeleton", "<variables> must declare at least one variable",
         f.variables->location);
  if (f.objectives && f.framework == Framework::CSP)
    fail(ErrorKind::Structure, "objectives-under-csp", "<objectives> is only allowed for COP",
         f.objectives->location);
  if (f.framework == Framework::COP && (!f.objectives || f.objectives->children.empty()))
    fail(ErrorKind::Structure, "skeleton", "a COP instance needs at least one objective",
         shared->location);
  return f;
}

DocumentFrame read_frame(std::string_view bytes) {
  return validate_skeleton(resolve_aliases(load_document(bytes)));
}

DocumentFrame read_frame_file(const std::string& path) {
  return validate_skeleton(resolve_aliases(load_file(path)));
}

}  // namespace xcsp3kit
