#include "morphsyn/model.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "json.hpp"

namespace morphsyn {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::pair<std::string, std::string> unordered_key(std::string_view a, std::string_view b) {
  std::string x(a), y(b);
  if (y < x) std::swap(x, y);
  return {std::move(x), std::move(y)};
}

const json& require_field(const json& j, const char* field, const std::string& where) {
  auto it = j.find(field);
  if (it == j.end())
    fail(Errc::schema_error, where + ": missing field '" + field + "'");
  return *it;
}

int require_int(const json& j, const char* field, const std::string& where) {
  const json& v = require_field(j, field, where);
  if (!v.is_number_integer())
    fail(Errc::schema_error, where + ": field '" + field + "' must be an integer");
  return v.get<int>();
}

std::string require_string(const json& j, const char* field, const std::string& where) {
  const json& v = require_field(j, field, where);
  if (!v.is_string() || v.get<std::string>().empty())
    fail(Errc::schema_error, where + ": field '" + field + "' must be a non-empty string");
  return v.get<std::string>();
}

// "D12" -> composite "D" when such a composite exists; synthesized
// alternatives are labelled this way, so compatibility overrides may name
// them before they exist.
bool is_composite_label(const MorphModel& model, std::string_view id) {
  const std::size_t digits = id.find_last_not_of("0123456789") + 1;
  if (digits == 0 || digits >= id.size()) return false;
  if (id[digits] == '0') return false;
  const Component* c = model.find_component(id.substr(0, digits));
  return c != nullptr && !c->is_leaf();
}

// Component a compatibility key belongs to, or fails with UnknownReference.
std::string resolve_owner(const MorphModel& model, const std::string& id) {
  if (model.find_alternative(id) != nullptr) return model.owner_of(id);
  if (is_composite_label(model, id)) {
    const std::size_t digits = id.find_last_not_of("0123456789") + 1;
    return id.substr(0, digits);
  }
  fail(Errc::unknown_reference, "compatibility entry names unknown alternative '" + id + "'");
}

void parse_component(const json& node, const Scale& scale, std::vector<Component>& out,
                     std::set<std::string>& seen_ids) {
  Component component;
  component.id = require_string(node, "id", "component");
  const std::string where = "component '" + component.id + "'";
  if (!seen_ids.insert(component.id).second)
    fail(Errc::duplicate_id, "id '" + component.id + "' appears twice");

  const bool has_children = node.contains("children");
  const bool has_alternatives = node.contains("alternatives");
  if (has_children == has_alternatives)
    fail(Errc::schema_error, where + ": needs either 'children' or 'alternatives'");

  const std::size_t slot = out.size();
  out.push_back(component);

  if (has_alternatives) {
    const json& alts = node["alternatives"];
    if (!alts.is_array() || alts.empty())
      fail(Errc::schema_error, where + ": 'alternatives' must be a non-empty array");
    for (const json& alt : alts) {
      const std::string id = require_string(alt, "id", where);
      if (!seen_ids.insert(id).second)
        fail(Errc::duplicate_id, "id '" + id + "' appears twice");
      const json& counts_json = require_field(alt, "estimate", where + " alternative '" + id + "'");
      if (!counts_json.is_array())
        fail(Errc::schema_error, where + ": estimate of '" + id + "' must be an array");
      std::vector<int> counts;
      for (const json& c : counts_json) {
        if (!c.is_number_integer())
          fail(Errc::schema_error, where + ": estimate of '" + id + "' must hold integers");
        counts.push_back(c.get<int>());
      }
      try {
        MultisetEstimate estimate(scale, std::move(counts));
        if (!estimate.is_interval())
          fail(Errc::estimate_error, "estimate of '" + id + "' is not an interval estimate");
        out[slot].alternatives.push_back({id, std::move(estimate)});
      } catch (const Error& e) {
        if (e.code() == Errc::estimate_error) throw;
        fail(Errc::estimate_error, "estimate of '" + id + "': " + e.what());
      }
    }
  } else {
    const json& children = node["children"];
    if (!children.is_array() || children.empty())
      fail(Errc::schema_error, where + ": 'children' must be a non-empty array");
    for (const json& child : children) {
      if (!child.is_object()) fail(Errc::schema_error, where + ": child must be an object");
      out[slot].children.push_back(require_string(child, "id", where + " child"));
      parse_component(child, scale, out, seen_ids);
    }
  }
}

ordered_json component_to_json(const MorphModel& model, const Component& component) {
  ordered_json node;
  node["id"] = component.id;
  if (component.is_leaf()) {
    ordered_json alts = ordered_json::array();
    for (const DesignAlternative& alt : component.alternatives) {
      ordered_json a;
      a["id"] = alt.id;
      a["estimate"] = alt.estimate.counts();
      alts.push_back(std::move(a));
    }
    node["alternatives"] = std::move(alts);
  } else {
    ordered_json children = ordered_json::array();
    for (const std::string& child : component.children)
      children.push_back(component_to_json(model, model.component(child)));
    node["children"] = std::move(children);
  }
  return node;
}

}  // namespace

void CompatibilityTable::set(std::string_view a, std::string_view b, int w) {
  entries_[unordered_key(a, b)] = w;
}

std::optional<int> CompatibilityTable::get(std::string_view a, std::string_view b) const {
  auto it = entries_.find(unordered_key(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MorphModel::reindex() {
  component_index_.clear();
  alternative_index_.clear();
  for (std::size_t i = 0; i < components.size(); ++i) {
    component_index_.emplace(components[i].id, i);
    for (std::size_t j = 0; j < components[i].alternatives.size(); ++j)
      alternative_index_.emplace(components[i].alternatives[j].id, std::make_pair(i, j));
  }
}

const Component* MorphModel::find_component(std::string_view id) const {
  auto it = component_index_.find(id);
  return it == component_index_.end() ? nullptr : &components[it->second];
}

const Component& MorphModel::component(std::string_view id) const {
  const Component* c = find_component(id);
  if (!c) fail(Errc::unknown_reference, "unknown component '" + std::string(id) + "'");
  return *c;
}

const DesignAlternative* MorphModel::find_alternative(std::string_view id) const {
  auto it = alternative_index_.find(id);
  if (it == alternative_index_.end()) return nullptr;
  return &components[it->second.first].alternatives[it->second.second];
}

const DesignAlternative& MorphModel::alternative(std::string_view id) const {
  const DesignAlternative* a = find_alternative(id);
  if (!a) fail(Errc::unknown_reference, "unknown alternative '" + std::string(id) + "'");
  return *a;
}

const std::string& MorphModel::owner_of(std::string_view alternative_id) const {
  auto it = alternative_index_.find(alternative_id);
  if (it == alternative_index_.end())
    fail(Errc::unknown_reference, "unknown alternative '" + std::string(alternative_id) + "'");
  return components[it->second.first].id;
}

void MorphModel::add_alternative(std::string_view component_id, DesignAlternative alternative) {
  auto it = component_index_.find(component_id);
  if (it == component_index_.end())
    fail(Errc::unknown_reference, "unknown component '" + std::string(component_id) + "'");
  if (alternative_index_.count(alternative.id))
    fail(Errc::duplicate_id, "alternative '" + alternative.id + "' already exists");
  Component& c = components[it->second];
  c.alternatives.push_back(std::move(alternative));
  alternative_index_.emplace(c.alternatives.back().id,
                             std::make_pair(it->second, c.alternatives.size() - 1));
}

int MorphModel::pair_weight(std::string_view a, std::string_view b) const {
  if (auto w = compatibility.get(a, b)) return *w;
  const DesignAlternative* da = find_alternative(a);
  const DesignAlternative* db = find_alternative(b);
  if (!da) fail(Errc::unknown_reference, "unknown alternative '" + std::string(a) + "'");
  if (!db) fail(Errc::unknown_reference, "unknown alternative '" + std::string(b) + "'");
  const bool leaf_pair = component(owner_of(a)).is_leaf() && component(owner_of(b)).is_leaf();
  return leaf_pair ? 0 : nu;
}

MorphModel parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::schema_error, "model document must be a JSON object");

  MorphModel model;
  const json& scale = require_field(doc, "scale", "model");
  model.scale.levels = require_int(scale, "l", "scale");
  model.scale.cardinality = require_int(scale, "eta", "scale");
  if (model.scale.levels < 1 || model.scale.cardinality < 1)
    fail(Errc::schema_error, "scale grades and cardinality must be positive");
  model.nu = require_int(doc, "nu", "model");
  if (model.nu < 1) fail(Errc::schema_error, "nu must be positive");

  const json& tree = require_field(doc, "components", "model");
  if (!tree.is_object()) fail(Errc::schema_error, "'components' must be the root component object");
  std::set<std::string> seen_ids;
  parse_component(tree, model.scale, model.components, seen_ids);
  model.root = model.components.front().id;
  model.reindex();

  const json& compat = require_field(doc, "compatibility", "model");
  if (!compat.is_array()) fail(Errc::schema_error, "'compatibility' must be an array");
  for (const json& entry : compat) {
    const std::string a = require_string(entry, "a", "compatibility entry");
    const std::string b = require_string(entry, "b", "compatibility entry");
    const int w = require_int(entry, "w", "compatibility entry");
    if (w < 0 || w > model.nu)
      fail(Errc::schema_error, "compatibility (" + a + "," + b + ") = " + std::to_string(w) +
                                   " is outside [0," + std::to_string(model.nu) + "]");
    const std::string owner_a = resolve_owner(model, a);
    const std::string owner_b = resolve_owner(model, b);
    if (owner_a == owner_b)
      fail(Errc::schema_error, "compatibility (" + a + "," + b +
                                   ") pairs alternatives of the same component");
    if (model.compatibility.get(a, b))
      fail(Errc::duplicate_id, "compatibility (" + a + "," + b + ") appears twice");
    model.compatibility.set(a, b, w);
  }

  // Sibling leaves of a common composite must be assessed pair by pair.
  for (const Component& composite : model.components) {
    for (std::size_t i = 0; i < composite.children.size(); ++i) {
      for (std::size_t j = i + 1; j < composite.children.size(); ++j) {
        const Component& u = model.component(composite.children[i]);
        const Component& v = model.component(composite.children[j]);
        if (!u.is_leaf() || !v.is_leaf()) continue;
        for (const DesignAlternative& da : u.alternatives)
          for (const DesignAlternative& db : v.alternatives)
            if (!model.compatibility.get(da.id, db.id))
              fail(Errc::unknown_reference,
                   "missing compatibility entry (" + da.id + "," + db.id + ")");
      }
    }
  }
  return model;
}

std::string serialize_model(const MorphModel& model) {
  ordered_json doc;
  doc["scale"] = {{"l", model.scale.levels}, {"eta", model.scale.cardinality}};
  doc["nu"] = model.nu;
  doc["components"] = component_to_json(model, model.component(model.root));
  ordered_json compat = ordered_json::array();
  for (const auto& [key, w] : model.compatibility.entries()) {
    ordered_json entry;
    entry["a"] = key.first;
    entry["b"] = key.second;
    entry["w"] = w;
    compat.push_back(std::move(entry));
  }
  doc["compatibility"] = std::move(compat);
  return doc.dump(2) + "\n";
}

std::uint64_t design_space_size(const MorphModel& model) {
  unsigned __int128 product = 1;
  for (const Component& c : model.components) {
    if (!c.is_leaf()) continue;
    product *= static_cast<unsigned __int128>(c.alternatives.size());
    if (product > std::numeric_limits<std::uint64_t>::max())
      fail(Errc::overflow, "design space exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(product);
}

MorphModel builtin_dataset() {
  return parse_model(std::string(builtin_dataset_json()));
}

std::vector<ReferenceAnnotation> builtin_reference_annotations() {
  const Scale scale{4, 3};
  auto e = [&](std::vector<int> counts) { return MultisetEstimate(scale, std::move(counts)); };
  return {
      {"D1", "D", {{"X", "X2"}, {"Y", "Y2"}, {"Z", "Z2"}}, 1, e({2, 1, 0, 0})},
      {"D2", "D", {{"X", "X3"}, {"Y", "Y3"}, {"Z", "Z3"}}, 2, e({1, 2, 0, 0})},
      {"E1", "E", {{"I", "I3"}, {"Q", "Q5"}, {"G", "G4"}}, 3, e({3, 0, 0, 0})},
      {"E2", "E", {{"I", "I1"}, {"Q", "Q1"}, {"G", "G4"}}, 4, e({2, 1, 0, 0})},
      {"F1", "F", {{"H", "H2"}, {"C", "C1"}, {"W", "W2"}}, 1, e({2, 1, 0, 0})},
      {"F2", "F", {{"H", "H3"}, {"C", "C1"}, {"W", "W2"}}, 3, e({1, 2, 0, 0})},
  };
}

}  // namespace morphsyn
