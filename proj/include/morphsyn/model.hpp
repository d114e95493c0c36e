#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphsyn/estimates.hpp"

namespace morphsyn {

/// One concrete option for a component, with its quality estimate.
struct DesignAlternative {
  std::string id;
  MultisetEstimate estimate;
};

/// Tree node. Leaves carry alternatives from the model file; composites gain
/// theirs when synthesis attaches front solutions.
struct Component {
  std::string id;
  std::vector<std::string> children;
  std::vector<DesignAlternative> alternatives;

  bool is_leaf() const noexcept { return children.empty(); }
};

/// Symmetric pairwise compatibility, keyed by unordered alternative ids.
/// w = 0 means the pair cannot be combined.
class CompatibilityTable {
 public:
  void set(std::string_view a, std::string_view b, int w);
  std::optional<int> get(std::string_view a, std::string_view b) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::pair<std::string, std::string>, int>& entries() const noexcept {
    return entries_;
  }

 private:
  std::map<std::pair<std::string, std::string>, int> entries_;
};

/// Maps each component of a composite to the chosen alternative id.
using Selection = std::map<std::string, std::string>;

class MorphModel {
 public:
  Scale scale;
  int nu = 1;  // best compatibility grade
  std::string root;
  std::vector<Component> components;  // tree pre-order
  CompatibilityTable compatibility;

  /// Rebuilds the id indexes; call after mutating components directly.
  void reindex();

  const Component& component(std::string_view id) const;
  const Component* find_component(std::string_view id) const;
  const DesignAlternative& alternative(std::string_view id) const;
  const DesignAlternative* find_alternative(std::string_view id) const;
  /// Component owning an alternative id.
  const std::string& owner_of(std::string_view alternative_id) const;

  /// Attaches a synthesized alternative to a composite component.
  void add_alternative(std::string_view component_id, DesignAlternative alternative);

  /// Compatibility of two alternatives: the table entry when present,
  /// otherwise 0 for leaf-level pairs (a missing entry means the pair was
  /// never assessed) and nu for pairs involving synthesized composite
  /// alternatives.
  int pair_weight(std::string_view a, std::string_view b) const;

 private:
  std::map<std::string, std::size_t, std::less<>> component_index_;
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>> alternative_index_;
};

/// Parses and fully validates a model document (see README for the schema).
MorphModel parse_model(const std::string& json_text);

/// Canonical JSON serialization; parse(serialize(m)) == m.
std::string serialize_model(const MorphModel& model);

/// Number of distinct full systems: product of leaf alternative counts.
std::uint64_t design_space_size(const MorphModel& model);

/// The bundled on-board telemetry dataset (9 leaves under D, E, F, root A;
/// scale P4,3; nu = 4; 128 compatibility entries).
MorphModel builtin_dataset();

/// The embedded JSON the bundled dataset is parsed from; identical bytes ship
/// at data/onboard.json.
std::string_view builtin_dataset_json();

/// Published quality annotations for well-known composite solutions of the
/// bundled dataset; `check` compares them against computed scores.
struct ReferenceAnnotation {
  std::string label;      // e.g. "D1"
  std::string composite;  // e.g. "D"
  Selection selection;
  int w;
  MultisetEstimate estimate;
};

std::vector<ReferenceAnnotation> builtin_reference_annotations();

}  // namespace morphsyn
