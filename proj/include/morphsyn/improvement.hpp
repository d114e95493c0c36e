#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphsyn/choice.hpp"
#include "morphsyn/synthesis.hpp"

namespace morphsyn {

enum class BottleneckKind { element, compatibility };

/// A selected alternative below the ideal estimate, or a selected pair below
/// the best compatibility grade; both carry the current value and the target
/// the improvement would aim for.
struct Bottleneck {
  BottleneckKind kind = BottleneckKind::element;
  std::string subject;                           // alternative id
  std::string partner;                           // second id for pairs
  std::optional<MultisetEstimate> current_estimate;
  std::optional<MultisetEstimate> proposed_estimate;  // the ideal (eta,0,...,0)
  int current_w = 0;
  int proposed_w = 0;                            // nu
  int severity = 0;                              // element: move count to the ideal
};

/// Every selected alternative whose estimate is not ideal plus every selected
/// cross-part pair with w < nu. Elements come worst-first (largest distance
/// to the ideal), then pairs by ascending w.
std::vector<Bottleneck> find_bottlenecks(const MorphModel& model,
                                         const CompositeSolution& solution);

/// Candidate actions for one element of a solution; `target` names the
/// selected alternative, each action carries the post-action estimate. The
/// no-op must be present as an ordinary zero-cost action.
struct ActionGroup {
  std::string target;
  std::vector<ChoiceItem> actions;
};

struct ImprovementPlan {
  ChoiceSolution choice;                      // the winning action per group
  std::map<std::string, std::string> applied; // target -> action id
  std::map<std::string, MultisetEstimate> new_estimates;
  MedianResult before;                        // original aggregated estimate
  CompositeSolution improved;                 // same selection, new estimates
};

/// Builds the budgeted one-action-per-element instance, solves it, and
/// applies the winning actions.
ImprovementPlan plan_improvement(const MorphModel& model, const CompositeSolution& solution,
                                 std::span<const ActionGroup> groups, double budget);

/// The bundled improvement exercise: the solution H3*C1*W2 of composite F
/// with its published nine-action table.
struct BuiltinImprovement {
  std::string composite;
  Selection selection;
  std::vector<ActionGroup> groups;
};

BuiltinImprovement builtin_improvement();

}  // namespace morphsyn
