#include "morphsyn/improvement.hpp"

#include <algorithm>
#include <set>

namespace morphsyn {

namespace {

MultisetEstimate ideal_estimate(const Scale& scale) {
  std::vector<int> counts(scale.levels, 0);
  counts[0] = scale.cardinality;
  return MultisetEstimate(scale, std::move(counts));
}

// The composite a selection belongs to: the component whose part list the
// selection keys come from.
const Component& composite_of(const MorphModel& model, const Selection& selection) {
  if (selection.empty()) fail(Errc::incomplete_selection, "selection is empty");
  const std::string& part = selection.begin()->first;
  for (const Component& c : model.components)
    if (std::find(c.children.begin(), c.children.end(), part) != c.children.end()) return c;
  fail(Errc::unknown_reference, "no composite has part '" + part + "'");
}

}  // namespace

std::vector<Bottleneck> find_bottlenecks(const MorphModel& model,
                                         const CompositeSolution& solution) {
  const MultisetEstimate ideal = ideal_estimate(model.scale);

  std::vector<Bottleneck> elements;
  for (const auto& [component, alternative] : solution.selection) {
    const MultisetEstimate& current = model.alternative(alternative).estimate;
    const int gap = proximity(current, ideal).total();
    if (gap == 0) continue;
    Bottleneck b;
    b.kind = BottleneckKind::element;
    b.subject = alternative;
    b.current_estimate = current;
    b.proposed_estimate = ideal;
    b.severity = gap;
    elements.push_back(std::move(b));
  }
  std::sort(elements.begin(), elements.end(), [](const Bottleneck& a, const Bottleneck& b) {
    if (a.severity != b.severity) return a.severity > b.severity;
    return a.subject < b.subject;
  });

  std::vector<Bottleneck> pairs;
  for (auto i = solution.selection.begin(); i != solution.selection.end(); ++i) {
    for (auto j = std::next(i); j != solution.selection.end(); ++j) {
      const int w = model.pair_weight(i->second, j->second);
      if (w >= model.nu) continue;
      Bottleneck b;
      b.kind = BottleneckKind::compatibility;
      b.subject = std::min(i->second, j->second);
      b.partner = std::max(i->second, j->second);
      b.current_w = w;
      b.proposed_w = model.nu;
      pairs.push_back(std::move(b));
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Bottleneck& a, const Bottleneck& b) {
    if (a.current_w != b.current_w) return a.current_w < b.current_w;
    return std::tie(a.subject, a.partner) < std::tie(b.subject, b.partner);
  });

  elements.insert(elements.end(), pairs.begin(), pairs.end());
  return elements;
}

ImprovementPlan plan_improvement(const MorphModel& model, const CompositeSolution& solution,
                                 std::span<const ActionGroup> groups, double budget) {
  if (groups.empty()) fail(Errc::empty_input, "no action groups");

  std::set<std::string> selected;
  for (const auto& [component, alternative] : solution.selection) selected.insert(alternative);

  std::set<std::string> targets;
  ChoiceInstance instance;
  instance.scale = model.scale;
  instance.budget = budget;
  for (const ActionGroup& group : groups) {
    if (!selected.count(group.target))
      fail(Errc::unknown_target, "'" + group.target + "' is not part of the solution");
    if (!targets.insert(group.target).second)
      fail(Errc::duplicate_id, "two action groups target '" + group.target + "'");
    const bool has_noop = std::any_of(group.actions.begin(), group.actions.end(),
                                      [](const ChoiceItem& a) { return a.cost == 0; });
    if (!has_noop)
      fail(Errc::schema_error, "group for '" + group.target + "' lacks a zero-cost action");
    instance.groups.push_back(group.actions);
  }

  ImprovementPlan plan;
  plan.choice = solve(instance).front();

  for (std::size_t i = 0; i < groups.size(); ++i) {
    const ActionGroup& group = groups[i];
    const std::string& winner = plan.choice.item_ids[i];
    const auto action = std::find_if(group.actions.begin(), group.actions.end(),
                                     [&](const ChoiceItem& a) { return a.id == winner; });
    plan.applied.emplace(group.target, winner);
    plan.new_estimates.emplace(group.target, action->estimate);
  }

  // Re-score the whole solution with the post-action estimates.
  const Component& composite = composite_of(model, solution.selection);
  std::vector<MultisetEstimate> before, after;
  for (const std::string& part : composite.children) {
    const std::string& alternative = solution.selection.at(part);
    const MultisetEstimate& original = model.alternative(alternative).estimate;
    before.push_back(original);
    const auto replaced = plan.new_estimates.find(alternative);
    after.push_back(replaced == plan.new_estimates.end() ? original : replaced->second);
  }
  plan.before = generalized_median(before);
  plan.improved.label = solution.label;
  plan.improved.selection = solution.selection;
  plan.improved.w = solution.w;
  plan.improved.median = generalized_median(after);
  return plan;
}

}  // namespace morphsyn
