#include "morphsyn/aggregation.hpp"

#include <algorithm>

namespace morphsyn {

namespace {

void check_same_components(const SolutionSet& set) {
  if (set.selections.empty()) fail(Errc::empty_input, "no solutions to aggregate");
  const Selection& first = set.selections.front();
  for (const Selection& s : set.selections) {
    if (s.size() != first.size())
      fail(Errc::component_mismatch, "solutions cover different component sets");
    for (const auto& [component, alternative] : s)
      if (!first.count(component))
        fail(Errc::component_mismatch,
             "solutions cover different component sets ('" + component + "')");
  }
}

}  // namespace

std::map<std::string, std::set<std::string>> supersolution(const SolutionSet& set) {
  check_same_components(set);
  std::map<std::string, std::set<std::string>> out;
  for (const Selection& s : set.selections)
    for (const auto& [component, alternative] : s) out[component].insert(alternative);
  return out;
}

Kernel subsolution(const SolutionSet& set) {
  Kernel kernel;
  for (auto& [component, variants] : supersolution(set)) {
    if (variants.size() == 1)
      kernel.fixed.emplace(component, *variants.begin());
    else
      kernel.open.emplace(component, std::move(variants));
  }
  return kernel;
}

AggregationResult extend_kernel(const Kernel& kernel,
                                std::span<const AggregationCandidate> candidates,
                                double budget) {
  if (kernel.open.empty())
    fail(Errc::empty_input, "the kernel fixes every component, nothing to extend");
  if (candidates.empty()) fail(Errc::missing_candidate, "no candidates supplied");

  AggregationResult result;
  ChoiceInstance instance;
  instance.scale = candidates.front().estimate.scale();
  instance.budget = budget;

  // Group candidates by open component, keeping first-appearance order;
  // candidates for fixed components are already decided and are ignored.
  for (const AggregationCandidate& c : candidates) {
    if (kernel.fixed.count(c.component)) continue;
    if (!kernel.open.count(c.component))
      fail(Errc::unknown_reference, "candidate '" + c.id + "' names component '" + c.component +
                                        "' which is not part of the kernel");
    auto slot = std::find(result.open_order.begin(), result.open_order.end(), c.component);
    if (slot == result.open_order.end()) {
      result.open_order.push_back(c.component);
      instance.groups.emplace_back();
      slot = std::prev(result.open_order.end());
    }
    instance.groups[slot - result.open_order.begin()].push_back({c.id, c.estimate, c.cost});
  }
  for (const auto& [component, variants] : kernel.open)
    if (std::find(result.open_order.begin(), result.open_order.end(), component) ==
        result.open_order.end())
      fail(Errc::missing_candidate, "open component '" + component + "' has no candidates");

  result.choice = solve(instance).front();

  result.combined = kernel.fixed;
  for (std::size_t i = 0; i < result.open_order.size(); ++i)
    result.combined.emplace(result.open_order[i], result.choice.item_ids[i]);
  return result;
}

}  // namespace morphsyn
