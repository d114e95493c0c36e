#include "morphsyn/synthesis.hpp"

#include <algorithm>

namespace morphsyn {

namespace {

// Selections compare by the alternative chosen per part, in part order.
std::vector<std::string> selection_key(const Selection& selection) {
  std::vector<std::string> key;
  key.reserve(selection.size());
  for (const auto& [component, alternative] : selection) key.push_back(alternative);
  return key;
}

bool joint_dominates(const CompositeSolution& a, const CompositeSolution& b) {
  if (a.w < b.w) return false;
  const auto rel = dominates(a.estimate(), b.estimate());
  if (rel == std::partial_ordering::less || rel == std::partial_ordering::unordered)
    return false;
  return a.w > b.w || rel == std::partial_ordering::greater;
}

void sort_front(std::vector<CompositeSolution>& solutions) {
  std::sort(solutions.begin(), solutions.end(),
            [](const CompositeSolution& a, const CompositeSolution& b) {
              if (a.w != b.w) return a.w > b.w;
              const auto pa = a.estimate().cumulative_profile();
              const auto pb = b.estimate().cumulative_profile();
              if (pa != pb) return pa > pb;
              return selection_key(a.selection) < selection_key(b.selection);
            });
}

const Component& composite_or_fail(const MorphModel& model, std::string_view id) {
  const Component& c = model.component(id);
  if (c.is_leaf())
    fail(Errc::schema_error, "component '" + std::string(id) + "' has no parts to synthesize");
  return c;
}

void check_complete(const Component& composite, const Selection& selection) {
  if (selection.size() != composite.children.size())
    fail(Errc::incomplete_selection,
         "selection for '" + composite.id + "' must pick one alternative per part");
  for (const std::string& child : composite.children)
    if (!selection.count(child))
      fail(Errc::incomplete_selection,
           "selection for '" + composite.id + "' misses part '" + child + "'");
}

}  // namespace

int compatibility_floor(const MorphModel& model, std::string_view composite,
                        const Selection& selection) {
  const Component& c = composite_or_fail(model, composite);
  check_complete(c, selection);
  int floor = model.nu;
  for (auto i = selection.begin(); i != selection.end(); ++i)
    for (auto j = std::next(i); j != selection.end(); ++j)
      floor = std::min(floor, model.pair_weight(i->second, j->second));
  return floor;
}

CompositeSolution score(const MorphModel& model, std::string_view composite,
                        const Selection& selection) {
  const Component& c = composite_or_fail(model, composite);
  check_complete(c, selection);

  CompositeSolution solution;
  solution.selection = selection;
  solution.w = compatibility_floor(model, composite, selection);
  std::vector<MultisetEstimate> estimates;
  estimates.reserve(c.children.size());
  for (const std::string& child : c.children)
    estimates.push_back(model.alternative(selection.at(child)).estimate);
  solution.median = generalized_median(estimates);
  return solution;
}

std::vector<CompositeSolution> pareto_filter(std::vector<CompositeSolution> solutions) {
  std::vector<CompositeSolution> front;
  for (const CompositeSolution& s : solutions) {
    bool dominated = false;
    for (const CompositeSolution& t : solutions) {
      if (&t == &s) continue;
      if (joint_dominates(t, s)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(s);
  }
  sort_front(front);
  return front;
}

ParetoFront synthesize_component(const MorphModel& model, std::string_view composite) {
  const Component& c = composite_or_fail(model, composite);
  std::vector<const Component*> parts;
  for (const std::string& child : c.children) {
    parts.push_back(&model.component(child));
    if (parts.back()->alternatives.empty())
      fail(Errc::empty_alternatives, "part '" + child + "' of '" + c.id +
                                         "' has no alternatives to select from");
  }

  const auto candidates = enumerate_scale(model.scale);
  std::vector<CompositeSolution> admissible;
  std::vector<const DesignAlternative*> picked(parts.size(), nullptr);

  // Depth-first over parts; a branch dies as soon as its floor hits zero.
  auto descend = [&](auto&& self, std::size_t depth, int floor) -> void {
    if (depth == parts.size()) {
      CompositeSolution solution;
      for (std::size_t i = 0; i < parts.size(); ++i)
        solution.selection.emplace(parts[i]->id, picked[i]->id);
      solution.w = floor;
      std::vector<MultisetEstimate> estimates;
      estimates.reserve(parts.size());
      for (const DesignAlternative* alt : picked) estimates.push_back(alt->estimate);
      solution.median = generalized_median(estimates, candidates);
      admissible.push_back(std::move(solution));
      return;
    }
    for (const DesignAlternative& alt : parts[depth]->alternatives) {
      int next_floor = floor;
      for (std::size_t i = 0; i < depth && next_floor > 0; ++i)
        next_floor = std::min(next_floor, model.pair_weight(picked[i]->id, alt.id));
      if (next_floor < 1) continue;
      picked[depth] = &alt;
      self(self, depth + 1, next_floor);
    }
  };
  descend(descend, 0, model.nu);

  ParetoFront front;
  front.component = c.id;
  front.solutions = pareto_filter(std::move(admissible));
  for (std::size_t i = 0; i < front.solutions.size(); ++i)
    front.solutions[i].label = c.id + std::to_string(i + 1);
  return front;
}

BottomUpResult bottom_up(const MorphModel& model) {
  BottomUpResult result;
  result.enriched = model;
  result.enriched.reindex();

  auto visit = [&](auto&& self, const std::string& id) -> void {
    const Component& c = result.enriched.component(id);
    if (c.is_leaf()) return;
    for (const std::string& child : c.children) self(self, child);
    ParetoFront front = synthesize_component(result.enriched, id);
    for (const CompositeSolution& solution : front.solutions)
      result.enriched.add_alternative(id, {solution.label, solution.estimate()});
    result.order.push_back(id);
    result.fronts.emplace(id, std::move(front));
  };
  visit(visit, model.root);
  return result;
}

}  // namespace morphsyn
