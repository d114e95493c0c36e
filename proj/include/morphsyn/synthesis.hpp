#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "morphsyn/model.hpp"

namespace morphsyn {

/// One alternative per part of a composite, scored N(S) = (w; e): the
/// compatibility floor across parts and the aggregated estimate (generalized
/// median of the chosen alternatives' estimates).
struct CompositeSolution {
  std::string label;  // assigned in front order, e.g. "D1"
  Selection selection;
  int w = 0;
  MedianResult median;

  const MultisetEstimate& estimate() const { return median.representative(); }
};

struct ParetoFront {
  std::string component;
  std::vector<CompositeSolution> solutions;
};

/// Minimum pairwise compatibility across the selected alternatives.
int compatibility_floor(const MorphModel& model, std::string_view composite,
                        const Selection& selection);

/// Scores a complete selection for one composite.
CompositeSolution score(const MorphModel& model, std::string_view composite,
                        const Selection& selection);

/// Drops every solution dominated under the joint order: w totally ordered,
/// estimates by poset; domination needs >= on both and > on one. Output is
/// sorted (descending w, then estimate in enumeration order, then selection).
std::vector<CompositeSolution> pareto_filter(std::vector<CompositeSolution> solutions);

/// Enumerates all admissible selections of a composite (w >= 1, with running
/// floor pruning) and returns the Pareto front, labelled "<composite>1..".
ParetoFront synthesize_component(const MorphModel& model, std::string_view composite);

/// Leaf-to-root synthesis. Each composite's front solutions become its
/// alternatives for the parent, carrying the representative median as their
/// estimate. `enriched` is the working model with those alternatives attached.
struct BottomUpResult {
  std::vector<std::string> order;  // composites in processing order
  std::map<std::string, ParetoFront> fronts;
  MorphModel enriched;
};

BottomUpResult bottom_up(const MorphModel& model);

}  // namespace morphsyn
