#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "morphsyn/choice.hpp"
#include "morphsyn/model.hpp"

namespace morphsyn {

/// Several complete selections over the same component set.
struct SolutionSet {
  std::vector<Selection> selections;
};

/// Components where all solutions agree (fixed) and the observed variants
/// everywhere else.
struct Kernel {
  std::map<std::string, std::string> fixed;
  std::map<std::string, std::set<std::string>> open;
};

/// Per-component union of the selected alternatives.
std::map<std::string, std::set<std::string>> supersolution(const SolutionSet& set);

/// Per-component intersection: the system kernel.
Kernel subsolution(const SolutionSet& set);

/// A priced alternative for one open component of a kernel extension.
struct AggregationCandidate {
  std::string component;
  std::string id;
  MultisetEstimate estimate;
  double cost = 0.0;
};

struct AggregationResult {
  ChoiceSolution choice;               // over the open components only
  std::vector<std::string> open_order; // group order used by the instance
  Selection combined;                  // kernel plus the chosen alternatives
};

/// Fills the open components by a budgeted choice problem; compatibility is
/// deliberately ignored and kernel elements carry no cost. The reported
/// estimate aggregates the chosen open-component estimates only.
AggregationResult extend_kernel(const Kernel& kernel,
                                std::span<const AggregationCandidate> candidates,
                                double budget);

/// The bundled aggregation exercise: the eight published full-system
/// selections and the twelve-candidate cost table.
SolutionSet builtin_solution_set();
std::vector<AggregationCandidate> builtin_aggregation_candidates();

}  // namespace morphsyn
