#pragma once

#include <compare>
#include <string>
#include <vector>

#include "morphsyn/estimates.hpp"

namespace morphsyn {

struct ChoiceItem {
  std::string id;
  MultisetEstimate estimate;
  double cost = 0.0;
};

/// Pick exactly one item per group, spend at most `budget`, make the
/// aggregated estimate of the picks as good as possible.
struct ChoiceInstance {
  Scale scale;
  double budget = 0.0;
  std::vector<std::vector<ChoiceItem>> groups;
};

struct ChoiceSolution {
  std::vector<std::string> item_ids;  // one per group, in group order
  double total_cost = 0.0;
  MedianResult median;
  /// Integrated estimate of the picks; the second ranking key.
  MultisetEstimate integral{Scale{1, 1}, {1}};
};

/// Exact search. Selections are ranked by: the median representative under
/// the estimate poset (maximal wins; selections whose medians are mutually
/// incomparable share the top and are all reported), then the integrated
/// estimate under the same poset, then minimal deviation, then maximal cost
/// (estimate-equivalent plans resolve toward the one that uses the budget).
/// Returns every selection tied at the top rank, best first.
std::vector<ChoiceSolution> solve(const ChoiceInstance& instance);

/// The pairwise ranking described above; poset-incomparable keys compare as
/// equal and fall through to the next key, identical selections compare
/// equivalent.
std::weak_ordering rank_selection(const ChoiceSolution& a, const ChoiceSolution& b);

/// Reads `{scale:{l,eta}, budget, groups:[[{id,estimate,cost}...]...]}`.
ChoiceInstance parse_choice_instance(const std::string& json_text);

}  // namespace morphsyn
