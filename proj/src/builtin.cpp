// The worked data of the bundled on-board telemetry study that is not part of
// the model file itself: the improvement action table and the aggregation
// inputs.

#include "morphsyn/aggregation.hpp"
#include "morphsyn/improvement.hpp"

namespace morphsyn {

namespace {

const Scale kScale{4, 3};

MultisetEstimate e(std::vector<int> counts) {
  return MultisetEstimate(kScale, std::move(counts));
}

}  // namespace

BuiltinImprovement builtin_improvement() {
  BuiltinImprovement plan;
  plan.composite = "F";
  plan.selection = {{"H", "H3"}, {"C", "C1"}, {"W", "W2"}};
  plan.groups = {
      {"W2",
       {{"y11", e({2, 1, 0, 0}), 0},
        {"y12", e({3, 0, 0, 0}), 17}}},
      {"C1",
       {{"y21", e({2, 1, 0, 0}), 0},
        {"y22", e({3, 0, 0, 0}), 15}}},
      {"H3",
       {{"y31", e({0, 2, 1, 0}), 0},
        {"y32", e({0, 3, 0, 0}), 1},
        {"y33", e({1, 2, 0, 0}), 7},
        {"y34", e({2, 1, 0, 0}), 13},
        {"y35", e({3, 0, 0, 0}), 22}}},
  };
  return plan;
}

SolutionSet builtin_solution_set() {
  auto system = [](const char* x, const char* y, const char* z, const char* i, const char* q,
                   const char* h) {
    return Selection{{"X", x}, {"Y", y}, {"Z", z}, {"I", i}, {"Q", q},
                     {"G", "G4"}, {"H", h}, {"C", "C1"}, {"W", "W2"}};
  };
  SolutionSet set;
  set.selections = {
      system("X2", "Y2", "Z2", "I3", "Q5", "H2"),
      system("X2", "Y2", "Z2", "I3", "Q5", "H3"),
      system("X2", "Y2", "Z2", "I1", "Q1", "H2"),
      system("X2", "Y2", "Z2", "I1", "Q1", "H3"),
      system("X3", "Y3", "Z3", "I3", "Q5", "H2"),
      system("X3", "Y3", "Z3", "I3", "Q5", "H3"),
      system("X3", "Y3", "Z3", "I1", "Q1", "H2"),
      system("X3", "Y3", "Z3", "I1", "Q1", "H3"),
  };
  return set;
}

std::vector<AggregationCandidate> builtin_aggregation_candidates() {
  return {
      {"X", "X2", e({2, 1, 0, 0}), 11},
      {"X", "X3", e({0, 2, 1, 0}), 4},
      {"Y", "Y2", e({2, 1, 0, 0}), 10},
      {"Y", "Y3", e({0, 1, 1, 1}), 2},
      {"Z", "Z2", e({2, 1, 0, 0}), 12},
      {"Z", "Z3", e({0, 2, 1, 0}), 6},
      {"I", "I1", e({1, 2, 0, 0}), 7},
      {"I", "I3", e({3, 0, 0, 0}), 20},
      {"Q", "Q1", e({2, 1, 0, 0}), 14},
      {"Q", "Q5", e({3, 0, 0, 0}), 21},
      {"H", "H2", e({2, 1, 0, 0}), 13},
      {"H", "H3", e({0, 2, 1, 0}), 5},
  };
}

}  // namespace morphsyn
